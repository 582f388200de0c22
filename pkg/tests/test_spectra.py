import math

import numpy as np
import pytest
from scipy import optimize
from scipy import special as sps

from sae_radial import spectra
from sae_radial.errors import (
    BranchUnavailableError,
    NoBoundStateError,
    RegimeError,
    UnsupportedProblemError,
)
from sae_radial.singular import RadialProblem
from sae_radial.spectra import (
    SAEParameter,
    closed_levels,
    fall_spectrum,
    fp_lambda,
    ground_state_window,
    inverse_square_level,
    kg_hydrogen_level,
    kg_hydrogen_map,
    kg_two_particle,
    qp_lambda,
    scarf_b,
    solve_attractive_coulomb,
    solve_repulsive_coulomb,
    tau_from_energy,
)
from conftest import v0_for_p

# frozen from 30-digit arithmetic
E_ISQ_QUARTER = -0.59865849368657614
DEEP_LAMBDA = 0.160567762639378603
BRACKET_LAMBDAS = (1.1429094168159566, 2.1421562147809073, 3.1419823993970314)
F_QUARTER_AT_ZERO = 2.9586751191886389  # Gamma(1/4)/Gamma(3/4)


# ---------------------------------------------------------------------------
# extension parameter


def test_tau_roundtrips():
    assert SAEParameter.from_tau(0.0).theta == 0.0
    assert SAEParameter.from_tau(1.0).tau == 1.0
    assert SAEParameter.from_tau(math.inf).theta == math.pi / 2
    assert SAEParameter.from_tau(-math.inf).tau == math.inf  # one extension point
    assert SAEParameter.from_theta(0.3).theta == 0.3
    assert SAEParameter.from_theta(math.pi / 2).tau == math.inf


def test_tau_kinds():
    assert SAEParameter.from_tau(0.0).kind == "standard"
    assert SAEParameter.from_tau(math.inf).kind == "additional"
    assert SAEParameter.from_tau(-2.0).kind == "mixed"


def test_theta_domain():
    with pytest.raises(ValueError):
        SAEParameter.from_theta(-math.pi / 2)
    with pytest.raises(ValueError):
        SAEParameter.from_theta(2.0)


# ---------------------------------------------------------------------------
# closed towers


def test_hydrogen_limit(hydrogen):
    result = closed_levels(hydrogen, "standard", 4)
    for n, state in enumerate(result.states):
        assert state.energy == pytest.approx(-0.5 / (n + 1) ** 2, rel=1e-13)


def test_quarter_towers(p_quarter):
    st_result = closed_levels(p_quarter, "standard", 2)
    assert st_result.energies[0] == pytest.approx(-1.0 / (2 * 0.75**2), rel=1e-13)
    add_result = closed_levels(p_quarter, "additional", 2)
    assert add_result.energies[0] == pytest.approx(-8.0, rel=1e-13)
    assert add_result.energies[1] == pytest.approx(-0.32, rel=1e-13)


def test_additional_needs_window(hydrogen):
    with pytest.raises(BranchUnavailableError):
        closed_levels(hydrogen, "additional", 1)


def test_kratzer_has_no_additional_branch():
    # repulsive inverse-square: P > 1/2 for every l
    for l in range(3):
        kratzer = RadialProblem(m=1.0, l=l, v0=-0.3, coulomb=-1.0)
        with pytest.raises(BranchUnavailableError):
            closed_levels(kratzer, "additional", 1)
        standard = closed_levels(kratzer, "standard", 1)
        assert all(s.energy < 0 for s in standard.states)


def test_ground_window_filter(p_quarter):
    raw = closed_levels(p_quarter, "additional", 1)
    filtered = closed_levels(p_quarter, "additional", 1, apply_ground_window=True)
    # the n_r = 0 additional level sits on the window boundary and drops
    assert len(raw.states) == len(filtered.states) + 1


# ---------------------------------------------------------------------------
# the transcendental machinery


def test_fp_limit_value():
    assert fp_lambda(0.25, 1e-13) == pytest.approx(F_QUARTER_AT_ZERO, rel=1e-10)


def test_fp_zeros_and_poles():
    assert fp_lambda(0.25, 0.75) == 0.0
    assert fp_lambda(0.25, 1.75) == 0.0
    from sae_radial.errors import PoleError

    with pytest.raises(PoleError):
        fp_lambda(0.25, 1.25)
    # sign flips across the pole
    assert fp_lambda(0.25, 1.25 - 1e-6) > 0.0
    assert fp_lambda(0.25, 1.25 + 1e-6) < 0.0


def test_qp_values():
    tau0 = SAEParameter.from_tau(0.0)
    assert qp_lambda(0.25, 1.7, tau0, 1.0, 1.0) == 0.0
    tau = SAEParameter.from_tau(-1.0)
    # Gamma(1/2)/Gamma(3/2) = 2 at 2 m alpha = 1, lam = 1
    assert qp_lambda(0.25, 1.0, tau, 0.5, 1.0) == pytest.approx(2.0, rel=1e-13)
    for lam in (0.3, 1.0, 4.0):
        assert qp_lambda(0.25, lam, tau, 1.0, 1.0) > 0.0
        assert qp_lambda(0.25, lam, SAEParameter.from_tau(2.0), 1.0, 1.0) < 0.0


def _independent_roots(p, tau, m, alpha, lam_max, n_pts=200_000):
    """Fine-grid scan of the eigencondition with scipy Gamma routines."""

    def h(lam):
        lhs = sps.gamma(0.5 - lam - p) / sps.gamma(0.5 - lam + p)
        rhs = (
            -tau
            * sps.gamma(1.0 - 2.0 * p)
            / sps.gamma(1.0 + 2.0 * p)
            * (2.0 * m * alpha) ** (2.0 * p)
            * lam ** (-2.0 * p)
        )
        return lhs - rhs

    grid = np.linspace(1e-6, lam_max, n_pts)
    vals = np.array([h(x) for x in grid])
    roots = []
    # keep only sign changes not explained by a pole of the left side
    for i in range(len(grid) - 1):
        a, b = grid[i], grid[i + 1]
        if not (np.isfinite(vals[i]) and np.isfinite(vals[i + 1])):
            continue
        if (vals[i] < 0) != (vals[i + 1] < 0):
            frac_a = (0.5 - a - p) % 1.0
            frac_b = (0.5 - b - p) % 1.0
            if frac_a < frac_b:  # pole of Gamma crossed inside
                continue
            roots.append(optimize.brentq(h, a, b, xtol=1e-13))
    return roots


def test_attractive_roots_match_independent_scan(p_quarter):
    tau = SAEParameter.from_tau(-1.0)
    result = solve_attractive_coulomb(p_quarter, tau, 3, include_deep_level=True)
    mine = [s.lam for s in result.states]
    ref = _independent_roots(0.25, -1.0, 1.0, 1.0, 3.6)
    assert len(ref) >= 4
    for a, b in zip(mine, ref):
        assert a == pytest.approx(b, abs=5e-11)


def test_attractive_roots_frozen_values(p_quarter):
    tau = SAEParameter.from_tau(-1.0)
    result = solve_attractive_coulomb(p_quarter, tau, 3, include_deep_level=True)
    lams = [s.lam for s in result.states]
    assert lams[0] == pytest.approx(DEEP_LAMBDA, abs=1e-11)
    for got, want in zip(lams[1:], BRACKET_LAMBDAS):
        assert got == pytest.approx(want, abs=1e-11)
    # energies sorted ascending and consistent with lam
    for s in result.states:
        assert s.energy == pytest.approx(-0.5 / s.lam**2, rel=1e-12)


def test_attractive_dispatches_closed_forms(p_quarter):
    by_tau = solve_attractive_coulomb(p_quarter, SAEParameter.from_tau(0.0), 3)
    direct = closed_levels(p_quarter, "standard", 2)
    assert by_tau.energies == direct.energies


def test_roots_interlace_pole_lattice(p_quarter):
    rng = np.random.default_rng(7)
    for _ in range(8):
        p = float(rng.uniform(0.05, 0.45))
        tau = float(-(10.0 ** rng.uniform(-2, 2)))
        problem = RadialProblem(m=1.0, l=0, v0=v0_for_p(p), coulomb=-1.0)
        result = solve_attractive_coulomb(problem, SAEParameter.from_tau(tau), 4)
        for n, state in enumerate(result.states):
            assert 0.5 - p + n < state.lam < 0.5 - p + n + 1


def test_limit_continuity_both_ends(p_quarter):
    # tau -> 0: roots approach the standard lattice linearly in tan(theta)
    t1, t2 = 1e-4, 1e-6
    r1 = solve_attractive_coulomb(p_quarter, SAEParameter.from_theta(-t1), 2)
    r2 = solve_attractive_coulomb(p_quarter, SAEParameter.from_theta(-t2), 2)
    for k, lam_target in enumerate((0.75, 1.75)):
        a1 = math.tan(t1)
        a2 = math.tan(t2)
        lam = (r2.states[k].lam * a1 - r1.states[k].lam * a2) / (a1 - a2)
        assert lam == pytest.approx(lam_target, abs=1e-6)
    # theta -> pi/2: approach the additional lattice linearly in cot(theta)
    c1, c2 = 1e-4, 1e-6
    r1 = solve_attractive_coulomb(p_quarter, SAEParameter.from_theta(math.pi / 2 - c1), 2)
    r2 = solve_attractive_coulomb(p_quarter, SAEParameter.from_theta(math.pi / 2 - c2), 2)
    for k, lam_target in enumerate((0.25, 1.25)):
        lam = (r2.states[k].lam * c1 - r1.states[k].lam * c2) / (c1 - c2)
        assert lam == pytest.approx(lam_target, abs=1e-6)


def test_deep_root_continues_into_inverse_square_level():
    # as the Coulomb strength vanishes the extra root below the first
    # pole keeps a finite energy; the correction is linear in alpha, so
    # two small couplings extrapolate onto the closed-form single level
    isq = RadialProblem(m=1.0, l=0, v0=0.09375)
    target = inverse_square_level(isq, SAEParameter.from_tau(-1.0)).energy
    es = []
    alphas = (1e-6, 1e-8)
    for alpha in alphas:
        problem = RadialProblem(m=1.0, l=0, v0=0.09375, coulomb=-alpha)
        result = solve_attractive_coulomb(
            problem, SAEParameter.from_tau(-1.0), 1, include_deep_level=True
        )
        es.append(result.states[0].energy)
    a1, a2 = alphas
    extrapolated = (es[1] * a1 - es[0] * a2) / (a1 - a2)
    assert extrapolated == pytest.approx(target, rel=1e-6)


# ---------------------------------------------------------------------------
# pure inverse-square level


def test_inverse_square_level_value(isq_quarter, tau_minus_one):
    state = inverse_square_level(isq_quarter, tau_minus_one)
    assert state.energy == pytest.approx(E_ISQ_QUARTER, rel=1e-12)


def test_inverse_square_level_disappears(isq_quarter, tau_zero, tau_inf):
    with pytest.raises(NoBoundStateError):
        inverse_square_level(isq_quarter, tau_zero)
    with pytest.raises(NoBoundStateError):
        inverse_square_level(isq_quarter, tau_inf)


def test_inverse_square_positive_tau_rejected(isq_quarter):
    with pytest.raises(ValueError):
        inverse_square_level(isq_quarter, SAEParameter.from_tau(0.7))


def test_tau_energy_roundtrip(isq_quarter, tau_minus_one):
    state = inverse_square_level(isq_quarter, tau_minus_one)
    back = tau_from_energy(isq_quarter, state.energy)
    assert back.tau == pytest.approx(-1.0, rel=1e-10)


def test_tau_from_energy_shallow_limit(isq_quarter):
    tau = tau_from_energy(isq_quarter, -1e-28)
    assert tau.tau < -1e5
    assert tau.theta == pytest.approx(-math.pi / 2, abs=1e-4)


def test_inverse_square_scale_law(isq_quarter):
    # E(tau) * (-tau)^(1/P) is tau-independent
    p = 0.25
    vals = []
    for tau in (-0.1, -1.0, -10.0):
        state = inverse_square_level(isq_quarter, SAEParameter.from_tau(tau))
        vals.append(state.energy * (-tau) ** (1.0 / p))
    assert vals[0] == pytest.approx(vals[1], rel=1e-10)
    assert vals[1] == pytest.approx(vals[2], rel=1e-10)


def test_inverse_square_requires_pure_problem(p_quarter, tau_minus_one):
    with pytest.raises(UnsupportedProblemError):
        inverse_square_level(p_quarter, tau_minus_one)


# ---------------------------------------------------------------------------
# fall tower


def test_fall_reference_point():
    problem = RadialProblem(m=0.5, l=0, v0=1.25)  # decay exponent s = 1
    result = fall_spectrum(problem, 0.0, (0, 2))
    assert result.states[0].energy == pytest.approx(-math.exp(-math.pi), rel=1e-13)


@pytest.mark.parametrize("s", [0.5, 1.0, 2.0])
def test_fall_geometric_ratio(s):
    problem = RadialProblem(m=0.5, l=0, v0=s * s + 0.25)
    result = fall_spectrum(problem, 0.3, (-3, 3))
    ratio = math.exp(-2.0 * math.pi / s)
    for a, b in zip(result.states, result.states[1:]):
        assert b.energy / a.energy == pytest.approx(ratio, rel=1e-12)


def test_fall_unbounded_below():
    problem = RadialProblem(m=0.5, l=0, v0=1.25)
    result = fall_spectrum(problem, 0.0, (-30, 0))
    energies = result.energies
    assert all(a < b for a, b in zip(energies, energies[1:]))
    assert energies[0] < -1e10 * abs(energies[-1])


def test_fall_requires_fall_regime(isq_quarter):
    with pytest.raises(RegimeError):
        fall_spectrum(isq_quarter, 0.0, (0, 2))


def test_fall_tower_indices():
    problem = RadialProblem(m=0.5, l=0, v0=1.25)
    result = fall_spectrum(problem, 0.0, (-2, 2))
    assert [s.tower_n for s in result.states] == [-2, -1, 0, 1, 2]
    assert [s.n_r for s in result.states] == [0, 1, 2, 3, 4]


# ---------------------------------------------------------------------------
# repulsive Coulomb


@pytest.fixture(scope="module")
def repulsive():
    return RadialProblem(m=1.0, l=0, v0=0.09375, coulomb=1.0)


def test_repulsive_empty_for_pure_branches(repulsive):
    for tau in (SAEParameter.from_tau(0.0), SAEParameter.from_tau(math.inf)):
        assert solve_repulsive_coulomb(repulsive, tau, 3).states == ()


def test_repulsive_positive_tau_empty(repulsive):
    assert solve_repulsive_coulomb(repulsive, SAEParameter.from_tau(1.0), 3).states == ()


def test_repulsive_admissible_tau_has_level(repulsive):
    computed, printed = spectra.repulsive_tau_threshold(repulsive)
    assert computed < 0.0
    # the printed single-power form disagrees with the computed plateau
    assert printed != pytest.approx(-computed, rel=1e-6)
    tau = SAEParameter.from_tau(0.5 * computed)
    result = solve_repulsive_coulomb(repulsive, tau, 2)
    assert len(result.states) >= 1
    assert spectra.at_least_one_repulsive_level(repulsive, tau)
    # beyond the computed threshold the level is gone
    too_large = SAEParameter.from_tau(2.0 * computed)
    assert not spectra.at_least_one_repulsive_level(repulsive, too_large)


def test_repulsive_root_satisfies_equation(repulsive):
    computed, _ = spectra.repulsive_tau_threshold(repulsive)
    tau = SAEParameter.from_tau(0.5 * computed)
    state = solve_repulsive_coulomb(repulsive, tau, 1).states[0]
    p, m, alpha = 0.25, 1.0, 1.0
    lam = state.lam
    lhs = (
        float(sps.gamma(0.5 + lam - p) / sps.gamma(0.5 + lam + p))
        * (-8.0 * m * state.energy) ** (-p)
    )
    rhs = -tau.tau * float(sps.gamma(1.0 - 2 * p) / sps.gamma(1.0 + 2 * p))
    assert lhs == pytest.approx(rhs, rel=1e-9)


# ---------------------------------------------------------------------------
# relativistic two-particle problem


def test_kg_two_particle_empty_for_pure_branches():
    for tau in (SAEParameter.from_tau(0.0), SAEParameter.from_tau(math.inf)):
        assert kg_two_particle(0.8, 0.1, 1.0, tau).states == ()


def test_kg_two_particle_free_limit_refused():
    with pytest.raises(UnsupportedProblemError):
        kg_two_particle(0.0, 0.0, 1.0, SAEParameter.from_tau(-1.0))


def test_kg_two_particle_window_check():
    with pytest.raises(RegimeError):
        kg_two_particle(3.0, 0.1, 1.0, SAEParameter.from_tau(-1.0))


def test_kg_two_particle_root_satisfies_equation():
    m, v0, s0 = 1.0, 0.8, 0.1
    tau = SAEParameter.from_tau(-0.5)
    result = kg_two_particle(v0, s0, m, tau)
    assert result.states
    state = result.states[0]
    mass = state.total_mass
    assert 0.0 < mass < 2.0 * m
    assert state.energy == pytest.approx(mass - 2.0 * m, rel=1e-12)
    p = math.sqrt(0.25 + (s0 * s0 - v0 * v0) / 4.0)
    lam = (mass * v0 / 2.0 + m * s0) / math.sqrt(4 * m * m - mass * mass)
    lhs = float(sps.gamma(0.5 + lam - p) / sps.gamma(0.5 + lam + p)) * (
        4 * m * m - mass * mass
    ) ** (-p)
    rhs = -tau.tau * float(sps.gamma(1 - 2 * p) / sps.gamma(1 + 2 * p))
    assert lhs == pytest.approx(rhs, rel=1e-9)


def test_kg_lambda_diverges_at_binding_edge():
    m, v0, s0 = 1.0, 0.8, 0.1
    lam_near = (1.999999 * m * v0 / 2 + m * s0) / math.sqrt(4 * m * m - 1.999999**2)
    lam_far = (1.0 * m * v0 / 2 + m * s0) / math.sqrt(4 * m * m - 1.0)
    assert lam_near > 100 * lam_far


# ---------------------------------------------------------------------------
# relativistic hydrogen map


def test_kg_map_weak_coupling_is_identity():
    mapped = kg_hydrogen_map(0.0, 0, 0.9, 1.0)
    assert mapped.problem.v0 == 0.0
    assert mapped.problem.coulomb == 0.0
    assert mapped.p == pytest.approx(0.5)


def test_kg_map_hydrino_window():
    mapped = kg_hydrogen_map(0.4, 0, 0.9, 1.0)
    assert mapped.p == pytest.approx(0.3)
    from sae_radial.singular import Regime, analyze

    assert analyze(mapped.problem).regime is Regime.TWO_BRANCH


def test_kg_map_fall_rejected():
    with pytest.raises(RegimeError):
        kg_hydrogen_map(0.8, 0, 0.9, 1.0)


def test_kg_fixed_point_matches_closed_form():
    alpha, m = 0.4, 1.0
    p = math.sqrt(0.25 - alpha * alpha)
    for branch, lam in (("standard", 0.5 + p), ("additional", 0.5 - p)):
        e = kg_hydrogen_level(alpha, 0, m, branch, 0)
        assert e == pytest.approx(m * lam / math.sqrt(lam * lam + alpha * alpha), rel=1e-9)


def test_hydrino_sits_below_standard():
    e_add = kg_hydrogen_level(0.4, 0, 1.0, "additional", 0)
    e_std = kg_hydrogen_level(0.4, 0, 1.0, "standard", 0)
    assert e_add < e_std


# ---------------------------------------------------------------------------
# the one-dimensional connection coefficient


def test_scarf_special_points():
    s, g = 0.25, 1.0
    # standard tower eta = g/(n + 1/2 + s) gives zeros
    eta_zero = g / 0.75
    assert abs(scarf_b(s, g, eta_zero)) < 1e-12
    # additional tower eta = g/(n + 1/2 - s) gives poles
    eta_pole = g / 0.25
    from sae_radial.errors import PoleError

    with pytest.raises(PoleError):
        scarf_b(s, g, eta_pole)
    assert abs(scarf_b(s, g, eta_pole * (1 + 1e-9))) > 1e6


def test_scarf_sign_alternates_between_special_points():
    s, g = 0.25, 1.0
    # special points of 1/eta: n + 1/2 +- s over n = 0, 1, ...
    knots = sorted(
        [0.5 + s + n for n in range(3)] + [0.5 - s + n for n in range(4)]
    )
    signs = []
    for a, b in zip(knots, knots[1:]):
        x = 0.5 * (a + b)  # gamma_c/eta value inside the cell
        signs.append(math.copysign(1.0, scarf_b(s, g, g / x)))
    assert all(s1 == -s2 for s1, s2 in zip(signs, signs[1:]))


def test_scarf_equals_extension_parameter(p_quarter):
    # the connection coefficient evaluated at a mixed-tau eigenvalue
    # reproduces that tau
    tau = SAEParameter.from_tau(-1.0)
    result = solve_attractive_coulomb(p_quarter, tau, 2)
    for state in result.states:
        eta = math.sqrt(-2.0 * p_quarter.m * state.energy)
        gamma_c = p_quarter.m * (-p_quarter.coulomb)
        assert scarf_b(0.25, gamma_c, eta) == pytest.approx(tau.tau, rel=1e-9)


# ---------------------------------------------------------------------------
# ground-state window


def test_window_examples(p_quarter, hydrogen):
    # hydrogen ground state sits exactly on the open boundary
    with pytest.raises(RegimeError):
        ground_state_window(-0.5, hydrogen)  # standard-only regime
    assert ground_state_window(-1.0 / (2 * 0.75**2), p_quarter)
    # excited standard levels fall outside
    assert not ground_state_window(-1.0 / (2 * 1.75**2), p_quarter)


def test_spectrum_result_ordering_guard(p_quarter, tau_zero):
    from sae_radial.spectra import BoundState, SpectrumResult

    good = SpectrumResult(
        problem=p_quarter,
        tau=tau_zero,
        states=(
            BoundState(energy=-2.0, n_r=0, branch="standard", source="closed_form"),
            BoundState(energy=-1.0, n_r=1, branch="standard", source="closed_form"),
        ),
    )
    assert good.energies == [-2.0, -1.0]
    with pytest.raises(ValueError):
        SpectrumResult(
            problem=p_quarter,
            tau=tau_zero,
            states=(
                BoundState(energy=-1.0, n_r=0, branch="standard", source="closed_form"),
                BoundState(energy=-2.0, n_r=1, branch="standard", source="closed_form"),
            ),
        )

"""Closed-form and transcendental bound-state solvers.

For the two-branch regime the boundary condition at the origin carries a
single extension parameter tau = a_add/a_st (ratio of the two Frobenius
coefficients), represented here by SAEParameter with a canonical angle
theta, tau = tan(theta), so that tau = +-inf is a first-class value.

tau = 0 and tau = +-inf give closed-form level towers for the attractive
Coulomb-plus-inverse-square problem; any other tau leads to a
transcendental condition matching a ratio of Gamma functions against a
power of the energy, solved here by bracketed bisection (one root per
interval between consecutive Gamma poles, which is guaranteed by
monotonicity).  The pure inverse-square problem has a single closed-form
level for tau < 0; the fall regime has an explicit geometric tower; the
repulsive-Coulomb and two-particle relativistic variants are solved by
scan-then-bisect since their printed existence thresholds are
inconsistent and the safe statement is the numerically computed range of
the left-hand side.

The two near-origin power branches and decay at infinity fix the basis
of confluent solutions used here.  Other pairings are rejected rather
than implemented: both irregular-at-infinity solutions together admit no
bound state at all; pairing either regular branch with the exponentially
growing solution forbids one of the two pure boundary conditions (and in
the vanishing-Coulomb limit would erase the single inverse-square level
that demonstrably exists for tau < 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .errors import (
    BracketingError,
    BranchUnavailableError,
    NoBoundStateError,
    RegimeError,
    UnsupportedProblemError,
)
from .singular import RadialProblem, Regime, analyze
from .specfun import gamma_ratio

__all__ = [
    "SAEParameter",
    "BoundState",
    "SpectrumResult",
    "closed_levels",
    "fp_lambda",
    "qp_lambda",
    "solve_attractive_coulomb",
    "inverse_square_level",
    "tau_from_energy",
    "fall_spectrum",
    "solve_repulsive_coulomb",
    "at_least_one_repulsive_level",
    "repulsive_tau_threshold",
    "kg_two_particle",
    "kg_two_particle_tau_threshold",
    "KGMap",
    "kg_hydrogen_map",
    "kg_hydrogen_level",
    "scarf_b",
    "ground_state_window",
]

_BRACKET_SHRINK = 1e-9
_LAMBDA_BISECT_TOL = 1e-12


@dataclass(frozen=True)
class SAEParameter:
    """Extension parameter tau with its canonical angle theta.

    theta lies in (-pi/2, pi/2], tau = tan(theta); theta = pi/2 encodes
    tau = +-inf (the pure-additional boundary condition, a single point of
    the extension circle).  tau carries dimension length^(2P); that is
    documented, not enforced.
    """

    theta: float
    tau: float

    def __post_init__(self):
        if not (-math.pi / 2 < self.theta <= math.pi / 2):
            raise ValueError(f"theta must lie in (-pi/2, pi/2], got {self.theta!r}")

    @classmethod
    def from_tau(cls, tau: float) -> "SAEParameter":
        if math.isinf(tau):
            return cls(theta=math.pi / 2, tau=math.inf)
        return cls(theta=math.atan(tau), tau=float(tau))

    @classmethod
    def from_theta(cls, theta: float) -> "SAEParameter":
        if theta == math.pi / 2:
            return cls(theta=theta, tau=math.inf)
        return cls(theta=float(theta), tau=math.tan(theta))

    @property
    def is_standard(self) -> bool:
        return self.tau == 0.0

    @property
    def is_additional(self) -> bool:
        return math.isinf(self.tau)

    @property
    def kind(self) -> str:
        if self.is_standard:
            return "standard"
        if self.is_additional:
            return "additional"
        return "mixed"


@dataclass(frozen=True)
class BoundState:
    """One bound level.

    energy is the binding energy (< 0).  n_r is the 0-based radial index
    within the branch the state belongs to; tower_n holds the signed
    index of the fall tower when applicable, total_mass the bound-state
    mass in the two-particle relativistic problem.
    """

    energy: float
    n_r: int
    branch: str
    source: str
    lam: Optional[float] = None
    tower_n: Optional[int] = None
    total_mass: Optional[float] = None

    def __post_init__(self):
        # levels are negative whenever the potential vanishes at infinity;
        # confining tails move the continuum threshold and admit E > 0
        if not math.isfinite(self.energy):
            raise ValueError(f"bound-state energy must be finite, got {self.energy!r}")
        if self.n_r < 0:
            raise ValueError("n_r must be >= 0")


@dataclass(frozen=True)
class SpectrumResult:
    """Ordered spectrum with solver provenance notes."""

    problem: Optional[RadialProblem]
    tau: Optional[SAEParameter]
    states: tuple
    diagnostics: tuple = field(default_factory=tuple)

    def __post_init__(self):
        energies = [s.energy for s in self.states]
        for a, b in zip(energies, energies[1:]):
            if not a < b:
                raise ValueError("states must be strictly ordered by energy")
            if abs(b - a) <= 1e-10 * max(abs(a), abs(b)):
                raise ValueError("duplicate energies in spectrum")

    @property
    def energies(self) -> list:
        return [s.energy for s in self.states]


def _require_attractive_coulomb(problem: RadialProblem) -> float:
    if problem.coulomb >= 0.0:
        raise RegimeError("solver requires an attractive Coulomb term (coulomb < 0)")
    return -problem.coulomb


def _energy_from_lambda(m: float, alpha: float, lam: float) -> float:
    return -m * alpha * alpha / (2.0 * lam * lam)


def _lambda_of_energy(m: float, alpha: float, energy: float) -> float:
    return 2.0 * m * alpha / math.sqrt(-8.0 * m * energy)


def closed_levels(
    problem: RadialProblem,
    branch: str,
    n_max: int,
    apply_ground_window: bool = False,
) -> SpectrumResult:
    """Closed-form level tower E_n = -m alpha^2 / (2 [1/2 + n +- P]^2).

    branch 'standard' (+P) is the tau = 0 spectrum, 'additional' (-P) the
    tau = +-inf one.  With apply_ground_window the n_r = 0 state is kept
    only if it passes the node-free ground-state window; both raw and
    filtered views are legitimate, the raw list is the default.
    """
    alpha = _require_attractive_coulomb(problem)
    ana = analyze(problem)
    if branch == "standard":
        if ana.regime not in (Regime.TWO_BRANCH, Regime.STANDARD_ONLY):
            raise RegimeError(f"no standard power branch in regime {ana.regime.value}")
        sign = +1.0
        tau = SAEParameter.from_tau(0.0)
    elif branch == "additional":
        if ana.regime is not Regime.TWO_BRANCH:
            raise BranchUnavailableError(
                "additional branch requires l(l+1) < 2mV0 < l(l+1) + 1/4"
            )
        sign = -1.0
        tau = SAEParameter.from_tau(math.inf)
    else:
        raise ValueError(f"branch must be 'standard' or 'additional', got {branch!r}")
    p = ana.p
    states = []
    diagnostics = []
    for n in range(n_max + 1):
        lam = 0.5 + n + sign * p
        energy = _energy_from_lambda(problem.m, alpha, lam)
        if apply_ground_window and n == 0 and not ground_state_window(energy, problem):
            diagnostics.append(
                f"n_r=0 {branch} state filtered by the ground-state window"
            )
            continue
        states.append(
            BoundState(energy=energy, n_r=n, branch=branch, source="closed_form", lam=lam)
        )
    return SpectrumResult(
        problem=problem, tau=tau, states=tuple(states), diagnostics=tuple(diagnostics)
    )


def fp_lambda(p: float, lam: float) -> float:
    """Gamma(1/2 - lam - P) / Gamma(1/2 - lam + P).

    Zeros at lam = 1/2 + P + n are the standard levels, poles at
    lam = 1/2 - P + n the additional ones; between consecutive poles the
    function increases monotonically from -inf to +inf.
    """
    return gamma_ratio(0.5 - lam - p, 0.5 - lam + p)


def qp_lambda(
    p: float, lam: float, tau: SAEParameter, m: float, alpha: float
) -> float:
    """Right-hand side -tau * [G(1-2P)/G(1+2P)] * (2 m alpha)^2P / lam^2P."""
    if tau.is_additional:
        raise ValueError("qp_lambda requires finite tau")
    return (
        -tau.tau
        * gamma_ratio(1.0 - 2.0 * p, 1.0 + 2.0 * p)
        * (2.0 * m * alpha) ** (2.0 * p)
        * lam ** (-2.0 * p)
    )


def _bisect(fn, lo: float, hi: float, f_lo: float, tol: float):
    """Plain bisection on a sign change; returns (root, iterations).

    tol is an absolute width; tol = 0 bisects to float resolution.
    """
    neg = f_lo < 0.0
    it = 0
    while it < 200:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi or (hi - lo) <= tol:
            break
        if (fn(mid) < 0.0) == neg:
            lo = mid
        else:
            hi = mid
        it += 1
    return 0.5 * (lo + hi), it


def solve_attractive_coulomb(
    problem: RadialProblem,
    tau: SAEParameter,
    count: int,
    include_deep_level: bool = False,
) -> SpectrumResult:
    """First `count` mixed-tau levels of the attractive Coulomb problem.

    Roots of fp_lambda = qp_lambda, one per interval between consecutive
    poles lam = 1/2 - P + n; bisection is safe because the left side is
    monotonic on each interval.  tau in {0, +-inf} dispatches to the
    closed towers.  For tau < 0 one extra root exists below the first
    pole; it runs to -inf energy as tau -> 0- and continues into the pure
    inverse-square level as alpha -> 0.  It is excluded from the default
    tower indexing and returned only with include_deep_level.
    """
    alpha = _require_attractive_coulomb(problem)
    ana = analyze(problem)
    if ana.regime is not Regime.TWO_BRANCH:
        raise RegimeError(
            f"mixed-tau solver requires the two-branch regime, got {ana.regime.value}"
        )
    if tau.is_standard:
        return closed_levels(problem, "standard", count - 1)
    if tau.is_additional:
        return closed_levels(problem, "additional", count - 1)

    p = ana.p
    m = problem.m

    def h(lam: float) -> float:
        return fp_lambda(p, lam) - qp_lambda(p, lam, tau, m, alpha)

    diagnostics = []
    roots = []

    if include_deep_level and tau.tau < 0.0:
        # one extra crossing below the first pole: the left side is finite
        # there while the right side blows up as lam -> 0+
        hi = 0.5 - p - _BRACKET_SHRINK
        lo = 0.5 * (0.5 - p)
        f_lo = h(lo)
        guard = 0
        while f_lo > 0.0 and guard < 600:
            lo *= 0.5
            f_lo = h(lo)
            guard += 1
        if f_lo >= 0.0:
            raise BracketingError("deep-root bracket not resolved")
        root, it = _bisect(h, lo, hi, f_lo, 0.0)
        roots.append(root)
        diagnostics.append(
            f"deep root below the first pole: lam={root:.12g} ({it} bisections)"
        )

    for n in range(count):
        lo = 0.5 - p + n + _BRACKET_SHRINK
        hi = 0.5 - p + n + 1 - _BRACKET_SHRINK
        f_lo = h(lo)
        f_hi = h(hi)
        if not (f_lo < 0.0 < f_hi):
            raise BracketingError(
                f"no sign change on pole bracket n={n}: h({lo})={f_lo}, h({hi})={f_hi}"
            )
        root, it = _bisect(h, lo, hi, f_lo, _LAMBDA_BISECT_TOL)
        roots.append(root)
        diagnostics.append(f"pole bracket n={n}: lam={root:.12g} ({it} bisections)")

    states = []
    for i, lam in enumerate(sorted(roots)):
        energy = _energy_from_lambda(m, alpha, lam)
        states.append(
            BoundState(
                energy=energy, n_r=i, branch="mixed", source="transcendental", lam=lam
            )
        )
    lowest_bracket = next((s for s in states if s.lam > 0.5 - p), None)
    if lowest_bracket is not None:
        ok = ground_state_window(lowest_bracket.energy, problem)
        diagnostics.append(f"ground-state window on the first bracket root: {ok}")
    return SpectrumResult(
        problem=problem, tau=tau, states=tuple(states), diagnostics=tuple(diagnostics)
    )


def _inverse_square_gamma_factor(p: float) -> float:
    return gamma_ratio(1.0 + p, 1.0 - p)


def inverse_square_level(problem: RadialProblem, tau: SAEParameter) -> BoundState:
    """The single level of the pure attractive inverse-square potential.

    E = -(2/m) [G(1+P)/G(1-P)]^(1/P) (-1/tau)^(1/P), which is real only
    for tau < 0; the level disappears at tau = 0 and tau = +-inf where
    scale invariance is restored.
    """
    if problem.coulomb != 0.0 or problem.tail is not None:
        raise UnsupportedProblemError("pure inverse-square problem required")
    ana = analyze(problem)
    if ana.regime is not Regime.TWO_BRANCH:
        raise RegimeError(f"single level requires the two-branch regime, got {ana.regime.value}")
    if tau.is_standard or tau.is_additional:
        raise NoBoundStateError("the level disappears for tau = 0 and tau = +-inf")
    if tau.tau > 0.0:
        raise ValueError("reality of the level requires tau < 0")
    p = ana.p
    ratio = _inverse_square_gamma_factor(p)
    energy = -(2.0 / problem.m) * (ratio * (-1.0 / tau.tau)) ** (1.0 / p)
    return BoundState(energy=energy, n_r=0, branch="mixed", source="closed_form")


def tau_from_energy(problem: RadialProblem, energy: float) -> SAEParameter:
    """Inverse of inverse_square_level: the unique tau < 0 for a level."""
    if not energy < 0.0:
        raise ValueError("energy must be negative")
    if problem.coulomb != 0.0 or problem.tail is not None:
        raise UnsupportedProblemError("pure inverse-square problem required")
    ana = analyze(problem)
    if ana.regime is not Regime.TWO_BRANCH:
        raise RegimeError("two-branch regime required")
    p = ana.p
    ratio = _inverse_square_gamma_factor(p)
    tau = -ratio * (-problem.m * energy / 2.0) ** (-p)
    return SAEParameter.from_tau(tau)


def fall_spectrum(problem: RadialProblem, c: float, n_range: tuple) -> SpectrumResult:
    """Geometric tower of the fall regime, indices n over n_range.

    eta_n = exp[(C - (n + 1/2) pi) / s], s = sqrt(2 m v0 - (l + 1/2)^2),
    E_n = -eta_n^2 / (2m).  The tower is unbounded below as n -> -inf;
    consecutive levels have the fixed ratio exp(-2 pi / s).
    """
    if problem.coulomb != 0.0 or problem.tail is not None:
        raise UnsupportedProblemError("fall tower defined for the pure inverse-square potential")
    ana = analyze(problem)
    if ana.regime is not Regime.FALL_TO_CENTER:
        raise RegimeError(f"fall spectrum requires the fall regime, got {ana.regime.value}")
    s = ana.imag_p
    n_min, n_max = n_range
    if n_min > n_max:
        raise ValueError("empty index range")
    states = []
    for i, n in enumerate(range(n_min, n_max + 1)):
        eta = math.exp((c - (n + 0.5) * math.pi) / s)
        states.append(
            BoundState(
                energy=-eta * eta / (2.0 * problem.m),
                n_r=i,
                branch="fall_tower",
                source="closed_form",
                tower_n=n,
            )
        )
    return SpectrumResult(
        problem=problem,
        tau=None,
        states=tuple(states),
        diagnostics=(f"fall tower: s={s!r}, C={c!r}",),
    )


def _repulsive_lhs(p: float, m: float, alpha: float, lam: float) -> float:
    return (
        gamma_ratio(0.5 + lam - p, 0.5 + lam + p)
        * lam ** (2.0 * p)
        * (2.0 * m * alpha) ** (-2.0 * p)
    )


def repulsive_tau_threshold(problem: RadialProblem) -> tuple:
    """(computed, printed) existence thresholds for the repulsive problem.

    The left side of the eigencondition spans (0, A) with plateau
    A = (2 m alpha)^(-2P), so levels exist exactly for
    -A Gamma(1+2P)/Gamma(1-2P) < tau < 0.  The printed closed form with a
    first-power exponent is reported alongside for reference; it
    disagrees with the computed plateau and is not used.
    """
    if problem.coulomb <= 0.0:
        raise RegimeError("repulsive Coulomb problem required (coulomb > 0)")
    ana = analyze(problem)
    if ana.regime is not Regime.TWO_BRANCH:
        raise RegimeError("two-branch regime required")
    p = ana.p
    alpha = problem.coulomb
    plateau = (2.0 * problem.m * alpha) ** (-2.0 * p)
    computed = -plateau / gamma_ratio(1.0 - 2.0 * p, 1.0 + 2.0 * p)
    printed = gamma_ratio(1.0 + 2.0 * p, 1.0 - 2.0 * p) / (
        (2.0 * problem.m * alpha) ** p
    )
    return computed, printed


def solve_repulsive_coulomb(
    problem: RadialProblem, tau: SAEParameter, count: int
) -> SpectrumResult:
    """Levels of -v0/r^2 + alpha/r (alpha > 0) at finite tau.

    tau in {0, +-inf} gives an empty spectrum.  Otherwise the left side
    of the eigencondition rises from 0 to its plateau and roots are
    located by a geometric scan followed by bisection; monotonicity is
    not assumed.
    """
    if problem.coulomb <= 0.0:
        raise RegimeError("repulsive Coulomb problem required (coulomb > 0)")
    if problem.tail is not None:
        raise UnsupportedProblemError("no tail support in the repulsive solver")
    ana = analyze(problem)
    if ana.regime is not Regime.TWO_BRANCH:
        raise RegimeError("two-branch regime required")
    computed_thr, printed_thr = repulsive_tau_threshold(problem)
    diagnostics = [
        f"computed tau threshold: {computed_thr!r}",
        f"printed-form threshold (reference only): {printed_thr!r}",
    ]
    if tau.is_standard or tau.is_additional:
        return SpectrumResult(
            problem=problem,
            tau=tau,
            states=(),
            diagnostics=tuple(diagnostics + ["levels absent for tau in {0, +-inf}"]),
        )
    p = ana.p
    m = problem.m
    alpha = problem.coulomb
    rhs = -tau.tau * gamma_ratio(1.0 - 2.0 * p, 1.0 + 2.0 * p)
    plateau = (2.0 * m * alpha) ** (-2.0 * p)

    lam_max = 50.0
    while abs(_repulsive_lhs(p, m, alpha, lam_max) / plateau - 1.0) > 1e-3:
        lam_max *= 2.0
        if lam_max > 1e9:
            break
    diagnostics.append(f"plateau reached within 0.1% at lam={lam_max!r}")

    def g(lam: float) -> float:
        return _repulsive_lhs(p, m, alpha, lam) - rhs

    lam_lo = 1e-8
    decades = math.log10(lam_max / lam_lo)
    n_grid = int(64 * decades) + 2
    grid = [lam_lo * (lam_max / lam_lo) ** (i / (n_grid - 1)) for i in range(n_grid)]
    roots = []
    prev_lam, prev_g = grid[0], g(grid[0])
    for lam in grid[1:]:
        cur = g(lam)
        if prev_g == 0.0:
            roots.append(prev_lam)
        elif (cur < 0.0) != (prev_g < 0.0):
            root, _ = _bisect(g, prev_lam, lam, prev_g, _LAMBDA_BISECT_TOL * max(1.0, lam))
            roots.append(root)
        prev_lam, prev_g = lam, cur
        if len(roots) >= count:
            break
    states = []
    for i, lam in enumerate(sorted(roots)[:count]):
        states.append(
            BoundState(
                energy=_energy_from_lambda(m, alpha, lam),
                n_r=i,
                branch="mixed",
                source="transcendental",
                lam=lam,
            )
        )
    if not states:
        diagnostics.append("no sign change: tau outside the existence range")
    return SpectrumResult(
        problem=problem, tau=tau, states=tuple(states), diagnostics=tuple(diagnostics)
    )


def at_least_one_repulsive_level(problem: RadialProblem, tau: SAEParameter) -> bool:
    """Numerically determined existence predicate for the repulsive problem."""
    return bool(solve_repulsive_coulomb(problem, tau, 1).states)


def _kg_lambda(m: float, v0: float, s0: float, mass: float) -> float:
    return (mass * v0 / 2.0 + m * s0) / math.sqrt(4.0 * m * m - mass * mass)


def kg_two_particle_tau_threshold(v0: float, s0: float, m: float, l: int = 0) -> float:
    """Threshold tau at the binding edge M -> 2m of the two-particle problem.

    The left side of the eigencondition tends to [m (V0 + S0)]^(-2P); the
    corresponding tau separates the regions with and without a level near
    threshold.
    """
    p2 = (l + 0.5) ** 2 + (s0 * s0 - v0 * v0) / 4.0
    if not 0.0 < p2 < 0.25:
        raise RegimeError(f"P^2={p2!r} outside (0, 1/4)")
    p = math.sqrt(p2)
    plateau = (m * (v0 + s0)) ** (-2.0 * p)
    return -plateau / gamma_ratio(1.0 - 2.0 * p, 1.0 + 2.0 * p)


def kg_two_particle(
    v0: float, s0: float, m: float, tau: SAEParameter, l: int = 0, count: int = 4
) -> SpectrumResult:
    """Bound masses M of two equal-mass particles with vector V0/r and
    scalar S0/r repulsion, solved in the window 0 < M < 2m.

    States carry total_mass = M and energy = M - 2m < 0.  Empty for tau
    in {0, +-inf}; the threshold tau at the binding edge is reported in
    the diagnostics so either reading of the near-threshold restriction
    can be applied by the caller.
    """
    if v0 < 0.0 or s0 < 0.0:
        raise ValueError("v0 and s0 must be non-negative")
    if v0 == 0.0 and s0 == 0.0:
        raise UnsupportedProblemError(
            "v0 = s0 = 0 reduces to free particles; no bound-state problem"
        )
    p2 = (l + 0.5) ** 2 + (s0 * s0 - v0 * v0) / 4.0
    if not 0.0 < p2 < 0.25:
        raise RegimeError(f"P^2={p2!r} outside (0, 1/4): no two-branch window")
    p = math.sqrt(p2)
    thr = kg_two_particle_tau_threshold(v0, s0, m, l)
    diagnostics = [f"threshold tau at the binding edge: {thr!r}"]
    if tau.is_standard or tau.is_additional:
        return SpectrumResult(
            problem=None,
            tau=tau,
            states=(),
            diagnostics=tuple(diagnostics + ["no levels for tau in {0, +-inf}"]),
        )
    rhs = -tau.tau * gamma_ratio(1.0 - 2.0 * p, 1.0 + 2.0 * p)

    def g(mass: float) -> float:
        lam = _kg_lambda(m, v0, s0, mass)
        return (
            gamma_ratio(0.5 + lam - p, 0.5 + lam + p)
            * (4.0 * m * m - mass * mass) ** (-p)
            - rhs
        )

    # linear grid over the window plus a geometric approach to the edge
    grid = [2.0 * m * i / 801.0 for i in range(1, 800)]
    grid += [2.0 * m * (1.0 - 10.0 ** (-y / 16.0)) for y in range(48, 193)]
    grid = sorted(set(grid))
    roots = []
    prev_mass, prev_g = grid[0], g(grid[0])
    for mass in grid[1:]:
        cur = g(mass)
        if (cur < 0.0) != (prev_g < 0.0):
            root, _ = _bisect(g, prev_mass, mass, prev_g, 1e-13 * 2.0 * m)
            roots.append(root)
        prev_mass, prev_g = mass, cur
        if len(roots) >= count:
            break
    states = []
    for i, mass in enumerate(sorted(roots)[:count]):
        states.append(
            BoundState(
                energy=mass - 2.0 * m,
                n_r=i,
                branch="mixed",
                source="transcendental",
                lam=_kg_lambda(m, v0, s0, mass),
                total_mass=mass,
            )
        )
    return SpectrumResult(
        problem=None, tau=tau, states=tuple(states), diagnostics=tuple(diagnostics)
    )


class KGMap(NamedTuple):
    problem: RadialProblem
    effective_energy: float
    p: float


def kg_hydrogen_map(alpha_fs: float, l: int, e_guess: float, m: float) -> KGMap:
    """Map the one-particle relativistic Coulomb radial equation onto the
    nonrelativistic template.

    The squared-interaction term alpha^2/r^2 becomes the inverse-square
    core (2 m v0 -> alpha^2), the first-order term an effective Coulomb
    strength 2 E alpha, and E^2 - m^2 the effective energy; the exponent
    parameter is P = sqrt((l+1/2)^2 - alpha^2).
    """
    if (l + 0.5) ** 2 <= alpha_fs * alpha_fs:
        raise RegimeError("coupling too strong: fall regime")
    v0_eff = alpha_fs * alpha_fs / (2.0 * m)
    coulomb_eff = -e_guess * alpha_fs / m
    effective_energy = (e_guess * e_guess - m * m) / (2.0 * m)
    problem = RadialProblem(m=m, l=l, v0=v0_eff, coulomb=coulomb_eff)
    p = math.sqrt((l + 0.5) ** 2 - alpha_fs * alpha_fs)
    return KGMap(problem=problem, effective_energy=effective_energy, p=p)


def kg_hydrogen_level(
    alpha_fs: float,
    l: int,
    m: float,
    branch: str = "additional",
    n_r: int = 0,
    damping: float = 0.5,
    tol: float = 1e-10,
    max_iter: int = 200,
) -> float:
    """Self-consistent total energy E of a relativistic Coulomb level.

    The mapped effective problem depends on E through the effective
    Coulomb strength, so the closed-form level is iterated with damping
    until the fixed point: E_(k+1) = (1-w) E_k + w sqrt(m^2 - E_k^2
    alpha^2 / lam^2) with lam = 1/2 + n_r +- P.
    """
    if branch not in ("standard", "additional"):
        raise ValueError("branch must be 'standard' or 'additional'")
    sign = 1.0 if branch == "standard" else -1.0
    p = math.sqrt((l + 0.5) ** 2 - alpha_fs * alpha_fs)
    if branch == "additional" and not (0.0 < p < 0.5):
        raise BranchUnavailableError("additional branch requires 0 < P < 1/2")
    lam = 0.5 + n_r + sign * p
    # the map has slope -(alpha/lam)^2 at the fixed point, so the weight
    # must be at most ~2/(1 + (alpha/lam)^2) to converge; this choice
    # zeroes the damped slope
    w = min(damping, 1.0 / (1.0 + (alpha_fs / lam) ** 2))
    e = 0.9 * m
    for _ in range(max_iter):
        # clamped continuous extension of the map; iterates re-enter the
        # bound window 0 < E < m
        radicand = max(m * m - e * e * alpha_fs * alpha_fs / (lam * lam), 0.0)
        e_new = (1.0 - w) * e + w * math.sqrt(radicand)
        if abs(e_new - e) < tol * m:
            return e_new
        e = e_new
    raise BracketingError("fixed point did not converge")


def scarf_b(s: float, gamma_c: float, eta: float) -> float:
    """Connection coefficient B_s(eta) of the one-dimensional singular
    Coulomb problem, equal to the extension parameter as a function of
    the energy variable eta = sqrt(-2mE).

    B has zeros at eta = gamma_c/(n + 1/2 + s) (the standard tower) and
    poles at eta = gamma_c/(n + 1/2 - s) (the additional tower), with
    alternating sign between consecutive special points.
    """
    if not 0.0 < s < 0.5:
        raise ValueError("s must lie in (0, 1/2)")
    if gamma_c <= 0.0 or eta <= 0.0:
        raise ValueError("gamma_c and eta must be positive")
    x = gamma_c / eta
    return (
        -((2.0 * eta) ** (-2.0 * s))
        * gamma_ratio(1.0 + 2.0 * s, 1.0 - 2.0 * s)
        * gamma_ratio(0.5 - s - x, 0.5 + s - x)
    )


def ground_state_window(energy: float, problem: RadialProblem) -> bool:
    """Node-free window for a candidate ground level: -1 < 1/2 - P - lam < 0."""
    ana = analyze(problem)
    if ana.regime is not Regime.TWO_BRANCH or problem.coulomb >= 0.0:
        raise RegimeError("window defined for the attractive two-branch problem")
    if not energy < 0.0:
        raise ValueError("energy must be negative")
    lam = _lambda_of_energy(problem.m, -problem.coulomb, energy)
    a = 0.5 - ana.p - lam
    return -1.0 < a < 0.0

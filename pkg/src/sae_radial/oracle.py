"""Brute-force verification by direct integration of the radial equation.

Shooting method on a geometric mesh: outward from a truncated Frobenius
series that imposes the extension parameter tau as the ratio of the two
branch weights, inward from a decaying seed placed where the WKB decay
budget is exhausted, matched where both sweeps are well conditioned.
Eigenvalues are sign changes of the scaled Wronskian of the two sweeps,
refined by bisection; levels are indexed by the node count of the
composite solution.

The inner power-law region is filled from the series itself rather than
integrated: step-by-step integration across many decades of r feeds
rounding noise into the relatively growing branch and visibly biases
mixed-tau eigenvalues, while the series is exact there to far below the
discretization error.  The series-to-recurrence handoff radius is chosen
adaptively from the size of the last retained series term.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._numerov import (
    count_sign_changes,
    numerov_inward,
    numerov_outward,
    wkb_stop_index,
)
from .errors import (
    BranchUnavailableError,
    RegimeError,
    UnsupportedProblemError,
    UnnormalizedSolutionError,
)
from .singular import RadialProblem, Regime, analyze
from .spectra import BoundState, SAEParameter, SpectrumResult

__all__ = [
    "MeshSpec",
    "RadialSolution",
    "integrate_radial",
    "find_levels",
    "find_levels_with_solutions",
    "virial_residual",
    "orthogonality_defect",
    "overlap_integral",
    "e0_node_count",
    "spacing_report",
    "boundary_bracket_class",
]

_DEFAULT_PPD = 2000
_RMIN_FACTOR = 1e-8
_WKB_BUDGET = 38.0
_SERIES_TERMS = 12
_SERIES_TERM_TOL = 1e-16
_NODE_FLOOR = 1e-12


@dataclass(frozen=True)
class MeshSpec:
    """Explicit geometric mesh request."""

    r_min: float
    r_max: float
    points_per_decade: int = _DEFAULT_PPD


@dataclass(frozen=True, eq=False)
class RadialSolution:
    """A radial solution on its mesh with near-origin diagnostics.

    u is normalized to unit integral of u^2 dr (norm stores the value
    actually achieved by the quadrature).  a_st/a_add are the two branch
    coefficients fitted on the innermost decade; matching_defect is the
    mismatch of the outward and inward logarithmic derivatives at the
    matching radius, in units of inverse length.
    """

    problem: RadialProblem
    tau: SAEParameter
    energy: float
    mesh: np.ndarray
    u: np.ndarray
    node_count: int
    a_st: float
    a_add: float
    norm: float
    matching_defect: float


def _branch_weights(tau: SAEParameter) -> tuple:
    if tau.is_additional:
        return 0.0, 1.0
    return 1.0, tau.tau


def _tail_taylor(problem: RadialProblem, scale: float) -> tuple:
    """Quadratic Taylor model of the tail near the origin (probed)."""
    if problem.tail is None:
        return 0.0, 0.0, 0.0
    d = 1e-3 * min(scale, 1.0)
    s = np.array([1.0, 2.0, 4.0])
    vals = np.array([float(problem.tail(d * si)) for si in s])
    # T(d s) = c0 + c1 s + c2 s^2
    coeff = np.linalg.solve(np.vander(s, 3, increasing=True), vals)
    return float(coeff[0]), float(coeff[1]) / d, float(coeff[2]) / (d * d)


def _series_coefficients(
    s_exp: float, m: float, coulomb: float, energy: float, taylor: tuple
) -> np.ndarray:
    """Frobenius coefficients c_j of u = r^s sum_j c_j r^j, c_0 = 1.

    Recurrence from the radial equation with V = -v0/r^2 + coulomb/r +
    t0 + t1 r + t2 r^2: c_j = [2m coulomb c_(j-1) - 2m(E - t0) c_(j-2)
    + 2m t1 c_(j-3) + 2m t2 c_(j-4)] / (j (2s + j - 1)).
    """
    t0, t1, t2 = taylor
    c = np.zeros(_SERIES_TERMS + 1)
    c[0] = 1.0
    for j in range(1, _SERIES_TERMS + 1):
        num = 2.0 * m * coulomb * c[j - 1]
        if j >= 2:
            num -= 2.0 * m * (energy - t0) * c[j - 2]
        if j >= 3:
            num += 2.0 * m * t1 * c[j - 3]
        if j >= 4:
            num += 2.0 * m * t2 * c[j - 4]
        c[j] = num / (j * (2.0 * s_exp + j - 1.0))
    return c


def _series_eval(r, s_exp: float, coeffs: np.ndarray):
    poly = np.zeros_like(r)
    for cj in coeffs[::-1]:
        poly = poly * r + cj
    return r**s_exp * poly


def _series_handoff_radius(coeff_sets) -> float:
    """Largest r at which every retained series still has a negligible
    last term; the handoff to the recurrence happens at or below it."""
    r_ok = math.inf
    for c in coeff_sets:
        for j in (len(c) - 3, len(c) - 2, len(c) - 1):
            a = abs(c[j])
            if a > 0.0:
                r_ok = min(r_ok, (_SERIES_TERM_TOL / a) ** (1.0 / j))
    return r_ok


class _ShootContext:
    """Mesh, potential samples, and boundary data shared by one search."""

    def __init__(
        self,
        problem: RadialProblem,
        tau: SAEParameter,
        e_lo: float,
        e_hi: float,
        points_per_decade: int = _DEFAULT_PPD,
        mesh_spec: Optional[MeshSpec] = None,
    ):
        ana = analyze(problem)
        if ana.regime not in (Regime.TWO_BRANCH, Regime.STANDARD_ONLY):
            raise RegimeError(
                f"oracle integrates the power-branch regimes only, got {ana.regime.value}"
            )
        if ana.regime is Regime.STANDARD_ONLY and not tau.is_standard:
            raise BranchUnavailableError(
                "only the standard branch exists for P >= 1/2; tau must be 0"
            )
        self.problem = problem
        self.tau = tau
        self.p = ana.p
        self.weights = _branch_weights(tau)
        m = problem.m

        e_absmax = max(abs(e_lo), abs(e_hi))
        if e_absmax == 0.0:
            raise ValueError("energy window must not collapse onto 0")
        scale = 1.0 / math.sqrt(2.0 * m * e_absmax)
        if problem.coulomb != 0.0:
            scale = min(scale, 1.0 / (2.0 * m * abs(problem.coulomb)))
        self.length_scale = scale
        self.taylor = _tail_taylor(problem, scale)

        if mesh_spec is not None:
            r_min, r_max, ppd = (
                mesh_spec.r_min,
                mesh_spec.r_max,
                mesh_spec.points_per_decade,
            )
        else:
            r_min = _RMIN_FACTOR * scale
            r_max = self._probe_r_max(e_hi, r_min)
            ppd = points_per_decade
        n = int(math.log10(r_max / r_min) * ppd) + 2
        self.x = np.linspace(math.log(r_min), math.log(r_max), n)
        self.r = np.exp(self.x)
        self.h = self.x[1] - self.x[0]
        self.r2 = self.r * self.r
        b = 2.0 * m * problem.v0 - (problem.l + 0.5) ** 2 - 2.0 * m * problem.coulomb * self.r
        if problem.tail is not None:
            b = b - 2.0 * m * np.asarray(problem.tail(self.r), dtype=float) * self.r2
        self.b = b
        self.fit_hi = int(np.searchsorted(self.r, 10.0 * self.r[0]))

    # -- mesh construction helpers -------------------------------------

    def _probe_r_max(self, e_hi: float, r_min: float) -> float:
        """Smallest power-of-two extension whose forbidden region past the
        matching radius carries the full WKB decay budget at e_hi."""
        m = self.problem.m
        r_max = 40.0 * self.length_scale
        if e_hi < 0.0:
            r_max = max(r_max, _WKB_BUDGET / math.sqrt(-2.0 * m * e_hi))
        for _ in range(60):
            n = max(int(math.log10(r_max / r_min) * 50), 8)
            r = np.geomspace(r_min, r_max, n)
            h = math.log(r[1] / r[0])
            v = self.problem.potential(r)
            f = 2.0 * m * (e_hi - v) * r * r - (self.problem.l + 0.5) ** 2
            if f[-1] < 0.0:
                start = len(f) - 1
                pos = np.nonzero(f > 0.0)[0]
                if len(pos):
                    start = pos[-1]
                elif e_hi < 0.0:
                    start = int(
                        np.searchsorted(r, 3.0 / math.sqrt(-2.0 * m * e_hi))
                    )
                    start = min(start, len(f) - 1)
                else:
                    start = 0
                decay = np.sqrt(np.maximum(-f[start:], 0.0)).sum() * h
                if decay >= _WKB_BUDGET:
                    return r_max
            r_max *= 2.0
        raise UnsupportedProblemError(
            "could not bound the classically forbidden region; window top "
            "may sit in the continuum of a non-confining potential"
        )

    # -- single-energy machinery ---------------------------------------

    def _match_index(self, f: np.ndarray, energy: float) -> int:
        candidates = [self.r[-1] / 3.0]
        pos = np.nonzero(f > 0.0)[0]
        if len(pos):
            candidates.append(self.r[pos[-1]])
        if energy < 0.0:
            candidates.append(3.0 / math.sqrt(-2.0 * self.problem.m * energy))
        im = int(np.searchsorted(self.r, min(candidates)))
        return max(12, min(im, len(self.r) - 7))

    def _start_data(self, energy: float, im: int):
        m = self.problem.m
        w_st, w_add = self.weights
        sets = []
        c_plus = c_minus = None
        if w_st != 0.0:
            c_plus = _series_coefficients(0.5 + self.p, m, self.problem.coulomb, energy, self.taylor)
            sets.append(c_plus)
        if w_add != 0.0:
            c_minus = _series_coefficients(0.5 - self.p, m, self.problem.coulomb, energy, self.taylor)
            sets.append(c_minus)
        r_ok = min(_series_handoff_radius(sets), 0.05 * self.length_scale)
        i0 = int(np.searchsorted(self.r, r_ok)) - 1
        i0 = max(0, min(i0, im - 10))

        def u_series(rr):
            u = np.zeros_like(rr)
            if c_plus is not None:
                u = u + w_st * _series_eval(rr, 0.5 + self.p, c_plus)
            if c_minus is not None:
                u = u + w_add * _series_eval(rr, 0.5 - self.p, c_minus)
            return u

        return i0, u_series

    def shoot(self, energy: float):
        """Scaled Wronskian of the outward and inward sweeps at the match
        point; zero exactly at eigenvalues, sign-definite between them."""
        f = 2.0 * self.problem.m * energy * self.r2 + self.b
        im = self._match_index(f, energy)
        i0, u_series = self._start_data(energy, im)
        r0, r1 = self.r[i0], self.r[i0 + 1]
        v0 = float(u_series(np.array([r0]))[0]) / math.sqrt(r0)
        v1 = float(u_series(np.array([r1]))[0]) / math.sqrt(r1)
        sc = max(abs(v0), abs(v1))
        if sc == 0.0:
            raise RuntimeError("degenerate series start")
        i_stop = int(wkb_stop_index(f, self.h, im, _WKB_BUDGET))
        i_stop = max(i_stop, im + 5)
        v_out = numerov_outward(f, self.h, i0, im + 2, v0 / sc, v1 / sc)
        seed = 1e-30
        seed_prev = seed * math.exp(math.sqrt(max(-f[i_stop], 0.0)) * self.h)
        v_in = numerov_inward(f, self.h, im - 2, i_stop, seed, seed_prev)
        d_out = (
            -v_out[im + 2] + 8.0 * v_out[im + 1] - 8.0 * v_out[im - 1] + v_out[im - 2]
        ) / (12.0 * self.h)
        d_in = (
            -v_in[im + 2] + 8.0 * v_in[im + 1] - 8.0 * v_in[im - 1] + v_in[im - 2]
        ) / (12.0 * self.h)
        w = d_out * v_in[im] - d_in * v_out[im]
        scale = (abs(d_out) + abs(v_out[im])) * (abs(d_in) + abs(v_in[im]))
        return w / scale, (f, im, i0, i_stop, u_series, v_out, v_in, d_out, d_in)

    def solution(self, energy: float) -> RadialSolution:
        """Composite normalized solution at (or near) an eigenvalue."""
        _, (f, im, i0, i_stop, u_series, v_out, v_in, d_out, d_in) = self.shoot(energy)
        r = self.r
        n = len(r)
        u = np.zeros(n)
        u[i0 : im + 1] = v_out[i0 : im + 1] * np.sqrt(r[i0 : im + 1])
        ref = u_series(r[i0 : i0 + 1])[0]
        if ref != 0.0:
            u[:i0] = u_series(r[:i0]) * (u[i0] / ref)
        if v_in[im] != 0.0:
            c_in = v_out[im] / v_in[im]
            u[im + 1 : i_stop + 1] = c_in * v_in[im + 1 : i_stop + 1] * np.sqrt(
                r[im + 1 : i_stop + 1]
            )
        umax = float(np.max(np.abs(u)))
        u /= umax
        a_st, a_add = self._fit_coefficients(u, energy)
        norm2 = self._norm_squared(u, a_st, a_add)
        scale = math.sqrt(norm2)
        u /= scale
        a_st /= scale
        a_add /= scale
        defect = (d_out / v_out[im] - d_in / v_in[im]) / r[im]
        nodes = int(count_sign_changes(u, _NODE_FLOOR * float(np.max(np.abs(u)))))
        return RadialSolution(
            problem=self.problem,
            tau=self.tau,
            energy=energy,
            mesh=r,
            u=u,
            node_count=nodes,
            a_st=a_st,
            a_add=a_add,
            norm=1.0,
            matching_defect=float(defect),
        )

    def _fit_coefficients(self, u: np.ndarray, energy: float) -> tuple:
        """Least-squares branch coefficients on the innermost decade."""
        k = self.fit_hi
        rr = self.r[:k]
        m = self.problem.m
        c_plus = _series_coefficients(0.5 + self.p, m, self.problem.coulomb, energy, self.taylor)
        basis_plus = _series_eval(rr, 0.5 + self.p, c_plus)
        if self.p >= 0.5:
            a_st = float(np.dot(basis_plus, u[:k]) / np.dot(basis_plus, basis_plus))
            return a_st, 0.0
        c_minus = _series_coefficients(0.5 - self.p, m, self.problem.coulomb, energy, self.taylor)
        basis_minus = _series_eval(rr, 0.5 - self.p, c_minus)
        design = np.column_stack([basis_plus, basis_minus])
        coef, *_ = np.linalg.lstsq(design, u[:k], rcond=None)
        return float(coef[0]), float(coef[1])

    def _norm_squared(self, u: np.ndarray, a_st: float, a_add: float) -> float:
        body = float(np.trapezoid(u * u * self.r, self.x))
        return body + _origin_moment(self.r[0], self.p, a_st, a_add, 1)


def _origin_moment(r_min: float, p: float, a1s, a1a, power: int, b2s=None, b2a=None):
    """Analytic integral of u1*u2*r^(power-1) dr over (0, r_min) from the
    fitted power forms; power=1 is the plain overlap, power=0 the 1/r
    moment."""
    b2s = a1s if b2s is None else b2s
    b2a = a1a if b2a is None else b2a
    out = 0.0
    for ca, cb, expo in (
        (a1s, b2s, 1.0 + 2.0 * p),
        (a1s, b2a, 1.0),
        (a1a, b2s, 1.0),
        (a1a, b2a, 1.0 - 2.0 * p),
    ):
        if ca == 0.0 or cb == 0.0:
            continue
        q = expo + power
        out += ca * cb * r_min**q / q
    return out


def integrate_radial(
    problem: RadialProblem,
    energy: float,
    tau: SAEParameter,
    mesh_spec: Optional[MeshSpec] = None,
    points_per_decade: int = _DEFAULT_PPD,
) -> RadialSolution:
    """Integrate the radial equation at one energy and return the
    normalized composite solution with its matching defect."""
    if not energy < 0.0:
        raise ValueError("integrate_radial requires energy < 0")
    ctx = _ShootContext(
        problem, tau, energy, energy, points_per_decade=points_per_decade,
        mesh_spec=mesh_spec,
    )
    return ctx.solution(energy)


def _scan_grid(e_lo: float, e_hi: float) -> np.ndarray:
    if e_hi < 0.0:
        n = int(40.0 * math.log10(e_lo / e_hi)) + 2
        n = max(n, 16)
        return -np.geomspace(-e_lo, -e_hi, n)
    n = 400
    grid = np.linspace(e_lo, e_hi, n)
    return grid[grid != 0.0]


def find_levels_with_solutions(
    problem: RadialProblem,
    tau: SAEParameter,
    e_window: tuple,
    max_states: int,
    points_per_decade: int = _DEFAULT_PPD,
):
    """Locate eigenvalues in e_window and return them with solutions.

    Sign changes of the matching functional on a coarse grid are refined
    by bisection to 1e-10 relative; a gap in the node-count sequence of
    the collected states triggers a denser rescan of the offending
    sub-interval.  Returns (SpectrumResult, [RadialSolution]).
    """
    e_lo, e_hi = e_window
    if not e_lo < e_hi:
        raise ValueError("e_window must be (low, high) with low < high")
    if e_hi > 0.0 and problem.tail is None:
        raise RegimeError("positive energies require a confining tail")
    ctx = _ShootContext(problem, tau, e_lo, e_hi, points_per_decade)
    diagnostics = [
        f"mesh: {len(ctx.r)} points on [{ctx.r[0]:.6g}, {ctx.r[-1]:.6g}]"
    ]

    def refine(a: float, b: float, w_a: float) -> float:
        neg = w_a < 0.0
        for _ in range(90):
            mid = 0.5 * (a + b)
            if mid <= min(a, b) or mid >= max(a, b):
                break
            if abs(b - a) <= 1e-10 * abs(mid):
                break
            w_mid, _ = ctx.shoot(mid)
            if (w_mid < 0.0) == neg:
                a = mid
            else:
                b = mid
        return 0.5 * (a + b)

    def scan(grid: np.ndarray) -> list:
        found = []
        w_prev = None
        e_prev = None
        for e in grid:
            w, _ = ctx.shoot(float(e))
            if (
                w_prev is not None
                and np.isfinite(w)
                and np.isfinite(w_prev)
                and (w < 0.0) != (w_prev < 0.0)
            ):
                found.append(refine(e_prev, float(e), w_prev))
            w_prev, e_prev = w, float(e)
        return found

    roots = scan(_scan_grid(e_lo, e_hi))
    solutions = [ctx.solution(e) for e in roots]
    solutions.sort(key=lambda s: s.energy)

    # node-count gaps reveal roots the coarse grid stepped over
    for _round in range(2):
        gaps = []
        for s1, s2 in zip(solutions, solutions[1:]):
            if s2.node_count - s1.node_count > 1:
                gaps.append((s1.energy, s2.energy))
        if not gaps:
            break
        diagnostics.append(f"rescanning {len(gaps)} node-count gap(s)")
        for a, b in gaps:
            sub = np.linspace(a, b, 120)[1:-1]
            for e in scan(sub):
                solutions.append(ctx.solution(e))
        solutions.sort(key=lambda s: s.energy)

    solutions = solutions[:max_states]
    if len(solutions) < max_states:
        diagnostics.append(
            f"window too narrow: found {len(solutions)} of {max_states} requested"
        )
    states = tuple(
        BoundState(
            energy=s.energy,
            n_r=s.node_count,
            branch=tau.kind if tau is not None else "mixed",
            source="oracle",
            lam=(
                2.0 * problem.m * abs(problem.coulomb)
                / math.sqrt(-8.0 * problem.m * s.energy)
                if problem.coulomb != 0.0
                else None
            ),
        )
        for s in solutions
    )
    result = SpectrumResult(
        problem=problem, tau=tau, states=states, diagnostics=tuple(diagnostics)
    )
    return result, solutions


def find_levels(
    problem: RadialProblem,
    tau: SAEParameter,
    e_window: tuple,
    max_states: int,
    points_per_decade: int = _DEFAULT_PPD,
) -> SpectrumResult:
    """Eigenvalues in e_window, indexed by node count."""
    result, _ = find_levels_with_solutions(
        problem, tau, e_window, max_states, points_per_decade
    )
    return result


def _check_normalized(solution: RadialSolution) -> None:
    x = np.log(solution.mesh)
    ana = analyze(solution.problem)
    body = float(np.trapezoid(solution.u**2 * solution.mesh, x))
    body += _origin_moment(
        solution.mesh[0], ana.p, solution.a_st, solution.a_add, 1
    )
    if abs(body - 1.0) > 1e-6:
        raise UnnormalizedSolutionError(f"norm^2 = {body!r}, expected 1")


def virial_residual(
    solution: RadialSolution,
    problem: Optional[RadialProblem] = None,
    generalized: bool = True,
) -> float:
    """Residual of the virial identity E = <V + r V'/2> + (P^2/m) a_st a_add.

    The inverse-square part of V cancels identically inside <V + rV'/2>;
    the Coulomb part contributes <coulomb/(2r)> and the tail is handled
    by numerical differentiation on the mesh.  With generalized=False the
    boundary term (P^2/m) a_st a_add is dropped, which is only valid for
    pure branches.
    """
    problem = problem if problem is not None else solution.problem
    if not problem.same_equation(solution.problem):
        raise ValueError("solution was computed for a different problem")
    _check_normalized(solution)
    ana = analyze(problem)
    r = solution.mesh
    x = np.log(r)
    u2 = solution.u**2
    expect = 0.0
    if problem.coulomb != 0.0:
        inv_r = float(np.trapezoid(u2, x))
        inv_r += _origin_moment(r[0], ana.p, solution.a_st, solution.a_add, 0)
        expect += 0.5 * problem.coulomb * inv_r
    if problem.tail is not None:
        t = np.asarray(problem.tail(r), dtype=float)
        dt_dx = np.gradient(t, x)
        expect += float(np.trapezoid(u2 * (t + 0.5 * dt_dx) * r, x))
    boundary = (ana.p**2 / problem.m) * solution.a_st * solution.a_add if generalized else 0.0
    return solution.energy - expect - boundary


def _require_same_mesh(s1: RadialSolution, s2: RadialSolution) -> None:
    if not s1.problem.same_equation(s2.problem):
        raise ValueError("solutions belong to different problems")
    if s1.mesh.shape != s2.mesh.shape or not np.array_equal(s1.mesh, s2.mesh):
        raise ValueError("solutions must share a mesh; integrate on a common MeshSpec")


def orthogonality_defect(s1: RadialSolution, s2: RadialSolution) -> float:
    """Two-level orthogonality bracket from the fitted boundary
    coefficients, oriented so that it equals m (E2 - E1) * integral of
    u1 u2 dr (the lower boundary term enters the two-level identity with
    a minus sign, fixed here by direct numerical comparison of both
    routes).  Zero iff the levels share one extension parameter; the
    logarithmic boundary case carries 1/2 in place of P."""
    if not s1.problem.same_equation(s2.problem):
        raise ValueError("solutions belong to different problems")
    if s1.energy == s2.energy:
        raise ValueError("levels must be distinct")
    ana = analyze(s1.problem)
    bracket = s1.a_st * s2.a_add - s2.a_st * s1.a_add
    if ana.regime is Regime.LOG_CASE:
        return 0.5 * bracket
    return -ana.p * bracket


def overlap_integral(s1: RadialSolution, s2: RadialSolution) -> float:
    """m (E2 - E1) * integral of u1 u2 dr on the shared mesh."""
    _require_same_mesh(s1, s2)
    ana = analyze(s1.problem)
    x = np.log(s1.mesh)
    body = float(np.trapezoid(s1.u * s2.u * s1.mesh, x))
    body += _origin_moment(
        s1.mesh[0], ana.p, s1.a_st, s1.a_add, 1, s2.a_st, s2.a_add
    )
    return s1.problem.m * (s2.energy - s1.energy) * body


def e0_node_count(
    problem: RadialProblem,
    tau: SAEParameter,
    points_per_decade: int = _DEFAULT_PPD,
) -> int:
    """Node count of the zero-energy solution, which equals the number of
    bound states for the pure inverse-square problem."""
    ana = analyze(problem)
    if ana.regime is not Regime.TWO_BRANCH:
        raise RegimeError("zero-energy node analysis requires the two-branch regime")
    if problem.coulomb != 0.0:
        raise UnsupportedProblemError(
            "zero-energy node counting implemented for coulomb = 0 only"
        )
    if tau.tau == 0.0 or tau.is_additional:
        r_char = 1.0
    else:
        r_char = abs(tau.tau) ** (1.0 / (2.0 * ana.p))
    r_min, r_max = 1e-6 * r_char, 1e6 * r_char
    n = int(math.log10(r_max / r_min) * points_per_decade) + 2
    x = np.linspace(math.log(r_min), math.log(r_max), n)
    r = np.exp(x)
    h = x[1] - x[0]
    m = problem.m
    f = 2.0 * m * problem.v0 - (problem.l + 0.5) ** 2 + np.zeros_like(r)
    if problem.tail is not None:
        f -= 2.0 * m * np.asarray(problem.tail(r), dtype=float) * r * r
    w_st, w_add = _branch_weights(tau)
    taylor = _tail_taylor(problem, r_char)
    u0 = np.zeros(2)
    for k in range(2):
        if w_st != 0.0:
            c = _series_coefficients(0.5 + ana.p, m, 0.0, 0.0, taylor)
            u0[k] += w_st * float(_series_eval(r[k : k + 1], 0.5 + ana.p, c)[0])
        if w_add != 0.0:
            c = _series_coefficients(0.5 - ana.p, m, 0.0, 0.0, taylor)
            u0[k] += w_add * float(_series_eval(r[k : k + 1], 0.5 - ana.p, c)[0])
    sc = max(abs(u0[0]), abs(u0[1]))
    v = numerov_outward(
        f, h, 0, n - 1, u0[0] / sc / math.sqrt(r[0]), u0[1] / sc / math.sqrt(r[1])
    )
    u = v * np.sqrt(r)
    return int(count_sign_changes(u, _NODE_FLOOR * float(np.max(np.abs(u)))))


def spacing_report(
    problem: RadialProblem,
    tau: SAEParameter,
    n_levels: int,
    e_window: Optional[tuple] = None,
    points_per_decade: int = _DEFAULT_PPD,
) -> list:
    """Consecutive level gaps E_(k+1) - E_k from the shooting search.

    Meant for problems with a regular tail (confining oscillator-like
    tails or short-range wells); the window is derived from the tail
    scale when not given.
    """
    if problem.tail is None:
        raise UnsupportedProblemError("spacing analysis requires a tail")
    if e_window is None:
        e_char = math.sqrt(2.0 * abs(float(problem.tail(1.0))) / problem.m)
        e_char = e_char if e_char > 0.0 else 1.0
        v_far = float(problem.potential(200.0))
        if v_far > 0.0:
            e_window = (-30.0 * e_char, (2.0 * n_levels + 3.0) * e_char)
        else:
            e_window = (-30.0 * e_char, -1e-6 * e_char)
    result = find_levels(problem, tau, e_window, n_levels, points_per_decade)
    energies = result.energies
    if len(energies) < n_levels:
        warnings.warn(
            f"found only {len(energies)} of {n_levels} requested levels",
            stacklevel=2,
        )
    return [b - a for a, b in zip(energies, energies[1:])]


_BRACKET_CLASSES = {
    "schrodinger": "identically_zero",
    "klein_gordon": "identically_zero",
    "dirac": "nonzero",
}


def boundary_bracket_class(exponent_pair, equation_kind: str) -> str:
    """Whether the origin limit of the orthogonality bracket vanishes
    identically for the singular branch of each equation type.

    For the scalar equations the bracket is proportional to
    a* a' - a a'* of a single coefficient pair and vanishes for real
    (bound-state) coefficients; the first-order system pairs two
    independent coefficients and the bracket survives.
    """
    if equation_kind not in _BRACKET_CLASSES:
        raise ValueError(f"unknown equation kind {equation_kind!r}")
    try:
        n = len(exponent_pair)
    except TypeError:
        raise ValueError("exponent_pair must be a pair of exponents")
    if n == 0 or n > 2:
        raise ValueError("exponent_pair must hold one or two exponents")
    return _BRACKET_CLASSES[equation_kind]

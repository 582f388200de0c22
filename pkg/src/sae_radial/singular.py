"""Near-origin analysis of radial problems.

Classifies the r -> 0 behaviour of a radial Schrodinger problem with an
attractive inverse-square core: the singularity strength gamma, the
exponent parameter P, the Frobenius exponent pair 1/2 +- P, and one of
four regimes (standard-only, two-branch, logarithmic boundary, fall to
the center).  Also hosts the quantum-defect expansion and the
single-parameter classification used for the generalized inverse-square
family.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, NamedTuple, Optional

from .errors import BranchUnavailableError, NoRootError, RegimeError

__all__ = [
    "Regime",
    "RadialProblem",
    "SingularityAnalysis",
    "analyze",
    "additional_exists",
    "kinetic_convergence",
    "QuantumDefect",
    "quantum_defect",
    "e0_node_radius",
    "giri_g_classify",
    "oscillator_tail",
    "sinh_squared_problem",
    "LOG_CASE_TOL",
]

#: |P^2| below this is treated as the exact logarithmic boundary case.
LOG_CASE_TOL = 1e-12


class Regime(str, Enum):
    STANDARD_ONLY = "STANDARD_ONLY"
    TWO_BRANCH = "TWO_BRANCH"
    LOG_CASE = "LOG_CASE"
    FALL_TO_CENTER = "FALL_TO_CENTER"


@dataclass(frozen=True)
class RadialProblem:
    """A radial problem in hbar = 1 units.

    The potential is  V(r) = -v0/r^2 + coulomb/r + tail(r)  with positive
    v0 attractive and negative coulomb attractive.  tail must be regular
    at the origin in the sense r^2 * tail(r) -> 0, which is checked
    numerically on construction.
    """

    m: float
    l: int
    v0: float
    coulomb: float = 0.0
    tail: Optional[Callable] = None
    tail_label: str = field(default="", compare=True)

    def __post_init__(self):
        if not (self.m > 0.0 and math.isfinite(self.m)):
            raise ValueError(f"mass must be positive, got {self.m!r}")
        if not (isinstance(self.l, int) and self.l >= 0):
            raise ValueError(f"l must be a non-negative integer, got {self.l!r}")
        for name in ("v0", "coulomb"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.tail is not None:
            t6 = 1e-12 * float(self.tail(1e-6))
            t8 = 1e-16 * float(self.tail(1e-8))
            if abs(t8) > max(0.05 * abs(t6), 1e-12):
                raise ValueError(
                    "tail is not regular at the origin: r^2*tail(r) does "
                    f"not decay ({t6!r} at 1e-6 vs {t8!r} at 1e-8)"
                )

    def potential(self, r):
        """Total potential V(r); accepts scalars or numpy arrays."""
        v = -self.v0 / (r * r) + self.coulomb / r
        if self.tail is not None:
            v = v + self.tail(r)
        return v

    def same_equation(self, other: "RadialProblem") -> bool:
        """True when both describe the same radial equation at the same l."""
        return (
            self.m == other.m
            and self.l == other.l
            and self.v0 == other.v0
            and self.coulomb == other.coulomb
            and (self.tail is other.tail or self.tail_label == other.tail_label)
        )


@dataclass(frozen=True)
class SingularityAnalysis:
    """Result of the near-origin exponent analysis."""

    gamma: float
    p_squared: float
    p: Optional[float]
    imag_p: Optional[float]
    exponents: Optional[tuple]
    regime: Regime
    anti_centrifugal: bool


def analyze(problem: RadialProblem) -> SingularityAnalysis:
    """Classify the near-origin behaviour of a radial problem.

    gamma = 2 m v0 - l(l+1) measures the net attraction of the r^-2 core
    after the centrifugal term; P^2 = 1/4 - gamma.  Real 0 < P < 1/2
    admits a second (additional) normalizable branch, P^2 < 0 is the
    oscillatory fall regime, P^2 = 0 the logarithmic boundary.
    """
    g = 2.0 * problem.m * problem.v0 - problem.l * (problem.l + 1)
    p2 = 0.25 - g
    if abs(p2) <= LOG_CASE_TOL:
        return SingularityAnalysis(
            gamma=g, p_squared=p2, p=0.0, imag_p=None,
            exponents=(0.5, 0.5), regime=Regime.LOG_CASE,
            anti_centrifugal=False,
        )
    if p2 < 0.0:
        return SingularityAnalysis(
            gamma=g, p_squared=p2, p=None, imag_p=math.sqrt(-p2),
            exponents=None, regime=Regime.FALL_TO_CENTER,
            anti_centrifugal=False,
        )
    p = math.sqrt(p2)
    two_branch = p < 0.5
    return SingularityAnalysis(
        gamma=g, p_squared=p2, p=p, imag_p=None,
        exponents=(0.5 + p, 0.5 - p),
        regime=Regime.TWO_BRANCH if two_branch else Regime.STANDARD_ONLY,
        anti_centrifugal=two_branch,
    )


def additional_exists(problem: RadialProblem) -> bool:
    """True iff l(l+1) < 2 m v0 < l(l+1) + 1/4 (both strict).

    The interval test is exactly the TWO_BRANCH condition, so it is
    evaluated through the same arithmetic as analyze(); the upper
    boundary itself is the logarithmic case and does not count.
    """
    return analyze(problem).regime is Regime.TWO_BRANCH


def kinetic_convergence(analysis: SingularityAnalysis, branch: str) -> str:
    """Whether the mean kinetic energy integral converges for a branch.

    The integrand near the origin is (dR/dr)^2 r^2 ~ r^(-1 +- 2P); the
    standard branch converges for any P > 0, the additional branch and
    the oscillatory (fall) solutions always diverge.
    """
    if branch == "standard":
        if analysis.regime is Regime.FALL_TO_CENTER:
            raise BranchUnavailableError("no standard power branch in the fall regime")
        return "converges" if analysis.p and analysis.p > 0.0 else "diverges"
    if branch == "additional":
        if analysis.regime is not Regime.TWO_BRANCH:
            raise BranchUnavailableError(
                f"additional branch absent in regime {analysis.regime.value}"
            )
        return "diverges"
    if branch == "oscillatory":
        if analysis.regime is not Regime.FALL_TO_CENTER:
            raise BranchUnavailableError("oscillatory branch exists only in the fall regime")
        return "diverges"
    raise ValueError(f"unknown branch {branch!r}")


class QuantumDefect(NamedTuple):
    delta_l: float
    expansion_valid: bool
    additional_possible: bool


def quantum_defect(problem: RadialProblem) -> QuantumDefect:
    """Rydberg correction of the standard levels and the additional-level
    existence test expressed through the effective quantum number.

    delta_l = -2 m v0 / (2l+1) is the small-v0 standard-branch defect.
    The additional branch carries defect -(l + 1/2 + P); existence of
    additional levels is the statement that its magnitude lies strictly
    between l and l+1.  That interval test is cross-checked against the
    direct window on 2 m v0 and any disagreement is surfaced as a warning
    rather than hidden.
    """
    if problem.coulomb >= 0.0:
        raise RegimeError("quantum defect defined for attractive Coulomb only")
    if problem.v0 <= 0.0:
        raise RegimeError("quantum defect requires an attractive r^-2 core")
    two_m_v0 = 2.0 * problem.m * problem.v0
    delta_l = -two_m_v0 / (2 * problem.l + 1)
    expansion_valid = two_m_v0 <= 0.1 * (problem.l + 0.5) ** 2
    ana = analyze(problem)
    if ana.p is None:
        possible = False
    else:
        defect_add = problem.l + 0.5 + ana.p
        possible = problem.l < defect_add < problem.l + 1
    direct = additional_exists(problem)
    if possible != direct:
        warnings.warn(
            "defect-interval test and the direct 2mV0 window disagree "
            f"(defect form: {possible}, direct: {direct}); boundary case",
            stacklevel=2,
        )
    return QuantumDefect(delta_l, expansion_valid, possible)


def e0_node_radius(a_st: float, a_add: float, p: float) -> float:
    """Zero of u = a_st r^(1/2+P) + a_add r^(1/2-P); needs opposite signs."""
    if not 0.0 < p < 0.5:
        raise RegimeError(f"node radius defined for 0 < P < 1/2, got {p!r}")
    if a_st == 0.0 or a_add == 0.0 or (a_st > 0) == (a_add > 0):
        raise NoRootError("coefficients must be nonzero with opposite signs")
    return (-a_add / a_st) ** (1.0 / (2.0 * p))


def giri_g_classify(g: float) -> str:
    """Classify the strength g of a generalized r^-2 problem, P^2 = 1/4 + g.

    Only -1/4 < g < 0 (i.e. 0 < P < 1/2) supports the single bound level;
    g >= 0 leaves the standard-only regime with no level, and g <= -1/4
    is the fall regime.
    """
    if g <= -0.25:
        return "fall_region"
    if g < 0.0:
        return "single_level_region"
    return "no_bound_state_region"


def oscillator_tail(g: float) -> Callable:
    """Regular tail g*r^2 (array-safe)."""

    def tail(r):
        return g * r * r

    return tail


def sinh_squared_problem(
    m: float, l: int, strength: float, alpha_scale: float
) -> RadialProblem:
    """Problem for V(r) = -strength / sinh^2(alpha_scale * r).

    The potential carries an attractive inverse-square core of size
    strength/alpha_scale^2; the remainder is a regular tail and is stored
    as such, so the near-origin analysis sees the correct P.
    """
    import numpy as np

    v0 = strength / (alpha_scale * alpha_scale)

    def tail(r):
        # strength * (1/z^2 - 1/sinh^2 z): series below z = 0.1 (the direct
        # difference cancels catastrophically), expm1 form above (stable
        # against sinh overflow)
        z = alpha_scale * np.asarray(r, dtype=float)
        z2 = z * z
        small = z < 0.1
        series = 1.0 / 3.0 - z2 / 15.0 + 2.0 * z2 * z2 / 189.0
        e = -np.expm1(-2.0 * np.where(small, 1.0, z))
        direct = 1.0 / np.where(small, 1.0, z2) - 4.0 * np.exp(
            -2.0 * np.where(small, 1.0, z)
        ) / (e * e)
        out = strength * np.where(small, series, direct)
        return out if out.ndim else float(out)

    return RadialProblem(
        m=m, l=l, v0=v0, coulomb=0.0, tail=tail,
        tail_label=f"sinh2:{strength}:{alpha_scale}",
    )

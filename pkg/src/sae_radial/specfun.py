"""Real-order special-function kernel.

Self-contained double-precision implementations of the functions the
eigenvalue solvers need: log-Gamma with sign tracking (Lanczos
approximation plus reflection), Gamma ratios, digamma, the confluent
hypergeometric pair M and Psi, the decaying Whittaker function, and
modified Bessel functions I/K of real fractional order.

Everything is plain Python floats; accuracy targets are ~1e-13 for
Gamma-family values and 1e-8..1e-10 for the confluent functions inside
their stated argument budgets.  Near-degenerate parameter points (2P or
b within 1e-4 of an integer, where the two-solution connection formulas
cancel) raise CancellationError instead of silently degrading.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import AccuracyLossError, CancellationError, PoleError

__all__ = [
    "SignedLogValue",
    "log_gamma",
    "gamma",
    "gamma_ratio",
    "digamma",
    "kummer_m",
    "tricomi_psi",
    "whittaker_w",
    "bessel_i",
    "bessel_k",
    "KUMMER_Z_BUDGET",
]

# Lanczos approximation, g = 7, 9 coefficients.  Relative accuracy of
# exp(log_gamma) is ~1e-14 over the reflected real line.
_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)

#: Largest z for which the term-recurrence sum of M(a,b;z) is guaranteed
#: to meet its accuracy target; larger arguments must go through the
#: asymptotic or ODE routes.
KUMMER_Z_BUDGET = 30.0

_NEAR_INTEGER_TOL = 1e-4


@dataclass(frozen=True)
class SignedLogValue:
    """A real number stored as log|x| plus its sign.

    sign is +1, -1, or 0; sign == 0 encodes an exact zero (log_magnitude
    is then -inf).  Keeps Gamma values representable at arguments where
    the value itself would overflow or where the sign alternates.
    """

    log_magnitude: float
    sign: int

    @property
    def value(self) -> float:
        if self.sign == 0:
            return 0.0
        try:
            return self.sign * math.exp(self.log_magnitude)
        except OverflowError:
            return self.sign * math.inf


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0.0 and math.isfinite(x) and x == math.floor(x)


def _sinpi(x: float) -> float:
    """sin(pi*x) with argument reduction, accurate for large |x|."""
    n = math.floor(x)
    r = x - n
    s = math.sin(math.pi * r)
    return -s if (int(n) % 2) else s


def _cotpi(x: float) -> float:
    """cot(pi*x) with argument reduction; x must not be an integer."""
    r = x - math.floor(x)
    return math.cos(math.pi * r) / math.sin(math.pi * r)


def _lanczos_log_gamma(x: float) -> float:
    # valid for x >= 0.5
    acc = _LANCZOS_COEFFS[0]
    for i in range(1, len(_LANCZOS_COEFFS)):
        acc += _LANCZOS_COEFFS[i] / (x - 1.0 + i)
    t = x + _LANCZOS_G - 0.5
    return _HALF_LOG_TWO_PI + (x - 0.5) * math.log(t) - t + math.log(acc)


def log_gamma(x: float) -> SignedLogValue:
    """Gamma(x) as a signed log value, for any real x off the poles."""
    if not math.isfinite(x):
        raise ValueError(f"log_gamma requires finite x, got {x!r}")
    if _is_nonpositive_integer(x):
        raise PoleError(f"Gamma pole at x={x!r}")
    if x >= 0.5:
        return SignedLogValue(_lanczos_log_gamma(x), 1)
    # reflection: Gamma(x) = pi / (sin(pi x) * Gamma(1 - x)); 1 - x > 0.5
    s = _sinpi(x)
    log_mag = math.log(math.pi) - math.log(abs(s)) - _lanczos_log_gamma(1.0 - x)
    return SignedLogValue(log_mag, 1 if s > 0 else -1)


def gamma(x: float) -> float:
    """Gamma(x) as a float; overflows to signed infinity."""
    return log_gamma(x).value


def gamma_ratio(a: float, b: float) -> float:
    """Gamma(a)/Gamma(b) evaluated in log space with sign tracking.

    A pole of the numerator raises PoleError; a pole of the denominator
    is treated as the limit Gamma(b) -> inf, returning exactly 0.0.
    """
    if _is_nonpositive_integer(a):
        raise PoleError(f"Gamma pole in numerator at a={a!r}")
    if _is_nonpositive_integer(b):
        return 0.0
    la = log_gamma(a)
    lb = log_gamma(b)
    sign = la.sign * lb.sign
    try:
        return sign * math.exp(la.log_magnitude - lb.log_magnitude)
    except OverflowError:
        return sign * math.inf


# asymptotic coefficients of psi(x) ~ ln x - 1/(2x) - sum c_k / x^(2k)
_DIGAMMA_ASYMPTOTIC = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
)


def digamma(x: float) -> float:
    """Logarithmic derivative of Gamma; psi(x+1) = psi(x) + 1/x."""
    if _is_nonpositive_integer(x):
        raise PoleError(f"digamma pole at x={x!r}")
    if x < 0.5:
        # psi(x) = psi(1-x) - pi*cot(pi*x)
        return digamma(1.0 - x) - math.pi * _cotpi(x)
    acc = 0.0
    while x < 10.0:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    series = 0.0
    power = inv2
    for c in _DIGAMMA_ASYMPTOTIC:
        series += c * power
        power *= inv2
    return acc + math.log(x) - 0.5 / x - series


def kummer_m(a: float, b: float, z: float) -> float:
    """Confluent hypergeometric M(a,b;z) by compensated term recurrence.

    Guaranteed-accuracy budget is z <= KUMMER_Z_BUDGET; larger z raises
    AccuracyLossError so callers switch to an asymptotic or ODE route.
    Terminates exactly when a is a non-positive integer (polynomial case).
    """
    if _is_nonpositive_integer(b):
        raise PoleError(f"M(a,b;z) parameter pole at b={b!r}")
    if z < 0.0:
        raise ValueError("kummer_m requires z >= 0")
    if z > KUMMER_Z_BUDGET * (1.0 + 1e-12):
        raise AccuracyLossError(
            f"z={z!r} beyond the series budget {KUMMER_Z_BUDGET}"
        )
    total = 1.0
    comp = 0.0  # Kahan compensation
    term = 1.0
    k = 0
    while k < 1000:
        term *= (a + k) * z / ((b + k) * (k + 1))
        if term == 0.0:
            break
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        k += 1
        if abs(term) < 1e-17 * abs(total) and k > 4:
            break
    return total


def _pochhammer_series_psi_asymptotic(a: float, b: float, z: float) -> float:
    # Psi(a,b;z) ~ z^-a * sum_k (-1)^k (a)_k (a-b+1)_k / (k! z^k),
    # truncated at the smallest term.
    term = 1.0
    total = 1.0
    smallest = abs(term)
    for k in range(60):
        term *= -(a + k) * (a - b + 1.0 + k) / ((k + 1) * z)
        if abs(term) >= smallest:
            break
        smallest = abs(term)
        total += term
        if abs(term) < 1e-16 * abs(total):
            break
    return math.exp(-a * math.log(z)) * total


def tricomi_psi(a: float, b: float, z: float) -> float:
    """Tricomi's confluent function Psi(a,b;z) for z > 0, b non-integer.

    Uses the two-M connection formula for z inside the series budget and
    the divergent asymptotic series (optimally truncated) beyond it.
    """
    if z <= 0.0:
        raise ValueError("tricomi_psi requires z > 0")
    if abs(b - round(b)) < _NEAR_INTEGER_TOL:
        raise CancellationError(
            f"b={b!r} within {_NEAR_INTEGER_TOL} of an integer; "
            "perturb and extrapolate"
        )
    if z > KUMMER_Z_BUDGET:
        return _pochhammer_series_psi_asymptotic(a, b, z)
    # Psi = G1 * M(a,b;z) + G2 * z^(1-b) * M(a-b+1, 2-b; z)
    c1 = gamma_ratio(1.0 - b, a - b + 1.0)
    c2 = gamma_ratio(b - 1.0, a)
    term1 = c1 * kummer_m(a, b, z) if c1 != 0.0 else 0.0
    term2 = (
        c2 * math.exp((1.0 - b) * math.log(z)) * kummer_m(a - b + 1.0, 2.0 - b, z)
        if c2 != 0.0
        else 0.0
    )
    return term1 + term2


def _whittaker_asymptotic(lam: float, p: float, x: float) -> float:
    # W ~ exp(-x/2) x^lam * sum_s t_s, t_0 = 1,
    # t_s = t_{s-1} * (p^2 - (lam - s + 1/2)^2) / (s x)
    term = 1.0
    total = 1.0
    smallest = abs(term)
    for s in range(1, 60):
        term *= (p * p - (lam - s + 0.5) ** 2) / (s * x)
        if abs(term) >= smallest:
            break
        smallest = abs(term)
        total += term
        if abs(term) < 1e-16 * abs(total):
            break
    return math.exp(-0.5 * x + lam * math.log(x)) * total


def whittaker_w(lam: float, p: float, x: float) -> float:
    """Exponentially decaying Whittaker function W_{lam,p}(x), x > 0.

    Requires 2p away from integers (the two-M connection degenerates
    there); large-lam pieces are assembled in log space with an overflow
    guard on the final exponential.
    """
    if x <= 0.0:
        raise ValueError("whittaker_w requires x > 0")
    if abs(2.0 * p - round(2.0 * p)) < _NEAR_INTEGER_TOL:
        raise CancellationError(
            f"2p={2.0 * p!r} within {_NEAR_INTEGER_TOL} of an integer; "
            "perturb and extrapolate"
        )
    if x >= KUMMER_Z_BUDGET:
        return _whittaker_asymptotic(lam, p, x)

    total = 0.0
    for mu in (p, -p):
        # coefficient Gamma(-2mu) / Gamma(1/2 - mu - lam)
        denom_arg = 0.5 - mu - lam
        if _is_nonpositive_integer(denom_arg):
            continue  # limit: this branch drops out
        num = log_gamma(-2.0 * mu)
        den = log_gamma(denom_arg)
        m_val = kummer_m(0.5 + mu - lam, 1.0 + 2.0 * mu, x)
        if m_val == 0.0:
            continue
        log_term = (
            num.log_magnitude
            - den.log_magnitude
            + math.log(abs(m_val))
            + (0.5 + mu) * math.log(x)
            - 0.5 * x
        )
        sign = num.sign * den.sign * (1 if m_val > 0 else -1)
        if log_term > 700.0:
            raise OverflowError(
                f"whittaker_w overflow: log-term {log_term:.1f} at "
                f"lam={lam!r}, p={p!r}, x={x!r}"
            )
        total += sign * math.exp(log_term)
    return total


_BESSEL_ASYMPTOTIC_X = 30.0
_BESSEL_K_COMBINATION_X = 10.0


def bessel_i(nu: float, x: float) -> float:
    """Modified Bessel function I_nu(x) for |nu| < 1, x >= 0."""
    if x < 0.0:
        raise ValueError("bessel_i requires x >= 0")
    if abs(nu) >= 1.0:
        raise ValueError("bessel_i implemented for |nu| < 1 only")
    if x == 0.0:
        if nu == 0.0:
            return 1.0
        return 0.0 if nu > 0.0 else math.inf
    if x >= _BESSEL_ASYMPTOTIC_X:
        # I ~ e^x / sqrt(2 pi x) * [1 - (mu-1)/(8x) + ...], mu = 4 nu^2
        mu = 4.0 * nu * nu
        term = 1.0
        total = 1.0
        smallest = abs(term)
        for k in range(1, 40):
            term *= -(mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
            if abs(term) >= smallest:
                break
            smallest = abs(term)
            total += term
            if abs(term) < 1e-16:
                break
        return math.exp(x) / math.sqrt(2.0 * math.pi * x) * total
    # ascending series: all terms positive, no cancellation
    term = math.exp(-log_gamma(nu + 1.0).log_magnitude)
    total = term
    q = 0.25 * x * x
    k = 0
    while k < 500:
        term *= q / ((k + 1.0) * (nu + k + 1.0))
        total += term
        k += 1
        if term < 1e-17 * total:
            break
    return total * math.exp(nu * math.log(0.5 * x))


def bessel_k(nu: float, x: float) -> float:
    """Modified Bessel function K_nu(x) for |nu| < 1 non-integer, x > 0.

    Small and moderate x go through the I_{-nu} - I_{nu} combination;
    beyond x = 10 the combination cancels catastrophically in doubles and
    the decaying asymptotic series takes over.
    """
    if x <= 0.0:
        raise ValueError("bessel_k requires x > 0")
    nu = abs(nu)  # K is even in its order
    if nu >= 1.0:
        raise ValueError("bessel_k implemented for |nu| < 1 only")
    if abs(nu - round(nu)) < _NEAR_INTEGER_TOL:
        raise CancellationError(
            f"nu={nu!r} within {_NEAR_INTEGER_TOL} of an integer order"
        )
    if x <= _BESSEL_K_COMBINATION_X:
        return (
            math.pi
            / (2.0 * _sinpi(nu))
            * (bessel_i(-nu, x) - bessel_i(nu, x))
        )
    # K ~ sqrt(pi/(2x)) e^-x [1 + (mu-1)/(8x) + ...], same a_k as I but
    # with uniform signs
    mu = 4.0 * nu * nu
    term = 1.0
    total = 1.0
    smallest = abs(term)
    for k in range(1, 40):
        term *= (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        if abs(term) >= smallest:
            break
        smallest = abs(term)
        total += term
        if abs(term) < 1e-16:
            break
    return math.sqrt(0.5 * math.pi / x) * math.exp(-x) * total

"""Special-function core: Gamma, Bessel J of real order, Bessel zeros and
ratios, and the Gauss hypergeometric function for nonpositive argument.

Everything here is scalar and deterministic.  Bessel functions are evaluated
by the ascending power series; for arguments where float64 cancellation would
eat the answer the same series is re-run in elevated precision (mpmath), so
the advertised absolute-error bound holds on the whole supported box.  The
Gauss function is evaluated through the Pfaff map w = z/(z-1) which turns
z <= 0 into w in [0, 1); for very large |z| (slow Pfaff convergence) a
connection formula in 1/z takes over.
"""

from __future__ import annotations

import math
from functools import lru_cache

import mpmath

from .errors import (
    ConvergenceError,
    DomainError,
    PoleError,
    UnsupportedRangeError,
)

__all__ = [
    "gamma",
    "rgamma",
    "bessel_j",
    "bessel_zero",
    "bessel_ratio",
    "bessel_ratio_dx",
    "hyp2f1",
    "hyp2f1_dz",
]

BESSEL_NU_MAX = 50.0
BESSEL_X_MAX = 200.0

# Above this argument the float64 ascending series has lost too many digits
# (largest term ~ e^x while J = O(1)); switch to the same series in mpmath.
_SERIES_FLOAT_XMAX = 10.0

_HYP_BIGZ = 40.0
_HYP_MAX_TERMS = 200_000


def _is_nonpositive_integer(x: float, tol: float = 1e-12) -> bool:
    return x <= tol and abs(x - round(x)) <= tol


def gamma(x: float) -> float:
    """Gamma function on the real line, poles excluded.

    Relative error is at libm level (well below 1e-12 on [0.5, 170]).
    """
    if _is_nonpositive_integer(x):
        raise PoleError(f"gamma pole at x={x!r}")
    try:
        return math.gamma(x)
    except ValueError as exc:  # pragma: no cover - guarded above
        raise PoleError(f"gamma pole at x={x!r}") from exc
    except OverflowError as exc:
        raise DomainError(f"gamma({x!r}) overflows double precision") from exc


def rgamma(x: float) -> float:
    """Reciprocal Gamma, with the natural value 0 at the poles."""
    if _is_nonpositive_integer(x):
        return 0.0
    try:
        return 1.0 / math.gamma(x)
    except OverflowError:
        return 0.0


def _bessel_series_float(nu: float, x: float) -> float:
    half = 0.5 * x
    try:
        term = half**nu / math.gamma(nu + 1.0)
    except OverflowError:
        term = math.exp(nu * math.log(half) - math.lgamma(nu + 1.0))
    ratio = -(half * half)
    total = term
    comp = 0.0  # Kahan carry
    k = 1
    while True:
        term *= ratio / (k * (nu + k))
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if abs(term) <= 1e-18 * (abs(total) + 1e-300) and k > half:
            return total
        k += 1
        if k > 10_000:  # series always terminates long before this on the box
            raise ConvergenceError(f"bessel series stalled at nu={nu}, x={x}")


def _bessel_series_mp(nu: float, x: float) -> float:
    # digits lost ~ x/ln(10); pad generously
    dps = 25 + int(0.46 * x)
    with mpmath.workdps(dps):
        half = mpmath.mpf(x) / 2
        nu_mp = mpmath.mpf(nu)
        term = half**nu_mp / mpmath.gamma(nu_mp + 1)
        ratio = -(half * half)
        total = term
        tiny = mpmath.mpf(10) ** (-dps)
        k = 1
        while True:
            # k*(nu+k) must stay in mpf: a double here would poison every
            # term with 1e-16 relative error, fatal under the cancellation
            term *= ratio / (k * (nu_mp + k))
            total += term
            if abs(term) <= tiny * (abs(total) + 1) and k > x / 2:
                return float(total)
            k += 1


def _bessel_j_any(nu: float, x: float) -> float:
    """Series evaluation without the public box check (internal use)."""
    if x == 0.0:
        return 1.0 if nu == 0.0 else 0.0
    if x <= _SERIES_FLOAT_XMAX:
        return _bessel_series_float(nu, x)
    return _bessel_series_mp(nu, x)


def bessel_j(nu: float, x: float) -> float:
    """Bessel function of the first kind J_nu(x) on 0<=nu<=50, 0<=x<=200."""
    if not (0.0 <= nu <= BESSEL_NU_MAX):
        raise UnsupportedRangeError(f"bessel_j order nu={nu!r} outside [0, {BESSEL_NU_MAX}]")
    if not (0.0 <= x <= BESSEL_X_MAX):
        raise UnsupportedRangeError(f"bessel_j argument x={x!r} outside [0, {BESSEL_X_MAX}]")
    return _bessel_j_any(nu, x)


def _bessel_j_dx(nu: float, x: float) -> float:
    """dJ_nu/dx for x > 0, via the standard recurrences."""
    if nu >= 1.0:
        return _bessel_j_any(nu - 1.0, x) - (nu / x) * _bessel_j_any(nu, x)
    return (nu / x) * _bessel_j_any(nu, x) - _bessel_j_any(nu + 1.0, x)


def _first_zero_estimate(nu: float) -> float:
    if nu < 1.0:
        beta = (0.75 + nu / 2.0) * math.pi
        return beta - (4.0 * nu * nu - 1.0) / (8.0 * beta)
    # large-order expansion of the first zero
    c = nu ** (1.0 / 3.0)
    return nu + 1.8557571 * c + 1.033150 / c - 0.00397 / nu


@lru_cache(maxsize=4096)
def bessel_zero(nu: float, k: int) -> float:
    """k-th positive zero of J_nu, absolute error well below 1e-10.

    Sequential bracketing from an asymptotic first guess (McMahon for small
    orders), then Newton safeguarded by bisection inside the bracket.
    Supported for nu <= 50, k <= 20.
    """
    if not (0.0 <= nu <= BESSEL_NU_MAX):
        raise UnsupportedRangeError(f"bessel_zero order nu={nu!r} outside [0, {BESSEL_NU_MAX}]")
    if not (1 <= k <= 20):
        raise UnsupportedRangeError(f"bessel_zero index k={k!r} outside [1, 20]")

    if k == 1:
        lo = max(1e-3, 0.5 * _first_zero_estimate(nu))
    else:
        lo = bessel_zero(nu, k - 1) + 0.2
    # successive zeros are more than 3 apart for all nu >= 0, so a unit-step
    # scan cannot skip one
    f_lo = _bessel_j_any(nu, lo)
    hi = lo
    for _ in range(400):
        hi = hi + 1.0
        f_hi = _bessel_j_any(nu, hi)
        if f_lo * f_hi < 0.0:
            break
        lo, f_lo = hi, f_hi
    else:  # pragma: no cover
        raise ConvergenceError(f"no sign change located for j_({nu},{k})")

    x = 0.5 * (lo + hi)
    for _ in range(80):
        fx = _bessel_j_any(nu, x)
        if fx == 0.0:
            return x
        if f_lo * fx < 0.0:
            hi = x
        else:
            lo, f_lo = x, fx
        step = fx / _bessel_j_dx(nu, x)
        x_new = x - step
        if not (lo < x_new < hi):
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) <= 4e-15 * x:
            return x_new
        x = x_new
    return x


def bessel_ratio(nu: float, x: float) -> float:
    """J_{nu+1}(x) / J_nu(x) on 0 < x < j_{nu,1}; strictly positive there."""
    if not (0.0 <= nu <= BESSEL_NU_MAX):
        raise UnsupportedRangeError(f"bessel_ratio order nu={nu!r} outside [0, {BESSEL_NU_MAX}]")
    if not (x > 0.0):
        raise DomainError(f"bessel_ratio needs x > 0, got {x!r}")
    j1 = bessel_zero(nu, 1)
    if x >= j1:
        raise DomainError(
            f"bessel_ratio needs x < first zero j_({nu},1) = {j1:.12g}, got {x!r}"
        )
    return _bessel_j_any(nu + 1.0, x) / _bessel_j_any(nu, x)


def bessel_ratio_dx(nu: float, x: float, ratio: float | None = None) -> float:
    """d/dx of J_{nu+1}/J_nu, in closed form from the recurrences:
    r' = 1 - (2 nu + 1) r / x + r^2.
    """
    r = bessel_ratio(nu, x) if ratio is None else ratio
    return 1.0 - (2.0 * nu + 1.0) * r / x + r * r


def _series_2f1(a: float, b: float, c: float, x: float) -> float:
    """Plain ascending Gauss series at argument x, |x| < 1."""
    total = 1.0
    comp = 0.0
    term = 1.0
    k = 0
    small = 0
    while k < _HYP_MAX_TERMS:
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if term == 0.0:
            return total
        if abs(term) <= 1e-17 * (abs(total) + 1e-300):
            small += 1
            if small >= 3:
                return total
        else:
            small = 0
        k += 1
    raise ConvergenceError(
        f"hypergeometric series did not converge at x={x!r} "
        f"(parameters {a!r}, {b!r}, {c!r})"
    )


def _hyp2f1_bigz(a: float, b: float, c: float, z: float) -> float:
    """Connection formula in 1/z for z -> -inf; needs b - a non-integer."""
    inv = 1.0 / z
    coef_a = gamma(c) * gamma(b - a) * rgamma(b) * rgamma(c - a)
    coef_b = gamma(c) * gamma(a - b) * rgamma(a) * rgamma(c - b)
    out = 0.0
    if coef_a != 0.0:
        out += coef_a * (-z) ** (-a) * _series_2f1(a, a - c + 1.0, a - b + 1.0, inv)
    if coef_b != 0.0:
        out += coef_b * (-z) ** (-b) * _series_2f1(b, b - c + 1.0, b - a + 1.0, inv)
    return out


def hyp2f1(a: float, b: float, c: float, z: float) -> float:
    """Standard Gauss function F(a,b;c;z) for z <= 0.

    Evaluated as (1-z)^(-a) F(a, c-b; c; z/(z-1)) with the series at the
    mapped argument; for |z| > 40 (and non-integer b-a) the 1/z connection
    formula is used instead because the mapped series converges too slowly.
    """
    if _is_nonpositive_integer(c):
        raise PoleError(f"hyp2f1 third parameter c={c!r} is a nonpositive integer")
    if z > 0.0:
        raise UnsupportedRangeError(f"hyp2f1 argument z={z!r} > 0 unsupported")
    if z == 0.0:
        return 1.0
    if a > b:
        a, b = b, a  # series symmetry; keeps f(a,b,...) == f(b,a,...) bitwise
    if -z > _HYP_BIGZ and abs((b - a) - round(b - a)) > 1e-8:
        inner_c = abs(b - a) + 1.0
        if not _is_nonpositive_integer(inner_c):
            return _hyp2f1_bigz(a, b, c, z)
    w = z / (z - 1.0)
    return (1.0 - z) ** (-a) * _series_2f1(a, c - b, c, w)


def hyp2f1_dz(a: float, b: float, c: float, z: float) -> float:
    """dF/dz via the contiguous relation dF/dz = (a b / c) F(a+1,b+1;c+1;z)."""
    return (a * b / c) * hyp2f1(a + 1.0, b + 1.0, c + 1.0, z)

"""Independent oracles for the test suite.

Everything here is deliberately primitive (exponentials, bisection, direct
partial sums, central differences) and shares no code with the
implementations it checks.
"""

from __future__ import annotations

import math


def coth_exp(x: float) -> float:
    """coth via the exponential, valid away from 0 and overflow."""
    e2 = math.exp(2.0 * x)
    return (e2 + 1.0) / (e2 - 1.0)


def sinh_series(x: float, terms: int = 30) -> float:
    total = 0.0
    term = x
    for k in range(terms):
        total += term
        term *= x * x / ((2 * k + 2) * (2 * k + 3))
    return total


def bisect_root(f, lo: float, hi: float, iters: int = 200) -> float:
    flo = f(lo)
    if flo == 0.0:
        return lo
    assert flo * f(hi) < 0.0, "bisection bracket must straddle a root"
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if flo * fm < 0.0:
            hi = mid
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def central_diff(f, x: float, h: float) -> float:
    return (f(x + h) - f(x - h)) / (2.0 * h)


def bessel_series_direct(nu: float, x: float, terms: int = 200) -> float:
    """Plain float series; adequate as an oracle for x up to ~10."""
    half = 0.5 * x
    if x == 0.0:
        return 1.0 if nu == 0.0 else 0.0
    term = half**nu / math.gamma(nu + 1.0)
    total = term
    for k in range(1, terms):
        term *= -(half * half) / (k * (nu + k))
        total += term
    return total


def mcmahon_zero(nu: float, k: int) -> float:
    beta = (k + nu / 2.0 - 0.25) * math.pi
    mu = 4.0 * nu * nu
    return beta - (mu - 1.0) / (8.0 * beta)


def trigamma_asymptotic(z: float) -> float:
    """psi'(z) for large z: 1/z + 1/(2z^2) + 1/(6z^3) - 1/(30z^5) + 1/(42z^7)."""
    zi = 1.0 / z
    z2 = zi * zi
    return zi + 0.5 * z2 + z2 * zi / 6.0 - z2 * z2 * zi / 30.0 + z2 * z2 * z2 * zi / 42.0


def mittag_leffler_ratio(nu: float, x: float, computed_zeros, K: int = 20,
                         far: int = 4000) -> float:
    """sum 2x/(j_k^2 - x^2) with K computed zeros, a McMahon midrange, and an
    asymptotic trigamma tail; independent of any Bessel evaluation."""
    total = 0.0
    for k in range(1, K + 1):
        j = computed_zeros[k - 1]
        total += 2.0 * x / (j * j - x * x)
    for k in range(K + 1, far + 1):
        j = mcmahon_zero(nu, k)
        total += 2.0 * x / (j * j - x * x)
    # tail: 2x sum_{k>far} 1/j_k^2 with j_k ~ (k + nu/2 - 1/4) pi
    shift = nu / 2.0 - 0.25
    total += 2.0 * x / (math.pi * math.pi) * trigamma_asymptotic(far + 1 + shift)
    return total


def log_series(z: float, terms: int = 60) -> float:
    """-log(1-z)/z via its series, |z| < 1; equals F(1,1;2;z)."""
    total = 0.0
    for k in range(terms):
        total += z**k / (k + 1.0)
    return total


def gauss_series_direct(a: float, b: float, c: float, z: float,
                        terms: int = 400) -> float:
    """Direct Gauss series, usable as oracle for |z| < 1."""
    total = 1.0
    term = 1.0
    for k in range(terms):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z
        total += term
    return total


def golden_max(f, lo: float, hi: float, iters: int = 200):
    """Golden-section maximization, independent implementation."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def simpson(f, lo: float, hi: float, n: int = 4096) -> float:
    """Composite Simpson rule (n even)."""
    h = (hi - lo) / n
    total = f(lo) + f(hi)
    for i in range(1, n):
        total += f(lo + i * h) * (4.0 if i % 2 else 2.0)
    return total * h / 3.0

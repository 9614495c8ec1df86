"""Radial test functions for quadrature-based inequality checks.

All profiles are piecewise C^1 with u and u' evaluable at quadrature nodes,
vanishing (exactly, or below 1e-300) at the outer support boundary.  Kink
abscissae are exported as quadrature breakpoints.

power_cutoff is the near-extremal Hardy profile: an inner plateau on
(0, r0], the power t^(-sigma+eps) up to the cut start, then a p-capacitor
cut to 0 at R (the p-harmonic radial profile; for n = p a logarithmic cut,
for n < p a linear one).  The capacitor cut matters: its energy stays O(1)
per member while a linear cut in t costs enough to keep the achieved Hardy
quotient above 0.2524 for every float-representable r0, blocking the
documented 0.2510 sweep target.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from .errors import ParameterError
from .exprdsl import ScalarExpr

__all__ = [
    "RadialTestFunction",
    "compact_bump",
    "power_cutoff",
    "gaussian_type",
    "talenti",
    "from_expr",
]


@dataclass
class RadialTestFunction:
    kind: str
    u: Callable[[float], float]
    du: Callable[[float], float]
    support_lo: float
    support_hi: float
    breakpoints: tuple[float, ...] = ()
    singular_hint: float | None = None
    params: dict = field(default_factory=dict)
    # log-magnitude evaluators (-inf where the value is 0); near-extremal
    # profiles span magnitudes far beyond float range, so integrands must be
    # assembled in log space without ever materializing u or u'
    log_abs_u: Callable[[float], float] | None = None
    log_abs_du: Callable[[float], float] | None = None

    def __repr__(self):
        ps = ", ".join(f"{k}={v!r}" for k, v in self.params.items())
        return f"RadialTestFunction({self.kind}: {ps})"


def compact_bump(center: float, width: float) -> RadialTestFunction:
    """Smooth bump exp(1 - 1/(1-x^2)) on (center-width, center+width)."""
    if not (0.0 < width < center):
        raise ParameterError(f"need 0 < width < center, got center={center!r}, width={width!r}")

    def u(t: float) -> float:
        x = (t - center) / width
        if abs(x) >= 1.0:
            return 0.0
        return math.exp(1.0 - 1.0 / (1.0 - x * x))

    def du(t: float) -> float:
        x = (t - center) / width
        if abs(x) >= 1.0:
            return 0.0
        g = 1.0 - x * x
        return u(t) * (-2.0 * x / (g * g)) / width

    return RadialTestFunction(
        "compact_bump", u, du, center - width, center + width,
        breakpoints=(center - width, center, center + width),
        params={"center": center, "width": width})


def power_cutoff(eps: float, r0: float, R: float, n: int, p: float,
                 alpha: float = 0.0, cut_fraction: float = 0.01) -> RadialTestFunction:
    """Near-extremal Hardy profile for the weight t^alpha in dimension n.

    Plateau on (0, r0], power law t^(-sigma+eps) with sigma = (n+alpha-p)/p
    on [r0, cut_fraction*R], capacitor cut to 0 at R.
    """
    sigma = (n + alpha - p) / p
    if not (r0 > 0.0 and R > r0):
        raise ParameterError(f"need 0 < r0 < R, got r0={r0!r}, R={R!r}")
    rc = R * cut_fraction
    if rc <= r0:
        rc = math.sqrt(r0 * R)  # short power region: cut from the geometric midpoint
    if not (r0 < rc < R):
        raise ParameterError(f"cut start {rc!r} must lie inside (r0, R)")
    expo = -sigma + eps
    if expo * math.log(r0) > 690.0:
        raise ParameterError("plateau value overflows; raise r0 or lower sigma")
    plateau = r0**expo
    u_rc = rc**expo

    exp_np = n + alpha - p
    if exp_np > 0.0:
        ecut = -exp_np / (p - 1.0)
        denom = rc**ecut - R**ecut

        def cut(t: float) -> float:
            return u_rc * (t**ecut - R**ecut) / denom

        def dcut(t: float) -> float:
            return u_rc * ecut * t ** (ecut - 1.0) / denom
    elif exp_np == 0.0:
        lnr = math.log(R / rc)

        def cut(t: float) -> float:
            return u_rc * math.log(R / t) / lnr

        def dcut(t: float) -> float:
            return -u_rc / (t * lnr)
    else:
        span = R - rc

        def cut(t: float) -> float:
            return u_rc * (R - t) / span

        def dcut(t: float) -> float:
            return -u_rc / span

    log_r0 = math.log(r0)

    def log_abs_u(t: float) -> float:
        if t <= r0:
            return expo * log_r0
        if t <= rc:
            return expo * math.log(t)
        if t < R:
            v = cut(t)
            return math.log(v) if v > 0.0 else -math.inf
        return -math.inf

    def log_abs_du(t: float) -> float:
        if t <= r0 or t >= R:
            return -math.inf
        if t <= rc:
            return math.log(abs(expo)) + (expo - 1.0) * math.log(t)
        return math.log(abs(dcut(t)))

    def u(t: float) -> float:
        lg = log_abs_u(t)
        if lg == -math.inf:
            return 0.0
        return math.exp(lg) if lg < 700.0 else math.inf

    def du(t: float) -> float:
        if t <= r0 or t >= R:
            return 0.0
        if t <= rc:
            lg = log_abs_du(t)
            v = math.exp(lg) if lg < 700.0 else math.inf
            return math.copysign(v, expo)
        return dcut(t)

    return RadialTestFunction(
        "power_cutoff", u, du, 0.0, R,
        breakpoints=(r0, rc),
        singular_hint=p * eps - 1.0,
        params={"eps": eps, "r0": r0, "R": R, "sigma": sigma},
        log_abs_u=log_abs_u, log_abs_du=log_abs_du)


def gaussian_type(alpha: float, p: float, scale: float = 1.0) -> RadialTestFunction:
    """u(t) = exp(-(scale*t)^gamma / p), gamma = 1 + alpha/(p-1)."""
    gamma = 1.0 + alpha / (p - 1.0)
    if gamma <= 0.0:
        raise ParameterError(f"need gamma = 1 + alpha/(p-1) > 0, got {gamma!r}")
    if scale <= 0.0:
        raise ParameterError(f"need scale > 0, got {scale!r}")
    R = (700.0 * p) ** (1.0 / gamma) / scale

    def u(t: float) -> float:
        return math.exp(-((scale * t) ** gamma) / p)

    def du(t: float) -> float:
        if t == 0.0:
            return 0.0 if gamma > 1.0 else -scale / p if gamma == 1.0 else -math.inf
        return -(gamma / p) * scale * (scale * t) ** (gamma - 1.0) * u(t)

    return RadialTestFunction(
        "gaussian_type", u, du, 0.0, R,
        params={"alpha": alpha, "p": p, "scale": scale, "gamma": gamma})


def talenti(alpha: float, p: float, r: float, scale: float = 1.0,
            taper_start: float | None = None) -> RadialTestFunction:
    """u(t) = (1 + (scale*t)^gamma)^((p-1)/(p-r)) with a linear outer taper.

    The taper starts where the algebraic tail is ~1e-5 of the peak, so its
    contribution to every integral is far below sweep tolerances.
    """
    if not r > p:
        raise ParameterError(f"talenti profile needs r > p, got r={r!r}, p={p!r}")
    gamma = 1.0 + alpha / (p - 1.0)
    if gamma <= 0.0:
        raise ParameterError(f"need gamma > 0, got {gamma!r}")
    ex = (p - 1.0) / (p - r)  # negative
    if taper_start is None:
        taper_start = 200.0 / scale
    R = 2.0 * taper_start

    def core(t: float) -> float:
        return (1.0 + (scale * t) ** gamma) ** ex

    def dcore(t: float) -> float:
        if t == 0.0:
            return 0.0 if gamma > 1.0 else ex * scale if gamma == 1.0 else -math.inf
        base = 1.0 + (scale * t) ** gamma
        return ex * base ** (ex - 1.0) * gamma * scale * (scale * t) ** (gamma - 1.0)

    u_ts = core(taper_start)
    span = R - taper_start

    def u(t: float) -> float:
        if t <= taper_start:
            return core(t)
        if t < R:
            return u_ts * (R - t) / span
        return 0.0

    def du(t: float) -> float:
        if t <= taper_start:
            return dcore(t)
        if t < R:
            return -u_ts / span
        return 0.0

    return RadialTestFunction(
        "talenti", u, du, 0.0, R, breakpoints=(taper_start,),
        params={"alpha": alpha, "p": p, "r": r, "scale": scale, "gamma": gamma})


def random_bumps(count: int, seed: int, lo: float = 0.0, hi: float = math.inf,
                 span: float = 10.0) -> list[RadialTestFunction]:
    """Deterministic family of smooth bumps inside (lo, hi)."""
    import random

    rng = random.Random(seed)
    hi_eff = min(hi, (lo if lo > 0.0 else 0.0) + span)
    out = []
    for _ in range(count):
        center = rng.uniform(lo + 0.15 * (hi_eff - lo), lo + 0.85 * (hi_eff - lo))
        max_w = min(center - lo, hi_eff - center)
        width = rng.uniform(0.2, 0.9) * max_w
        out.append(compact_bump(center, width))
    return out


def from_expr(expr: ScalarExpr, R: float, binding: dict | None = None) -> RadialTestFunction:
    """Wrap a parsed expression of t as a test function on (0, R]."""
    b = dict(binding or {})

    def u(t: float) -> float:
        return expr.eval(t, b) if t < R else 0.0

    def du(t: float) -> float:
        return expr.eval_d(t, b)[1] if t < R else 0.0

    return RadialTestFunction("dsl", u, du, 0.0, R, params={"source": expr.source})

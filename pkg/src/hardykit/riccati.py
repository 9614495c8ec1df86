"""Riccati-pair residuals, grid certification, and the Bessel-pair bridge.

A weight triple (w, L, W) on an interval, together with a candidate G,
satisfies the first-order differential inequality

    G'(t) + (w'(t)/w(t) + L(t)) G(t) - (p-1) |G(t)|^(p') >= W(t)

when the pair is admissible; the residual is the left side minus W.
Certification samples the residual on a dense grid (512 log-spaced points
plus endpoint refinement), normalizes by 1 + |W| so the verdict is relative
near singular endpoints and absolute elsewhere, and checks the sign
condition on G required when L is a strict Laplacian lower bound.

The equality case of the inequality is a Riccati ODE; solve_ivp integrates
it with blow-up detection (a blow-up abscissa approximates a zero of the
associated second-order positive solution).  bessel_to_riccati and
riccati_to_bessel convert between G and that positive solution y via
G = -|y'|^(p-2) y' / y^(p-1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Protocol, Sequence, runtime_checkable

from . import quadrature
from .errors import ConvergenceError, DomainError, HardykitError, ParameterError
from .geometry import ModelGeometry
from .rk45 import IntegrationOutcome, integrate_to_samples

__all__ = [
    "RiccatiPairSpec",
    "CertificationReport",
    "ResidualParts",
    "FuncEval",
    "certification_grid",
    "residual",
    "residual_parts",
    "certify",
    "solve_ivp",
    "RiccatiTrajectory",
    "bessel_to_riccati",
    "riccati_to_bessel",
    "optimize_constant",
    "golden_section_max",
]


@runtime_checkable
class Evaluable(Protocol):
    def eval(self, t: float, binding: dict | None = None) -> float: ...


class FuncEval:
    """Adapter presenting plain Python callables as expression-like objects."""

    def __init__(self, fn: Callable[[float], float],
                 dfn: Callable[[float], float] | None = None,
                 name: str = "<function>"):
        self.fn = fn
        self.dfn = dfn
        self.name = name

    def eval(self, t: float, binding: dict | None = None) -> float:
        return self.fn(t)

    def eval_d(self, t: float, binding: dict | None = None) -> tuple[float, float]:
        if self.dfn is not None:
            return self.fn(t), self.dfn(t)
        h = 1e-6 * (1.0 + abs(t))
        return self.fn(t), (self.fn(t + h) - self.fn(t - h)) / (2.0 * h)

    def __repr__(self):
        return f"FuncEval({self.name})"


@dataclass
class RiccatiPairSpec:
    """The data of one weighted Riccati-pair certification problem.

    g_sign_required encodes the sign condition on admissible G: +1 requires
    G >= 0 (the default; mandatory whenever L is a strict lower bound for
    the Laplacian of the distance function), -1 requires G <= 0 (triples
    built on a superharmonic distance-to-boundary), and 0 means no sign
    restriction (L is the exact model Laplacian, where the comparison step
    is an identity).  require_G_nonneg mirrors the +1 case as a boolean.
    """

    geo: ModelGeometry
    t_lo: float
    t_hi: float
    w: Evaluable
    L: Evaluable
    W: Evaluable
    params: dict = field(default_factory=dict)
    g_sign_required: int = 1
    homogeneity_hint: float | None = None
    rho_kind: str = "radial_distance"

    def __post_init__(self):
        if not (0.0 <= self.t_lo < self.t_hi):
            raise ParameterError(f"invalid interval ({self.t_lo!r}, {self.t_hi!r})")
        if self.g_sign_required not in (-1, 0, 1):
            raise ParameterError("g_sign_required must be -1, 0 or +1")

    @property
    def require_G_nonneg(self) -> bool:
        return self.g_sign_required == 1

    def binding(self) -> dict:
        b = self.geo.binding()
        b.update(self.params)
        return b


@dataclass(frozen=True)
class ResidualParts:
    g: float
    dg: float
    drift: float        # w'/w + L
    convex_term: float  # (p-1)|G|^{p'}
    w_target: float     # W(t)

    @property
    def value(self) -> float:
        return self.dg + self.drift * self.g - self.convex_term - self.w_target


def residual_parts(spec: RiccatiPairSpec, G, t: float) -> ResidualParts:
    b = spec.binding()
    gv, gd = G.eval_d(t, b)
    wv, wd = spec.w.eval_d(t, b)
    if not wv > 0.0:
        raise DomainError(f"weight w({t!r}) = {wv!r} is not positive")
    lv = spec.L.eval(t, b)
    wtarget = spec.W.eval(t, b)
    p = spec.geo.p
    convex = (p - 1.0) * abs(gv) ** spec.geo.p_conj
    return ResidualParts(g=gv, dg=gd, drift=wd / wv + lv, convex_term=convex,
                         w_target=wtarget)


def residual(spec: RiccatiPairSpec, G, t: float) -> float:
    """G' + (w'/w + L) G - (p-1)|G|^{p'} - W at one abscissa."""
    return residual_parts(spec, G, t).value


def certification_grid(
    t_lo: float,
    t_hi: float,
    n: int = 512,
    policy: str = "log",
    custom: Sequence[float] | None = None,
) -> list[float]:
    """Interior sample grid; an infinite right endpoint is handled through
    the compactification u = t/(1+t).  Log policy concentrates points at the
    left endpoint; 16 extra points probe the immediate endpoint neighborhood.
    """
    if policy == "custom":
        if not custom:
            raise ParameterError("custom grid policy needs points")
        pts = sorted(set(float(t) for t in custom))
        if pts[0] <= t_lo or pts[-1] >= t_hi:
            raise ParameterError("custom grid points must be interior to the interval")
        return pts
    if n < 2:
        raise ParameterError("grid needs at least 2 points")

    infinite = math.isinf(t_hi)
    a = t_lo / (1.0 + t_lo) if infinite else t_lo
    b = 1.0 if infinite else t_hi
    span = b - a

    if policy == "log":
        s_lo, s_hi = 1e-8, 1.0 - 1e-3
        lg_lo, lg_hi = math.log(s_lo), math.log(s_hi)
        fracs = [math.exp(lg_lo + (lg_hi - lg_lo) * i / (n - 1)) for i in range(n)]
    elif policy == "uniform":
        s_lo, s_hi = 1e-6, 1.0 - 1e-3
        fracs = [s_lo + (s_hi - s_lo) * i / (n - 1) for i in range(n)]
    else:
        raise ParameterError(f"unknown grid policy {policy!r}")

    ts = [u / (1.0 - u) if infinite else u for u in (a + span * s for s in fracs)]
    if t_lo > 0.0:
        ts.extend(t_lo * (1.0 + k * 1e-3 / 16.0) for k in range(1, 17))
    else:
        deep = (a + span * 1e-12 * (1e4 ** (k / 15.0)) for k in range(16))
        ts.extend(u / (1.0 - u) if infinite else u for u in deep)
    return [t for t in sorted(set(ts)) if t_lo < t < t_hi]


@dataclass
class CertificationReport:
    grid: list[float]
    residuals: list[float]          # normalized: residual / (1 + |W|)
    min_residual: float
    argmin_t: float
    max_abs_residual: float
    min_G: float
    max_G: float
    verdict: str                    # "certified" | "failed" | "inconclusive"
    witness_t: float | None
    reason: str
    tolerance_used: float
    g_sign_required: int

    @property
    def certified(self) -> bool:
        return self.verdict == "certified"


def certify(
    spec: RiccatiPairSpec,
    G,
    grid_policy: str = "log",
    tol: float = 1e-8,
    n_points: int = 512,
    custom_grid: Sequence[float] | None = None,
) -> CertificationReport:
    """Grid certification of the Riccati-pair inequality for candidate G.

    Certified means the normalized residual stays above -tol at every grid
    point and the sign condition on G holds to the same tolerance.  The
    tolerance is an artifact policy (the inequality itself is pointwise);
    it is recorded in the report.
    """
    grid = certification_grid(spec.t_lo, spec.t_hi, n=n_points, policy=grid_policy,
                              custom=custom_grid)
    residuals: list[float] = []
    min_r = math.inf
    argmin = grid[0]
    max_abs = 0.0
    min_g = math.inf
    max_g = -math.inf
    hint = spec.homogeneity_hint
    for t in grid:
        try:
            parts = residual_parts(spec, G, t)
            r = parts.value
            if hint is not None and hint < 0.0:
                scale = t ** (-hint)
                rn = (r * scale) / (1.0 + abs(parts.w_target * scale))
            else:
                rn = r / (1.0 + abs(parts.w_target))
            if not (math.isfinite(rn) and math.isfinite(parts.g)):
                raise DomainError("non-finite residual")
            if not parts.w_target > 0.0:
                raise DomainError(f"target W({t!r}) = {parts.w_target!r} is not positive")
        except HardykitError as exc:
            return CertificationReport(
                grid=grid, residuals=residuals, min_residual=min_r, argmin_t=argmin,
                max_abs_residual=max_abs, min_G=min_g, max_G=max_g,
                verdict="inconclusive", witness_t=t,
                reason=f"evaluation failed at t={t!r}: {exc}", tolerance_used=tol,
                g_sign_required=spec.g_sign_required)
        residuals.append(rn)
        if rn < min_r:
            min_r, argmin = rn, t
        max_abs = max(max_abs, abs(rn))
        min_g = min(min_g, parts.g)
        max_g = max(max_g, parts.g)

    ok = min_r >= -tol
    reason = ""
    witness = None
    if not ok:
        witness = argmin
        reason = f"residual {min_r:.6g} below -tol at t={argmin:.6g}"
    if ok and spec.g_sign_required == 1 and min_g < -tol:
        ok = False
        witness = argmin
        reason = f"sign condition violated: min G = {min_g:.6g} < -tol"
    if ok and spec.g_sign_required == -1 and max_g > tol:
        ok = False
        witness = argmin
        reason = f"sign condition violated: max G = {max_g:.6g} > tol"
    return CertificationReport(
        grid=grid, residuals=residuals, min_residual=min_r, argmin_t=argmin,
        max_abs_residual=max_abs, min_G=min_g, max_G=max_g,
        verdict="certified" if ok else "failed", witness_t=witness, reason=reason,
        tolerance_used=tol, g_sign_required=spec.g_sign_required)


@dataclass
class RiccatiTrajectory:
    ts: list[float]
    gs: list[float]
    blew_up: bool
    blow_up_t: float | None
    reason: str = ""


def solve_ivp(
    spec: RiccatiPairSpec,
    t0: float,
    G0: float,
    direction: str = "forward",
    sample_ts: Sequence[float] | None = None,
    rel_tol: float = 1e-10,
) -> RiccatiTrajectory:
    """Integrate the equality ODE G' = W + (p-1)|G|^{p'} - (w'/w + L) G.

    A reported blow-up abscissa approximates a zero of the positive solution
    of the associated second-order equation.
    """
    if direction not in ("forward", "backward"):
        raise ParameterError(f"direction must be forward or backward, got {direction!r}")
    b = spec.binding()
    p = spec.geo.p
    pp = spec.geo.p_conj

    def f(t: float, g: float) -> float:
        wv, wd = spec.w.eval_d(t, b)
        lv = spec.L.eval(t, b)
        wt = spec.W.eval(t, b)
        return wt + (p - 1.0) * abs(g) ** pp - (wd / wv + lv) * g

    if sample_ts is None:
        lo = max(spec.t_lo * 1.001, t0 / 10.0) if spec.t_lo > 0 else t0 / 10.0
        hi = min(spec.t_hi, t0 * 10.0)
        sample_ts = [lo + (hi - lo) * i / 63.0 for i in range(64)]
    samples = sorted(sample_ts, reverse=(direction == "backward"))
    if samples:
        ahead = samples[-1] >= t0 if direction == "forward" else samples[-1] <= t0
        behind_start = samples[0] < t0 if direction == "forward" else samples[0] > t0
        if behind_start or not ahead:
            raise ConvergenceError(
                f"samples must lie {direction} of t0={t0!r}")
    out: IntegrationOutcome = integrate_to_samples(f, t0, G0, samples, rel_tol=rel_tol)
    ts, gs = out.ts, out.ys
    if direction == "backward":
        ts, gs = ts[::-1], gs[::-1]
    return RiccatiTrajectory(ts=ts, gs=gs, blew_up=out.blew_up,
                             blow_up_t=out.blow_up_t, reason=out.reason)


class GFromSolution:
    """G = -|y'|^(p-2) y' / y^(p-1) built from a positive profile y(t).

    The derivative path needs y''; it is estimated by a central difference
    of the exact first derivative (O(h^2), h = 1e-6 (1+t)).
    """

    def __init__(self, y, p: float, binding: dict | None = None):
        self.y = y
        self.p = p
        self.binding = dict(binding or {})

    def _yv_yd(self, t: float) -> tuple[float, float]:
        yv, yd = self.y.eval_d(t, self.binding)
        if not yv > 0.0:
            raise DomainError(f"profile y({t!r}) = {yv!r} is not positive")
        return yv, yd

    def eval(self, t: float, binding: dict | None = None) -> float:
        yv, yd = self._yv_yd(t)
        p = self.p
        return -math.copysign(abs(yd) ** (p - 1.0), yd) / yv ** (p - 1.0)

    def eval_d(self, t: float, binding: dict | None = None) -> tuple[float, float]:
        yv, yd = self._yv_yd(t)
        p = self.p
        h = 1e-6 * (1.0 + abs(t))
        ydp = self.y.eval_d(t + h, self.binding)[1]
        ydm = self.y.eval_d(t - h, self.binding)[1]
        ypp = (ydp - ydm) / (2.0 * h)
        g = -math.copysign(abs(yd) ** (p - 1.0), yd) / yv ** (p - 1.0)
        if yd == 0.0:
            if p < 2.0:
                raise DomainError("G' singular where y' = 0 for p < 2")
            dg = 0.0 if p > 2.0 else -(p - 1.0) * ypp / yv
        else:
            dg = -(p - 1.0) * abs(yd) ** (p - 2.0) * (ypp * yv - yd * yd) / yv**p
        return g, dg


def bessel_to_riccati(y, p: float, binding: dict | None = None) -> GFromSolution:
    """Riccati candidate from a positive second-order profile y."""
    return GFromSolution(y, p, binding)


class YFromG:
    """Positive profile y(t) = exp(-integral_anchor^t sgn(G)|G|^(1/(p-1))).

    Divergence of the integral is boundary behavior (y tends to 0 or inf),
    not a failure.
    """

    def __init__(self, G, p: float, t_anchor: float, binding: dict | None = None):
        self.G = G
        self.p = p
        self.t_anchor = t_anchor
        self.binding = dict(binding or {})
        self._cache: dict[float, float] = {t_anchor: 0.0}

    def _integrand(self, s: float) -> float:
        g = self.G.eval(s, self.binding)
        return math.copysign(abs(g) ** (1.0 / (self.p - 1.0)), g)

    def eval(self, t: float, binding: dict | None = None) -> float:
        anchor = min(self._cache, key=lambda x: abs(x - t))
        if t != anchor:
            lo, hi = (anchor, t) if t > anchor else (t, anchor)
            val, _ = quadrature.integrate(self._integrand, lo, hi, rel_tol=1e-11)
            acc = self._cache[anchor] + (val if t > anchor else -val)
            self._cache[t] = acc
        total = self._cache[t]
        try:
            return math.exp(-total)
        except OverflowError:
            return math.inf

    def eval_d(self, t: float, binding: dict | None = None) -> tuple[float, float]:
        # y' = -sgn(G)|G|^(1/(p-1)) y exactly, by construction
        yv = self.eval(t, binding)
        return yv, -self._integrand(t) * yv


def riccati_to_bessel(G, p: float, t_anchor: float, binding: dict | None = None) -> YFromG:
    """Inverse of bessel_to_riccati, normalized to y(t_anchor) = 1."""
    return YFromG(G, p, t_anchor, binding)


_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_max(f: Callable[[float], float], lo: float, hi: float,
                       tol: float = 1e-12, max_iter: int = 500) -> tuple[float, float]:
    """Deterministic golden-section maximization on [lo, hi]."""
    a, b = (lo, hi) if lo < hi else (hi, lo)
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol * (1.0 + abs(a) + abs(b)):
            break
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def optimize_constant(a: float, b: float, p: float) -> tuple[float, float]:
    """Maximize c*b - (p-1) c^(p') a^p over c > 0, in closed form.

    Returns (c_star, value) = ((b/(p a^p))^(p-1), b^p / (p^p a^(p(p-1)))).
    """
    if not (a > 0.0 and b > 0.0):
        raise ParameterError(f"optimize_constant needs a, b > 0, got a={a!r}, b={b!r}")
    if not p > 1.0:
        raise ParameterError(f"optimize_constant needs p > 1, got {p!r}")
    c_star = (b / (p * a**p)) ** (p - 1.0)
    value = b**p / (p**p * a ** (p * (p - 1.0)))
    return c_star, value

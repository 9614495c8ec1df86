"""Quadrature validation of the additive and multiplicative inequalities.

Everything here reduces to weighted radial integrals against the model
measure d(mu) = n*omega_n * s_kappa^(n-1)(t) dt.  The additive margin
compares the energy integral with the two-term right side built from a
candidate G and a nonlinearity H; the multiplicative margin assembles
|I_H|^p / J_H^(p-1); the uncertainty and interpolation-type modes
specialize H and add the curvature deficit factor.  Margins carry their
quadrature error estimates, and a margin only counts as a violation when
it is more negative than 10x the combined error (numerical noise must
never masquerade as a counterexample to a theorem).

Near-extremal Hardy test functions spread mass over hundreds of decades
with plateau values around 1e150, so the sharpness-sweep integrals run
through a log-space evaluation path; the generic margin helpers evaluate
directly and expect moderate test functions (bumps, gaussians).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .catalog import CatalogInstance
from .errors import DomainError, HypothesisError, ParameterError
from .exprdsl import ScalarExpr
from .geometry import ModelGeometry, ct_value, deficit_value, s_value, unit_ball_volume
from .quadrature import integrate
from .testfuncs import RadialTestFunction, gaussian_type, power_cutoff, talenti

__all__ = [
    "InequalityMargin",
    "radial_integral",
    "additive_margin",
    "multiplicative_margin",
    "up_margin",
    "ckn_margin",
    "sc_margin",
    "extremal_identity_check",
    "ExtremalIdentityResult",
    "sharpness_sweep",
    "SweepRow",
    "SweepResult",
    "margin_violated",
    "hardy_default_family",
]

_MARGIN_FLOOR = 1e-300


@dataclass
class InequalityMargin:
    lhs: float
    rhs: float
    margin: float
    quadrature_error_estimate: float
    extras: dict = field(default_factory=dict)


def _margin_of(lhs: float, rhs: float, err: float, extras: dict | None = None) -> InequalityMargin:
    rel = (lhs - rhs) / max(abs(rhs), _MARGIN_FLOOR)
    return InequalityMargin(lhs=lhs, rhs=rhs, margin=rel, quadrature_error_estimate=err,
                            extras=extras or {})


def margin_violated(m: InequalityMargin, scale: float = 1.0) -> bool:
    """Violation policy: negative beyond 10x the noise budget."""
    budget = 10.0 * (m.quadrature_error_estimate / max(abs(m.rhs), _MARGIN_FLOOR) + 1e-12 * scale)
    return m.margin < -budget


def radial_integral(
    geo: ModelGeometry,
    f: Callable[[float], float],
    R: float,
    singular_exponent_hint: float | None = None,
    breakpoints: Sequence[float] = (),
    rel_tol: float = 1e-10,
) -> tuple[float, float]:
    """n*omega_n * integral_0^R f(t) s_kappa^(n-1)(t) dt with error estimate."""
    if R <= 0.0:
        raise DomainError(f"radial_integral needs R > 0, got {R!r}")
    n = geo.n
    kappa = geo.kappa

    def g(t: float) -> float:
        return f(t) * s_value(kappa, t) ** (n - 1)

    hint = None
    if singular_exponent_hint is not None:
        hint = singular_exponent_hint + (n - 1)
    val, err = integrate(g, 0.0, R, rel_tol=rel_tol, breakpoints=breakpoints,
                         singular_hint=hint)
    scale = n * unit_ball_volume(n)
    return scale * val, scale * err


# ---------------------------------------------------------------------------
# nonlinearity H


class _PowerH:
    """H(s) = |s|^p / p, the choice reducing the additive form to a Hardy
    inequality: p H(s) = |H'(s)|^{p'} = |s|^p."""

    def __init__(self, p: float):
        self.p = p

    def h(self, s_val: float) -> float:
        return abs(s_val) ** self.p / self.p

    def habs_dp(self, s_val: float, p_conj: float) -> float:
        return abs(s_val) ** self.p


class _ExprH:
    def __init__(self, expr: ScalarExpr, binding: dict):
        self.expr = expr
        self.binding = binding
        v0, d0 = expr.eval_d(0.0, binding)
        if abs(v0) > 1e-12 or abs(d0) > 1e-12:
            raise HypothesisError("H(0) = H'(0) = 0",
                                  f"H(0) = {v0!r}, H'(0) = {d0!r}")

    def h(self, s_val: float) -> float:
        return self.expr.eval(s_val, self.binding)

    def habs_dp(self, s_val: float, p_conj: float) -> float:
        return abs(self.expr.eval_d(s_val, self.binding)[1]) ** p_conj


def _make_h(H, p: float, binding: dict):
    if H is None:
        return _PowerH(p)
    if isinstance(H, ScalarExpr):
        return _ExprH(H, binding)
    return H


# ---------------------------------------------------------------------------
# additive / multiplicative margins


def _resolve_target(target, geo, binding):
    """Accept a CatalogInstance or a plain G evaluable; return (G, w, binding)."""
    if isinstance(target, CatalogInstance):
        if target.spec.rho_kind != "radial_distance":
            raise ParameterError(
                f"entry {target.name!r} is built on rho = {target.spec.rho_kind}; "
                "radial quadrature does not apply")
        if geo is not None and geo != target.spec.geo:
            raise ParameterError("geometry mismatch between argument and catalog instance")
        return target.G, target.spec.w, target.spec.binding(), target.spec.geo
    if binding is None:
        binding = geo.binding()
    return target, None, binding, geo


def _check_support(u: RadialTestFunction, target) -> None:
    if isinstance(target, CatalogInstance):
        spec = target.spec
        if u.support_lo < spec.t_lo or u.support_hi > spec.t_hi:
            raise HypothesisError(
                "test function support inside the entry interval",
                f"support ({u.support_lo!r}, {u.support_hi!r}) vs "
                f"({spec.t_lo!r}, {spec.t_hi!r})")


def _ih_jh(geo, G, w, binding, hfun, u: RadialTestFunction, rel_tol):
    """The two integrals of the additive right side (direct evaluation)."""
    n, kappa, p = geo.n, geo.kappa, geo.p
    pc = geo.p_conj
    lo = max(u.support_lo, 0.0)
    hi = u.support_hi
    scale = n * unit_ball_volume(n)

    def dens(t: float) -> float:
        return s_value(kappa, t) ** (n - 1)

    def f_i(t: float) -> float:
        uv = u.u(t)
        hval = hfun.h(uv)
        if hval == 0.0:
            return 0.0
        gv, gd = G.eval_d(t, binding)
        if w is None:
            drift = gd + gv * (n - 1) * ct_value(kappa, t)
        else:
            wv, wd = w.eval_d(t, binding)
            drift = (gd * wv + gv * wd) + gv * wv * (n - 1) * ct_value(kappa, t)
        return drift * hval * dens(t)

    def f_j(t: float) -> float:
        hd = hfun.habs_dp(u.u(t), pc)
        if hd == 0.0:
            return 0.0
        gv = G.eval(t, binding)
        wv = 1.0 if w is None else w.eval(t, binding)
        return abs(gv) ** pc * wv * hd * dens(t)

    bps = u.breakpoints
    i_val, i_err = integrate(f_i, lo, hi, rel_tol=rel_tol, breakpoints=bps)
    j_val, j_err = integrate(f_j, lo, hi, rel_tol=rel_tol, breakpoints=bps)
    return scale * i_val, scale * i_err, scale * j_val, scale * j_err


def _energy(geo, w, binding, u: RadialTestFunction, rel_tol):
    n, kappa, p = geo.n, geo.kappa, geo.p
    lo = max(u.support_lo, 0.0)

    def f(t: float) -> float:
        m = abs(u.du(t))
        if m == 0.0:
            return 0.0
        wv = 1.0 if w is None else w.eval(t, binding)
        return m**p * wv * s_value(kappa, t) ** (n - 1)

    val, err = integrate(f, lo, u.support_hi, rel_tol=rel_tol, breakpoints=u.breakpoints)
    scale = n * unit_ball_volume(n)
    return scale * val, scale * err


def additive_margin(geo: ModelGeometry | None, target, u: RadialTestFunction,
                    H=None, binding: dict | None = None,
                    rel_tol: float = 1e-10) -> InequalityMargin:
    """Margin of the additive inequality for one test function.

    target is a CatalogInstance (carrying w and the binding) or a plain G
    evaluable; H defaults to |s|^p/p.  On model spaces the distance Laplacian
    is the exact (n-1) ct_kappa, which is what the right side uses.
    """
    G, w, binding, geo = _resolve_target(target, geo, binding)
    _check_support(u, target)
    p = geo.p
    hfun = _make_h(H, p, binding)
    lhs, e_err = _energy(geo, w, binding, u, rel_tol)
    i_val, i_err, j_val, j_err = _ih_jh(geo, G, w, binding, hfun, u, rel_tol)
    rhs = p * i_val - (p - 1.0) * j_val
    err = e_err + p * i_err + (p - 1.0) * j_err
    return _margin_of(lhs, rhs, err, {"i_term": i_val, "j_term": j_val, "p": p})


def multiplicative_margin(geo: ModelGeometry | None, target, u: RadialTestFunction,
                          H=None, binding: dict | None = None,
                          rel_tol: float = 1e-10) -> InequalityMargin:
    """Margin of energy >= |I_H|^p / J_H^(p-1); needs J_H bounded away from
    its quadrature error."""
    G, w, binding, geo = _resolve_target(target, geo, binding)
    _check_support(u, target)
    p = geo.p
    hfun = _make_h(H, p, binding)
    lhs, e_err = _energy(geo, w, binding, u, rel_tol)
    i_val, i_err, j_val, j_err = _ih_jh(geo, G, w, binding, hfun, u, rel_tol)
    if j_val <= 10.0 * j_err:
        raise DomainError(
            f"J functional {j_val!r} indistinguishable from quadrature error {j_err!r}")
    rhs = abs(i_val) ** p / j_val ** (p - 1.0)
    rel_err = e_err / max(lhs, _MARGIN_FLOOR) + p * i_err / max(abs(i_val), _MARGIN_FLOOR) \
        + (p - 1.0) * j_err / j_val
    return _margin_of(lhs, rhs, rel_err * max(abs(rhs), lhs),
                      {"i_term": i_val, "j_term": j_val, "p": p})


# ---------------------------------------------------------------------------
# log-space weighted masses (wide-dynamic-range test functions)


def _log_mass(geo: ModelGeometry, u: RadialTestFunction, upow: float, tpow: float,
              use_du: bool = False, extra: Callable[[float], float] | None = None,
              rel_tol: float = 1e-10) -> tuple[float, float]:
    """n*omega_n * integral |b(t)|^upow t^tpow s^(n-1) extra(t) dt with
    b = u or u'; evaluated through logs so plateau values ~1e150 and
    abscissae ~1e-290 cannot overflow intermediates."""
    n, kappa = geo.n, geo.kappa
    log_base_fn = u.log_abs_du if use_du else u.log_abs_u

    def f(t: float) -> float:
        if log_base_fn is not None:
            lb = log_base_fn(t)
        else:
            base = abs(u.du(t)) if use_du else abs(u.u(t))
            lb = math.log(base) if base > 0.0 else -math.inf
        if lb == -math.inf:
            return 0.0
        lg = upow * lb + tpow * math.log(t) \
            + (n - 1) * math.log(s_value(kappa, t))
        if lg < -700.0:
            return 0.0
        if lg > 700.0:
            raise DomainError(f"integrand overflow at t={t!r}")
        v = math.exp(lg)
        return v * extra(t) if extra is not None else v

    lo = max(u.support_lo, 0.0)
    val, err = integrate(f, lo, u.support_hi, rel_tol=rel_tol,
                         breakpoints=u.breakpoints,
                         singular_hint=u.singular_hint)
    scale = n * unit_ball_volume(n)
    return scale * val, scale * err


# ---------------------------------------------------------------------------
# uncertainty / interpolation margins


def up_margin(geo: ModelGeometry, u: RadialTestFunction, alpha: float,
              rel_tol: float = 1e-11) -> InequalityMargin:
    """Three-factor uncertainty margin with the curvature deficit term.

    lhs = (energy)^(1/p) (integral t^(p' alpha)|u|^p dmu)^(1/p'),
    rhs = (n+alpha-1)/p * integral (1 + (n-1)/(n+alpha-1) D_kappa) t^(alpha-1)|u|^p dmu.
    """
    n, p = geo.n, geo.p
    if not (n > p > 1.0):
        raise HypothesisError("n > p > 1", f"n={n!r}, p={p!r}")
    if not (-p + 1.0 < alpha <= 1.0):
        raise HypothesisError("-p + 1 < alpha <= 1", f"alpha={alpha!r}")
    pc = geo.p_conj
    const = (n + alpha - 1.0) / p
    dcoef = (n - 1.0) / (n + alpha - 1.0)

    energy, e_err = _log_mass(geo, u, p, 0.0, use_du=True, rel_tol=rel_tol)
    mass2, m2_err = _log_mass(geo, u, p, pc * alpha, rel_tol=rel_tol)

    def deficit_factor(t: float) -> float:
        return 1.0 + dcoef * deficit_value(geo.kappa, t)

    dint, d_err = _log_mass(geo, u, p, alpha - 1.0, extra=deficit_factor, rel_tol=rel_tol)

    lhs = energy ** (1.0 / p) * mass2 ** (1.0 / pc)
    rhs = const * dint
    rel_err = e_err / max(energy, _MARGIN_FLOOR) / p \
        + m2_err / max(mass2, _MARGIN_FLOOR) / pc + d_err / max(dint, _MARGIN_FLOOR)
    return _margin_of(lhs, rhs, rel_err * max(abs(rhs), lhs),
                      {"energy": energy, "mass2": mass2, "deficit_integral": dint,
                       "i_term": rhs, "j_term": mass2, "p": p})


def ckn_margin(geo: ModelGeometry, u: RadialTestFunction, alpha: float, r: float,
               rel_tol: float = 1e-11) -> InequalityMargin:
    """Interpolation-type multiplicative margin with exponent r > p."""
    n, p = geo.n, geo.p
    if not (r > p > 1.0):
        raise HypothesisError("r > p > 1", f"r={r!r}, p={p!r}")
    if not alpha + p > 1.0:
        raise HypothesisError("alpha + p > 1", f"alpha={alpha!r}")
    if not (p * (n + alpha - 1.0) > r * (n - p) > 0.0):
        raise HypothesisError("p(n+alpha-1) > r(n-p) > 0",
                              f"n={n!r}, p={p!r}, r={r!r}, alpha={alpha!r}")
    pc = geo.p_conj
    const = (n + alpha - 1.0) / r
    dcoef = (n - 1.0) / (n + alpha - 1.0)

    energy, e_err = _log_mass(geo, u, p, 0.0, use_du=True, rel_tol=rel_tol)
    mass2, m2_err = _log_mass(geo, u, pc * (r - 1.0), pc * alpha, rel_tol=rel_tol)

    def deficit_factor(t: float) -> float:
        return 1.0 + dcoef * deficit_value(geo.kappa, t)

    dint, d_err = _log_mass(geo, u, r, alpha - 1.0, extra=deficit_factor, rel_tol=rel_tol)

    lhs = energy ** (1.0 / p) * mass2 ** (1.0 / pc)
    rhs = const * dint
    rel_err = e_err / max(energy, _MARGIN_FLOOR) / p \
        + m2_err / max(mass2, _MARGIN_FLOOR) / pc + d_err / max(dint, _MARGIN_FLOOR)
    return _margin_of(lhs, rhs, rel_err * max(abs(rhs), lhs),
                      {"energy": energy, "mass2": mass2, "rhs_integral": dint,
                       "i_term": rhs, "j_term": mass2, "p": p})


def _osc_profile(c: float, x: float) -> float:
    """s_c(x): x at c=0, sin(sqrt(c) x)/sqrt(c) for c>0, sinh analog for c<0."""
    if c == 0.0:
        return x
    if c > 0.0:
        rc = math.sqrt(c)
        return math.sin(rc * x) / rc
    rc = math.sqrt(-c)
    return math.sinh(rc * x) / rc


def sc_margin(geo: ModelGeometry, u: RadialTestFunction, c: float,
              rel_tol: float = 1e-11) -> InequalityMargin:
    """Margin of energy >= (n-1)^2 |kappa| (int s_c(u)^2)^2 / int s_c(2u)^2."""
    if geo.p != 2.0:
        raise HypothesisError("p = 2", f"got p={geo.p!r}")
    if geo.kappa >= 0.0:
        raise HypothesisError("kappa < 0", f"got kappa={geo.kappa!r}")
    energy, e_err = _log_mass(geo, u, 2.0, 0.0, use_du=True, rel_tol=rel_tol)

    def f1(t: float) -> float:
        return _osc_profile(c, u.u(t)) ** 2 * s_value(geo.kappa, t) ** (geo.n - 1)

    def f2(t: float) -> float:
        return _osc_profile(c, 2.0 * u.u(t)) ** 2 * s_value(geo.kappa, t) ** (geo.n - 1)

    lo = max(u.support_lo, 0.0)
    scale = geo.n * unit_ball_volume(geo.n)
    i1, e1 = integrate(f1, lo, u.support_hi, rel_tol=rel_tol, breakpoints=u.breakpoints)
    i2, e2 = integrate(f2, lo, u.support_hi, rel_tol=rel_tol, breakpoints=u.breakpoints)
    i1, e1, i2, e2 = scale * i1, scale * e1, scale * i2, scale * e2
    if i2 <= 10.0 * e2:
        raise DomainError("denominator integral indistinguishable from its error")
    rhs = (geo.n - 1.0) ** 2 * (-geo.kappa) * i1 * i1 / i2
    rel_err = e_err / max(energy, _MARGIN_FLOOR) + 2.0 * e1 / max(i1, _MARGIN_FLOOR) \
        + e2 / i2
    return _margin_of(energy, rhs, rel_err * max(abs(rhs), energy),
                      {"i_term": i1, "j_term": i2, "p": 2.0})


# ---------------------------------------------------------------------------
# extremal identity


@dataclass
class ExtremalIdentityResult:
    lhs: float
    rhs: float
    discrepancy: float
    gamma: float
    cutoff: float


def extremal_identity_check(geo: ModelGeometry, alpha: float,
                            rel_tol: float = 1e-11) -> ExtremalIdentityResult:
    """Quadrature check of energy(u0) = (gamma/p)^p integral t^(p' alpha) u0^p
    for u0 = exp(-t^gamma/p): exact on model spaces by the radial chain rule.

    Rejected when the integrals do not converge: gamma > 0 suffices at
    kappa = 0, while kappa < 0 needs gamma > 1 to beat the exponential
    volume growth.
    """
    p = geo.p
    gamma = 1.0 + alpha / (p - 1.0)
    if geo.kappa == 0.0:
        if not gamma > 0.0:
            raise HypothesisError("gamma = 1 + alpha/(p-1) > 0", f"gamma={gamma!r}")
    else:
        if not gamma > 1.0:
            raise HypothesisError("gamma > 1 when kappa < 0", f"gamma={gamma!r}")

    growth = (geo.n - 1.0) * math.sqrt(-geo.kappa) if geo.kappa < 0.0 else 0.0
    pc = geo.p_conj
    R = 10.0
    while -(R**gamma) + growth * R + (pc * abs(alpha) + geo.n + 2.0) * math.log(R) > -700.0:
        R *= 1.25
        if R > 1e8:
            raise HypothesisError("integrable tail", "no finite cutoff found")

    u0 = gaussian_type(alpha, p)
    u0 = RadialTestFunction(u0.kind, u0.u, u0.du, 0.0, min(R, u0.support_hi),
                            params=u0.params)
    lhs, e_err = _log_mass(geo, u0, p, 0.0, use_du=True, rel_tol=rel_tol)
    mass, m_err = _log_mass(geo, u0, p, pc * alpha, rel_tol=rel_tol)
    rhs = (gamma / p) ** p * mass
    disc = abs(lhs - rhs) / max(abs(rhs), _MARGIN_FLOOR)
    return ExtremalIdentityResult(lhs=lhs, rhs=rhs, discrepancy=disc, gamma=gamma,
                                  cutoff=R)


# ---------------------------------------------------------------------------
# sharpness sweeps


@dataclass
class GmStudyRow:
    a: float
    b: float
    alpha: float
    beta: float
    m: float
    n: int
    min_G: float
    argmin_t: float
    in_region: bool


def gm_positivity_study(t_points: int = 120) -> list[GmStudyRow]:
    """Empirical positivity sweep of the two-power-weight candidate G.

    216 parameter points inside the hypotheses (alpha*beta > 0, K0 > 0),
    each scanned over four decades of t around the weight's crossover scale
    (a/b)^(1/alpha).  Positivity is proven only inside the region flagged by
    each row; outside it the minimum is reported as an observation.
    """
    from .catalog import instantiate as _instantiate

    rows: list[GmStudyRow] = []
    for n in (3, 5):
        geo = ModelGeometry(0.0, n, 2.0)
        for a in (0.5, 1.5):
            for b in (0.7, 2.0):
                for alpha in (0.4, 1.0, 1.9):
                    for beta in (0.35, 1.2, 2.6):
                        for delta in (0.15, 0.6, 1.1):
                            m = (n - 2.0) / 2.0 - delta
                            inst = _instantiate(
                                "ghoussoub_moradifam", geo,
                                {"a": a, "b": b, "alpha": alpha, "beta": beta, "m": m})
                            binding = inst.spec.binding()
                            tstar = (a / b) ** (1.0 / alpha)
                            best, argmin = math.inf, math.nan
                            for i in range(t_points):
                                t = tstar * 10.0 ** (-2.0 + 4.0 * i / (t_points - 1))
                                g = inst.G.eval(t, binding)
                                if g < best:
                                    best, argmin = g, t
                            rows.append(GmStudyRow(
                                a=a, b=b, alpha=alpha, beta=beta, m=m, n=n,
                                min_G=best, argmin_t=argmin,
                                in_region=inst.metadata["in_thm422_region"]))
    return rows


@dataclass
class SweepRow:
    family_param: float
    lhs: float
    rhs: float
    margin: float
    quad_error: float
    ratio: float
    note: str = ""


@dataclass
class SweepResult:
    inequality: str
    params: dict
    rows: list[SweepRow]
    sharp_constant: float
    achieved_extremum: float
    min_margin: float


def hardy_default_family(geo: ModelGeometry, alpha: float = 0.0,
                         eps_list: Sequence[float] = (0.1, 0.05, 0.02, 0.01,
                                                      0.005, 0.002, 0.001)) -> list[RadialTestFunction]:
    """Near-extremal family: eps -> 0 with the plateau radius shrinking like
    exp(-0.7/eps) (clamped at the float floor)."""
    out = []
    for eps in eps_list:
        r0 = math.exp(max(-0.7 / eps, -660.0))
        out.append(power_cutoff(eps, r0, 100.0, geo.n, geo.p, alpha=alpha))
    return out


def _hardy_ratio(geo: ModelGeometry, u: RadialTestFunction, alpha: float,
                 rel_tol: float) -> tuple[float, float, float]:
    """(energy, singular mass, combined relative error) for the Hardy quotient."""
    p = geo.p
    energy, e_err = _log_mass(geo, u, p, alpha, use_du=True, rel_tol=rel_tol)
    mass, m_err = _log_mass(geo, u, p, alpha - p, rel_tol=rel_tol)
    rel = e_err / max(energy, _MARGIN_FLOOR) + m_err / max(mass, _MARGIN_FLOOR)
    return energy, mass, rel


def sharpness_sweep(inequality: str, geo: ModelGeometry, params: dict | None = None,
                    family: Sequence[RadialTestFunction] | None = None,
                    rel_tol: float = 1e-11) -> SweepResult:
    """Achieved-constant sweep over a family of test functions.

    Modes: 'hardy' (additive quotient vs ((C+1+alpha-p)/p)^p with C = n-1),
    'up' (three-factor uncertainty quotient vs (n+alpha-1)/p), 'ckn'
    (exponent-r quotient vs (n+alpha-1)/r).  Family members outside the
    admissible class are recorded with a note and skipped.
    """
    params = dict(params or {})
    rows: list[SweepRow] = []
    if inequality == "hardy":
        alpha = params.get("alpha", 0.0)
        p = geo.p
        sharp = ((geo.n + alpha - p) / p) ** p
        if family is None:
            family = hardy_default_family(geo, alpha=alpha)
        for u in family:
            try:
                energy, mass, rel = _hardy_ratio(geo, u, alpha, rel_tol)
            except (DomainError, ParameterError) as exc:
                rows.append(SweepRow(u.params.get("eps", math.nan), math.nan,
                                     math.nan, math.nan, math.nan, math.nan,
                                     note=f"skipped: {exc}"))
                continue
            ratio = energy / mass
            rhs = sharp * mass
            rows.append(SweepRow(u.params.get("eps", math.nan), energy, rhs,
                                 (energy - rhs) / max(rhs, _MARGIN_FLOOR),
                                 rel * max(rhs, energy), ratio))
        achieved = min((r.ratio for r in rows if math.isfinite(r.ratio)), default=math.nan)
    elif inequality in ("up", "ckn"):
        alpha = params.get("alpha", 1.0)
        scales = params.get("scales", (0.5, 1.0, 2.0, 4.0))
        if inequality == "up":
            sharp = (geo.n + alpha - 1.0) / geo.p
        else:
            r = params.get("r", 3.0)
            sharp = (geo.n + alpha - 1.0) / r
        members: list[tuple[float, RadialTestFunction]]
        if family is None:
            if inequality == "up":
                members = [(lam, gaussian_type(alpha, geo.p, scale=lam)) for lam in scales]
            else:
                members = [(lam, talenti(alpha, geo.p, params.get("r", 3.0), scale=lam))
                           for lam in scales]
        else:
            members = [(u.params.get("scale", math.nan), u) for u in family]
        for lam, u in members:
            try:
                if inequality == "up":
                    m = up_margin(geo, u, alpha, rel_tol=rel_tol)
                else:
                    m = ckn_margin(geo, u, alpha, params.get("r", 3.0), rel_tol=rel_tol)
            except (DomainError, HypothesisError, ParameterError) as exc:
                rows.append(SweepRow(lam, math.nan, math.nan, math.nan, math.nan,
                                     math.nan, note=f"skipped: {exc}"))
                continue
            # achieved constant: lhs over the bare rhs integral
            ratio = m.lhs / (m.rhs / sharp)
            rows.append(SweepRow(lam, m.lhs, m.rhs, m.margin,
                                 m.quadrature_error_estimate, ratio))
        achieved = min((r.ratio for r in rows if math.isfinite(r.ratio)), default=math.nan)
    else:
        raise ParameterError(f"unknown sweep mode {inequality!r}")

    margins = [r.margin for r in rows if math.isfinite(r.margin)]
    return SweepResult(inequality=inequality, params=params, rows=rows,
                       sharp_constant=sharp, achieved_extremum=achieved,
                       min_margin=min(margins) if margins else math.nan)

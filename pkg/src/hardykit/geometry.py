"""Closed-form radial kernel of the model space forms with curvature <= 0.

All quantities are functions of the distance t from a base point: the
curvature-trig functions ct_kappa and s_kappa, the comparison deficit
D_kappa(t) = t*ct_kappa(t) - 1, volume densities and ball volumes, and the
Laplacian comparison bounds used as the lower-bound function L in Riccati
pair specifications.

Positive curvature is rejected throughout: every certified inequality in
this toolkit lives on the kappa <= 0 range, and supporting spheres would
drag in cut-locus bookkeeping for no benefit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .errors import DomainError, ParameterError
from .specfun import gamma

if TYPE_CHECKING:  # pragma: no cover
    from .exprdsl import ScalarExpr

__all__ = [
    "ModelGeometry",
    "ct",
    "s",
    "d_deficit",
    "volume_density",
    "ball_volume",
    "unit_ball_volume",
    "comparison_L",
    "ComparisonL",
]

# Below sqrt(-kappa)*t = 1e-4 the direct t*coth - 1 form of the deficit loses
# every significant digit; both ct and the deficit switch to 5-term Taylor
# expansions there.
_TAYLOR_CUT = 1e-4


@dataclass(frozen=True)
class ModelGeometry:
    """Curvature bound kappa <= 0, dimension n >= 2, exponent p > 1."""

    kappa: float
    n: int
    p: float

    def __post_init__(self):
        if self.kappa > 0.0:
            raise ParameterError(f"kappa={self.kappa!r} > 0 rejected (model range is kappa <= 0)")
        if self.n < 2 or int(self.n) != self.n:
            raise ParameterError(f"dimension n={self.n!r} must be an integer >= 2")
        if not self.p > 1.0:
            raise ParameterError(f"exponent p={self.p!r} must be > 1")

    @property
    def p_conj(self) -> float:
        return self.p / (self.p - 1.0)

    def binding(self) -> dict[str, float]:
        """Geometry parameters in the form expression bindings expect."""
        return {"kappa": self.kappa, "n": float(self.n), "p": self.p}


def _coth(x: float) -> float:
    # stable on (0, inf): Taylor below, 1 + 2/(e^{2x}-1) in the middle, 1 at top
    if x < _TAYLOR_CUT:
        x2 = x * x
        return 1.0 / x + x / 3.0 - x * x2 / 45.0 + 2.0 * x2 * x2 * x / 945.0
    if x > 350.0:
        return 1.0
    return 1.0 + 2.0 / math.expm1(2.0 * x)


def ct_value(kappa: float, t: float) -> float:
    """ct_kappa(t): 1/t for kappa = 0, sqrt(-kappa) coth(sqrt(-kappa) t) below."""
    if t <= 0.0:
        raise DomainError(f"ct requires t > 0, got {t!r}")
    if kappa == 0.0:
        return 1.0 / t
    r = math.sqrt(-kappa)
    return r * _coth(r * t)


def ct_value_dt(kappa: float, t: float) -> float:
    """d/dt ct_kappa(t) = -kappa - ct_kappa(t)^2 (equals -1/t^2 at kappa=0)."""
    c = ct_value(kappa, t)
    return -kappa - c * c


def s_value(kappa: float, t: float) -> float:
    """s_kappa(t): t for kappa = 0, sinh(sqrt(-kappa) t)/sqrt(-kappa) below."""
    if t < 0.0:
        raise DomainError(f"s requires t >= 0, got {t!r}")
    if kappa == 0.0:
        return t
    r = math.sqrt(-kappa)
    x = r * t
    try:
        return math.sinh(x) / r
    except OverflowError:
        return math.inf


def s_value_dt(kappa: float, t: float) -> float:
    """d/dt s_kappa(t) = cosh(sqrt(-kappa) t) (equals 1 at kappa=0)."""
    if kappa == 0.0:
        return 1.0
    try:
        return math.cosh(math.sqrt(-kappa) * t)
    except OverflowError:
        return math.inf


def deficit_value(kappa: float, t: float) -> float:
    """D_kappa(t) = t*ct_kappa(t) - 1 >= 0, continuous with value 0 at t=0."""
    if t < 0.0:
        raise DomainError(f"deficit requires t >= 0, got {t!r}")
    if t == 0.0 or kappa == 0.0:
        return 0.0
    m = -kappa
    x = math.sqrt(m) * t
    if x < _TAYLOR_CUT:
        # t*ct - 1 with ct from its own Taylor series cancels catastrophically
        t2 = t * t
        return m * t2 / 3.0 * (1.0 - m * t2 / 15.0 + 2.0 * m * m * t2 * t2 / 315.0)
    return t * ct_value(kappa, t) - 1.0


def deficit_value_dt(kappa: float, t: float) -> float:
    """d/dt D_kappa(t) = ct + t*(-kappa - ct^2)."""
    if kappa == 0.0:
        return 0.0
    m = -kappa
    x = math.sqrt(m) * t
    if x < _TAYLOR_CUT:
        t2 = t * t
        return 2.0 * m * t / 3.0 - 4.0 * m * m * t * t2 / 45.0 + 12.0 * m**3 * t2 * t2 * t / 945.0
    c = ct_value(kappa, t)
    return c + t * (-kappa - c * c)


def ct(geo: ModelGeometry, t: float) -> float:
    return ct_value(geo.kappa, t)


def s(geo: ModelGeometry, t: float) -> float:
    return s_value(geo.kappa, t)


def d_deficit(geo: ModelGeometry, t: float) -> float:
    return deficit_value(geo.kappa, t)


def volume_density(geo: ModelGeometry, t: float) -> float:
    """Radial area density s_kappa(t)^(n-1); the measure is n*omega_n*density dt."""
    if t <= 0.0:
        raise DomainError(f"volume_density requires t > 0, got {t!r}")
    return s_value(geo.kappa, t) ** (geo.n - 1)


def unit_ball_volume(n: int) -> float:
    """omega_n = pi^(n/2) / Gamma(1 + n/2)."""
    return math.pi ** (n / 2.0) / gamma(1.0 + n / 2.0)


def _sinh_power_integral(m: int, x: float) -> float:
    """integral_0^x sinh^m(u) du by the stable reduction recurrence."""
    if m == 0:
        return x
    ch = math.cosh(x)
    sh = math.sinh(x)
    if m == 1:
        return ch - 1.0
    return (sh ** (m - 1) * ch - (m - 1) * _sinh_power_integral(m - 2, x)) / m


def _sinh_ratio_power_series(m: int, x: float, terms: int = 9) -> list[float]:
    """Coefficients of (sinh(u)/u)^m = sum c_k u^(2k), |u| <= x small."""
    base = [1.0 / math.factorial(2 * k + 1) for k in range(terms)]
    out = [1.0] + [0.0] * (terms - 1)
    for _ in range(m):
        new = [0.0] * terms
        for i in range(terms):
            if out[i] == 0.0:
                continue
            for j in range(terms - i):
                new[i + j] += out[i] * base[j]
        out = new
    return out


def ball_volume(geo: ModelGeometry, R: float) -> float:
    """Volume of the radius-R ball: n*omega_n * integral_0^R s_kappa^(n-1)."""
    if R <= 0.0:
        raise DomainError(f"ball_volume requires R > 0, got {R!r}")
    n = geo.n
    wn = unit_ball_volume(n)
    if geo.kappa == 0.0:
        return wn * R**n
    m = -geo.kappa
    r = math.sqrt(m)
    x = r * R
    if x < 0.5:
        # the reduction recurrence cancels near 0; integrate the series of
        # t^(n-1) * (sinh(rt)/(rt))^(n-1) term by term instead
        coeffs = _sinh_ratio_power_series(n - 1, x)
        total = 0.0
        for k, c in enumerate(coeffs):
            total += c * m**k * R ** (n + 2 * k) / (n + 2 * k)
        return n * wn * total
    return n * wn * _sinh_power_integral(n - 1, x) / r**n


def comparison_L(
    geo: ModelGeometry,
    kind: str,
    t: float,
    psi: "ScalarExpr | None" = None,
    binding: dict | None = None,
) -> float:
    """Laplacian lower-bound function L(t) of the given kind.

    constant_curvature: (n-1) ct_kappa(t), the exact model-space Laplacian.
    constant_floor:     (n-1) sqrt(-kappa), the large-t floor (kappa < 0 only).
    psi:                (n-1) psi'(t)/psi(t) for a user-supplied profile psi.
    """
    if kind == "constant_curvature":
        return (geo.n - 1) * ct_value(geo.kappa, t)
    if kind == "constant_floor":
        if geo.kappa >= 0.0:
            raise ParameterError("constant_floor comparison needs kappa < 0")
        return (geo.n - 1) * math.sqrt(-geo.kappa)
    if kind == "psi":
        if psi is None:
            raise ParameterError("psi comparison kind needs the psi expression")
        b = dict(binding or {})
        b.setdefault("kappa", geo.kappa)
        b.setdefault("n", float(geo.n))
        b.setdefault("p", geo.p)
        v, dv = psi.eval_d(t, b)
        if v <= 0.0:
            raise DomainError(f"psi({t!r}) = {v!r} <= 0")
        return (geo.n - 1) * dv / v
    raise ParameterError(f"unknown comparison kind {kind!r}")


class ComparisonL:
    """Comparison-function L wrapped as an evaluable object.

    Carries the kind tag so catalog entries and config files can round-trip
    it without flattening to an expression string.
    """

    def __init__(self, geo: ModelGeometry, kind: str, psi: "ScalarExpr | None" = None):
        if kind not in ("constant_curvature", "constant_floor", "psi"):
            raise ParameterError(f"unknown comparison kind {kind!r}")
        if kind == "psi" and psi is None:
            raise ParameterError("psi comparison kind needs the psi expression")
        if kind == "constant_floor" and geo.kappa >= 0.0:
            raise ParameterError("constant_floor comparison needs kappa < 0")
        self.geo = geo
        self.kind = kind
        self.psi = psi

    def eval(self, t: float, binding: dict | None = None) -> float:
        return comparison_L(self.geo, self.kind, t, psi=self.psi, binding=binding)

    def __repr__(self):
        return f"ComparisonL({self.kind})"

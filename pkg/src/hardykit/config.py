"""Flat key-value config format for certification problems.

Sections: [geometry] kappa/n/p, [interval] lo/hi ("inf" is the only
non-numeric bound), [expressions] w/L/W/G (either L = <expr> or
L_kind = constant_curvature|constant_floor|psi with psi = <expr>),
[params] free name=value pairs, [flags] g_sign_required, homogeneity_hint,
rho_kind.  Emission and ingestion round-trip: a file written by
emit_config certifies identically when read back.
"""

from __future__ import annotations

import configparser
import io
import math

from .errors import ParameterError
from .exprdsl import ScalarExpr, parse as parse_expr
from .geometry import ComparisonL, ModelGeometry
from .riccati import RiccatiPairSpec

__all__ = ["parse_config", "emit_config"]


def _float_or_inf(s: str) -> float:
    if s.strip().lower() == "inf":
        return math.inf
    return float(s)


def parse_config(text: str) -> tuple[RiccatiPairSpec, ScalarExpr]:
    """Parse a config file into (RiccatiPairSpec, G)."""
    cp = configparser.ConfigParser(interpolation=None)
    cp.optionxform = str
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ParameterError(f"config parse error: {exc}") from exc

    def need(section: str, key: str) -> str:
        if not cp.has_option(section, key):
            raise ParameterError(f"config missing [{section}] {key}")
        return cp.get(section, key)

    geo = ModelGeometry(
        kappa=float(need("geometry", "kappa")),
        n=int(float(need("geometry", "n"))),
        p=float(need("geometry", "p")),
    )
    t_lo = _float_or_inf(need("interval", "lo"))
    t_hi = _float_or_inf(need("interval", "hi"))

    params: dict[str, float] = {}
    if cp.has_section("params"):
        for k, v in cp.items("params"):
            params[k] = float(v)

    w = parse_expr(need("expressions", "w"))
    W = parse_expr(need("expressions", "W"))
    G = parse_expr(need("expressions", "G"))
    if cp.has_option("expressions", "L_kind"):
        kind = cp.get("expressions", "L_kind").strip()
        psi = None
        if kind == "psi":
            psi = parse_expr(need("expressions", "psi"))
        L = ComparisonL(geo, kind, psi)
    else:
        L = parse_expr(need("expressions", "L"))

    g_sign = 1
    hint = None
    rho_kind = "radial_distance"
    if cp.has_section("flags"):
        if cp.has_option("flags", "require_G_nonneg"):
            g_sign = 1 if cp.getboolean("flags", "require_G_nonneg") else 0
        if cp.has_option("flags", "g_sign_required"):
            g_sign = int(cp.get("flags", "g_sign_required"))
        if cp.has_option("flags", "homogeneity_hint"):
            hint = float(cp.get("flags", "homogeneity_hint"))
        if cp.has_option("flags", "rho_kind"):
            rho_kind = cp.get("flags", "rho_kind").strip()

    spec = RiccatiPairSpec(geo=geo, t_lo=t_lo, t_hi=t_hi, w=w, L=L, W=W,
                           params=params, g_sign_required=g_sign,
                           homogeneity_hint=hint, rho_kind=rho_kind)
    return spec, G


def _fmt(x: float) -> str:
    if math.isinf(x):
        return "inf"
    return repr(float(x))


def emit_config(spec: RiccatiPairSpec, G) -> str:
    """Write a spec and its candidate G back to the config format."""
    if not isinstance(G, ScalarExpr):
        raise ParameterError(
            "only expression-backed candidates can be written to a config file")
    for name, obj in (("w", spec.w), ("W", spec.W)):
        if not isinstance(obj, (ScalarExpr, ComparisonL)):
            raise ParameterError(f"{name} is not expression-backed; cannot emit config")

    out = io.StringIO()
    out.write("[geometry]\n")
    out.write(f"kappa = {_fmt(spec.geo.kappa)}\n")
    out.write(f"n = {spec.geo.n}\n")
    out.write(f"p = {_fmt(spec.geo.p)}\n\n")
    out.write("[interval]\n")
    out.write(f"lo = {_fmt(spec.t_lo)}\n")
    out.write(f"hi = {_fmt(spec.t_hi)}\n\n")
    out.write("[expressions]\n")
    out.write(f"w = {spec.w.source}\n")
    if isinstance(spec.L, ComparisonL):
        out.write(f"L_kind = {spec.L.kind}\n")
        if spec.L.kind == "psi":
            out.write(f"psi = {spec.L.psi.source}\n")
    else:
        out.write(f"L = {spec.L.source}\n")
    out.write(f"W = {spec.W.source}\n")
    out.write(f"G = {G.source}\n\n")
    if spec.params:
        out.write("[params]\n")
        for k in sorted(spec.params):
            out.write(f"{k} = {_fmt(spec.params[k])}\n")
        out.write("\n")
    out.write("[flags]\n")
    out.write(f"g_sign_required = {spec.g_sign_required}\n")
    if spec.homogeneity_hint is not None:
        out.write(f"homogeneity_hint = {_fmt(spec.homogeneity_hint)}\n")
    out.write(f"rho_kind = {spec.rho_kind}\n")
    return out.getvalue()

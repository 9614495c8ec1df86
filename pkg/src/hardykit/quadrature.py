"""Adaptive Gauss-Kronrod (7-15) quadrature with graded meshes.

The integrands this package meets are smooth away from the interval ends but
may carry integrable power singularities at the left endpoint and spread
their mass over hundreds of decades (near-extremal Hardy test functions).
Plain bisection-adaptivity cannot find that structure, so the initial panel
list is graded: any panel spanning more than a decade is split
geometrically, and panels reaching down to 0 get a geometric tail.  Caller
supplied breakpoints (kinks of piecewise test functions) are honored
exactly.  After seeding, standard worst-panel-first refinement runs until
the summed Kronrod-vs-Gauss error estimate meets the tolerance.
"""

from __future__ import annotations

import heapq
import math
from typing import Callable, Iterable

from .errors import QuadratureError

__all__ = ["integrate", "kronrod_panel"]

# 15-point Kronrod abscissae (positive half) with weights, and the embedded
# 7-point Gauss weights on the shared nodes.  Values generated from the
# defining orthogonality conditions in exact/50-digit arithmetic and checked
# for degree-22 (resp. degree-13) polynomial exactness.
_XGK = (
    0.0,
    0.2077849550078984676007,
    0.4058451513773971669066,
    0.5860872354676911302941,
    0.7415311855993944398639,
    0.8648644233597690727897,
    0.9491079123427585245262,
    0.9914553711208126392069,
)
_WGK = (
    0.2094821410847278280130,
    0.2044329400752988924142,
    0.1903505780647854099133,
    0.1690047266392679028266,
    0.1406532597155259187452,
    0.1047900103222501838399,
    0.0630920926299785532907,
    0.0229353220105292249637,
)
# Gauss weights for nodes 0, +-x2, +-x4, +-x6 (even Kronrod indices)
_WG = (
    0.4179591836734693877551,
    0.3818300505051189449504,
    0.2797053914892766679015,
    0.1294849661688696932706,
)


def kronrod_panel(f: Callable[[float], float], a: float, b: float) -> tuple[float, float]:
    """(Kronrod 15 estimate, |K15 - G7| error estimate) on [a, b]."""
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fc = f(mid)
    if not math.isfinite(fc):
        raise QuadratureError(f"integrand non-finite at t={mid!r}")
    sk = _WGK[0] * fc
    sg = _WG[0] * fc
    for i in range(1, 8):
        dx = half * _XGK[i]
        f1 = f(mid - dx)
        f2 = f(mid + dx)
        if not (math.isfinite(f1) and math.isfinite(f2)):
            bad = mid - dx if not math.isfinite(f1) else mid + dx
            raise QuadratureError(f"integrand non-finite at t={bad!r}")
        pair = f1 + f2
        sk += _WGK[i] * pair
        if i % 2 == 0:
            sg += _WG[i // 2] * pair
    return sk * half, abs(sk - sg) * abs(half)


def _graded_edges(
    lo: float,
    hi: float,
    breakpoints: Iterable[float],
    singular_hint: float | None,
) -> list[float]:
    edges = {lo, hi}
    for b in breakpoints:
        if lo < b < hi:
            edges.add(b)
    base = sorted(edges)
    out = [base[0]]
    for a, b in zip(base, base[1:]):
        if a > 0.0 and b / a > 10.0:
            # geometric subdivision, one panel per decade
            steps = int(math.ceil(math.log10(b / a)))
            for k in range(1, steps):
                e = a * 10.0**k
                if e < b:
                    out.append(e)
        elif a == 0.0 and (singular_hint is not None and singular_hint < 0.0):
            # geometric tail toward the singular endpoint
            for k in range(8, 0, -1):
                out.append(b * 10.0**-k)
        out.append(b)
    return out


def integrate(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    rel_tol: float = 1e-10,
    abs_tol: float = 1e-300,
    breakpoints: Iterable[float] = (),
    singular_hint: float | None = None,
    max_subdivisions: int = 2000,
) -> tuple[float, float]:
    """Adaptive integral of f over [lo, hi]; returns (value, error estimate).

    singular_hint declares power-law behavior f ~ t^hint near a left endpoint
    at 0 so the initial mesh is graded there.  Raises QuadratureError if the
    tolerance is not met within max_subdivisions refinements.
    """
    if hi <= lo:
        raise QuadratureError(f"empty integration interval [{lo!r}, {hi!r}]")
    edges = _graded_edges(lo, hi, breakpoints, singular_hint)
    heap: list[tuple[float, float, float, float]] = []  # (-err, a, b, value)
    total = 0.0
    total_err = 0.0
    for a, b in zip(edges, edges[1:]):
        val, err = kronrod_panel(f, a, b)
        total += val
        total_err += err
        heapq.heappush(heap, (-err, a, b, val))

    for _ in range(max_subdivisions):
        if total_err <= max(abs_tol, rel_tol * abs(total)):
            return total, total_err
        neg_err, a, b, val = heapq.heappop(heap)
        mid = 0.5 * (a + b)
        if mid <= a or mid >= b:  # interval exhausted at float resolution
            heapq.heappush(heap, (neg_err * (1.0 - 1e-6), a, b, val))
            continue
        v1, e1 = kronrod_panel(f, a, mid)
        v2, e2 = kronrod_panel(f, mid, b)
        total += v1 + v2 - val
        total_err += e1 + e2 + neg_err  # neg_err = -old error
        heapq.heappush(heap, (-e1, a, mid, v1))
        heapq.heappush(heap, (-e2, mid, b, v2))

    if total_err <= max(abs_tol, rel_tol * abs(total)):
        return total, total_err
    raise QuadratureError(
        f"tolerance not reached after {max_subdivisions} subdivisions "
        f"(value {total!r}, error estimate {total_err!r})"
    )

"""Adaptive quadrature and bracketed root finding.

Both kernels are deliberately small: the integrands in this package are
smooth rational functions between known breakpoints, and every root we need
is bracketed by construction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import DomainError, NoSignChange, ToleranceNotReached

__all__ = [
    "QuadratureConfig",
    "IntegrationResult",
    "RootResult",
    "integrate",
    "find_root",
    "scan_sign_changes",
]

# Gauss-Kronrod 7/15 nodes on [-1, 1] (QUADPACK qk15), positive half.
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# full 15-point node list, symmetric, center last
_NODES = np.concatenate([-_XGK[:-1], _XGK[:-1][::-1], [0.0]])
_KRONROD = np.concatenate([_WGK[:-1], _WGK[:-1][::-1], [0.0]])
# center weight chosen so the float weights sum to exactly 2
_KRONROD[-1] = 2.0 - math.fsum(_KRONROD[:-1])
_GAUSS = np.zeros(15)
_GAUSS[[1, 3, 5]] = _WG[:3]
_GAUSS[[12, 10, 8]] = _WG[:3]
_GAUSS[-1] = 2.0 - math.fsum(_GAUSS[:-1])

# hard cap on live panels; depth alone admits 2**max_depth of them
_MAX_PANELS = 1 << 16


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerance contract for :func:`integrate`.

    Parameters
    ----------
    tol : float
        Absolute error target for the whole interval.
    max_depth : int
        Maximum number of bisections applied to any initial panel.
    """

    tol: float = 1e-12
    max_depth: int = 60

    def __post_init__(self):
        if not self.tol > 0:
            raise DomainError(f"quadrature tolerance must be positive, got {self.tol}")
        if self.max_depth < 1:
            raise DomainError(f"max_depth must be >= 1, got {self.max_depth}")


@dataclass(frozen=True)
class IntegrationResult:
    value: float
    error_estimate: float
    panels_used: int


@dataclass(frozen=True)
class RootResult:
    """Bracketed root.

    ``f`` changes sign (or vanishes) on ``bracket`` and ``root`` is the
    endpoint with the smaller ``|f|``.
    """

    root: float
    bracket: tuple[float, float]
    iterations: int


def _gk15(f, a: float, b: float) -> tuple[float, float]:
    half = 0.5 * (b - a)
    center = 0.5 * (a + b)
    fx = np.asarray(f(center + half * _NODES), dtype=float)
    if fx.shape != _NODES.shape:
        fx = np.broadcast_to(fx, _NODES.shape)
    kronrod = half * math.fsum(_KRONROD * fx)
    gauss = half * math.fsum(_GAUSS * fx)
    return kronrod, abs(kronrod - gauss)


def integrate(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    breakpoints: Iterable[float] = (),
    cfg: QuadratureConfig | None = None,
) -> IntegrationResult:
    """Integrate ``f`` over ``[a, b]`` with adaptive Gauss-Kronrod panels.

    ``f`` is called with a 1-d array of abscissae and must return an array of
    the same shape. Every breakpoint becomes a panel edge, so a panel never
    straddles a kink of the integrand. Each panel gets a share of the
    tolerance proportional to its width and is bisected until the Kronrod and
    Gauss estimates agree.

    Raises
    ------
    ToleranceNotReached
        If a panel still misses its tolerance after ``cfg.max_depth`` splits.
    """
    cfg = cfg or QuadratureConfig()
    if not a <= b:
        raise DomainError(f"integration bounds must satisfy a <= b, got [{a}, {b}]")
    pts = sorted({a, b, *(float(p) for p in breakpoints)})
    if pts[0] < a or pts[-1] > b:
        raise DomainError("breakpoints must lie within [a, b]")
    if a == b:
        return IntegrationResult(0.0, 0.0, 0)

    width = b - a
    values: list[float] = []
    errors: list[float] = []
    stack = [(lo, hi, 0) for lo, hi in zip(pts[:-1], pts[1:]) if hi > lo]
    while stack:
        lo, hi, depth = stack.pop()
        value, err = _gk15(f, lo, hi)
        budget = cfg.tol * (hi - lo) / width
        if err <= budget or err <= 50 * np.finfo(float).eps * abs(value):
            values.append(value)
            errors.append(err)
            continue
        if depth >= cfg.max_depth or len(values) + len(stack) >= _MAX_PANELS:
            raise ToleranceNotReached(
                f"panel [{lo}, {hi}] error {err:.3e} exceeds {budget:.3e} at depth {depth}"
            )
        mid = 0.5 * (lo + hi)
        stack.append((mid, hi, depth + 1))
        stack.append((lo, mid, depth + 1))
    return IntegrationResult(math.fsum(values), math.fsum(errors), len(values))


def scan_sign_changes(
    f: Callable[[float], float], lo: float, hi: float, panels: int = 64
) -> list[tuple[float, float]]:
    """Return the sub-intervals of an equispaced scan on which ``f`` changes sign."""
    xs = np.linspace(lo, hi, panels + 1)
    fs = [f(float(x)) for x in xs]
    out = []
    for i in range(panels):
        if fs[i] == 0.0:
            out.append((float(xs[i]), float(xs[i])))
        elif fs[i] * fs[i + 1] < 0.0:
            out.append((float(xs[i]), float(xs[i + 1])))
    if fs[-1] == 0.0:
        out.append((float(xs[-1]), float(xs[-1])))
    return out


def find_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    xtol: float = 1e-13,
    maxiter: int = 200,
) -> RootResult:
    """Brent's method on a sign-change bracket.

    The bracket ``[b, c]`` is maintained throughout, so the result always
    carries a sign-change certificate. After ``maxiter`` Brent steps the
    search continues by plain bisection, which bounds the total work.

    Raises
    ------
    NoSignChange
        If ``f(lo)`` and ``f(hi)`` have the same strict sign.
    """
    a, b = float(lo), float(hi)
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return RootResult(a, (a, a), 0)
    if fb == 0.0:
        return RootResult(b, (b, b), 0)
    if fa * fb > 0.0:
        raise NoSignChange(f"f({a})={fa:.3e} and f({b})={fb:.3e} have the same sign")
    if not xtol > 0:
        raise DomainError("xtol must be positive")

    c, fc = a, fa
    d = e = b - a
    half_tol = 0.5 * xtol
    it = 0
    while True:
        if fb * fc > 0.0:
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        xm = 0.5 * (c - b)
        if fb == 0.0:
            return RootResult(b, (b, b), it)
        if abs(c - b) <= xtol:
            return RootResult(b, (min(b, c), max(b, c)), it)
        if it >= maxiter:
            break
        it += 1
        if abs(e) >= half_tol and abs(fa) > abs(fb):
            s = fb / fa
            if a == c:
                p = 2.0 * xm * s
                q = 1.0 - s
            else:
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0.0:
                q = -q
            p = abs(p)
            if 2.0 * p < min(3.0 * xm * q - abs(half_tol * q), abs(e * q)):
                e, d = d, p / q
            else:
                d = e = xm
        else:
            d = e = xm
        a, fa = b, fb
        if abs(d) > half_tol:
            b += d
        else:
            b += math.copysign(half_tol, xm)
        fb = f(b)

    # bisection fallback keeps the certified bracket [lo, hi]
    lo_, hi_, flo = (b, c, fb) if b < c else (c, b, fc)
    while hi_ - lo_ > xtol:
        mid = 0.5 * (lo_ + hi_)
        if mid in (lo_, hi_):
            break
        fm = f(mid)
        it += 1
        if fm == 0.0:
            return RootResult(mid, (mid, mid), it)
        if fm * flo > 0.0:
            lo_, flo = mid, fm
        else:
            hi_ = mid
    root = lo_ if abs(flo) <= abs(f(hi_)) else hi_
    return RootResult(root, (lo_, hi_), it)

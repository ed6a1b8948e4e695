"""Spearman's rho and Kendall's tau of extreme-value copulas.

For a Pickands function ``A``::

    rho(C_A) = -3 + 12 * int_0^1 (1 + A(t))**-2 dt
    tau(C_A) = int_0^1 t (1 - t) / A(t) dA'(t)

Piecewise-linear input is handled exactly: the rho integrand has an
elementary antiderivative on every segment, and ``dA'`` is a sum of point
masses at the interior knots. The quadrature routes are kept as independent
cross-checks and for functions given only as callables.
"""
from __future__ import annotations

import enum
import math
from typing import Callable

import numpy as np

from .errors import DomainError, InvalidPickands, NoClosedForm
from .numerics import QuadratureConfig, integrate
from .pickands import FamilySpec, PickandsFunction, is_valid

__all__ = [
    "MeasureKind",
    "rho",
    "tau",
    "rho_quadrature",
    "tau_quadrature_oracle",
    "rho_family_closed",
    "tau_family_closed",
    "measure",
    "phi1", "phi1_inv", "psi1", "psi1_inv",
    "phi2", "phi2_inv", "psi2", "psi2_inv",
    "phi_inv",
    "h_rho", "h_rho_deriv", "h_rho_inv",
    "h_tau", "h_tau_deriv", "h_tau_inv",
    "h_map",
]

_EDGE = 1e-12


class MeasureKind(enum.Enum):
    SPEARMAN_RHO = "rho"
    KENDALL_TAU = "tau"

    @classmethod
    def parse(cls, value: "str | MeasureKind") -> "MeasureKind":
        if isinstance(value, cls):
            return value
        for kind in cls:
            if value in (kind.value, kind.name):
                return kind
        raise DomainError(f"unknown measure {value!r}; expected 'rho' or 'tau'")


def _require_valid(A: PickandsFunction):
    ok, why = is_valid(A.knots)
    if not ok:
        raise InvalidPickands(why)


def rho(A: PickandsFunction | Callable, cfg: QuadratureConfig | None = None) -> float:
    """Spearman's rho of ``C_A``.

    Knot input is integrated exactly: on a segment from ``(t0, a0)`` to
    ``(t1, a1)`` the integral of ``(1 + A)**-2`` equals
    ``(t1 - t0) / ((1 + a0) * (1 + a1))``. A plain callable is integrated
    numerically with ``cfg``.
    """
    if not isinstance(A, PickandsFunction):
        return -3.0 + 12.0 * integrate(lambda t: (1.0 + A(t)) ** -2, 0.0, 1.0, (), cfg).value
    _require_valid(A)
    t = np.asarray(A.t)
    a = np.asarray(A.a)
    pieces = np.diff(t) / ((1.0 + a[:-1]) * (1.0 + a[1:]))
    return -3.0 + 12.0 * math.fsum(pieces)


def rho_quadrature(A: PickandsFunction, cfg: QuadratureConfig | None = None) -> float:
    """Spearman's rho by knot-aligned quadrature (cross-check of :func:`rho`)."""
    _require_valid(A)
    res = integrate(lambda t: (1.0 + np.interp(t, A.t, A.a)) ** -2, 0.0, 1.0, A.t, cfg)
    return -3.0 + 12.0 * res.value


def tau(A: PickandsFunction, cfg: QuadratureConfig | None = None) -> float:
    """Kendall's tau of ``C_A`` from the slope jumps of ``A``.

    ``cfg`` is accepted for interface symmetry; the sum is exact.
    """
    if not isinstance(A, PickandsFunction):
        raise DomainError("tau needs a piecewise-linear PickandsFunction; discretize first")
    _require_valid(A)
    t = np.asarray(A.t)
    a = np.asarray(A.a)
    jumps = np.diff(A.slopes)
    inner = t[1:-1]
    return math.fsum(inner * (1.0 - inner) / a[1:-1] * jumps)


def tau_quadrature_oracle(A: PickandsFunction, cfg: QuadratureConfig | None = None) -> float:
    """Kendall's tau from the Lebesgue-integral form, segment by segment.

    Computes ``1 - int (1 + (1-t) A'/A) (1 - t A'/A) dt`` with ``A'`` the
    slope of the current segment. Independent of :func:`tau`.
    """
    _require_valid(A)
    cfg = cfg or QuadratureConfig()
    total = []
    for (t0, a0), (t1, a1) in zip(A.knots[:-1], A.knots[1:]):
        m = (a1 - a0) / (t1 - t0)

        def integrand(s, t0=t0, a0=a0, m=m):
            r = m / (a0 + m * (s - t0))
            return (1.0 + (1.0 - s) * r) * (1.0 - s * r)

        seg_cfg = QuadratureConfig(cfg.tol * (t1 - t0), cfg.max_depth)
        total.append(integrate(integrand, t0, t1, (), seg_cfg).value)
    return 1.0 - math.fsum(total)


def _family_xy(spec: FamilySpec) -> tuple[float, float]:
    if spec.tag in ("Z", "W"):
        raise NoClosedForm(f"no closed-form measure for family {spec.tag}; use the knot form")
    return (0.0 if spec.x is None else float(spec.x)), float(spec.y)


def rho_family_closed(spec: FamilySpec) -> float:
    """Closed-form rho for the ``T``, ``L`` and ``P`` families."""
    x, y = _family_xy(spec)
    if spec.tag == "T":
        return phi1(y)
    if spec.tag == "L":
        return psi1(y)
    return -3.0 + 12.0 * (1.0 - x + x * y) / ((2.0 - x) * (1.0 + y))


def tau_family_closed(spec: FamilySpec) -> float:
    """Closed-form tau for the ``T``, ``L`` and ``P`` families."""
    x, y = _family_xy(spec)
    if spec.tag == "T":
        return phi2(y)
    if spec.tag == "L":
        return psi2(y)
    if x == y:
        return 1.0
    # (1-3x-y+4xy)/(y-x) rewritten around (1/2, 1/2) to avoid cancellation
    u, w = 0.5 - x, y - 0.5
    return 1.0 - 4.0 * u * w / (u + w)


def measure(kind: MeasureKind | str, A: PickandsFunction) -> float:
    """Dispatch to :func:`rho` or :func:`tau`."""
    kind = MeasureKind.parse(kind)
    return rho(A) if kind is MeasureKind.SPEARMAN_RHO else tau(A)


# -- scalar transforms --------------------------------------------------------

def _height(y: float) -> float:
    if not 0.5 - _EDGE <= y <= 1.0 + _EDGE:
        raise DomainError(f"height y must lie in [1/2, 1], got {y}")
    return min(max(float(y), 0.5), 1.0)


def _level(v: float) -> float:
    if not -_EDGE <= v <= 1.0 + _EDGE:
        raise DomainError(f"dependence value must lie in [0, 1], got {v}")
    return min(max(float(v), 0.0), 1.0)


def phi1(y: float) -> float:
    """rho of every tent ``T_{x,y}``."""
    return -3.0 + 6.0 / (1.0 + _height(y))


def phi1_inv(r: float) -> float:
    r = _level(r)
    return (3.0 - r) / (3.0 + r)


def psi1(y: float) -> float:
    """rho of ``L_y``."""
    y = _height(y)
    return -3.0 + 12.0 * y * (2.0 - y) / (1.0 + y) ** 2


def psi1_inv(r: float) -> float:
    # larger root of (15+r) y^2 + (2r-18) y + (3+r) = 0
    r = _level(r)
    y = (9.0 - r + 6.0 * math.sqrt(1.0 - r)) / (15.0 + r)
    return min(max(y, 0.5), 1.0)


def phi2(y: float) -> float:
    """tau of every tent ``T_{x,y}``."""
    return -1.0 + 1.0 / _height(y)


def phi2_inv(s: float) -> float:
    return 1.0 / (1.0 + _level(s))


def psi2(y: float) -> float:
    """tau of ``L_y``."""
    return 2.0 * (1.0 - _height(y))


def psi2_inv(s: float) -> float:
    return (2.0 - _level(s)) / 2.0


def phi_inv(kind: MeasureKind | str, v: float) -> float:
    """Height of the tents attaining dependence value ``v``."""
    kind = MeasureKind.parse(kind)
    return phi1_inv(v) if kind is MeasureKind.SPEARMAN_RHO else phi2_inv(v)


# -- kink maps keeping P_{x,y} at a fixed dependence value --------------------

def _target(v: float) -> float:
    if not 0.0 <= v < 1.0:
        raise DomainError(f"kink maps need a target value in [0, 1), got {v}")
    return float(v)


def _apex(y: float, y_min: float) -> float:
    if not y_min - _EDGE <= y <= 1.0 + _EDGE:
        raise DomainError(f"apex height must lie in [{y_min}, 1], got {y}")
    return min(max(float(y), y_min), 1.0)


def h_rho(r0: float, y: float) -> float:
    """Kink abscissa ``x`` with ``rho(P_{x,y}) = r0``."""
    r0 = _target(r0)
    y = _apex(y, phi1_inv(r0))
    x = 2.0 * (-3.0 + r0 + 3.0 * y + r0 * y) / (-9.0 + r0 + 15.0 * y + r0 * y)
    return max(x, 0.0)


def h_rho_deriv(r0: float, y: float) -> float:
    r0 = _target(r0)
    y = _apex(y, phi1_inv(r0))
    return 36.0 * (1.0 - r0) / (-9.0 + r0 + 15.0 * y + r0 * y) ** 2


def h_rho_inv(r0: float, x: float) -> float:
    r0 = _target(r0)
    x_max = 1.0 - phi1_inv(r0)
    if not -_EDGE <= x <= x_max + _EDGE:
        raise DomainError(f"x must lie in [0, {x_max}], got {x}")
    y = (2.0 * (r0 - 3.0) + (9.0 - r0) * x) / ((15.0 + r0) * x - 2.0 * (3.0 + r0))
    return min(max(y, phi1_inv(r0)), 1.0)


def h_tau(s0: float, y: float) -> float:
    """Kink abscissa ``x`` with ``tau(P_{x,y}) = s0``."""
    s0 = _target(s0)
    y = _apex(y, phi2_inv(s0))
    x = (-1.0 + y + s0 * y) / (-3.0 + s0 + 4.0 * y)
    return max(x, 0.0)


def h_tau_deriv(s0: float, y: float) -> float:
    s0 = _target(s0)
    y = _apex(y, phi2_inv(s0))
    return (1.0 - s0) ** 2 / (-3.0 + s0 + 4.0 * y) ** 2


def h_tau_inv(s0: float, x: float) -> float:
    s0 = _target(s0)
    x_max = 1.0 - phi2_inv(s0)
    if not -_EDGE <= x <= x_max + _EDGE:
        raise DomainError(f"x must lie in [0, {x_max}], got {x}")
    y = ((3.0 - s0) * x - 1.0) / (4.0 * x - 1.0 - s0)
    return min(max(y, phi2_inv(s0)), 1.0)


def h_map(kind: MeasureKind | str, v: float, y: float) -> float:
    kind = MeasureKind.parse(kind)
    return h_rho(v, y) if kind is MeasureKind.SPEARMAN_RHO else h_tau(v, y)

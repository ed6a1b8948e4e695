"""Sharp pointwise bounds on Pickands functions with a prescribed rho or tau.

For a target value ``v`` every Pickands function ``A`` whose copula has
Spearman's rho (or Kendall's tau) equal to ``v`` satisfies
``lower(t) <= A(t) <= upper(t)``. The lower bound is ``L_y`` at the tent
height ``y = phi^{-1}(v)``; the upper bound is the pointwise maximum of the
one-parameter family ``P_{h_v(y'), y'}``. Both bounds are attained, and
:func:`witness` produces an attaining function for any point of the band.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import IO

import numpy as np

from . import measures as _m
from .errors import DomainError, PointOutsideRegion, WitnessNotFound
from .measures import MeasureKind
from .numerics import find_root, scan_sign_changes
from .pickands import (
    FamilySpec,
    PickandsFunction,
    comonotone,
    convex_combination,
    independence,
    make_family,
)

__all__ = [
    "Region",
    "Witness",
    "lower_bound",
    "upper_bound",
    "upper_envelope_rho",
    "upper_envelope_tau",
    "middle_envelope_rho",
    "rho_breakpoints",
    "envelope_apex",
    "family_height",
    "region_contains",
    "witness",
    "g_fun",
    "g_deriv",
    "y_star",
    "t_of_y",
    "calibrate",
    "boundary_curves",
    "write_bounds_csv",
]

REGION_TOL = 1e-12
CERT_TOL = 1e-9


def _value(v: float) -> float:
    if not 0.0 <= v <= 1.0:
        raise DomainError(f"target value must lie in [0, 1], got {v}")
    return float(v)


def _abscissa(t):
    arr = np.asarray(t, dtype=float)
    if np.any(~((arr >= 0.0) & (arr <= 1.0))):
        raise DomainError(f"t must lie in [0, 1], got {t}")
    return arr


def _out(arr):
    return float(arr) if np.ndim(arr) == 0 else arr


def lower_bound(kind: MeasureKind | str, v: float, t):
    """``L_y(t) = max(1 - t, y, t)`` with ``y = phi^{-1}(v)``."""
    y0 = _m.phi_inv(kind, _value(v))
    t = _abscissa(t)
    return _out(np.maximum(np.maximum(1.0 - t, t), y0))


def rho_breakpoints(r0: float) -> tuple[float, float]:
    """Ends of the curved middle piece of the rho envelope."""
    return (3.0 - r0) / (6.0 + r0), (3.0 + 2.0 * r0) / (6.0 + r0)


def middle_envelope_rho(r0: float, t):
    """Curved middle piece ``(9 - r + 4 sqrt(6 - 2r - (15 + r) t (1 - t))) / (15 + r)``."""
    t = np.asarray(t, dtype=float)
    disc = 6.0 - 2.0 * r0 - (15.0 + r0) * t * (1.0 - t)
    return _out((9.0 - r0 + 4.0 * np.sqrt(np.maximum(disc, 0.0))) / (15.0 + r0))


def upper_envelope_rho(r0: float, t):
    """Upper bound of all Pickands functions with Spearman's rho ``r0``.

    Linear pieces ``P_{0, y0}`` left of the first breakpoint and
    ``P_{1 - y0, 1}`` right of the second, joined by a convex curved piece;
    ``y0 = phi1^{-1}(r0)``. The result is C^1 on ``(0, 1)``.
    """
    r0 = _value(r0)
    t = _abscissa(t)
    if r0 == 0.0:
        return _out(np.ones_like(t))
    if r0 == 1.0:
        return _out(np.maximum(t, 1.0 - t))
    y0 = _m.phi1_inv(r0)
    b1, b2 = rho_breakpoints(r0)
    left = 1.0 - (1.0 - y0) / y0 * t
    x1 = 1.0 - y0
    right = y0 + (1.0 - y0) / y0 * (t - x1)
    mid = middle_envelope_rho(r0, np.clip(t, b1, b2))
    return _out(np.where(t < b1, left, np.where(t > b2, right, mid)))


def upper_envelope_tau(s0: float, t):
    """Upper bound for Kendall's tau ``s0``: the tent ``T_{1/2, 1 - s0/2}``."""
    s0 = _value(s0)
    t = _abscissa(t)
    return _out(1.0 - s0 * np.minimum(t, 1.0 - t))


def upper_bound(kind: MeasureKind | str, v: float, t):
    kind = MeasureKind.parse(kind)
    if kind is MeasureKind.SPEARMAN_RHO:
        return upper_envelope_rho(v, t)
    return upper_envelope_tau(v, t)


@dataclass(frozen=True)
class Region:
    """The band of attainable graphs for a measure and target value."""

    measure: MeasureKind
    v: float

    def __post_init__(self):
        object.__setattr__(self, "measure", MeasureKind.parse(self.measure))
        _value(self.v)

    def lower(self, t):
        return lower_bound(self.measure, self.v, t)

    def upper(self, t):
        return upper_bound(self.measure, self.v, t)

    def contains(self, t: float, y: float, tol: float = REGION_TOL) -> bool:
        if not 0.0 <= t <= 1.0:
            return False
        return self.lower(t) - tol <= y <= self.upper(t) + tol


def region_contains(region: Region, t: float, y: float) -> bool:
    """Whether ``(t, y)`` lies in the closed band, with ``REGION_TOL`` slack."""
    return region.contains(t, y)


# -- the rho family P_{h(y), y} in closed form ---------------------------------

def _rho_level(r0: float) -> float:
    if not 0.0 < r0 < 1.0:
        raise DomainError(f"rho target must lie in (0, 1), got {r0}")
    return float(r0)


def _g_denominator(r0, y):
    return 6.0 - 2.0 * r0 - 15.0 * y - r0 * y + 15.0 * y * y + r0 * y * y


def _g_numerator(r0, t, y):
    return (3 * t + r0 * t + 3 * y - 3 * r0 * y - 18 * t * y + 2 * r0 * t * y
            + 3 * y * y - 3 * r0 * y * y + 15 * t * y * y + r0 * t * y * y)


def _check_g_args(r0: float, t: float, y: float):
    r0 = _rho_level(r0)
    y0 = _m.phi1_inv(r0)
    if not y0 - REGION_TOL <= y <= 1.0 + REGION_TOL:
        raise DomainError(f"y must lie in [{y0}, 1], got {y}")
    x = _m.h_rho(r0, min(max(y, y0), 1.0))
    if not x - REGION_TOL <= t <= y + REGION_TOL:
        raise DomainError(f"t must lie on the middle segment [{x}, {y}], got {t}")
    return r0


def g_fun(r0: float, t: float, y: float) -> float:
    """``P_{h(y), y}(t)`` on its middle segment, as a rational function of ``y``."""
    r0 = _check_g_args(r0, t, y)
    return _g_numerator(r0, t, y) / _g_denominator(r0, y)


def g_deriv(r0: float, t: float, y: float) -> float:
    """Derivative of :func:`g_fun` with respect to ``y``."""
    r0 = _check_g_args(r0, t, y)
    den = _g_denominator(r0, y)
    dnum = (3 - 3 * r0 - 18 * t + 2 * r0 * t + 6 * y - 6 * r0 * y
            + 30 * t * y + 2 * r0 * t * y)
    dden = -15 - r0 + 30 * y + 2 * r0 * y
    return dnum / den - dden * _g_numerator(r0, t, y) / den ** 2


def y_star(r0: float, t: float, strict: bool = True) -> float:
    """Apex height ``y`` at which ``P_{h(y), y}(t)`` is stationary in ``y``.

    The stationary point lies in ``[phi1^{-1}(r0), 1]`` exactly when ``t`` is
    between the two :func:`rho_breakpoints`. With ``strict=False`` the raw
    formula is returned outside that interval.
    """
    r0 = _rho_level(r0)
    if strict:
        b1, b2 = rho_breakpoints(r0)
        if not b1 - REGION_TOL <= t <= b2 + REGION_TOL:
            raise DomainError(f"t must lie in [{b1}, {b2}], got {t}")
    disc = 6.0 - 2.0 * r0 - (15.0 + r0) * t * (1.0 - t)
    y = (-6.0 + 2.0 * r0 - 15.0 * t - r0 * t - 6.0 * math.sqrt(disc)) / (
        -30.0 - 2.0 * r0 + 15.0 * t + r0 * t)
    if strict:
        y = min(max(y, _m.phi1_inv(r0)), 1.0)
    return y


def t_of_y(r0: float, y0: float) -> float:
    """Inverse of :func:`y_star`: the abscissa whose maximizing apex is ``y0``."""
    r0 = _rho_level(r0)
    lo = _m.phi1_inv(r0)
    if not lo - REGION_TOL <= y0 <= 1.0 + REGION_TOL:
        raise DomainError(f"y0 must lie in [{lo}, 1], got {y0}")
    num = 2.0 * (-3.0 + r0 - 6.0 * y0 + 2.0 * r0 * y0 + 15.0 * y0 ** 2 + r0 * y0 ** 2)
    den = -21.0 + r0 + 30.0 * y0 + 2.0 * r0 * y0 + 15.0 * y0 ** 2 + r0 * y0 ** 2
    return num / den


def envelope_apex(kind: MeasureKind | str, v: float, t: float) -> float:
    """Apex ``y'`` of the family member attaining the upper envelope at ``t``."""
    kind = MeasureKind.parse(kind)
    y0 = _m.phi_inv(kind, v)
    if kind is MeasureKind.KENDALL_TAU:
        return y0 if t <= 0.5 else 1.0
    b1, b2 = rho_breakpoints(v)
    if t < b1:
        return y0
    if t > b2:
        return 1.0
    return y_star(v, t)


def family_height(kind: MeasureKind | str, v: float, y: float, t: float) -> float:
    """``P_{h_v(y), y}(t)``: height at ``t`` of the family member with apex ``y``."""
    kind = MeasureKind.parse(kind)
    x = _m.h_map(kind, v, y)
    if t <= x:
        return 1.0 - t
    if t >= y:
        return t
    if kind is MeasureKind.SPEARMAN_RHO:
        return g_fun(v, t, y)
    return (1.0 - x) + (y - 1.0 + x) * (t - x) / (y - x)


# -- witnesses ----------------------------------------------------------------

@dataclass(frozen=True)
class Witness:
    """A certified member of the level set passing through a requested point."""

    function: PickandsFunction
    measure: MeasureKind
    v: float
    point: tuple[float, float]
    achieved_value: float
    achieved_height: float

    def to_json(self) -> dict:
        return {
            "knots": [[t, a] for t, a in self.function.knots],
            "measure": self.measure.value,
            "v": self.v,
            "point": list(self.point),
            "achieved_value": self.achieved_value,
            "achieved_height": self.achieved_height,
        }


def _tent_witness(y0: float, t: float, y: float) -> PickandsFunction | None:
    lo, hi = 1.0 - y0, y0
    cands: list[float] = []
    if abs(y - y0) <= REGION_TOL and lo <= t <= hi:
        cands.append(t)
    if y < 1.0:
        cands.append((1.0 - y0) * t / (1.0 - y))            # apex right of t
        cands.append(1.0 - (1.0 - y0) * (1.0 - t) / (1.0 - y))  # apex left of t
    elif t in (0.0, 1.0):
        cands.append(0.5)
    for x in cands:
        if lo - REGION_TOL <= x <= hi + REGION_TOL:
            A = make_family(FamilySpec("T", min(max(x, lo), hi), y0))
            if abs(A(t) - y) <= REGION_TOL:
                return A
    return None


def _sweep_witness(kind: MeasureKind, v: float, t: float, y: float) -> PickandsFunction | None:
    y0 = _m.phi_inv(kind, v)
    apex = envelope_apex(kind, v, t)
    if abs(upper_bound(kind, v, t) - y) <= REGION_TOL:
        yp = apex
    else:
        def gap(yy):
            return family_height(kind, v, yy, t) - y

        brackets = scan_sign_changes(gap, y0, 1.0, panels=64)
        if not brackets:
            if gap(y0) <= 0.0 <= gap(apex):
                brackets = [(y0, apex)]
            elif gap(apex) >= 0.0 >= gap(1.0):
                brackets = [(apex, 1.0)]
            else:
                return None
        lo, hi = brackets[0]
        yp = lo if lo == hi else find_root(gap, lo, hi, xtol=1e-13).root
    return make_family(FamilySpec("P", _m.h_map(kind, v, yp), yp))


def witness(kind: MeasureKind | str, v: float, t: float, y: float) -> Witness:
    """Return a Pickands function with dependence value ``v`` and ``A(t) = y``.

    Tents ``T_{x, y0}`` cover the band from the lower bound up to the larger of
    the two extreme tents; the family ``P_{h_v(y'), y'}`` covers the rest up
    to the envelope. The result is certified to ``CERT_TOL`` in both value
    and height.

    Raises
    ------
    PointOutsideRegion
        If ``(t, y)`` is not in the band.
    WitnessNotFound
        If no certified witness was produced for a point inside the band.
    """
    kind = MeasureKind.parse(kind)
    v = _value(v)
    region = Region(kind, v)
    if not (0.0 <= t <= 1.0 and region.contains(t, y)):
        raise PointOutsideRegion(f"({t}, {y}) is outside the {kind.value} band for v={v}")
    if v == 0.0:
        A = independence()
    elif v == 1.0:
        A = comonotone()
    else:
        y0 = _m.phi_inv(kind, v)
        A = _tent_witness(y0, t, y) or _sweep_witness(kind, v, t, y)
        if A is None:
            raise WitnessNotFound(f"no tent or sweep member through ({t}, {y}) for {kind.value}={v}")
    value = _m.measure(kind, A)
    height = A(t)
    if abs(value - v) > CERT_TOL or abs(height - y) > CERT_TOL:
        raise WitnessNotFound(
            f"candidate {A!r} misses ({t}, {y}): value {value}, height {height}")
    return Witness(A, kind, v, (t, y), value, height)


# -- calibrated members of a level set ------------------------------------------

def calibrate(A0: PickandsFunction, kind: MeasureKind | str, v: float,
              xtol: float = 1e-14) -> PickandsFunction:
    """Move ``A0`` along a straight path until its dependence value equals ``v``.

    If ``A0`` has value at least ``v`` the path runs from ``A = 1`` to ``A0``,
    otherwise from ``A0`` to ``M``. Values are monotone along either path
    because the functions decrease pointwise.
    """
    kind = MeasureKind.parse(kind)
    v = _value(v)
    if v == 0.0:
        return independence()
    if v == 1.0:
        return comonotone()
    if _m.measure(kind, A0) >= v:
        start, end = independence(), A0
    else:
        start, end = A0, comonotone()

    def gap(theta):
        return _m.measure(kind, convex_combination(start, end, theta)) - v

    theta = find_root(gap, 0.0, 1.0, xtol=xtol).root
    return convex_combination(start, end, theta)


# -- tabulation ---------------------------------------------------------------

def boundary_curves(kind: MeasureKind | str, v: float, n: int) -> np.ndarray:
    """Tabulate ``(t, lower, upper)`` on ``n`` equally spaced abscissae."""
    if n < 2:
        raise DomainError(f"need at least two grid points, got {n}")
    t = np.linspace(0.0, 1.0, int(n))
    return np.column_stack([t, lower_bound(kind, v, t), upper_bound(kind, v, t)])


def write_bounds_csv(rows: np.ndarray, fh: IO[str]) -> None:
    """Write a ``t,lower,upper`` table with 17 significant digits and LF endings."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["t", "lower", "upper"])
    for row in rows:
        writer.writerow([f"{x:.17g}" for x in row])

"""Piecewise-linear Pickands dependence functions.

A Pickands dependence function ``A`` is convex on ``[0, 1]`` with
``max(t, 1 - t) <= A(t) <= 1`` and ``A(0) = A(1) = 1``. It determines the
bivariate extreme-value copula ``C_A(x, y) = (xy) ** A(log x / log xy)``.

Every function here is stored as a canonical knot list: strictly increasing
abscissae, no duplicate knots, no collinear interior knots. Two functions are
equal exactly when their knot lists are.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, InvalidPickands, ParameterOutOfRange

__all__ = [
    "FamilySpec",
    "PickandsFunction",
    "Dominance",
    "make_family",
    "is_valid",
    "from_knots",
    "from_json",
    "from_supporting_lines",
    "convex_combination",
    "independence",
    "comonotone",
    "copula_eval",
    "dominates",
    "support_bounds",
    "support_contains",
]

TAGS = ("T", "L", "P", "Z", "W")

# slack for float knots produced by the family constructors
VALID_TOL = 1e-12
_COLLINEAR_TOL = 1e-15


@dataclass(frozen=True)
class FamilySpec:
    """Tag and parameters of one of the five piecewise-linear families.

    ``L`` only uses ``y``; the other tags use both ``x`` and ``y``.
    """

    tag: str
    x: float | None = None
    y: float = 1.0

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ParameterOutOfRange(f"unknown family tag {self.tag!r}; expected one of {TAGS}")


@dataclass(frozen=True, eq=False)
class PickandsFunction:
    """Canonical knot representation of a piecewise-linear Pickands function.

    Build instances with :func:`from_knots` or :func:`make_family`; the
    constructor does not validate. Calling the object evaluates ``A`` by
    linear interpolation and accepts scalars or arrays.
    """

    t: tuple[float, ...]
    a: tuple[float, ...]
    family: FamilySpec | None = field(default=None, compare=False)

    @property
    def knots(self) -> list[tuple[float, float]]:
        return list(zip(self.t, self.a))

    @property
    def slopes(self) -> np.ndarray:
        t, a = np.asarray(self.t), np.asarray(self.a)
        return np.diff(a) / np.diff(t)

    def __call__(self, t):
        return eval_pickands(self, t)

    def __eq__(self, other):
        if not isinstance(other, PickandsFunction):
            return NotImplemented
        return self.t == other.t and self.a == other.a

    def __hash__(self):
        return hash((self.t, self.a))

    def __repr__(self):
        name = ""
        if self.family is not None:
            f = self.family
            name = f"{f.tag}[x={f.x}, y={f.y}] "
        return f"PickandsFunction({name}knots={self.knots})"

    def to_json(self) -> dict:
        return {"knots": [[t, a] for t, a in self.knots]}


class Dominance(enum.Enum):
    """Outcome of :func:`dominates` for a pair ``(A, B)``.

    ``WEAKLY_ONLY`` means ``A <= B`` everywhere with strict inequality
    somewhere, i.e. the relation holds only in the reverse direction.
    """

    STRICTLY = "Strictly"
    EQUAL = "Equal"
    WEAKLY_ONLY = "WeaklyOnly"
    INCOMPARABLE = "Incomparable"


def _canonical(t: Sequence[float], a: Sequence[float]) -> tuple[tuple[float, ...], tuple[float, ...]]:
    ts: list[float] = []
    vs: list[float] = []
    for tk, ak in zip(t, a):
        if ts and tk == ts[-1]:
            continue
        ts.append(float(tk))
        vs.append(float(ak))
    # drop interior knots whose neighbours are collinear with them
    k = 1
    while k < len(ts) - 1:
        cross = (vs[k + 1] - vs[k]) * (ts[k] - ts[k - 1]) - (vs[k] - vs[k - 1]) * (ts[k + 1] - ts[k])
        if abs(cross) <= _COLLINEAR_TOL:
            del ts[k], vs[k]
            k = max(k - 1, 1)
        else:
            k += 1
    return tuple(ts), tuple(vs)


def is_valid(knots: Iterable[Sequence[float]], tol: float = VALID_TOL) -> tuple[bool, str]:
    """Check the Pickands invariants on a knot list.

    Returns ``(ok, diagnostic)``; the diagnostic names the first violated
    invariant and where it fails, and is empty when ``ok`` is true. For a
    piecewise-linear function all conditions reduce to checks at the knots.
    """
    try:
        pts = [(float(p[0]), float(p[1])) for p in knots]
    except (TypeError, ValueError, IndexError):
        return False, "knots must be a sequence of (t, a) pairs of numbers"
    if len(pts) < 2:
        return False, "at least two knots are required"
    if not all(math.isfinite(v) for p in pts for v in p):
        return False, "knots contain non-finite values"
    t = [p[0] for p in pts]
    a = [p[1] for p in pts]
    if t[0] != 0.0 or t[-1] != 1.0:
        return False, f"abscissae must start at 0 and end at 1, got {t[0]} and {t[-1]}"
    for k in range(1, len(t)):
        if not t[k] > t[k - 1]:
            return False, f"abscissae not strictly increasing at knot {k} (t={t[k]})"
    if abs(a[0] - 1.0) > tol:
        return False, f"boundary condition A(0)=1 violated: A(0)={a[0]}"
    if abs(a[-1] - 1.0) > tol:
        return False, f"boundary condition A(1)=1 violated: A(1)={a[-1]}"
    for k, (tk, ak) in enumerate(pts):
        if ak > 1.0 + tol:
            return False, f"upper bound A<=1 violated at knot {k} (t={tk}, A={ak})"
        if ak < max(tk, 1.0 - tk) - tol:
            return False, f"lower bound max(t,1-t) violated at knot {k} (t={tk}, A={ak})"
    for k in range(1, len(t) - 1):
        cross = (a[k + 1] - a[k]) * (t[k] - t[k - 1]) - (a[k] - a[k - 1]) * (t[k + 1] - t[k])
        if cross < -tol:
            return False, f"convexity violated at knot {k} (t={t[k]}): slope decreases"
    return True, ""


def from_knots(knots: Iterable[Sequence[float]], family: FamilySpec | None = None) -> PickandsFunction:
    """Validate a knot list and return its canonical :class:`PickandsFunction`."""
    knots = [tuple(p) for p in knots]
    ok, why = is_valid(knots)
    if not ok:
        raise InvalidPickands(why)
    t, a = _canonical([p[0] for p in knots], [p[1] for p in knots])
    # pin the boundary values exactly
    a = (1.0, *a[1:-1], 1.0)
    return PickandsFunction(t, a, family)


def independence() -> PickandsFunction:
    """``A = 1``, the independence copula."""
    return PickandsFunction((0.0, 1.0), (1.0, 1.0))


def comonotone() -> PickandsFunction:
    """``A(t) = max(t, 1 - t)``, the comonotonicity copula ``M``."""
    return PickandsFunction((0.0, 0.5, 1.0), (1.0, 0.5, 1.0))


def _check(cond: bool, msg: str):
    if not cond:
        raise ParameterOutOfRange(msg)


def _clip(v: float, lo: float, hi: float) -> float:
    return min(max(v, lo), hi)


def make_family(spec: FamilySpec) -> PickandsFunction:
    """Build the knot list of a family member ``T``, ``L``, ``P``, ``Z`` or ``W``.

    Parameters may overshoot their range by at most ``VALID_TOL``, in which
    case they are clipped; anything further raises ``ParameterOutOfRange``.
    """
    tol = VALID_TOL
    tag, x, y = spec.tag, spec.x, float(spec.y)
    _check(0.5 - tol <= y <= 1.0 + tol, f"{tag}: y must lie in [1/2, 1], got {y}")
    y = _clip(y, 0.5, 1.0)
    if tag != "L":
        _check(x is not None, f"{tag}: parameter x is required")
        x = float(x)

    if tag == "T":
        _check(1.0 - y - tol <= x <= y + tol, f"T: x must lie in [1-y, y] = [{1 - y}, {y}], got {x}")
        x = _clip(x, 1.0 - y, y)
        if y == 1.0:
            t, a = (0.0, 1.0), (1.0, 1.0)
        else:
            t, a = (0.0, x, 1.0), (1.0, y, 1.0)
    elif tag == "L":
        t, a = (0.0, 1.0 - y, y, 1.0), (1.0, y, y, 1.0)
    elif tag == "P":
        _check(-tol <= x <= 0.5 + tol, f"P: x must lie in [0, 1/2], got {x}")
        x = _clip(x, 0.0, 0.5)
        # direct knots (x, 1-x), (y, y): exact at x = 1-y and at x = y = 1/2
        t, a = (0.0, x, y, 1.0), (1.0, 1.0 - x, y, 1.0)
    elif tag == "Z":
        _check(0.0 < x <= 0.5 + tol, f"Z: x must lie in (0, 1/2], got {x}")
        x = _clip(x, 0.0, 0.5)
        _check(1.0 - x - tol <= y, f"Z: y must lie in [1-x, 1] = [{1 - x}, 1], got {y}")
        y = max(y, 1.0 - x)
        t, a = (0.0, x, 1.0 - x, 1.0), (1.0, y, y, 1.0)
    else:  # W
        _check(-tol <= x < 0.5, f"W: x must lie in [0, 1/2), got {x}")
        x = max(x, 0.0)
        _check(y <= 1.0 - x + tol, f"W: y must lie in [1/2, 1-x] = [1/2, {1 - x}], got {y}")
        y = min(y, 1.0 - x)
        t, a = (0.0, x, 0.5, 1.0 - x, 1.0), (1.0, 1.0 - x, y, 1.0 - x, 1.0)

    ct, ca = _canonical(t, a)
    ok, why = is_valid(zip(ct, ca))
    if not ok:
        raise ParameterOutOfRange(f"{tag}(x={x}, y={y}) is not a Pickands function: {why}")
    return PickandsFunction(ct, ca, FamilySpec(tag, x, y))


def from_json(obj: dict) -> PickandsFunction:
    """Parse ``{"family": {...}}`` or ``{"knots": [[t, a], ...]}``."""
    if not isinstance(obj, dict):
        raise InvalidPickands("expected a JSON object with 'family' or 'knots'")
    if "family" in obj:
        fam = obj["family"]
        if not isinstance(fam, dict) or "tag" not in fam:
            raise InvalidPickands("'family' must be an object with a 'tag'")
        try:
            spec = FamilySpec(str(fam["tag"]), fam.get("x"), float(fam.get("y", 1.0)))
            return make_family(spec)
        except (ParameterOutOfRange, TypeError, ValueError) as exc:
            raise InvalidPickands(str(exc)) from exc
    if "knots" in obj:
        return from_knots(obj["knots"])
    raise InvalidPickands("expected a JSON object with 'family' or 'knots'")


def eval_pickands(A: PickandsFunction, t):
    """Evaluate ``A`` at ``t`` (scalar or array) by linear interpolation."""
    arr = np.asarray(t, dtype=float)
    if np.any(~((arr >= 0.0) & (arr <= 1.0))):
        raise DomainError(f"Pickands functions are defined on [0, 1], got t={t}")
    out = np.interp(arr, A.t, A.a)
    return float(out) if out.ndim == 0 else out


def from_supporting_lines(left: Sequence[float], right: Sequence[float]) -> PickandsFunction:
    """Pickands function ``max(1 - t, t, l_1, ..., l_n)`` for lines ``l_i``.

    ``l_i`` runs from ``(0, left[i])`` to ``(1, right[i])``; all values must be
    in ``[0, 1]``. The pointwise maximum of lines is convex, and the bounds at
    ``t = 0, 1`` keep ``A(0) = A(1) = 1``, so every such maximum is a valid
    Pickands function. Any piecewise-linear Pickands function arises this way.
    """
    l0 = np.concatenate([[1.0, 0.0], np.asarray(left, dtype=float)])
    l1 = np.concatenate([[0.0, 1.0], np.asarray(right, dtype=float)])
    if l0.shape != l1.shape:
        raise DomainError("left and right must have the same length")
    if np.any((l0 < 0) | (l0 > 1) | (l1 < 0) | (l1 > 1)):
        raise DomainError("line end values must lie in [0, 1]")
    slope = l1 - l0
    cand = [0.0, 1.0]
    n = len(l0)
    for i in range(n):
        for j in range(i + 1, n):
            ds = slope[i] - slope[j]
            if ds != 0.0:
                s = (l0[j] - l0[i]) / ds
                if 0.0 < s < 1.0:
                    cand.append(float(s))
    ts = np.unique(cand)
    vals = np.max(l0[:, None] + slope[:, None] * ts[None, :], axis=0)
    vals[0] = vals[-1] = 1.0
    t, a = _canonical(ts, vals)
    return PickandsFunction(t, a)


def convex_combination(A: PickandsFunction, B: PickandsFunction, w: float) -> PickandsFunction:
    """Return ``(1 - w) * A + w * B`` for ``w`` in ``[0, 1]``.

    The set of Pickands functions is convex, so the result is again valid.
    """
    if not 0.0 <= w <= 1.0:
        raise DomainError(f"mixing weight must lie in [0, 1], got {w}")
    ts = np.union1d(A.t, B.t)
    vals = (1.0 - w) * np.interp(ts, A.t, A.a) + w * np.interp(ts, B.t, B.a)
    vals[0] = vals[-1] = 1.0
    t, a = _canonical(ts, vals)
    return PickandsFunction(t, a)


def copula_eval(A: PickandsFunction, x: float, y: float) -> float:
    """Evaluate the extreme-value copula ``C_A(x, y)``.

    On the boundary of the unit square the uniform-margin values are
    returned: ``C(x, 0) = C(0, y) = 0``, ``C(x, 1) = x``, ``C(1, y) = y``.
    """
    if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0):
        raise DomainError(f"copula arguments must lie in [0, 1]^2, got ({x}, {y})")
    if x == 0.0 or y == 0.0:
        return 0.0
    if x == 1.0:
        return float(y)
    if y == 1.0:
        return float(x)
    lx, ly = math.log(x), math.log(y)
    s = lx + ly
    return math.exp(s * eval_pickands(A, lx / s))


def dominates(A: PickandsFunction, B: PickandsFunction, tol: float = 1e-14) -> Dominance:
    """Decide whether ``A`` strictly dominates ``B`` (``A >= B``, ``A != B``).

    The difference of two piecewise-linear functions is linear between the
    union of their knots, so comparing there is exact. Differences within
    ``tol`` count as equality; knot values of mixed or constructed functions
    carry rounding noise of a few ulp.
    """
    ts = np.union1d(A.t, B.t)
    diff = np.interp(ts, A.t, A.a) - np.interp(ts, B.t, B.a)
    above = bool(np.any(diff > tol))
    below = bool(np.any(diff < -tol))
    if above and below:
        return Dominance.INCOMPARABLE
    if above:
        return Dominance.STRICTLY
    if below:
        return Dominance.WEAKLY_ONLY
    return Dominance.EQUAL


def support_bounds(A: PickandsFunction, tol: float = VALID_TOL) -> tuple[float, float]:
    """Return ``(L, R)``: the largest t with ``A(t) = 1 - t`` and the smallest with ``A(t) = t``.

    ``A(t) - (1 - t)`` is convex, non-negative and zero at ``t = 0``, so its
    zero set is an interval ending at a knot; the same holds on the right.
    """
    left = 0.0
    for tk, ak in zip(A.t, A.a):
        if tk > 0.5:
            break
        if abs(ak - (1.0 - tk)) <= tol:
            left = tk
    right = 1.0
    for tk, ak in zip(reversed(A.t), reversed(A.a)):
        if tk < 0.5:
            break
        if abs(ak - tk) <= tol:
            right = tk
    return left, right


def _boundary_curve(s: float, x: float) -> float:
    if s <= 0.0:
        return 0.0
    if s >= 1.0:
        return 1.0
    return x ** (1.0 / s - 1.0)


def support_contains(A: PickandsFunction, x: float, y: float, tol: float = 1e-12) -> bool:
    """Whether ``(x, y)`` lies in the support of the copula measure of ``C_A``.

    The support is the region between the curves ``x ** (1/L - 1)`` and
    ``x ** (1/R - 1)`` with ``(L, R) = support_bounds(A)``.
    """
    if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0):
        raise DomainError(f"point must lie in [0, 1]^2, got ({x}, {y})")
    left, right = support_bounds(A)
    return _boundary_curve(left, x) - tol <= y <= _boundary_curve(right, x) + tol

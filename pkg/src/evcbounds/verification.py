"""Batch property checks for one measure and target value.

Each check returns a :class:`PropertyResult` with the worst residual seen and
the tolerance it was held to. :func:`run_suite` bundles them into the report
emitted by ``evcbounds verify``.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from . import envelopes as env
from . import measures as m
from .errors import EVCBoundsError
from .measures import MeasureKind
from .pickands import (
    FamilySpec,
    comonotone,
    convex_combination,
    dominates,
    Dominance,
    from_supporting_lines,
    independence,
    make_family,
)

__all__ = [
    "PropertyResult",
    "random_family_spec",
    "random_pickands",
    "sweep_envelope",
    "run_suite",
]


@dataclass
class PropertyResult:
    name: str
    passed: bool
    worst_residual: float
    tolerance: float
    note: str = ""


def random_family_spec(rng: np.random.Generator, tags=("T", "L", "P")) -> FamilySpec:
    """Draw an admissible family member uniformly over its parameter box."""
    tag = str(rng.choice(tags))
    y = float(rng.uniform(0.5, 1.0))
    if tag == "T":
        return FamilySpec("T", float(rng.uniform(1.0 - y, y)), y)
    if tag == "L":
        return FamilySpec("L", None, y)
    if tag == "P":
        return FamilySpec("P", float(rng.uniform(0.0, 0.5)), y)
    if tag == "Z":
        x = float(rng.uniform(1e-3, 0.5))
        return FamilySpec("Z", x, float(rng.uniform(1.0 - x, 1.0)))
    x = float(rng.uniform(0.0, 0.499))
    return FamilySpec("W", x, float(rng.uniform(0.5, 1.0 - x)))


def random_pickands(rng: np.random.Generator, max_lines: int = 6):
    """Random piecewise-linear Pickands function as a maximum of random lines."""
    k = int(rng.integers(1, max_lines + 1))
    # random powers spread the lines so both strong and weak dependence occur
    left = rng.uniform(0.0, 1.0, k) ** rng.uniform(0.3, 3.0)
    right = rng.uniform(0.0, 1.0, k) ** rng.uniform(0.3, 3.0)
    return from_supporting_lines(left, right)


def sweep_envelope(kind: MeasureKind | str, v: float, t: np.ndarray, n_sweep: int = 10_000) -> np.ndarray:
    """Brute-force maximum of ``P_{h_v(y), y}(t)`` over an equispaced apex grid."""
    kind = MeasureKind.parse(kind)
    y0 = m.phi_inv(kind, v)
    ys = np.linspace(y0, 1.0, n_sweep)
    xs = np.array([m.h_map(kind, v, y) for y in ys])
    t = np.asarray(t, dtype=float)[None, :]
    x, y = xs[:, None], ys[:, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        mid = (1.0 - x) + (y - 1.0 + x) * (t - x) / (y - x)
    vals = np.where(t <= x, 1.0 - t, np.where(t >= y, t, mid))
    return vals.max(axis=0)


def _check(name: str, residuals, tol: float, note: str = "") -> PropertyResult:
    worst = float(np.max(residuals)) if len(residuals) else 0.0
    return PropertyResult(name, bool(worst <= tol), worst, tol, note)


def _closed_forms(kind, rng, n):
    res = []
    for _ in range(n):
        spec = random_family_spec(rng)
        A = make_family(spec)
        if kind is MeasureKind.SPEARMAN_RHO:
            res.append(abs(m.rho_family_closed(spec) - m.rho(A)))
        else:
            res.append(abs(m.tau_family_closed(spec) - m.tau(A)))
    return _check("closed_form_agreement", res, 1e-12)


def _quadrature(kind, rng, n):
    res = []
    for _ in range(n):
        A = random_pickands(rng)
        if kind is MeasureKind.SPEARMAN_RHO:
            res.append(abs(m.rho(A) - m.rho_quadrature(A)))
        else:
            res.append(abs(m.tau(A) - m.tau_quadrature_oracle(A)))
    return _check("quadrature_cross_check", res, 1e-8)


def _constant_family(kind, v, n):
    y0 = m.phi_inv(kind, v)
    res = []
    for y in np.linspace(y0, 1.0, n):
        A = make_family(FamilySpec("P", m.h_map(kind, v, y), float(y)))
        res.append(abs(m.measure(kind, A) - v))
    return _check("constant_value_family", res, 1e-12)


def _envelope(kind, v, n_grid, n_sweep):
    t = np.linspace(0.0, 1.0, n_grid)
    upper = env.upper_bound(kind, v, t)
    if 0.0 < v < 1.0:
        ref = sweep_envelope(kind, v, t, n_sweep)
        note = f"{n_sweep}-point apex sweep"
    elif v == 0.0:
        ref, note = np.ones_like(t), "degenerate: envelope is A=1"
    else:
        ref, note = np.maximum(t, 1.0 - t), "degenerate: envelope is M"
    return _check("envelope_oracle", np.abs(upper - ref), 2e-6, note)


def _containment(kind, v, rng, n, n_grid):
    t = np.linspace(0.0, 1.0, n_grid)
    lo, hi = env.lower_bound(kind, v, t), env.upper_bound(kind, v, t)
    res, value_res = [], []
    for _ in range(n):
        A = env.calibrate(random_pickands(rng), kind, v)
        value_res.append(abs(m.measure(kind, A) - v))
        a = A(t)
        res.append(max(0.0, float(np.max(lo - a)), float(np.max(a - hi))))
    worst_value = max(value_res) if value_res else 0.0
    result = _check("containment", res, 1e-10, f"calibration residual {worst_value:.2e}")
    result.passed = result.passed and worst_value <= 1e-12
    return result


def _sample_region(kind, v, rng):
    while True:
        t = float(rng.uniform(0.0, 1.0))
        y = float(rng.uniform(0.5, 1.0))
        if env.lower_bound(kind, v, t) < y < env.upper_bound(kind, v, t):
            return t, y


def _witnesses(kind, v, rng, n):
    if v in (0.0, 1.0):
        # the band is a single curve; sample on it
        pts = []
        for t in rng.uniform(0.0, 1.0, n):
            pts.append((float(t), float(env.lower_bound(kind, v, t))))
        note = "degenerate band: points on the single admissible curve"
    else:
        pts = [_sample_region(kind, v, rng) for _ in range(n)]
        note = "interior points"
    res = []
    failures = 0
    for t, y in pts:
        try:
            w = env.witness(kind, v, t, y)
        except EVCBoundsError:
            failures += 1
            continue
        res.append(max(abs(w.achieved_value - v), abs(w.achieved_height - y)))
    result = _check("witness_soundness", res, 1e-9, note + f"; {failures} failures")
    result.passed = result.passed and failures == 0
    return result


def _non_contractivity(kind, v, rng, n):
    if v >= 1.0:
        return PropertyResult("non_contractivity", True, 0.0, 1e-12, "skipped: kink map undefined at v=1")
    y0 = m.phi_inv(kind, v)
    if kind is MeasureKind.SPEARMAN_RHO:
        lip = 36.0 * (1.0 - v) / (6.0 + 2.0 * v) ** 2
    else:
        lip = ((1.0 - v) / (1.0 + v)) ** 2
    res = []
    for _ in range(n):
        a, b = np.sort(rng.uniform(y0, 1.0, 2))
        res.append(lip * (b - a) - (m.h_map(kind, v, b) - m.h_map(kind, v, a)))
    return _check("non_contractivity", res, 1e-12)


def _strict_order(kind, rng, n):
    margins = []
    for _ in range(n):
        B = random_pickands(rng)
        if B == independence():
            B = comonotone()
        A = convex_combination(B, independence(), float(rng.uniform(0.05, 0.95)))
        if dominates(A, B) is not Dominance.STRICTLY:
            margins.append(1.0)
            continue
        margins.append(-(m.measure(kind, B) - m.measure(kind, A)))
    # residual is the negated margin; it must stay below -1e-12
    return _check("strict_order", margins, -1e-12)


def run_suite(kind: MeasureKind | str, v: float, seed: int = 1, n_samples: int = 100,
              n_grid: int = 201, n_sweep: int = 10_000) -> dict:
    """Run every property check and return a JSON-ready report."""
    kind = MeasureKind.parse(kind)
    v = float(v)
    rng = np.random.default_rng(seed)
    results = [
        _closed_forms(kind, rng, n_samples),
        _quadrature(kind, rng, n_samples),
    ]
    if 0.0 < v < 1.0:
        results.append(_constant_family(kind, v, n_samples))
    else:
        results.append(PropertyResult("constant_value_family", True, 0.0, 1e-12,
                                      "skipped: kink map undefined at the endpoints"))
    results += [
        _envelope(kind, v, n_grid, n_sweep),
        _containment(kind, v, rng, n_samples, 2 * n_grid - 1),
        _witnesses(kind, v, rng, n_samples),
        _non_contractivity(kind, v, rng, n_samples),
        _strict_order(kind, rng, n_samples),
    ]
    return {
        "measure": kind.value,
        "v": v,
        "seed": seed,
        "passed": all(r.passed for r in results),
        "properties": [asdict(r) for r in results],
    }

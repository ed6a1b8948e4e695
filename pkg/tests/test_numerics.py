import math

import numpy as np
import pytest

from evcbounds.errors import DomainError, NoSignChange, ToleranceNotReached
from evcbounds.measures import psi1
from evcbounds.numerics import QuadratureConfig, find_root, integrate, scan_sign_changes


def test_constant_is_exact():
    res = integrate(lambda t: np.ones_like(t), 0.0, 1.0)
    assert res.value == 1.0
    assert res.panels_used == 1


def test_independence_integrand():
    res = integrate(lambda t: (1.0 + np.ones_like(t)) ** -2, 0.0, 1.0)
    assert abs(res.value - 0.25) <= 1e-14


def test_l_family_integrand_matches_psi1():
    y = 0.75
    A = lambda t: np.maximum(np.maximum(1.0 - t, t), y)
    res = integrate(lambda t: (1.0 + A(t)) ** -2, 0.0, 1.0, breakpoints=[1 - y, y])
    assert abs(res.value - (psi1(y) + 3.0) / 12.0) <= 1e-12
    assert res.error_estimate <= QuadratureConfig().tol


@pytest.mark.parametrize("edges", [[0.0, 0.3, 1.0], [0.0, 0.125, 0.5, 0.9, 1.0]])
def test_piecewise_linear_within_two_ulp(edges):
    rng = np.random.default_rng(7)
    vals = rng.uniform(0.5, 1.0, len(edges))
    f = lambda t: np.interp(t, edges, vals)
    exact = math.fsum((b - a) * (fa + fb) / 2 for a, b, fa, fb in zip(edges, edges[1:], vals, vals[1:]))
    res = integrate(f, 0.0, 1.0, breakpoints=edges)
    assert abs(res.value - exact) <= 2 * math.ulp(exact)


def test_panels_respect_breakpoints():
    seen = []

    def f(t):
        seen.append((t.min(), t.max()))
        return np.abs(t - 0.3)

    integrate(f, 0.0, 1.0, breakpoints=[0.3])
    assert all(hi <= 0.3 or lo >= 0.3 for lo, hi in seen)


def test_smooth_integrand_against_antiderivative():
    res = integrate(lambda t: np.exp(-t) * np.sin(5 * t), 0.0, 2.0)
    # d/dt [-e^{-t} (sin 5t + 5 cos 5t) / 26] = e^{-t} sin 5t
    F = lambda t: -math.exp(-t) * (math.sin(5 * t) + 5 * math.cos(5 * t)) / 26
    assert abs(res.value - (F(2.0) - F(0.0))) <= 1e-12


def test_tolerance_not_reached():
    with pytest.raises(ToleranceNotReached):
        integrate(lambda t: np.sign(t - 1 / 3), 0.0, 1.0, cfg=QuadratureConfig(tol=1e-15, max_depth=3))


def test_bad_config():
    with pytest.raises(DomainError):
        QuadratureConfig(tol=0.0)
    with pytest.raises(DomainError):
        QuadratureConfig(max_depth=0)


def test_root_of_psi1():
    target = psi1(0.8)
    res = find_root(lambda y: psi1(y) - target, 0.5, 1.0, xtol=1e-13)
    assert abs(res.root - 0.8) <= 1e-13
    lo, hi = res.bracket
    assert hi - lo <= 1e-13
    assert lo <= res.root <= hi


@pytest.mark.parametrize("f, lo, hi, root", [
    (lambda x: x ** 3 - 2.0, 0.0, 2.0, 2.0 ** (1 / 3)),
    (lambda x: math.cos(x) - x, 0.0, 1.0, 0.7390851332151607),
    (lambda x: math.tanh(50 * (x - 0.123)), -1.0, 1.0, 0.123),
])
def test_roots_carry_sign_change(f, lo, hi, root):
    res = find_root(f, lo, hi, xtol=1e-13)
    a, b = res.bracket
    assert b - a <= 1e-13
    assert f(a) * f(b) <= 0.0
    assert abs(res.root - root) <= 1e-12


def test_bisection_fallback_terminates():
    res = find_root(lambda x: x - 0.3, 0.0, 1.0, xtol=1e-13, maxiter=0)
    assert abs(res.root - 0.3) <= 1e-13


def test_no_sign_change():
    with pytest.raises(NoSignChange):
        find_root(lambda x: x * x + 1.0, -1.0, 1.0)


def test_scan_finds_every_crossing():
    br = scan_sign_changes(lambda x: math.sin(20 * x), 0.05, 1.0, panels=64)
    assert len(br) == 6  # zeros at k*pi/20 for k=1..6
    for lo, hi in br:
        assert any(lo <= k * math.pi / 20 <= hi for k in range(1, 7))

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from evcbounds.errors import DomainError, InvalidPickands, ParameterOutOfRange
from evcbounds.pickands import (
    Dominance,
    FamilySpec,
    comonotone,
    convex_combination,
    copula_eval,
    dominates,
    from_json,
    from_knots,
    from_supporting_lines,
    independence,
    is_valid,
    make_family,
    support_bounds,
    support_contains,
)


def fam(tag, x=None, y=1.0):
    return make_family(FamilySpec(tag, x, y))


# admissible parameter strategies, one per tag
ys = st.floats(0.5, 1.0)
t_specs = ys.flatmap(lambda y: st.floats(1 - y, y).map(lambda x: FamilySpec("T", x, y)))
l_specs = ys.map(lambda y: FamilySpec("L", None, y))
p_specs = st.builds(lambda x, y: FamilySpec("P", x, y), st.floats(0.0, 0.5), ys)
z_specs = st.floats(1e-6, 0.5).flatmap(lambda x: st.floats(1 - x, 1.0).map(lambda y: FamilySpec("Z", x, y)))
w_specs = st.floats(0.0, 0.4999).flatmap(lambda x: st.floats(0.5, 1 - x).map(lambda y: FamilySpec("W", x, y)))
any_spec = st.one_of(t_specs, l_specs, p_specs, z_specs, w_specs)


class TestMakeFamily:
    def test_tent_at_m(self):
        assert fam("T", 0.5, 0.5).knots == [(0, 1), (0.5, 0.5), (1, 1)]

    def test_tent_at_independence(self):
        for x in (0.0, 0.3, 1.0):
            assert fam("T", x, 1.0) == independence()

    def test_l(self):
        assert fam("L", y=0.75).knots == [(0, 1), (0.25, 0.75), (0.75, 0.75), (1, 1)]

    def test_p(self):
        assert fam("P", 0.2, 0.8).knots == [(0, 1), (0.2, 0.8), (0.8, 0.8), (1, 1)]
        # x < 1-y: kink at (x, 1-x), apex at (y, y)
        assert fam("P", 0.1, 0.8).knots == [(0, 1), (0.1, 0.9), (0.8, 0.8), (1, 1)]

    def test_p_corner_collapses(self):
        assert fam("P", 0.5, 0.5) == comonotone()
        assert fam("P", 0.0, 0.5) == comonotone()

    def test_z_and_w(self):
        assert fam("Z", 0.25, 0.9).knots == [(0, 1), (0.25, 0.9), (0.75, 0.9), (1, 1)]
        assert fam("W", 0.2, 0.6).knots == [(0, 1), (0.2, 0.8), (0.5, 0.6), (0.8, 0.8), (1, 1)]
        # W with y = 1-x is the L function of that height
        assert fam("W", 0.25, 0.75) == fam("L", y=0.75)

    @pytest.mark.parametrize("spec, fragment", [
        (FamilySpec("T", 0.1, 0.8), "[1-y, y]"),
        (FamilySpec("L", None, 0.4), "y must lie in [1/2, 1]"),
        (FamilySpec("P", 0.6, 0.8), "[0, 1/2]"),
        (FamilySpec("Z", 0.0, 0.9), "(0, 1/2]"),
        (FamilySpec("Z", 0.2, 0.7), "[1-x, 1]"),
        (FamilySpec("W", 0.5, 0.5), "[0, 1/2)"),
        (FamilySpec("W", 0.3, 0.8), "[1/2, 1-x]"),
    ])
    def test_out_of_range(self, spec, fragment):
        with pytest.raises(ParameterOutOfRange, match=None) as exc:
            make_family(spec)
        assert fragment in str(exc.value)

    def test_unknown_tag(self):
        with pytest.raises(ParameterOutOfRange):
            FamilySpec("Q", 0.1, 0.9)

    @given(any_spec)
    def test_family_members_are_valid(self, spec):
        A = make_family(spec)
        assert is_valid(A.knots) == (True, "")

    @given(st.one_of(l_specs, z_specs, w_specs, ys.map(lambda y: FamilySpec("T", 0.5, y))))
    def test_symmetric_families(self, spec):
        A = make_family(spec)
        t = np.linspace(0, 1, 1001)
        assert np.allclose(A(t), A(1 - t), rtol=0, atol=1e-15)

    @given(ys)
    def test_l_is_p_at_one_minus_y(self, y):
        assert fam("L", y=y).knots == fam("P", 1 - y, y).knots


class TestEval:
    def test_values(self):
        assert independence()(0.3) == 1.0
        assert fam("T", 0.5, 0.5)(0.25) == 0.75
        assert fam("L", y=0.75)(0.5) == 0.75

    def test_endpoints(self):
        A = fam("P", 0.2, 0.7)
        assert A(0.0) == 1.0 and A(1.0) == 1.0

    def test_vectorized(self):
        A = fam("T", 0.5, 0.5)
        assert np.array_equal(A(np.array([0.0, 0.5, 1.0])), [1.0, 0.5, 1.0])

    @pytest.mark.parametrize("t", [-0.1, 1.5, float("nan")])
    def test_domain(self, t):
        with pytest.raises(DomainError):
            fam("L", y=0.7)(t)


class TestIsValid:
    def test_m_is_valid(self):
        assert is_valid([(0, 1), (0.5, 0.5), (1, 1)]) == (True, "")

    def test_lower_bound_violation(self):
        ok, why = is_valid([(0, 1), (0.5, 0.4), (1, 1)])
        assert not ok
        assert "max(t,1-t)" in why and "t=0.5" in why

    def test_convexity_violation_at_third_knot(self):
        # slopes -0.667, +0.333, -0.25: the drop happens at knot index 2 (t=0.6)
        ok, why = is_valid([(0, 1), (0.3, 0.8), (0.6, 0.9), (0.8, 0.85), (1, 1)])
        assert not ok
        assert "convexity" in why and "knot 2" in why and "t=0.6" in why

    @pytest.mark.parametrize("knots, fragment", [
        ([(0, 0.9), (1, 1)], "A(0)=1"),
        ([(0, 1), (0.5, 1.1), (1, 1)], "A<=1"),
        ([(0, 1), (0.5, 0.6), (0.5, 0.6), (1, 1)], "strictly increasing"),
        ([(0.1, 1), (1, 1)], "start at 0"),
        ([(0, 1)], "two knots"),
        ([(0, 1), ("a", 1)], "numbers"),
    ])
    def test_diagnostics(self, knots, fragment):
        ok, why = is_valid(knots)
        assert not ok and fragment in why

    def test_from_knots_raises(self):
        with pytest.raises(InvalidPickands, match="convexity"):
            from_knots([(0, 1), (0.3, 0.8), (0.6, 0.9), (0.8, 0.85), (1, 1)])

    def test_canonical_prunes_collinear(self):
        A = from_knots([(0, 1), (0.1, 0.95), (0.25, 0.875), (0.5, 0.75), (1, 1)])
        assert A.knots == [(0, 1), (0.5, 0.75), (1, 1)]


class TestCopula:
    def test_independence(self):
        assert copula_eval(independence(), 0.3, 0.5) == pytest.approx(0.15, abs=1e-15)

    def test_m_on_diagonal(self):
        assert copula_eval(fam("T", 0.5, 0.5), 0.4, 0.4) == pytest.approx(0.4, abs=1e-15)

    def test_l_value(self):
        assert copula_eval(fam("L", y=0.75), 0.5, 0.5) == pytest.approx(0.25 ** 0.75, abs=1e-15)

    def test_margins(self):
        A = fam("P", 0.2, 0.8)
        assert copula_eval(A, 0.0, 0.3) == 0.0
        assert copula_eval(A, 0.3, 0.0) == 0.0
        assert copula_eval(A, 0.3, 1.0) == 0.3
        assert copula_eval(A, 1.0, 0.6) == 0.6

    def test_domain(self):
        with pytest.raises(DomainError):
            copula_eval(independence(), 1.2, 0.5)

    def test_frechet_bounds(self):
        rng = np.random.default_rng(3)
        for _ in range(1000):
            A = from_supporting_lines(rng.uniform(size=3), rng.uniform(size=3))
            x, y = rng.uniform(1e-9, 1 - 1e-9, 2)
            c = copula_eval(A, x, y)
            assert max(x + y - 1, 0) - 1e-15 <= c <= min(x, y) + 1e-15


class TestDominates:
    def test_independence_dominates_m(self):
        assert dominates(independence(), fam("T", 0.5, 0.5)) is Dominance.STRICTLY
        assert dominates(fam("T", 0.5, 0.5), independence()) is Dominance.WEAKLY_ONLY

    def test_equal(self):
        assert dominates(fam("L", y=0.75), fam("L", y=0.75)) is Dominance.EQUAL

    def test_tent_over_l(self):
        # T_{0.5,0.9}(0.05) = 0.99 > 0.95 = L_{0.6}(0.05): the tent lies above everywhere
        assert dominates(fam("T", 0.5, 0.9), fam("L", y=0.6)) is Dominance.STRICTLY

    def test_incomparable(self):
        # L_{0.6}(0.5) = 0.6 > 0.55 = T(0.5), but L_{0.6}(0.05) = 0.95 < 0.955 = T(0.05)
        assert dominates(fam("L", y=0.6), fam("T", 0.5, 0.55)) is Dominance.INCOMPARABLE

    def test_strict_partial_order(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            B = from_supporting_lines(rng.uniform(size=3), rng.uniform(size=3))
            A = convex_combination(B, independence(), rng.uniform(0.1, 0.9))
            C = convex_combination(B, comonotone(), rng.uniform(0.1, 0.9))
            if B in (independence(), comonotone()):
                continue
            assert dominates(A, B) is Dominance.STRICTLY
            assert dominates(B, C) is Dominance.STRICTLY
            assert dominates(A, C) is Dominance.STRICTLY
            assert dominates(B, A) is not Dominance.STRICTLY


class TestSupport:
    def test_bounds(self):
        assert support_bounds(independence()) == (0.0, 1.0)
        assert support_bounds(fam("L", y=0.75)) == (0.25, 0.75)
        assert support_bounds(fam("T", 0.5, 0.5)) == (0.5, 0.5)
        assert support_bounds(fam("P", 0.2, 0.7)) == (0.2, 0.7)

    def test_contains(self):
        assert support_contains(independence(), 0.3, 0.9)
        M = fam("T", 0.5, 0.5)
        assert support_contains(M, 0.4, 0.4)
        assert not support_contains(M, 0.4, 0.5)
        L = fam("L", y=0.75)
        assert support_contains(L, 0.5, 0.5 ** (1 / 3))
        assert not support_contains(L, 0.5, 0.5 ** (1 / 3) + 1e-6)
        assert not support_contains(L, 0.5, 0.5 ** 3 - 1e-6)


class TestJson:
    def test_family(self):
        assert from_json({"family": {"tag": "T", "x": 0.5, "y": 0.5}}) == comonotone()

    def test_knots(self):
        A = from_json({"knots": [[0, 1], [0.5, 0.75], [1, 1]]})
        assert A.to_json() == {"knots": [[0.0, 1.0], [0.5, 0.75], [1.0, 1.0]]}

    @pytest.mark.parametrize("obj", [[], {"foo": 1}, {"family": {"tag": "P", "x": 0.9, "y": 0.6}},
                                     {"knots": [[0, 1], [0.5, 0.2], [1, 1]]}])
    def test_bad(self, obj):
        with pytest.raises(InvalidPickands):
            from_json(obj)


def test_supporting_lines_cover_piecewise_linear():
    # P_{0.2,0.8} is the max of 1-t, t and the line through (0.2,0.8),(0.8,0.8)
    A = from_supporting_lines([0.8], [0.8])
    assert np.allclose(A.knots, fam("P", 0.2, 0.8).knots, rtol=0, atol=1e-15)


@settings(max_examples=200)
@given(st.lists(st.tuples(st.floats(0, 1), st.floats(0, 1)), min_size=1, max_size=6))
def test_supporting_lines_valid(lines):
    A = from_supporting_lines([a for a, _ in lines], [b for _, b in lines])
    assert is_valid(A.knots)[0]
    t = np.linspace(0, 1, 257)
    brute = np.max([np.maximum(1 - t, t)] + [a + (b - a) * t for a, b in lines], axis=0)
    assert np.max(np.abs(A(t) - brute)) <= 1e-12

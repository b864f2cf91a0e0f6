"""Framed quantum plane: pairings, twisted products, windows."""

import random
from fractions import Fraction

import pytest

from pairzeta.motivic import slope_lb, u_series, u_window
from pairzeta.qplane import (UNIT, FramedClass, SeriesSupport, SkewSeries,
                             Window, WindowError, bracket, chi, chi2,
                             framed_bracket, framed_chi, skew_inverse,
                             skew_mul, truncate_slope, unit_series)
from pairzeta.scalar import ONE, ScalarValue

q = ScalarValue.q_pow
F = Fraction


class TestPairings:
    def test_chi_genus_one(self):
        assert chi((3, 5), 1) == 5

    def test_chi2_riemann_roch(self):
        assert chi2((2, 3), (1, 1), 0) == 2 * 1 - 1 * 3 + 2
        assert bracket((1, 0), (1, 1)) == 2
        assert bracket((2, 3), (2, 3)) == 0

    @pytest.mark.parametrize("g", [0, 1, 2])
    def test_framed_reduces_to_unframed(self, g):
        a = FramedClass(2, -1, 0)
        b = FramedClass(1, 3, 0)
        assert framed_bracket(a, b, g) == bracket(a, b)

    @pytest.mark.parametrize("g", [0, 1, 2])
    def test_framing_against_structure_sheaf(self, g):
        assert framed_bracket(FramedClass(1, 0, 0), FramedClass(0, 0, 1), g) == 1 - g

    @pytest.mark.parametrize("g", [0, 1, 3])
    def test_antisymmetry(self, g):
        rng = random.Random(g)
        for _ in range(30):
            a = FramedClass(rng.randint(0, 3), rng.randint(-3, 3), rng.randint(0, 1))
            b = FramedClass(rng.randint(0, 3), rng.randint(-3, 3), rng.randint(0, 1))
            assert framed_bracket(a, b, g) == -framed_bracket(b, a, g)
            assert framed_bracket(a, b, g) == framed_chi(a, b, g) - framed_chi(b, a, g)


def rand_series(rng, framing, with_unit, nterms=4):
    coeffs = {UNIT: ONE} if with_unit else {}
    for _ in range(nterms):
        fc = FramedClass(rng.randint(1, 2), rng.randint(-2, 2), framing)
        coeffs[fc] = ScalarValue.from_rational(rng.randint(1, 4)) * q(rng.randint(0, 2))
    return SkewSeries(coeffs)


class TestSkewMul:
    def test_basic_twist(self):
        w = Window({2: (1, 1)}, framing_max=0)
        s = SkewSeries({FramedClass(1, 0, 0): ONE})
        t = SkewSeries({FramedClass(1, 1, 0): ONE})
        assert skew_mul(s, t, 0, w).coeff(FramedClass(2, 1, 0)) == q(1)

    def test_unit_identity(self):
        w = Window({1: (-2, 2)}, framing_max=0)
        s = SkewSeries({UNIT: ONE, FramedClass(1, 1, 0): q(2) + 1})
        assert skew_mul(unit_series(), s, 1, w).coeffs == s.coeffs
        assert skew_mul(s, unit_series(), 1, w).coeffs == s.coeffs

    @pytest.mark.parametrize("g", [0, 1, 2])
    def test_framed_example(self, g):
        w = Window({1: (0, 0)}, framing_max=1)
        a = SkewSeries({FramedClass(1, 0, 0): ONE})
        b = SkewSeries({FramedClass(0, 0, 1): ONE})
        assert skew_mul(a, b, g, w).coeff(FramedClass(1, 0, 1)) == \
            ScalarValue.neg_s_pow(1 - g)

    @pytest.mark.parametrize("g", [0, 1])
    def test_associativity_random(self, g):
        rng = random.Random(41 + g)
        big = Window({r: (-12, 12) for r in range(1, 7)}, framing_max=2)
        for _ in range(8):
            s1 = rand_series(rng, 0, True)
            s2 = rand_series(rng, 0, False)
            s3 = rand_series(rng, 1, False)
            lhs = skew_mul(skew_mul(s1, s2, g, big), s3, g, big)
            rhs = skew_mul(s1, skew_mul(s2, s3, g, big), g, big)
            assert lhs.coeffs == rhs.coeffs

    def test_unframed_products_q_integral(self):
        rng = random.Random(43)
        w = Window({r: (-8, 8) for r in range(1, 5)}, framing_max=0)
        for g in (0, 2):
            s1, s2 = rand_series(rng, 0, False), rand_series(rng, 0, False)
            prod = skew_mul(s1, s2, g, w)
            assert all(v.is_q_integral() for v in prod.coeffs.values())

    def test_mixed_framing_odd_powers(self):
        w = Window({1: (0, 0)}, framing_max=1)
        prod = skew_mul(
            SkewSeries({FramedClass(1, 0, 0): ONE}),
            SkewSeries({FramedClass(0, 0, 1): ONE}), 0, w,
        )
        assert not prod.coeff(FramedClass(1, 0, 1)).is_q_integral()

    def test_window_too_small_raises(self):
        small = Window({1: (1, 1)}, framing_max=0)
        sup = SeriesSupport(0, {1: 1, 2: 2}, True, ranks_complete=False)
        a = SkewSeries({UNIT: ONE, FramedClass(1, 1, 0): q(1)}, small, sup)
        b = SkewSeries({UNIT: ONE, FramedClass(1, 1, 0): q(1)}, small, sup)
        out = Window({1: (1, 2), 2: (2, 4)}, framing_max=0)
        with pytest.raises(WindowError):
            skew_mul(a, b, 0, out)


class TestSkewInverse:
    def test_geometric_series_single_class(self):
        a = q(1) + 1
        alpha = FramedClass(1, 1, 0)
        w = Window({1: (1, 1), 2: (2, 2), 3: (3, 3)}, framing_max=0)
        sup = SeriesSupport(0, {1: 1, 2: 2, 3: 3}, True, ranks_complete=True)
        s = SkewSeries({UNIT: ONE, alpha: a}, w, sup)
        inv = skew_inverse(s, 1, w)
        assert inv.coeff(alpha) == -a
        assert inv.coeff(FramedClass(2, 2, 0)) == a * a
        assert inv.coeff(FramedClass(3, 3, 0)) == -(a * a * a)

    def test_involution_and_two_sided(self, g1):
        tau = F(1, 2)
        w = u_window(">=", tau, 3, lambda rk: slope_lb(">=", tau, rk) + 3)
        u = u_series(g1, ">=", tau, w)
        uinv = skew_inverse(u, 1, w)
        assert skew_inverse(uinv, 1, w).coeffs == u.coeffs
        small = u_window(">=", tau, 2, lambda rk: slope_lb(">=", tau, rk) + 1)
        for left, right in ((u, uinv), (uinv, u)):
            prod = skew_mul(left, right, 1, small)
            assert set(prod.coeffs) == {UNIT}
            assert prod.coeff(UNIT).is_one()

    def test_needs_unit(self):
        s = SkewSeries({FramedClass(1, 0, 0): ONE})
        with pytest.raises(ValueError):
            skew_inverse(s, 0, Window({1: (0, 0)}, framing_max=0))


class TestTruncate:
    def test_partition_of_support(self):
        s = SkewSeries({
            UNIT: ONE,
            FramedClass(1, 0, 0): ONE,
            FramedClass(1, 2, 0): q(1),
            FramedClass(2, 1, 0): q(2),
        })
        low = truncate_slope(s, "<=", F(1, 2))
        high = truncate_slope(s, ">", F(1, 2))
        assert set(low.coeffs) == {UNIT, FramedClass(1, 0, 0), FramedClass(2, 1, 0)}
        merged = dict(high.coeffs)
        merged.update(low.coeffs)
        assert merged == s.coeffs

    def test_empty_equal_slope(self):
        s = SkewSeries({UNIT: ONE, FramedClass(1, 1, 0): ONE})
        t = truncate_slope(s, "=", F(1, 2))
        assert set(t.coeffs) == {UNIT}

    def test_idempotent(self):
        s = SkewSeries({UNIT: ONE, FramedClass(1, 1, 0): ONE, FramedClass(1, -1, 0): q(1)})
        once = truncate_slope(s, "<", F(0))
        twice = truncate_slope(once, "<", F(0))
        assert once.coeffs == twice.coeffs

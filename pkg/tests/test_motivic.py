"""Zagier classes and slope-slice closed forms against enumeration oracles."""

import random
from fractions import Fraction

import pytest

from pairzeta.curve import b_r
from pairzeta.motivic import (ChernClass, SliceTable, beta, chi,
                              inverse_closed, slice_bruteforce, slice_closed,
                              slice_closed_sec6, slope_lb, u_series, u_window)
from pairzeta.qplane import UNIT, FramedClass, skew_inverse
from pairzeta.scalar import ScalarValue

q = ScalarValue.q_pow
F = Fraction


class TestBeta:
    def test_rank_one_is_b1(self, g0, g1):
        for c in (g0, g1):
            for d in (-3, 0, 7):
                assert beta(c, ChernClass(1, d)) == b_r(c, 1)

    def test_rank2_degree1(self, g1):
        b1, b2 = b_r(g1, 1), b_r(g1, 2)
        expected = b2 + q(1) * b1 * b1 / (1 - q(2))
        assert beta(g1, ChernClass(2, 1)) == expected

    def test_rank2_composition_oracle(self, g1):
        # independent enumeration of eq-of-compositions for r = 3, d = 2
        from pairzeta.slices import compositions
        from pairzeta.scalar import rfrac
        r, d = 3, 2
        total = ScalarValue.from_rational(0)
        for comp in compositions(r):
            term = ScalarValue.from_rational(1)
            exp = F(0)
            pref = 0
            for i in range(len(comp) - 1):
                pref += comp[i]
                m = comp[i] + comp[i + 1]
                exp += m * rfrac(F(pref * d, r))
                term = term / (1 - q(m))
            assert exp.denominator == 1
            term = term * q(int(exp))
            for ri in comp:
                term = term * b_r(g1, ri)
            total = total + term
        assert beta(g1, ChernClass(3, 2)) == total

    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_periodicity(self, g1, r):
        rng = random.Random(r)
        for _ in range(5):
            d = rng.randint(-6, 6)
            assert beta(g1, ChernClass(r, d)) == beta(g1, ChernClass(r, d + r))

    def test_depends_on_residue(self, g1):
        assert beta(g1, ChernClass(2, 0)) != beta(g1, ChernClass(2, 1))

    def test_q_integral(self, g0, g1, g2):
        for c in (g0, g1, g2):
            for r in (1, 2, 3):
                for d in (0, 1):
                    assert beta(c, ChernClass(r, d)).is_q_integral()


TAUS = [F(3, 4), F(1, 2), F(-3, 2), F(2), F(7, 4)]


class TestSliceClosed:
    def test_at_mu_equals_beta_both_sides(self, g0, g1):
        for c in (g0, g1):
            for (r, d) in [(2, 1), (2, 2), (3, 2), (3, 3)]:
                al = ChernClass(r, d)
                assert slice_closed(c, al, ">=", al.slope) == beta(c, al)
                assert slice_closed(c, al, "<=", al.slope) == beta(c, al)

    def test_incompatible_slope_zero(self, g0):
        assert slice_closed(g0, ChernClass(2, 1), ">=", F(5)).is_zero()
        assert slice_closed(g0, ChernClass(2, 7), "<=", F(1)).is_zero()

    def test_matches_bruteforce(self, g0, g1):
        for c in (g0, g1):
            for tau in TAUS:
                for r in (1, 2, 3):
                    for d in range(-2, 5):
                        al = ChernClass(r, d)
                        if al.slope >= tau:
                            assert slice_closed(c, al, ">=", tau) == \
                                slice_bruteforce(c, al, ">=", tau), (r, d, tau)
                        if al.slope > tau:
                            assert slice_closed(c, al, ">", tau) == \
                                slice_bruteforce(c, al, ">", tau), (r, d, tau)
                        if tau - 2 <= al.slope <= tau:
                            assert slice_closed(c, al, "interval", tau, tau - 2) \
                                == slice_bruteforce(c, al, "interval", tau, tau - 2)

    def test_spec_example_r2(self, g1):
        al = ChernClass(2, 2)
        assert slice_closed(g1, al, ">=", F(3, 4)) == \
            slice_bruteforce(g1, al, ">=", F(3, 4))

    def test_downward_modes_stabilized_interval(self, g0, g1):
        # the <= and < closed forms are the deep-floor interval forms, and
        # the interval form has a finite enumeration oracle
        for c in (g0, g1):
            for tau in (F(3, 4), F(2)):
                for r in (2, 3):
                    for d in range(-4, 2):
                        al = ChernClass(r, d)
                        if al.slope <= tau:
                            phi = min(al.slope, F(-9))
                            lhs = slice_closed(c, al, "<=", tau)
                            assert lhs == slice_closed(c, al, "interval", tau, phi)
                            assert lhs == slice_bruteforce(c, al, "<=", tau, floor=phi)
                        if al.slope < tau:
                            eps = F(1, 2 * r * tau.denominator)
                            phi = min(al.slope, F(-9))
                            lhs = slice_closed(c, al, "<", tau)
                            assert lhs == slice_closed(
                                c, al, "interval", tau - eps, phi)

    def test_reversed_presentation(self, g0, g1):
        for c in (g0, g1):
            for tau in (F(3, 4), F(1), F(-1, 2)):
                for r in (1, 2, 3):
                    for d in range(-1, 5):
                        al = ChernClass(r, d)
                        if al.slope >= tau:
                            assert slice_closed(c, al, ">=", tau) == \
                                slice_closed_sec6(c, al, tau)

    def test_bruteforce_needs_floor_for_downward(self, g0):
        with pytest.raises(ValueError):
            slice_bruteforce(g0, ChernClass(2, 1), "<=", F(1))


class TestInverseClosed:
    def test_rank_one_gt(self, g0, g1):
        for c in (g0, g1):
            assert inverse_closed(c, ChernClass(1, 3), ">", F(1, 2)) == -b_r(c, 1)

    def test_incompatible_zero(self, g0):
        assert inverse_closed(g0, ChernClass(1, 0), ">", F(1, 2)).is_zero()

    @pytest.mark.parametrize("g", [0, 1])
    def test_qplane_inversion_matches(self, g, g0, g1):
        c = g0 if g == 0 else g1
        tau = F(3, 4)
        w = u_window(">", tau, 3, lambda rk: slope_lb(">", tau, rk) + 4)
        uinv = skew_inverse(u_series(c, ">", tau, w), g, w)
        for fc in w.classes(0):
            al = ChernClass(fc.rank, fc.degree)
            assert uinv.coeff(fc) == ScalarValue.neg_s_pow(chi(al, g)) * \
                inverse_closed(c, al, ">", tau)


class TestUSeries:
    def test_rank_one_entries(self, g0, g1):
        for g, c in ((0, g0), (1, g1)):
            w = u_window(">=", F(1, 2), 1, 4)
            u = u_series(c, ">=", F(1, 2), w)
            for d in range(1, 5):
                assert u.coeff(FramedClass(1, d, 0)) == \
                    ScalarValue.neg_s_pow(d + 1 - g) * b_r(c, 1)

    def test_equal_mode_empty_ray(self, g1):
        w = u_window("=", F(1, 3), 2, 3)
        u = u_series(g1, "=", F(1, 3), w)
        assert set(u.coeffs) == {UNIT}

    def test_equal_mode_uses_beta(self, g1):
        w = u_window("=", F(1), 2, 3)
        u = u_series(g1, "=", F(1), w)
        al = ChernClass(2, 2)
        assert u.coeff(FramedClass(2, 2, 0)) == \
            ScalarValue.neg_s_pow(chi(al, 1)) * beta(g1, al)

    def test_empty_window_rejected(self, g1):
        from pairzeta.qplane import Window
        with pytest.raises(ValueError):
            u_series(g1, ">=", F(1, 2), Window({}, framing_max=0))


class TestSliceTable:
    def test_cache_consistency(self, g1):
        table = SliceTable(g1)
        rng = random.Random(3)
        vals = []
        for _ in range(12):
            al = ChernClass(rng.randint(1, 3), rng.randint(0, 5))
            vals.append(table.value(al, ">=", F(1, 2)))
        assert table.verify_sample(rng, 6)
        for v, (key, cached) in zip(vals, list(table._table.items())[: len(vals)]):
            assert isinstance(cached, ScalarValue)

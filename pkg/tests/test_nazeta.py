"""Non-abelian zeta functions: series route, closed forms, identities."""

from fractions import Fraction

import pytest

from pairzeta.curve import b_r, zeta, zeta_hat
from pairzeta.motivic import ChernClass, beta
from pairzeta.nazeta import (compute_zeta_result, counting_miracle_check,
                             functional_equation_check, numerator_P,
                             sl_group_zeta, uniformity_check, zeta_hat_r_closed,
                             zeta_r, zeta_r_series)
from pairzeta.ratfun import RationalFunc, TPoly
from pairzeta.scalar import ONE, ScalarValue

q = ScalarValue.q_pow


def lin(coeff):
    return RationalFunc(TPoly([ONE, -coeff]))


class TestSeriesRoute:
    def test_rank_one_is_sym_powers(self, g1):
        assert zeta_r(g1, 1) == zeta(g1)
        assert zeta_r_series(g1, 1, 4) == zeta(g1).series(4)

    def test_k0_counting_miracle_coefficient(self, g0, g1):
        for g, c in ((0, g0), (1, g1)):
            for r in (2, 3):
                k0 = zeta_r_series(c, r, 0)[0]
                assert q((1 - g) * (r * (r - 1) // 2)) * k0 == \
                    beta(c, ChernClass(r - 1, 0))

    @pytest.mark.parametrize("r", [2, 3, 4])
    @pytest.mark.parametrize("g", [0, 1])
    def test_matches_closed_form(self, g, r, g0, g1):
        c = g0 if g == 0 else g1
        n = 5 if r <= 3 else 3
        assert zeta_r_series(c, r, n) == zeta_r(c, r).series(n)


class TestClosedForm:
    def test_rank2_reduces_to_displayed_formula(self, g0, g1, g2):
        for g, c in ((0, g0), (1, g1), (2, g2)):
            zh = zeta_hat(c)
            direct = (zh / lin(q(2)) - zh.subst_scale(q(1)).mul_tpow(1) / lin(ONE))
            assert zeta_hat_r_closed(c, 2) == direct.scale(q(g - 1) * b_r(c, 1))

    def test_rank3_reduces_to_displayed_formula(self, g0, g1):
        for g, c in ((0, g0), (1, g1)):
            zh = zeta_hat(c)
            b1, b2 = b_r(c, 1), b_r(c, 2)
            part1 = (zh / lin(q(3)) - zh.subst_scale(q(2)).mul_tpow(1) / lin(ONE)) \
                .scale(q(3 * g - 3) * b2)
            part2 = (
                zh / lin(q(2))
                - zh.subst_scale(q(1)).mul_tpow(1).scale(1 - q(2)) / (lin(ONE) * lin(q(3)))
                - zh.subst_scale(q(2)).mul_tpow(1).scale(q(1)) / lin(q(1))
            ).scale(q(3 * g - 3) * b1 * b1 / (1 - q(2)))
            assert zeta_hat_r_closed(c, 3) == part1 + part2


class TestRationality:
    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_polynomial_of_degree_2g(self, r, g0, g1, g2):
        for g, c in ((0, g0), (1, g1), (2, g2)):
            p = numerator_P(c, r)
            assert p.degree() <= 2 * g
            if c.symbolic and g > 0:
                assert p.degree() == 2 * g

    def test_rank1_is_curve_numerator(self, g1):
        assert numerator_P(g1, 1) == g1.numerator

    def test_g0_rank2_degree_zero(self, g0):
        assert numerator_P(g0, 2).degree() == 0


class TestFunctionalEquation:
    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_symbolic(self, r, g0, g1, g2):
        for c in (g0, g1, g2):
            assert functional_equation_check(c, r)

    def test_rank4_numeric(self, elliptic):
        assert functional_equation_check(elliptic, 4)


class TestCountingMiracle:
    @pytest.mark.parametrize("r", [2, 3, 4])
    def test_independent_sides(self, r, g0, g1):
        for c in (g0, g1):
            assert counting_miracle_check(c, r)

    def test_rank3_both_sides_equal_zagier_degree_zero(self, g1):
        # both sides equal b2 + b1^2/(1-q^2)
        expected = b_r(g1, 2) + b_r(g1, 1) ** 2 / (1 - q(2))
        assert beta(g1, ChernClass(2, 0)) == expected
        z0 = zeta_r(g1, 3).eval(ScalarValue.from_rational(0))
        assert q(0) * z0 == expected  # g = 1: the normalization is trivial


class TestUniformity:
    @pytest.mark.parametrize("r", [2, 3])
    def test_symbolic(self, r, g0, g1, g2):
        for c in (g0, g1, g2):
            assert uniformity_check(c, r)

    def test_g0_sanity_with_b1(self, g0):
        # b1 = 1/(q-1) for g = 0
        assert b_r(g0, 1) == 1 / (q(1) - 1)
        assert zeta_hat_r_closed(g0, 2) == \
            sl_group_zeta(g0, 2).scale(q(-1) * b_r(g0, 1))

    def test_rank_validation(self, g0):
        with pytest.raises(ValueError):
            sl_group_zeta(g0, 4)


class TestZetaResult:
    def test_bundle_with_checks(self, g1):
        res = compute_zeta_result(g1, 2, terms=3, run_checks=True)
        assert len(res.coefficients) == 4
        assert res.numerator is not None
        assert res.checks and all(res.checks.values())

"""Curve zeta data: numerator completion, symmetric powers, b_r."""

from fractions import Fraction

import pytest

from pairzeta.curve import (CurveDatum, b_r, functional_equation_ok,
                            jacobian_class, sym_power, zeta, zeta_hat,
                            zeta_hat_at, zeta_hat_functional_equation_ok)
from pairzeta.ratfun import TPoly
from pairzeta.scalar import ONE, ScalarValue

q = ScalarValue.q_pow
c1 = ScalarValue.var("c1")
c2v = ScalarValue.var("c2")


def brute_series(rf, n):
    """Long-division oracle for power-series coefficients."""
    num = list(rf.num.coeffs) + [ScalarValue.from_rational(0)] * (n + 1)
    den = rf.den
    out = []
    for k in range(n + 1):
        c = num[k]
        for j in range(1, min(k, den.degree()) + 1):
            c = c - den[j] * out[k - j]
        out.append(c / den[0])
    return out


class TestZeta:
    def test_g0_numerator_forced(self, g0):
        z = zeta(g0)
        assert z.num == TPoly([ONE])
        assert z.den == TPoly([ONE, -ONE]) * TPoly([ONE, -q(1)])

    def test_g1_symbolic_completion(self, g1):
        assert g1.numerator == TPoly([ONE, c1, q(1)])

    def test_numeric_elliptic(self, elliptic):
        assert elliptic.numerator == TPoly([ONE, -ONE, q(1)])

    def test_g2_completion(self, g2):
        assert g2.numerator == TPoly([ONE, c1, c2v, q(1) * c1, q(2)])

    def test_bad_inputs(self):
        with pytest.raises(ValueError):
            CurveDatum.make_numeric(2, [ONE])
        with pytest.raises(ValueError):
            CurveDatum(-1, [], symbolic=False)


class TestFunctionalEquation:
    def test_all_curves(self, g0, g1, g2, elliptic):
        for c in (g0, g1, g2, elliptic):
            assert functional_equation_ok(c)
            assert zeta_hat_functional_equation_ok(c)

    def test_zeta_hat_shape(self, g0, g1):
        # g=0: Zhat = t Z; g=1: Zhat = Z
        assert zeta_hat(g0) == zeta(g0).mul_tpow(1)
        assert zeta_hat(g1) == zeta(g1)


class TestSymPower:
    def test_g0_n2(self, g0):
        assert sym_power(g0, 2) == 1 + q(1) + q(2)

    def test_n0_is_one(self, g0, g1, g2):
        for c in (g0, g1, g2):
            assert sym_power(c, 0).is_one()

    def test_g1_n1(self, g1):
        assert sym_power(g1, 1) == 1 + c1 + q(1)

    def test_matches_brute_series(self, g1, g2):
        for c in (g1, g2):
            oracle = brute_series(zeta(c), 20)
            for n in range(21):
                assert sym_power(c, n) == oracle[n]

    def test_q_integral(self, g2):
        assert all(sym_power(g2, n).is_q_integral() for n in range(10))


class TestJacobianAndBr:
    def test_jacobian(self, g0, g1, g2):
        assert jacobian_class(g0).is_one()
        assert jacobian_class(g1) == 1 + c1 + q(1)
        assert jacobian_class(g2) == 1 + c1 + c2v + q(1) * c1 + q(2)
        assert jacobian_class(g2).is_q_integral()

    def test_b1(self, g0, g1):
        assert b_r(g0, 1) == 1 / (q(1) - 1)
        assert b_r(g1, 1) == jacobian_class(g1) / (q(1) - 1)

    def test_b2_g0(self, g0):
        expected = (1 / (q(1) - 1)) * (q(1) / ((1 - q(1)) * (1 - q(2))))
        assert b_r(g0, 2) == expected

    def test_b2_hat_identities(self, g0, g1, g2, elliptic):
        for c in (g0, g1, g2, elliptic):
            assert b_r(c, 2) == b_r(c, 1) * zeta_hat_at(c, q(1))
            assert b_r(c, 2) == b_r(c, 1) * zeta_hat_at(c, q(-2))

    def test_rank_validation(self, g0):
        with pytest.raises(ValueError):
            b_r(g0, 0)

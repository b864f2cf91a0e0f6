"""Curve zeta data: Z_X(t), its hat-normalization, symmetric powers, b_r.

A curve enters the engine only through its genus and the free numerator
coefficients a_1..a_g of Z_X(t) = P_X(t) / ((1-t)(1-q*t)).  The remaining
coefficients are forced by a_0 = 1 and the completion rule
a_{2g-i} = q^{g-i} * a_i, which is exactly what makes Z_X satisfy the
functional equation Z_X(1/(q*t)) = (q*t^2)^(1-g) * Z_X(t).

Symbolic mode uses fresh indeterminates c1..cg; numeric mode takes the a_i
as explicit rational functions of q (constants included).  b_r is the
twisted bundle-stack class P_X(1)/(q-1) * prod_{i<r} Zhat_X(q^i); it is
memoized per curve, as is the symmetric-power series.
"""

from __future__ import annotations

from .ratfun import RationalFunc, TPoly
from .scalar import ONE, ScalarValue


class CurveDatum:
    """Genus plus completed zeta numerator; immutable with internal caches."""

    def __init__(self, genus: int, free_coeffs: list, symbolic: bool):
        if genus < 0:
            raise ValueError("genus must be non-negative")
        if len(free_coeffs) != genus:
            raise ValueError(f"expected {genus} free numerator coefficients")
        self.genus = genus
        self.symbolic = symbolic
        q = ScalarValue.q_pow
        full = [ONE] + list(free_coeffs)
        for j in range(1, genus + 1):
            full.append(q(j) * full[genus - j])
        self.numerator = TPoly(full)
        self._zeta = None
        self._zeta_hat = None
        self._sym_powers: list = []
        self._b_cache: dict = {}
        self._beta_cache: dict = {}
        self._zeta_r_cache: dict = {}

    @classmethod
    def make_symbolic(cls, genus: int) -> "CurveDatum":
        coeffs = [ScalarValue.var(f"c{i}") for i in range(1, genus + 1)]
        return cls(genus, coeffs, symbolic=True)

    @classmethod
    def make_numeric(cls, genus: int, coeffs: list) -> "CurveDatum":
        return cls(genus, list(coeffs), symbolic=False)

    def __repr__(self):
        kind = "symbolic" if self.symbolic else "numeric"
        return f"CurveDatum(g={self.genus}, {kind})"


def zeta(c: CurveDatum) -> RationalFunc:
    """Z_X(t) = P_X(t) / ((1-t)(1-q*t))."""
    if c._zeta is None:
        q = ScalarValue.q_pow(1)
        den = TPoly([ONE, -ONE]) * TPoly([ONE, -q])
        c._zeta = RationalFunc(c.numerator, den)
    return c._zeta


def zeta_hat(c: CurveDatum) -> RationalFunc:
    """Zhat_X(t) = t^(1-g) * Z_X(t), kept as a rational function."""
    if c._zeta_hat is None:
        c._zeta_hat = zeta(c).mul_tpow(1 - c.genus)
    return c._zeta_hat


def zeta_hat_at(c: CurveDatum, x: ScalarValue) -> ScalarValue:
    return zeta_hat(c).eval(x)


def sym_power(c: CurveDatum, n: int) -> ScalarValue:
    """Class of the n-th symmetric power: the t^n coefficient of Z_X."""
    if n < 0:
        raise ValueError("symmetric powers need n >= 0")
    if n >= len(c._sym_powers):
        c._sym_powers = zeta(c).series(max(n, 2 * len(c._sym_powers) + 4))
    return c._sym_powers[n]


def jacobian_class(c: CurveDatum) -> ScalarValue:
    """P_X(1), the class of the Jacobian."""
    return c.numerator.eval(ONE)


def b_r(c: CurveDatum, r: int) -> ScalarValue:
    """Twisted class of the rank-r bundle stack (independent of degree)."""
    if r < 1:
        raise ValueError("rank must be positive")
    got = c._b_cache.get(r)
    if got is None:
        q_minus_1 = ScalarValue.q_pow(1) - 1
        got = jacobian_class(c) / q_minus_1
        for i in range(1, r):
            got = got * zeta_hat_at(c, ScalarValue.q_pow(i))
        c._b_cache[r] = got
    return got


def functional_equation_ok(c: CurveDatum) -> bool:
    """Z_X(1/(q*t)) = (q*t^2)^(1-g) * Z_X(t) as rational functions."""
    z = zeta(c)
    lhs = z.subst_inverse(ScalarValue.q_pow(1))
    e = 1 - c.genus
    rhs = z.scale(ScalarValue.q_pow(e)).mul_tpow(2 * e)
    return lhs == rhs


def zeta_hat_functional_equation_ok(c: CurveDatum) -> bool:
    """Zhat_X(1/(q*t)) = Zhat_X(t)."""
    zh = zeta_hat(c)
    return zh.subst_inverse(ScalarValue.q_pow(1)) == zh

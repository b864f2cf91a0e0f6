"""Polynomials and rational functions in t over the coefficient field K.

`TPoly` is a dense coefficient list (ascending powers of t, no trailing
zeros).  `RationalFunc` is a canonical fraction of TPolys: numerator and
denominator coprime (monic Euclidean gcd over the field K) and denominator
scaled so that its lowest-order nonzero coefficient is 1.  That convention
keeps denominators like (1-t)(1-q*t) in their natural form and makes
structural equality decide equality of rational functions.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .scalar import (MultiPoly, ONE, ZERO, ScalarValue, ScalarError,
                     poly_divexact as _mp_divexact, poly_gcd as _mp_gcd,
                     poly_mul as _mp_mul, poly_add as _mp_add)


class TPoly:
    """Dense polynomial in t over ScalarValue; immutable once built."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[ScalarValue]):
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c: ScalarValue) -> "TPoly":
        return cls([c])

    @classmethod
    def t_power(cls, k: int, c: ScalarValue = ONE) -> "TPoly":
        return cls([ZERO] * k + [c])

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Degree, with the zero polynomial having degree -1."""
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> ScalarValue:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return ZERO

    def __eq__(self, other) -> bool:
        return isinstance(other, TPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "TPoly") -> "TPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return TPoly([self[i] + other[i] for i in range(n)])

    def __sub__(self, other: "TPoly") -> "TPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return TPoly([self[i] - other[i] for i in range(n)])

    def __neg__(self) -> "TPoly":
        return TPoly([-c for c in self.coeffs])

    def __mul__(self, other: "TPoly") -> "TPoly":
        if self.is_zero() or other.is_zero():
            return TPoly([])
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return TPoly(out)

    def scale(self, c: ScalarValue) -> "TPoly":
        return TPoly([a * c for a in self.coeffs])

    def shift(self, k: int) -> "TPoly":
        """Multiply by t**k, k >= 0."""
        if self.is_zero():
            return self
        return TPoly([ZERO] * k + list(self.coeffs))

    def subst_scale(self, c: ScalarValue) -> "TPoly":
        """t -> c*t."""
        out = []
        p = ONE
        for a in self.coeffs:
            out.append(a * p)
            p = p * c
        return TPoly(out)

    def eval(self, x: ScalarValue) -> ScalarValue:
        total = ZERO
        for a in reversed(self.coeffs):
            total = total * x + a
        return total

    def __repr__(self):
        from .scalar import scalar_text
        return "TPoly([" + ", ".join(scalar_text(c) for c in self.coeffs) + "])"


T_ONE = TPoly([ONE])


def tpoly_divmod(a: TPoly, b: TPoly) -> tuple:
    if b.is_zero():
        raise ScalarError("division by the zero polynomial")
    q = [ZERO] * max(0, a.degree() - b.degree() + 1)
    rem = list(a.coeffs)
    db = b.degree()
    lb = b.coeffs[-1]
    while len(rem) - 1 >= db and rem:
        while rem and rem[-1].is_zero():
            rem.pop()
        if len(rem) - 1 < db or not rem:
            break
        k = len(rem) - 1 - db
        f = rem[-1] / lb
        q[k] = f
        for i in range(db + 1):
            rem[k + i] = rem[k + i] - f * b.coeffs[i]
    return TPoly(q), TPoly(rem)


def _tpoly_to_mp(p: TPoly) -> MultiPoly:
    """Clear coefficient denominators and adjoin t as a polynomial variable.

    The scaling is by a unit of K, so gcd computations are unaffected.
    """
    dens = []
    for c in p.coeffs:
        if not c.den.is_const() and all(c.den != d for d in dens):
            dens.append(c.den)
    lcm = MultiPoly.const(1)
    for d in dens:
        lcm = _mp_mul(lcm, _mp_divexact(d, _mp_gcd(lcm, d)))
    out = MultiPoly.const(0)
    for i, c in enumerate(p.coeffs):
        if c.is_zero():
            continue
        num = _mp_mul(c.num, _mp_divexact(lcm, c.den))
        out = _mp_add(out, _mp_mul(num, MultiPoly.var("t", i)))
    return out


def _mp_to_tpoly(p: MultiPoly) -> TPoly:
    if "t" not in p.vars:
        return TPoly([ScalarValue(p)])
    ti = p.vars.index("t")
    groups: dict = {}
    for e, c in p.terms.items():
        rest = tuple(x for j, x in enumerate(e) if j != ti)
        groups.setdefault(e[ti], {})[rest] = c
    rest_vars = tuple(v for v in p.vars if v != "t")
    deg = max(groups)
    out = [ZERO] * (deg + 1)
    for k, terms in groups.items():
        out[k] = ScalarValue(MultiPoly(rest_vars, terms))
    return TPoly(out)


def tpoly_gcd(a: TPoly, b: TPoly) -> TPoly:
    """Monic gcd over the field K.

    Computed fraction-free: both polynomials are lifted to Q[s, c.., t] and
    the sparse multivariate gcd runs there; the t-primitive part of that
    gcd is the K[t] gcd up to a unit and gets normalized monic.
    """
    if a.is_zero():
        return b if b.is_zero() else b.scale(ONE / b.coeffs[-1])
    if b.is_zero():
        return a.scale(ONE / a.coeffs[-1])
    g = _mp_gcd(_tpoly_to_mp(a), _tpoly_to_mp(b))
    tp = _mp_to_tpoly(g)
    if tp.degree() == 0:
        return T_ONE
    return tp.scale(ONE / tp.coeffs[-1])


class RationalFunc:
    """Canonical rational function in t over K."""

    __slots__ = ("num", "den")

    def __init__(self, num: TPoly, den: TPoly = T_ONE, *, reduce: bool = True):
        if den.is_zero():
            raise ScalarError("zero denominator in t")
        if num.is_zero():
            self.num, self.den = TPoly([]), T_ONE
            return
        if reduce and den.degree() > 0:
            g = tpoly_gcd(num, den)
            if g.degree() > 0:
                num, _ = tpoly_divmod(num, g)
                den, _ = tpoly_divmod(den, g)
        low = next(c for c in den.coeffs if not c.is_zero())
        if not low.is_one():
            inv = ONE / low
            num = num.scale(inv)
            den = den.scale(inv)
        self.num, self.den = num, den

    @classmethod
    def const(cls, c: ScalarValue) -> "RationalFunc":
        return cls(TPoly.const(c))

    @classmethod
    def from_tpoly(cls, p: TPoly) -> "RationalFunc":
        return cls(p)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree() == 0

    def as_tpoly(self) -> TPoly:
        if not self.is_polynomial():
            raise ScalarError("rational function is not a polynomial")
        return self.num  # den is exactly 1 by normalization

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RationalFunc)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other: "RationalFunc") -> "RationalFunc":
        return RationalFunc(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other: "RationalFunc") -> "RationalFunc":
        return RationalFunc(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __neg__(self) -> "RationalFunc":
        out = object.__new__(RationalFunc)
        out.num, out.den = -self.num, self.den
        return out

    def __mul__(self, other: "RationalFunc") -> "RationalFunc":
        return RationalFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RationalFunc") -> "RationalFunc":
        if other.is_zero():
            raise ScalarError("division by zero rational function")
        return RationalFunc(self.num * other.den, self.den * other.num)

    def scale(self, c: ScalarValue) -> "RationalFunc":
        return RationalFunc(self.num.scale(c), self.den, reduce=False)

    def mul_tpow(self, k: int) -> "RationalFunc":
        """Multiply by t**k for any integer k."""
        if k >= 0:
            return RationalFunc(self.num.shift(k), self.den)
        return RationalFunc(self.num, self.den.shift(-k))

    def subst_scale(self, c: ScalarValue) -> "RationalFunc":
        """t -> c*t."""
        return RationalFunc(self.num.subst_scale(c), self.den.subst_scale(c))

    def subst_inverse(self, c: ScalarValue) -> "RationalFunc":
        """t -> 1/(c*t), cleared to an honest rational function."""
        m = max(self.num.degree(), self.den.degree())

        def flip(p: TPoly) -> TPoly:
            out = [ZERO] * (m + 1)
            for i, a in enumerate(p.coeffs):
                out[m - i] = a * c ** (m - i)
            return TPoly(out)

        return RationalFunc(flip(self.num), flip(self.den))

    def eval(self, x: ScalarValue) -> ScalarValue:
        den = self.den.eval(x)
        if den.is_zero():
            raise ScalarError("pole of rational function")
        return self.num.eval(x) / den

    def series(self, order: int) -> list:
        """Power-series coefficients [t^0] ... [t^order]; needs den(0) != 0."""
        d0 = self.den[0]
        if d0.is_zero():
            raise ScalarError("pole at t = 0; no power series")
        out = []
        for n in range(order + 1):
            acc = self.num[n]
            for k in range(1, min(n, self.den.degree()) + 1):
                acc = acc - self.den[k] * out[n - k]
            out.append(acc / d0)
        return out

    def coeff(self, n: int) -> ScalarValue:
        """Series coefficient of t**n; zero for negative n."""
        if n < 0:
            return ZERO
        return self.series(n)[n]

    def __repr__(self):
        return f"RationalFunc({self.num!r}, {self.den!r})"


class TruncatedSeries:
    """Power series in t known up to (and including) t**order."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Sequence[ScalarValue], order: int):
        cs = list(coeffs)
        if len(cs) != order + 1:
            raise ValueError("coefficient list does not match the stated order")
        self.coeffs = tuple(cs)
        self.order = order

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncatedSeries)
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

"""Exact coefficient field K = Q(s, c1, ..., cg).

The whole engine computes in a single variable convention: the internal
variable ``s`` is a square root of the Lefschetz class, ``q = s**2``.  Plain
``(-s)**n`` powers are expanded to ``(-1)**n * s**n`` at construction, so a
value has exactly one canonical form.

`MultiPoly` is a sparse polynomial over Q: a dict from exponent tuples to
rational coefficients, plus an ordered variable tuple.  Unused variables are
pruned at construction, so equal polynomials are structurally equal objects.
Variables are globally ordered (``s`` first, then ``c1 < c2 < ...``), and
monomials are compared lexicographically in that order.

`ScalarValue` is a canonical fraction of two MultiPolys: numerator and
denominator coprime, denominator's lex-leading coefficient equal to 1.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping

from . import kernel

Rat = Fraction
Exponent = tuple


class ScalarError(ArithmeticError):
    """Domain error in exact scalar arithmetic (division by zero, pole)."""


def _var_key(name: str):
    if name == "s":
        return (0, 0, "")
    m = re.fullmatch(r"c(\d+)", name)
    if m:
        return (1, int(m.group(1)), "")
    return (2, 0, name)


def sort_vars(names: Iterable[str]) -> tuple:
    return tuple(sorted(set(names), key=_var_key))


class MultiPoly:
    """Sparse multivariate polynomial over Q; treat instances as immutable."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: tuple, terms: dict):
        terms = {e: kernel.norm_coeff(c) for e, c in terms.items() if c}
        used = [i for i in range(len(vars)) if any(e[i] for e in terms)]
        if len(used) != len(vars):
            vars = tuple(vars[i] for i in used)
            terms = {tuple(e[i] for i in used): c for e, c in terms.items()}
        self.vars = vars
        self.terms = terms

    @classmethod
    def _raw(cls, vars: tuple, terms: dict) -> "MultiPoly":
        """Wrap an already-normalized (pruned, zero-free) representation."""
        p = object.__new__(cls)
        p.vars = vars
        p.terms = terms
        return p

    @classmethod
    def const(cls, c) -> "MultiPoly":
        c = kernel.norm_coeff(Fraction(c) if not isinstance(c, (int, Fraction)) else c)
        return cls._raw((), {(): c} if c else {})

    @classmethod
    def var(cls, name: str, exp: int = 1) -> "MultiPoly":
        if exp < 0:
            raise ValueError("negative exponent in a polynomial")
        if exp == 0:
            return cls.const(1)
        return cls._raw((name,), {(exp,): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return not self.vars

    def const_value(self):
        if self.vars:
            raise ValueError("not a constant polynomial")
        return self.terms.get((), 0)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiPoly)
            and self.vars == other.vars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"MultiPoly({poly_text(self)!r})"

    def degree(self, name: str) -> int:
        if name not in self.vars:
            return 0
        i = self.vars.index(name)
        return max((e[i] for e in self.terms), default=0)

    def leading_monomial(self) -> Exponent:
        return max(self.terms)

    def leading_coeff(self):
        if not self.terms:
            return 0
        return self.terms[max(self.terms)]

    def eval(self, bindings: Mapping[str, Fraction]) -> Fraction:
        missing = [v for v in self.vars if v not in bindings]
        if missing:
            raise ScalarError(f"unbound symbols {missing}")
        vals = [Fraction(bindings[v]) for v in self.vars]
        total = Fraction(0)
        for e, c in self.terms.items():
            m = Fraction(c)
            for x, k in zip(vals, e):
                if k:
                    m *= x**k
            total += m
        return total

    def even_in(self, name: str) -> bool:
        if name not in self.vars:
            return True
        i = self.vars.index(name)
        return all(e[i] % 2 == 0 for e in self.terms)


def _align(a: MultiPoly, b: MultiPoly):
    """Common variable tuple and both term dicts remapped onto it."""
    if a.vars == b.vars:
        return a.vars, a.terms, b.terms
    vars = sort_vars(a.vars + b.vars)
    return vars, _remap(a, vars), _remap(b, vars)


def _remap(p: MultiPoly, vars: tuple) -> dict:
    if p.vars == vars:
        return p.terms
    pos = [vars.index(v) for v in p.vars]
    n = len(vars)
    out = {}
    for e, c in p.terms.items():
        new = [0] * n
        for i, k in zip(pos, e):
            new[i] = k
        out[tuple(new)] = c
    return out


def poly_add(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    vars, ta, tb = _align(a, b)
    return MultiPoly(vars, kernel.poly_add(ta, tb))


def poly_sub(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    vars, ta, tb = _align(a, b)
    return MultiPoly(vars, kernel.poly_sub(ta, tb))


def poly_neg(a: MultiPoly) -> MultiPoly:
    return MultiPoly._raw(a.vars, kernel.poly_neg(a.terms))


def poly_mul(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    vars, ta, tb = _align(a, b)
    return MultiPoly(vars, kernel.poly_mul(ta, tb))


def poly_scale(a: MultiPoly, c) -> MultiPoly:
    return MultiPoly._raw(a.vars, kernel.poly_scale(a.terms, c))


def poly_pow(a: MultiPoly, n: int) -> MultiPoly:
    if n < 0:
        raise ValueError("negative power of a polynomial")
    out = MultiPoly.const(1)
    base = a
    while n:
        if n & 1:
            out = poly_mul(out, base)
        base = poly_mul(base, base) if n > 1 else base
        n >>= 1
    return out


def poly_divexact(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    vars, ta, tb = _align(a, b)
    q = kernel.poly_try_divexact(ta, tb)
    if q is None:
        raise ScalarError("inexact polynomial division")
    return MultiPoly(vars, q)


# ---------------------------------------------------------------------------
# Multivariate gcd.
#
# Everything is reduced to integer coefficients first (units of Q[x] do not
# matter; the caller rescales).  The common shapes are dispatched to fast
# univariate paths; the general case runs a primitive pseudo-remainder
# sequence in the cheapest shared variable.
# ---------------------------------------------------------------------------


def _int_normalize(t: dict) -> dict:
    """Scale to integer coefficients, content 1, positive lex-leading sign."""
    if not t:
        return {}
    den_lcm = 1
    for c in t.values():
        if type(c) is Fraction:
            den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
    g = 0
    for c in t.values():
        g = math.gcd(g, c.numerator if type(c) is Fraction else c)
    lead = t[max(t)]
    sign = -1 if lead < 0 else 1
    scale = Fraction(sign * den_lcm, g)
    if scale == 1:
        return {e: (c if isinstance(c, int) else kernel.norm_coeff(c)) for e, c in t.items()}
    return {e: kernel.norm_coeff(c * scale) for e, c in t.items()}


def _monomial_content(t: dict):
    it = iter(t)
    m = list(next(it))
    for e in it:
        for i, x in enumerate(e):
            if x < m[i]:
                m[i] = x
        if not any(m):
            break
    return tuple(m)


def _strip_monomial(t: dict, m: tuple) -> dict:
    if not any(m):
        return t
    return {tuple(x - y for x, y in zip(e, m)): c for e, c in t.items()}


def _active_vars(t: dict, nvars: int) -> frozenset:
    return frozenset(i for i in range(nvars) if any(e[i] for e in t))


def _to_dense(t: dict, v: int) -> list:
    deg = max(e[v] for e in t)
    out = [0] * (deg + 1)
    for e, c in t.items():
        out[deg - e[v]] = c
    return out


def _from_dense(f: list, v: int, nvars: int) -> dict:
    deg = len(f) - 1
    out = {}
    for i, c in enumerate(f):
        if c:
            e = [0] * nvars
            e[v] = deg - i
            out[tuple(e)] = c
    return out


def _univar_slices(t: dict, v: int) -> list:
    """Dense univariate-in-v polynomials grouped by the other monomials."""
    groups: dict = {}
    for e, c in t.items():
        key = tuple(x if i != v else 0 for i, x in enumerate(e))
        groups.setdefault(key, {})[e[v]] = c
    out = []
    for g in groups.values():
        deg = max(g)
        dense = [0] * (deg + 1)
        for k, c in g.items():
            dense[deg - k] = c
        out.append(dense)
    return out


def _deg_v(t: dict, v: int) -> int:
    return max(e[v] for e in t)

def _lc_v(t: dict, v: int) -> dict:
    d = _deg_v(t, v)
    return {tuple(x if i != v else 0 for i, x in enumerate(e)): c
            for e, c in t.items() if e[v] == d}


def _content_pp_v(t: dict, v: int, nvars: int):
    parts: dict = {}
    for e, c in t.items():
        key = e[v]
        parts.setdefault(key, {})[tuple(x if i != v else 0 for i, x in enumerate(e))] = c
    cont: dict = {}
    for sub in parts.values():
        cont = _gcd_aligned(cont, sub, nvars)
        if len(cont) == 1 and max(cont) == (0,) * nvars:
            break
    pp = kernel.poly_try_divexact(t, cont)
    assert pp is not None
    return cont, pp


_PROBE_P = 2147483647
_PROBE_POINTS = ((3, 5, 7, 11, 13, 17, 19, 23),
                 (29, 31, 37, 41, 43, 47, 53, 59),
                 (61, 67, 71, 73, 79, 83, 89, 97))


def _specialize_mod(t: dict, v: int, nvars: int, points) -> tuple:
    """Evaluate all variables but v at integer points, mod a big prime.

    Returns (dense descending list, full_degree_preserved).
    """
    p = _PROBE_P
    deg = max(e[v] for e in t)
    dense = [0] * (deg + 1)
    for e, c in t.items():
        m = c % p
        for j, k in enumerate(e):
            if j != v and k:
                m = m * pow(points[j % len(points)], k, p) % p
        dense[deg - e[v]] = (dense[deg - e[v]] + m) % p
    return dense, dense[0] != 0


def _probe_gcd_trivial_in(a: dict, b: dict, v: int, nvars: int) -> bool:
    """Certify deg_v(gcd(a, b)) = 0 by a univariate gcd mod p.

    Sound one-way: a degree-0 modular gcd at a specialization preserving a
    leading coefficient bounds the true gcd degree by zero.  Inconclusive
    probes return False.
    """
    p = _PROBE_P
    for points in _PROBE_POINTS:
        fa, full_a = _specialize_mod(a, v, nvars, points)
        fb, full_b = _specialize_mod(b, v, nvars, points)
        if not (full_a or full_b):
            continue
        x = kernel.dup_strip(fa)
        y = kernel.dup_strip(fb)
        if not x or not y:
            continue
        while y:
            if len(y) == 1:
                return True
            dy = len(y) - 1
            if len(x) - 1 < dy:
                x, y = y, x
                continue
            inv = pow(y[0], p - 2, p)
            r = list(x)
            while r and len(r) - 1 >= dy:
                factor = r[0] * inv % p
                for i in range(dy + 1):
                    r[i] = (r[i] - factor * y[i]) % p
                r = kernel.dup_strip(r)
            x, y = y, r
        return False
    return False


def _prem_v(f: dict, g: dict, v: int, nvars: int) -> dict:
    dg = _deg_v(g, v)
    lcg = _lc_v(g, v)
    shift = [0] * nvars
    while f and _deg_v(f, v) >= dg:
        df = _deg_v(f, v)
        lf = _lc_v(f, v)
        shift[v] = df - dg
        step = kernel.poly_mul_monomial(kernel.poly_mul(lf, g), tuple(shift), 1)
        f = kernel.poly_sub(kernel.poly_mul(lcg, f), step)
    return f


def _gcd_aligned(a: dict, b: dict, nvars: int) -> dict:
    unit = {(0,) * nvars: 1}
    if not a:
        return _int_normalize(b)
    if not b:
        return _int_normalize(a)
    a = _int_normalize(a)
    b = _int_normalize(b)
    if a == b:
        return a
    ma, mb = _monomial_content(a), _monomial_content(b)
    m = tuple(min(x, y) for x, y in zip(ma, mb))
    a, b = _strip_monomial(a, ma), _strip_monomial(b, mb)
    xm = {m: 1}
    va, vb = _active_vars(a, nvars), _active_vars(b, nvars)
    common = va & vb
    if not common:
        return xm
    if len(vb) == 1:
        v = next(iter(vb))
        g = _to_dense(b, v)
        for f in _univar_slices(a, v):
            g = kernel.dup_gcd(g, f)
            if len(g) == 1:
                return xm
        return kernel.poly_mul(_from_dense(g, v, nvars), xm)
    if len(va) == 1:
        # a and b are already stripped, so the recursion reduces to the
        # univariate-slices branch above with the roles swapped.
        return kernel.poly_mul(_gcd_aligned(b, a, nvars), xm)
    # Trial divisions catch the frequent divisor/multiple case cheaply.
    if kernel.poly_try_divexact(a, b) is not None:
        return kernel.poly_mul(b, xm)
    if kernel.poly_try_divexact(b, a) is not None:
        return kernel.poly_mul(a, xm)
    # Modular probes certify per-variable triviality of the gcd.  A variable
    # certified trivial reduces the problem to the contents in it; all
    # variables trivial means the polynomials are coprime.
    trivial = [v for v in common if _probe_gcd_trivial_in(a, b, v, nvars)]
    if len(trivial) == len(common):
        return xm
    if trivial:
        v = min(trivial, key=lambda i: min(_deg_v(a, i), _deg_v(b, i)))
        cont_a, _ = _content_pp_v(a, v, nvars)
        cont_b, _ = _content_pp_v(b, v, nvars)
        return kernel.poly_mul(_gcd_aligned(cont_a, cont_b, nvars), xm)
    v = min(common, key=lambda i: min(_deg_v(a, i), _deg_v(b, i)))
    cont_a, pp_a = _content_pp_v(a, v, nvars)
    cont_b, pp_b = _content_pp_v(b, v, nvars)
    gcont = _gcd_aligned(cont_a, cont_b, nvars)
    f, g = pp_a, pp_b
    if _deg_v(f, v) < _deg_v(g, v):
        f, g = g, f
    while True:
        r = _prem_v(f, g, v, nvars)
        if not r:
            gpp = g
            break
        if _deg_v(r, v) == 0:
            gpp = unit
            break
        _, r = _content_pp_v(r, v, nvars)
        f, g = g, r
    out = kernel.poly_mul(kernel.poly_mul(gcont, gpp), xm)
    return _int_normalize(out)


def poly_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    vars, ta, tb = _align(a, b)
    return MultiPoly(vars, _gcd_aligned(ta, tb, len(vars)))


# ---------------------------------------------------------------------------
# ScalarValue: canonical fractions.
# ---------------------------------------------------------------------------

_ONE_POLY = MultiPoly.const(1)


class ScalarValue:
    """Element of K = Q(s, c1, ...), stored as a canonical fraction."""

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly | None = None, *, reduce: bool = True):
        if den is None:
            den = _ONE_POLY
        if den.is_zero():
            raise ScalarError("zero denominator")
        if num.is_zero():
            self.num, self.den = num, _ONE_POLY
            return
        if reduce and not den.is_const():
            g = poly_gcd(num, den)
            if not (g.is_const()):
                num = poly_divexact(num, g)
                den = poly_divexact(den, g)
        lc = den.leading_coeff()
        if lc != 1:
            inv = Fraction(1) / Fraction(lc)
            num = poly_scale(num, inv)
            den = poly_scale(den, inv)
        self.num, self.den = num, den

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rational(cls, c) -> "ScalarValue":
        return cls(MultiPoly.const(c))

    @classmethod
    def var(cls, name: str) -> "ScalarValue":
        return cls(MultiPoly.var(name))

    @classmethod
    def s_pow(cls, e: int) -> "ScalarValue":
        """s**e, a fraction when e < 0."""
        if e >= 0:
            return cls(MultiPoly.var("s", e))
        return cls(_ONE_POLY, MultiPoly.var("s", -e), reduce=False)

    @classmethod
    def q_pow(cls, e: int) -> "ScalarValue":
        """q**e = s**(2e)."""
        return cls.s_pow(2 * e)

    @classmethod
    def neg_s_pow(cls, e: int) -> "ScalarValue":
        """(-s)**e expanded to (-1)**e * s**e."""
        v = cls.s_pow(e)
        return -v if e % 2 else v

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_one(self) -> bool:
        return self.den == _ONE_POLY and self.num == _ONE_POLY

    def is_q_integral(self) -> bool:
        """True iff both numerator and denominator use s only through s**2."""
        return self.num.even_in("s") and self.den.even_in("s")

    # -- arithmetic ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ScalarValue.from_rational(other)
        return (
            isinstance(other, ScalarValue)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self) -> "ScalarValue":
        out = object.__new__(ScalarValue)
        out.num, out.den = poly_neg(self.num), self.den
        return out

    def __add__(self, other) -> "ScalarValue":
        if isinstance(other, (int, Fraction)):
            other = ScalarValue.from_rational(other)
        a, b, c, d = self.num, self.den, other.num, other.den
        if a.is_zero():
            return other
        if c.is_zero():
            return self
        if b == d:
            return ScalarValue(poly_add(a, c), b)
        g = poly_gcd(b, d)
        if g.is_const():
            num = poly_add(poly_mul(a, d), poly_mul(c, b))
            return ScalarValue(num, poly_mul(b, d), reduce=False)
        b1 = poly_divexact(b, g)
        d1 = poly_divexact(d, g)
        num = poly_add(poly_mul(a, d1), poly_mul(c, b1))
        h = poly_gcd(num, g)
        if not h.is_const():
            num = poly_divexact(num, h)
            g = poly_divexact(g, h)
        return ScalarValue(num, poly_mul(poly_mul(g, b1), d1), reduce=False)

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other) -> "ScalarValue":
        if isinstance(other, (int, Fraction)):
            other = ScalarValue.from_rational(other)
        return self.__add__(-other)

    def __rsub__(self, other):
        return (-self).__add__(ScalarValue.from_rational(other))

    def __mul__(self, other) -> "ScalarValue":
        if isinstance(other, (int, Fraction)):
            other = ScalarValue.from_rational(other)
        a, b, c, d = self.num, self.den, other.num, other.den
        if a.is_zero() or c.is_zero():
            return ZERO
        g1 = poly_gcd(a, d)
        if not g1.is_const():
            a = poly_divexact(a, g1)
            d = poly_divexact(d, g1)
        g2 = poly_gcd(c, b)
        if not g2.is_const():
            c = poly_divexact(c, g2)
            b = poly_divexact(b, g2)
        return ScalarValue(poly_mul(a, c), poly_mul(b, d), reduce=False)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other) -> "ScalarValue":
        if isinstance(other, (int, Fraction)):
            other = ScalarValue.from_rational(other)
        if other.is_zero():
            raise ScalarError("division by zero")
        inv = object.__new__(ScalarValue)
        inv.num, inv.den = other.den, other.num
        out = self.__mul__(inv)
        # inv may not be lc-normalized; __mul__'s constructor fixes that.
        return out

    def __rtruediv__(self, other):
        return ScalarValue.from_rational(other).__truediv__(self)

    def __pow__(self, n: int) -> "ScalarValue":
        if n == 0:
            return ONE
        if n < 0:
            return (ONE / self) ** (-n)
        return ScalarValue(poly_pow(self.num, n), poly_pow(self.den, n), reduce=False)

    # -- evaluation ----------------------------------------------------------

    def eval(self, bindings: Mapping[str, Fraction]) -> Fraction:
        den = self.den.eval(bindings)
        if den == 0:
            raise ScalarError("pole at the given binding")
        return self.num.eval(bindings) / den

    def eval_at_q(self, q0, extra: Mapping[str, Fraction] | None = None) -> Fraction:
        """Evaluate a q-integral value at q = q0 (s**2 -> q0), exactly."""
        if not self.is_q_integral():
            raise ScalarError("value is not q-integral")
        q0 = Fraction(q0)

        def ev(p: MultiPoly) -> Fraction:
            bindings = dict(extra or {})
            total = Fraction(0)
            for e, c in p.terms.items():
                mval = Fraction(c)
                for name, k in zip(p.vars, e):
                    if not k:
                        continue
                    if name == "s":
                        mval *= q0 ** (k // 2)
                    else:
                        if name not in bindings:
                            raise ScalarError(f"unbound symbol {name}")
                        mval *= Fraction(bindings[name]) ** k
                total += mval
            return total

        den = ev(self.den)
        if den == 0:
            raise ScalarError("pole at the given binding")
        return ev(self.num) / den

    def __repr__(self):
        return f"ScalarValue({scalar_text(self)!r})"


ZERO = ScalarValue(MultiPoly.const(0))
ONE = ScalarValue(MultiPoly.const(1))


def scalar_arith(a: ScalarValue, b: ScalarValue, op: str) -> ScalarValue:
    """Named-operation wrapper over the field operators."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def rat_floor_ceil_frac(x) -> tuple:
    """Exact floor, ceiling and fractional part of a rational."""
    x = Fraction(x)
    fl = x.numerator // x.denominator
    ce = -((-x.numerator) // x.denominator)
    return fl, ce, x - fl


def rfloor(x) -> int:
    x = Fraction(x)
    return x.numerator // x.denominator


def rceil(x) -> int:
    x = Fraction(x)
    return -((-x.numerator) // x.denominator)


def rfrac(x) -> Fraction:
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


# ---------------------------------------------------------------------------
# Canonical text form and its parser.
# ---------------------------------------------------------------------------


def _coeff_text(c) -> str:
    if isinstance(c, int):
        return str(c)
    return f"{c.numerator}/{c.denominator}"


def poly_text(p: MultiPoly) -> str:
    if not p.terms:
        return "0"
    parts = []
    for e in sorted(p.terms, reverse=True):
        c = p.terms[e]
        mono = [f"{v}^{k}" if k > 1 else v for v, k in zip(p.vars, e) if k]
        neg = c < 0
        ac = -c if neg else c
        if mono and ac == 1:
            body = "*".join(mono)
        elif mono:
            body = "*".join([_coeff_text(ac)] + mono)
        else:
            body = _coeff_text(ac)
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("-" if neg else "+") + body)
    return "".join(parts)


def scalar_text(v: ScalarValue) -> str:
    """Canonical text form: `(num) / (den)`, or bare `num` when den = 1."""
    if v.den == _ONE_POLY:
        return poly_text(v.num)
    return f"({poly_text(v.num)}) / ({poly_text(v.den)})"


_TOKEN = re.compile(r"\s*(\d+|[A-Za-z_][A-Za-z0-9_]*|\*\*|[-+*/^()])")


def _tokenize(text: str) -> list:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError(f"bad character in scalar text at {text[pos:]!r}")
            break
        tok = m.group(1)
        out.append("^" if tok == "**" else tok)
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens: list):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, tok: str):
        got = self.next()
        if got != tok:
            raise ValueError(f"expected {tok!r}, got {got!r}")

    def parse_expr(self) -> ScalarValue:
        v = self.parse_term()
        while self.peek() in ("+", "-"):
            op = self.next()
            w = self.parse_term()
            v = v + w if op == "+" else v - w
        return v

    def parse_term(self) -> ScalarValue:
        v = self.parse_unary()
        while self.peek() in ("*", "/"):
            op = self.next()
            w = self.parse_unary()
            v = v * w if op == "*" else v / w
        return v

    def parse_unary(self) -> ScalarValue:
        if self.peek() == "-":
            self.next()
            return -self.parse_unary()
        if self.peek() == "+":
            self.next()
            return self.parse_unary()
        return self.parse_power()

    def parse_power(self) -> ScalarValue:
        base = self.parse_atom()
        if self.peek() == "^":
            self.next()
            sign = 1
            if self.peek() == "-":
                self.next()
                sign = -1
            tok = self.next()
            if tok is None or not tok.isdigit():
                raise ValueError("expected integer exponent")
            return base ** (sign * int(tok))
        return base

    def parse_atom(self) -> ScalarValue:
        tok = self.next()
        if tok is None:
            raise ValueError("unexpected end of scalar text")
        if tok == "(":
            v = self.parse_expr()
            self.expect(")")
            return v
        if tok.isdigit():
            return ScalarValue.from_rational(int(tok))
        if tok == "q":
            return ScalarValue.q_pow(1)
        if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", tok):
            return ScalarValue.var(tok)
        raise ValueError(f"unexpected token {tok!r}")


def scalar_parse(text: str) -> ScalarValue:
    """Parse the canonical text grammar (plus `q` as sugar for s^2)."""
    parser = _Parser(_tokenize(text))
    v = parser.parse_expr()
    if parser.peek() is not None:
        raise ValueError(f"trailing tokens in scalar text: {parser.toks[parser.i:]}")
    return v

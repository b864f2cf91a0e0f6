# cython: language_level=3, boundscheck=False, wraparound=False, binding=False
"""Compiled twin of `_kernel_py`: sparse polynomial and dense integer kernels.

Same representations and contracts as the pure backend; the hot loops
(term-merge multiplication, exact division, pseudo-remainders, the modular
gcd ladder) run as compiled code.  Coefficients stay arbitrary-precision
Python ints / Fractions.
"""

import math
from fractions import Fraction

BACKEND = "cython"

_PROBE_PRIMES = (2147483647, 2147483629, 2147483587)


def norm_coeff(c):
    if type(c) is Fraction and (<object>c).denominator == 1:
        return (<object>c).numerator
    return c


def coeff_div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r == 0:
            return q
        return Fraction(a, b)
    return norm_coeff(Fraction(a) / Fraction(b))


def poly_add(dict a, dict b):
    if len(a) < len(b):
        a, b = b, a
    cdef dict out = dict(a)
    for e, c in b.items():
        s = out.get(e)
        if s is None:
            out[e] = c
        else:
            s = s + c
            if s:
                out[e] = norm_coeff(s)
            else:
                del out[e]
    return out


def poly_neg(dict a):
    cdef dict out = {}
    for e, c in a.items():
        out[e] = -c
    return out


def poly_sub(dict a, dict b):
    cdef dict out = dict(a)
    for e, c in b.items():
        s = out.get(e)
        if s is None:
            out[e] = -c
        else:
            s = s - c
            if s:
                out[e] = norm_coeff(s)
            else:
                del out[e]
    return out


cdef tuple _exp_add(tuple ea, tuple eb):
    cdef Py_ssize_t n = len(ea)
    cdef Py_ssize_t i
    out = [0] * n
    for i in range(n):
        out[i] = <object>ea[i] + <object>eb[i]
    return tuple(out)


def poly_mul(dict a, dict b):
    if not a or not b:
        return {}
    if len(a) < len(b):
        a, b = b, a
    cdef dict out = {}
    cdef list bitems = list(b.items())
    cdef tuple e
    for ea, ca in a.items():
        for eb, cb in bitems:
            e = _exp_add(<tuple>ea, <tuple>eb)
            s = out.get(e)
            if s is None:
                out[e] = ca * cb
            else:
                s = s + ca * cb
                if s:
                    out[e] = s
                else:
                    del out[e]
    for e2 in list(out):
        c = out[e2]
        if type(c) is Fraction and (<object>c).denominator == 1:
            out[e2] = (<object>c).numerator
    return out


def poly_scale(dict a, c):
    if not c:
        return {}
    cdef dict out = {}
    for e, ca in a.items():
        out[e] = norm_coeff(ca * c)
    return out


def poly_mul_monomial(dict a, tuple exp, c):
    if not c:
        return {}
    cdef dict out = {}
    for e, ca in a.items():
        out[_exp_add(<tuple>e, exp)] = norm_coeff(ca * c)
    return out


def poly_try_divexact(dict a, dict b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return {}
    cdef tuple eb = max(b)
    cb = b[eb]
    cdef dict rem = dict(a)
    cdef dict out = {}
    cdef list bitems = list(b.items())
    cdef tuple er, e, e2
    cdef Py_ssize_t i, n = len(eb)
    while rem:
        er = max(rem)
        elist = [0] * n
        for i in range(n):
            x = <object>er[i] - <object>eb[i]
            if x < 0:
                return None
            elist[i] = x
        e = tuple(elist)
        c = coeff_div(rem[er], cb)
        out[e] = c
        for eb2, cb2 in bitems:
            e2 = _exp_add(e, <tuple>eb2)
            s = rem.get(e2, 0) - c * cb2
            if s:
                rem[e2] = norm_coeff(s)
            else:
                rem.pop(e2, None)
    return out


# ---------------------------------------------------------------------------
# Dense univariate integer polynomials (descending lists).
# ---------------------------------------------------------------------------


def dup_strip(list f):
    cdef Py_ssize_t i = 0, n = len(f)
    while i < n and f[i] == 0:
        i += 1
    return f[i:]


def dup_content(list f):
    g = 0
    for c in f:
        g = math.gcd(g, c)
        if g == 1:
            return 1
    return g


def dup_primitive_pos(list f):
    f = dup_strip(f)
    if not f:
        return []
    g = dup_content(f)
    if f[0] < 0:
        g = -g
    if g != 1:
        f = [c // g for c in f]
    return f


def dup_prem(list f, list g):
    cdef Py_ssize_t dg = len(g) - 1
    cdef Py_ssize_t i
    lcg = g[0]
    cdef list r = dup_strip(list(f))
    while r and len(r) - 1 >= dg:
        lr = r[0]
        r = [lcg * c for c in r]
        for i in range(dg + 1):
            r[i] -= lr * g[i]
        r = dup_strip(r)
    return r


def _dup_gcd_mod_is_trivial(list f, list g):
    cdef Py_ssize_t db, i
    for p in _PROBE_PRIMES:
        if f[0] % p == 0 and g[0] % p == 0:
            continue
        a = dup_strip([c % p for c in f])
        b = dup_strip([c % p for c in g])
        while b:
            if len(b) == 1:
                return True
            db = len(b) - 1
            if len(a) - 1 < db:
                a, b = b, a
                continue
            inv = pow(b[0], p - 2, p)
            r = list(a)
            while r and len(r) - 1 >= db:
                factor = r[0] * inv % p
                for i in range(db + 1):
                    r[i] = (r[i] - factor * b[i]) % p
                r = dup_strip(r)
            a, b = b, r
        return False
    return False


def _is_probable_prime(n):
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        ok = False
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                ok = True
                break
        if not ok:
            return False
    return True


_GCD_PRIMES = []


def _gcd_primes():
    known = list(_GCD_PRIMES)
    n = known[len(known) - 1] - 2 if known else 2147483647
    for p in known:
        yield p
    while True:
        if _is_probable_prime(n):
            _GCD_PRIMES.append(n)
            yield n
        n -= 2


def _dup_gcd_mod_p(list f, list g, p):
    cdef Py_ssize_t db, i
    a = dup_strip([c % p for c in f])
    b = dup_strip([c % p for c in g])
    if not a or not b:
        return None
    while b:
        db = len(b) - 1
        if len(a) - 1 < db:
            a, b = b, a
            continue
        inv = pow(b[0], p - 2, p)
        r = list(a)
        while r and len(r) - 1 >= db:
            factor = r[0] * inv % p
            for i in range(db + 1):
                r[i] = (r[i] - factor * b[i]) % p
            r = dup_strip(r)
        a, b = b, r
    inv = pow(a[0], p - 2, p)
    return [c * inv % p for c in a]


def dup_try_div(list f, list h):
    f = dup_strip(f)
    h = dup_strip(h)
    if not h:
        raise ZeroDivisionError("univariate division by zero")
    if not f:
        return []
    cdef Py_ssize_t dh = len(h) - 1
    cdef Py_ssize_t i, shift, n
    lc = h[0]
    cdef list rem = list(f)
    n = len(rem) - 1 - dh
    if n < 0:
        return None
    cdef list out = [0] * (n + 1)
    while rem and len(rem) - 1 >= dh:
        shift = len(rem) - 1 - dh
        q, r = divmod(rem[0], lc)
        if r:
            return None
        out[n - shift] = q
        for i in range(dh + 1):
            rem[i] -= q * h[i]
        rem.pop(0)
        rem = dup_strip(rem)
    if any(rem):
        return None
    return out


def dup_gcd(list f, list g):
    f = dup_strip(f)
    g = dup_strip(g)
    if not f:
        return dup_primitive_pos(g) if g else []
    if not g:
        return dup_primitive_pos(f)
    f = dup_primitive_pos(f)
    g = dup_primitive_pos(g)
    if len(f) < len(g):
        f, g = g, f
    if len(g) == 1:
        return [1]
    if f == g:
        return f
    gamma = math.gcd(f[0], g[0])
    H = None
    dH = None
    M = 1
    prev = None
    attempts = 0
    for p in _gcd_primes():
        attempts += 1
        if attempts > 120:
            break
        if f[0] % p == 0 or g[0] % p == 0:
            continue
        gp = _dup_gcd_mod_p(f, g, p)
        if gp is None:
            continue
        d = len(gp) - 1
        if d == 0:
            return [1]
        scaled = [c * gamma % p for c in gp]
        if H is None or d < dH:
            H, dH, M, prev = scaled, d, p, None
            continue
        if d > dH:
            continue
        inv = pow(M % p, p - 2, p)
        H = [(a + M * ((b - a) % p * inv % p)) for a, b in zip(H, scaled)]
        M *= p
        half = M // 2
        cand = [c - M if c > half else c for c in (c % M for c in H)]
        H = [c % M for c in H]
        cand = dup_primitive_pos(cand)
        if cand == prev:
            if dup_try_div(f, cand) is not None and dup_try_div(g, cand) is not None:
                return cand
        prev = cand
    while True:
        r = dup_prem(f, g)
        if not r:
            return g
        if len(r) == 1:
            return [1]
        r = dup_primitive_pos(r)
        f, g = g, r

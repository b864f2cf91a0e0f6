"""Low-level polynomial arithmetic kernels (pure Python backend).

A sparse multivariate polynomial is a plain dict mapping exponent tuples
(one non-negative int per variable) to nonzero rational coefficients.
Coefficients are Python ints where possible and `fractions.Fraction`
otherwise; `Fraction(n, 1)` is always stored as the int `n` so that equal
polynomials are structurally identical dicts.

Univariate helpers at the bottom work on dense coefficient lists of ints in
*descending* degree order (index 0 is the leading coefficient) with no
leading zeros; the zero polynomial is the empty list.

The compiled twin of this module is `_kernel_cy.pyx`; both must stay
behaviourally identical (see tests/test_kernel_backends.py).
"""

from __future__ import annotations

import math
from fractions import Fraction

BACKEND = "python"

# Primes > 2**30 used for the modular coprimality probe in dup_gcd.
_PROBE_PRIMES = (2147483647, 2147483629, 2147483587)


def norm_coeff(c):
    """Collapse integral Fractions to int; leave everything else alone."""
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def coeff_div(a, b):
    """Exact division of rational coefficients, int result when integral."""
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r == 0:
            return q
        return Fraction(a, b)
    return norm_coeff(Fraction(a) / Fraction(b))


def poly_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
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


def poly_neg(a):
    return {e: -c for e, c in a.items()}


def poly_sub(a, b):
    out = dict(a)
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


def poly_mul(a, b):
    if not a or not b:
        return {}
    if len(a) < len(b):
        a, b = b, a
    out = {}
    bitems = list(b.items())
    for ea, ca in a.items():
        for eb, cb in bitems:
            e = tuple(map(sum, zip(ea, eb)))
            s = out.get(e)
            if s is None:
                out[e] = ca * cb
            else:
                s = s + ca * cb
                if s:
                    out[e] = s
                else:
                    del out[e]
    for e, c in out.items():
        if type(c) is Fraction and c.denominator == 1:
            out[e] = c.numerator
    return out


def poly_scale(a, c):
    if not c:
        return {}
    return {e: norm_coeff(ca * c) for e, ca in a.items()}


def poly_mul_monomial(a, exp, c):
    """Multiply by c * x^exp."""
    if not c:
        return {}
    return {tuple(map(sum, zip(e, exp))): norm_coeff(ca * c) for e, ca in a.items()}


def poly_try_divexact(a, b):
    """Return a/b when b divides a exactly, else None.

    Repeatedly cancels the lex-leading term of the running remainder; the
    remainder's leading monomial strictly decreases, so this terminates.
    """
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return {}
    eb = max(b)
    cb = b[eb]
    rem = dict(a)
    out = {}
    bitems = list(b.items())
    while rem:
        er = max(rem)
        e = tuple(x - y for x, y in zip(er, eb))
        for x in e:
            if x < 0:
                return None
        c = coeff_div(rem[er], cb)
        out[e] = c
        for eb2, cb2 in bitems:
            e2 = tuple(map(sum, zip(e, eb2)))
            s = rem.get(e2, 0) - c * cb2
            if s:
                rem[e2] = norm_coeff(s)
            else:
                rem.pop(e2, None)
    return out


# ---------------------------------------------------------------------------
# Dense univariate polynomials over Z (descending coefficient lists).
# ---------------------------------------------------------------------------


def dup_strip(f):
    i = 0
    n = len(f)
    while i < n and f[i] == 0:
        i += 1
    return f[i:]


def dup_content(f):
    g = 0
    for c in f:
        g = math.gcd(g, c)
        if g == 1:
            return 1
    return g


def dup_primitive_pos(f):
    """Divide out the integer content and force a positive leading coeff."""
    f = dup_strip(f)
    if not f:
        return []
    g = dup_content(f)
    if f[0] < 0:
        g = -g
    if g != 1:
        f = [c // g for c in f]
    return f


def dup_prem(f, g):
    """A nonzero integer multiple of the pseudo-remainder of f by g."""
    dg = len(g) - 1
    lcg = g[0]
    r = dup_strip(f)
    while r and len(r) - 1 >= dg:
        lr = r[0]
        r = [lcg * c for c in r]
        for i in range(dg + 1):
            r[i] -= lr * g[i]
        r = dup_strip(r)
    return r


def _dup_gcd_mod_is_trivial(f, g):
    """True when a mod-p Euclid certifies gcd(f, g) = 1 over Q.

    Sound in one direction only: degree of the gcd over Q is bounded by the
    degree of the gcd mod p whenever p does not divide a leading coefficient.
    """
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
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


_GCD_PRIMES = []


def _gcd_primes():
    known = list(_GCD_PRIMES)
    n = known[-1] - 2 if known else 2147483647
    for p in known:
        yield p
    while True:
        if _is_probable_prime(n):
            _GCD_PRIMES.append(n)
            yield n
        n -= 2


def _dup_gcd_mod_p(f, g, p):
    """Monic gcd of the mod-p images, as a descending list, or None."""
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


def dup_try_div(f, h):
    """Quotient f/h over Z when it divides exactly, else None."""
    f = dup_strip(f)
    h = dup_strip(h)
    if not h:
        raise ZeroDivisionError("univariate division by zero")
    if not f:
        return []
    dh = len(h) - 1
    lc = h[0]
    rem = list(f)
    n = len(rem) - 1 - dh
    if n < 0:
        return None
    out = [0] * (n + 1)
    while rem and len(rem) - 1 >= dh:
        shift = len(rem) - 1 - dh
        q, r = divmod(rem[0], lc)
        if r:
            return None
        out[n - shift] = q
        for i in range(dh + 1):
            rem[i] -= q * h[i]
        rem.pop(0)  # leading term cancelled exactly
        rem = dup_strip(rem)
    if any(rem):
        return None
    return out


def dup_gcd(f, g):
    """Primitive positive gcd of integer polynomials, up to Q-units.

    Constant common factors are units of Q[x] and are dropped: a degree-0
    result is always [1].  Uses a modular image gcd with CRT reconstruction
    and trial-division certification; primitive PRS is the fallback.
    """
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
            continue  # unlucky prime
        inv = pow(M % p, p - 2, p)
        H = [
            (a + M * ((b - a) % p * inv % p)) for a, b in zip(H, scaled)
        ]
        M *= p
        half = M // 2
        cand = [c - M if c > half else c for c in (c % M for c in H)]
        H = [c % M for c in H]
        cand = dup_primitive_pos(cand)
        if cand == prev:
            if dup_try_div(f, cand) is not None and dup_try_div(g, cand) is not None:
                return cand
        prev = cand
    # Fallback: primitive PRS with content stripping.
    while True:
        r = dup_prem(f, g)
        if not r:
            return g
        if len(r) == 1:
            return [1]
        r = dup_primitive_pos(r)
        f, g = g, r

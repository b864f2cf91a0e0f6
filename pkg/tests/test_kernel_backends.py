"""The compiled and pure kernels must agree operation by operation."""

import random
from fractions import Fraction

import pytest

from pairzeta import _kernel_py as pure

cython = pytest.importorskip("pairzeta._kernel_cy")


def rand_poly(rng, nvars, nterms, frac_prob=0.2):
    out = {}
    for _ in range(nterms):
        e = tuple(rng.randint(0, 4) for _ in range(nvars))
        if rng.random() < frac_prob:
            c = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        else:
            c = rng.randint(-9, 9)
        if c:
            out[e] = pure.norm_coeff(Fraction(c) if not isinstance(c, int) else c)
    return out


def rand_dense(rng, deg):
    f = [rng.randint(-50, 50) for _ in range(deg + 1)]
    f[0] = rng.choice([x for x in range(-50, 51) if x])
    return f


def dense_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def test_sparse_ops_agree():
    rng = random.Random(23)
    for _ in range(80):
        nvars = rng.randint(1, 3)
        a = rand_poly(rng, nvars, rng.randint(1, 8))
        b = rand_poly(rng, nvars, rng.randint(1, 8))
        assert pure.poly_add(a, b) == cython.poly_add(a, b)
        assert pure.poly_sub(a, b) == cython.poly_sub(a, b)
        assert pure.poly_neg(a) == cython.poly_neg(a)
        assert pure.poly_mul(a, b) == cython.poly_mul(a, b)
        if a and b:
            prod = pure.poly_mul(a, b)
            assert pure.poly_try_divexact(prod, a) == cython.poly_try_divexact(prod, a)
            assert pure.poly_try_divexact(a, b) == cython.poly_try_divexact(a, b)


def test_dense_gcd_agree_and_correct():
    rng = random.Random(29)
    for _ in range(60):
        g = rand_dense(rng, rng.randint(0, 5))
        f1 = dense_mul(g, rand_dense(rng, rng.randint(0, 6)))
        f2 = dense_mul(g, rand_dense(rng, rng.randint(0, 6)))
        got_p = pure.dup_gcd(f1, f2)
        got_c = cython.dup_gcd(f1, f2)
        assert got_p == got_c
        assert pure.dup_try_div(f1, got_p) is not None
        assert pure.dup_try_div(f2, got_p) is not None
        pg = pure.dup_primitive_pos(g)
        if len(pg) > 1:
            assert pure.dup_try_div(got_p, pg) is not None


def test_try_div_quotient_exact():
    rng = random.Random(31)
    for _ in range(60):
        h = rand_dense(rng, rng.randint(0, 4))
        qt = rand_dense(rng, rng.randint(0, 5))
        f = dense_mul(h, qt)
        got = pure.dup_gcd and cython.dup_try_div(f, h)
        assert got is not None
        assert dense_mul(h, got) == f
        # non-divisible case
        f2 = list(f)
        f2[-1] += 1
        if cython.dup_try_div(f2, h) is not None:
            assert dense_mul(h, cython.dup_try_div(f2, h)) == f2

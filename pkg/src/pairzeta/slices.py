"""Slice and inversion combinatorics over a noncommutative coefficient ring.

This module is the abstract engine behind the Harder-Narasimhan-type
relations: two families (a_alpha), (b_alpha) indexed by a positive cone in a
lattice with a stability slope, related by sums over slope-decreasing
chains.  Everything here is finite and definitional, which makes it the
brute-force oracle for the curve-specific closed forms in `motivic`.

All sums run over ordered partitions (chains) of a class.  The ring is
caller-supplied: elements only need +, *, unary -, ==, with zero/one coming
from a small ring descriptor.  Matrix and truncated free-word rings are
provided as concrete noncommutative instances for the test suites.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from itertools import product as _cartesian

log = logging.getLogger(__name__)

NEG_INF = float("-inf")
POS_INF = float("inf")

MODES = ("<=", ">=", "<", ">", "interval")


class StabilityContext:
    """Positive cone in Z^n with an exact rational slope.

    The slope is a ratio of two integer linear functionals; the denominator
    functional must be positive on the cone.  The default cone is
    N^n minus the origin, for which every class has finitely many ordered
    partitions.
    """

    def __init__(self, dim: int, slope_num, slope_den, member=None):
        if len(slope_num) != dim or len(slope_den) != dim:
            raise ValueError("slope functionals must match the dimension")
        self.dim = dim
        self.slope_num = tuple(slope_num)
        self.slope_den = tuple(slope_den)
        self._member = member

    def contains(self, alpha) -> bool:
        if len(alpha) != self.dim or all(x == 0 for x in alpha):
            return False
        if any(x < 0 for x in alpha):
            return False
        if self._member is not None and not self._member(alpha):
            return False
        return True

    def slope(self, alpha) -> Fraction:
        num = sum(a * x for a, x in zip(self.slope_num, alpha))
        den = sum(a * x for a, x in zip(self.slope_den, alpha))
        if den <= 0:
            raise ValueError(f"slope denominator not positive at {alpha}")
        return Fraction(num, den)


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def compositions(n: int):
    """Ordered tuples of positive integers summing to n."""
    if n == 0:
        return [()]
    out = []
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            out.append((first,) + rest)
    return out


def cone_points(ctx: StabilityContext, alpha):
    """Cone elements componentwise between 0 and alpha, excluding 0."""
    ranges = [range(x + 1) for x in alpha]
    return [p for p in _cartesian(*ranges) if ctx.contains(p)]


def ordered_partitions(ctx: StabilityContext, alpha, predicate=None):
    """All chains (alpha_1, ..., alpha_k) in the cone summing to alpha.

    With a predicate, keeps exactly the chains it accepts.
    """
    out = []

    def rec(remaining, acc):
        if all(x == 0 for x in remaining):
            out.append(tuple(acc))
            return
        for part in cone_points(ctx, remaining):
            acc.append(part)
            rec(vec_sub(remaining, part), acc)
            acc.pop()

    rec(alpha, [])
    if predicate is not None:
        out = [chain for chain in out if predicate(chain)]
    return out


def _family(f):
    if callable(f):
        return f
    return f.__getitem__


def _chain_product(ring, family, chain):
    acc = family(chain[0])
    for part in chain[1:]:
        acc = acc * family(part)
    return acc


def b_from_a(ctx, ring, a_family, alpha):
    """Sum of a-products over strictly slope-decreasing chains."""
    a = _family(a_family)
    total = ring.zero
    for chain in ordered_partitions(ctx, alpha):
        mus = [ctx.slope(p) for p in chain]
        if all(mus[i] > mus[i + 1] for i in range(len(mus) - 1)):
            total = total + _chain_product(ring, a, chain)
    return total


def a_from_b(ctx, ring, b_family, alpha):
    """Invert the decreasing-chain relation: the semistable part of b."""
    b = _family(b_family)
    mu = ctx.slope(alpha)
    total = ring.zero
    for chain in ordered_partitions(ctx, alpha):
        ok = True
        acc = chain[0]
        for part in chain[1:]:
            if ctx.slope(acc) <= mu:
                ok = False
                break
            acc = vec_add(acc, part)
        if ok:
            term = _chain_product(ring, b, chain)
            total = total + term if len(chain) % 2 else total - term
    return total


def _mode_bounds_ok(mode, mu, tau, tau2):
    if mode == "<=":
        return mu <= tau
    if mode == ">=":
        return mu >= tau
    if mode == "<":
        return mu < tau
    if mode == ">":
        return mu > tau
    if mode == "interval":
        return tau2 <= mu <= tau
    raise ValueError(f"unknown mode {mode!r}")


def slice_def(ctx, ring, a_family, alpha, mode, tau, tau2=None):
    """Definitional slice sum: decreasing chains with slope bounds.

    This is the oracle route; `slice_via_b` must agree with it.
    """
    a = _family(a_family)
    if mode == "interval" and tau2 is None:
        raise ValueError("interval mode needs tau2")
    if not _mode_bounds_ok(mode, ctx.slope(alpha), tau, tau2):
        log.debug("slice_def: slope of %s incompatible with mode %s", alpha, mode)
        return ring.zero
    total = ring.zero
    for chain in ordered_partitions(ctx, alpha):
        mus = [ctx.slope(p) for p in chain]
        if not all(mus[i] > mus[i + 1] for i in range(len(mus) - 1)):
            continue
        if mode == "<=" and not mus[0] <= tau:
            continue
        if mode == "<" and not mus[0] < tau:
            continue
        if mode == ">=" and not mus[-1] >= tau:
            continue
        if mode == ">" and not mus[-1] > tau:
            continue
        if mode == "interval" and not (mus[0] <= tau and mus[-1] >= tau2):
            continue
        total = total + _chain_product(ring, a, chain)
    return total


def slice_via_b(ctx, ring, b_family, alpha, mode, tau, tau2=None):
    """Closed-form slice: alternating b-sums over partial-sum conditions."""
    b = _family(b_family)
    if mode == "interval" and tau2 is None:
        raise ValueError("interval mode needs tau2")
    if not _mode_bounds_ok(mode, ctx.slope(alpha), tau, tau2):
        log.debug("slice_via_b: slope of %s incompatible with mode %s", alpha, mode)
        return ring.zero
    total = ring.zero
    for chain in ordered_partitions(ctx, alpha):
        if not _prefix_ok_slice(ctx, alpha, chain, mode, tau, tau2):
            continue
        term = _chain_product(ring, b, chain)
        total = total + term if len(chain) % 2 else total - term
    return total


def _prefix_ok_slice(ctx, alpha, chain, mode, tau, tau2):
    acc = None
    for part in chain[:-1]:
        acc = part if acc is None else vec_add(acc, part)
        mu_pre = ctx.slope(acc)
        if mode == "<=":
            ok = mu_pre > tau
        elif mode == ">=":
            ok = ctx.slope(vec_sub(alpha, acc)) < tau
        elif mode == "<":
            ok = mu_pre >= tau
        elif mode == ">":
            ok = ctx.slope(vec_sub(alpha, acc)) <= tau
        else:  # interval
            ok = mu_pre > tau or ctx.slope(vec_sub(alpha, acc)) < tau2
        if not ok:
            return False
    return True


def inverse_coefficients(ctx, ring, b_family, alpha, mode, tau, tau2=None):
    """Coefficients of the inverse series of the sliced a-series.

    Modes <=, >=, <, > give the four inversion formulas; "interval" gives
    the two-parameter version and "=" the single-ray corollary.
    """
    b = _family(b_family)
    mu = ctx.slope(alpha)
    if mode == "=":
        if mu != tau:
            log.debug("inverse_coefficients: %s not on the tau ray", alpha)
            return ring.zero
    elif not _mode_bounds_ok(mode, mu, tau, tau2):
        log.debug("inverse_coefficients: slope of %s incompatible with %s", alpha, mode)
        return ring.zero
    total = ring.zero
    for chain in ordered_partitions(ctx, alpha):
        if not _prefix_ok_inverse(ctx, alpha, chain, mode, tau, tau2):
            continue
        term = _chain_product(ring, b, chain)
        total = total - term if len(chain) % 2 else total + term
    return total


def _prefix_ok_inverse(ctx, alpha, chain, mode, tau, tau2):
    acc = None
    for part in chain[:-1]:
        acc = part if acc is None else vec_add(acc, part)
        mu_pre = ctx.slope(acc)
        if mode == "<=":
            ok = ctx.slope(vec_sub(alpha, acc)) <= tau
        elif mode == ">=":
            ok = mu_pre >= tau
        elif mode == "<":
            ok = ctx.slope(vec_sub(alpha, acc)) < tau
        elif mode == ">":
            ok = mu_pre > tau
        elif mode == "=":
            ok = mu_pre >= tau
        else:  # interval
            ok = mu_pre >= tau2 and ctx.slope(vec_sub(alpha, acc)) <= tau
        if not ok:
            return False
    return True


# ---------------------------------------------------------------------------
# Truncated monoid-algebra series over the ring (for the inversion and
# factorization checks).  Keys are cone vectors; the zero vector is the unit.
# ---------------------------------------------------------------------------


def lattice_points(dim: int, bound: int):
    """All of N^dim minus the origin with component sum <= bound."""
    pts = [p for p in _cartesian(*(range(bound + 1),) * dim) if sum(p) <= bound]
    return [p for p in pts if any(p)]


def series_mul(A: dict, B: dict, dim: int, bound: int, ring, twist=None) -> dict:
    out: dict = {}
    for ea, ca in A.items():
        for eb, cb in B.items():
            e = vec_add(ea, eb)
            if sum(e) > bound:
                continue
            term = ca * cb
            if twist is not None and any(ea) and any(eb):
                term = twist(ea, eb) * term
            out[e] = out.get(e, ring.zero) + term
    return out


def series_inverse(A: dict, dim: int, bound: int, ring, twist=None) -> dict:
    zero = (0,) * dim
    if A.get(zero, ring.zero) != ring.one:
        raise ValueError("series inversion needs unit constant term")
    out = {zero: ring.one}
    for gamma in sorted(lattice_points(dim, bound), key=sum):
        acc = ring.zero
        for ea, ca in A.items():
            if not any(ea):
                continue
            rest = vec_sub(gamma, ea)
            if any(x < 0 for x in rest):
                continue
            term = ca * out.get(rest, ring.zero)
            if twist is not None and any(rest):
                term = twist(ea, rest) * term
            acc = acc + term
        out[gamma] = -acc
    return out


def series_eq(A: dict, B: dict, ring) -> bool:
    keys = set(A) | set(B)
    return all(A.get(k, ring.zero) == B.get(k, ring.zero) for k in keys)


# ---------------------------------------------------------------------------
# Concrete noncommutative rings for the test suites.
# ---------------------------------------------------------------------------


class Mat:
    """Dense square matrix over Fraction."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(tuple(Fraction(x) for x in row) for row in rows)

    def __add__(self, other):
        return Mat(
            tuple(a + b for a, b in zip(ra, rb))
            for ra, rb in zip(self.rows, other.rows)
        )

    def __neg__(self):
        return Mat(tuple(-a for a in row) for row in self.rows)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        n = len(self.rows)
        cols = list(zip(*other.rows))
        return Mat(
            tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
            for row in self.rows
        )

    def __eq__(self, other):
        return isinstance(other, Mat) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"Mat({self.rows!r})"


class MatrixRing:
    def __init__(self, n: int):
        self.n = n
        self.zero = Mat([[0] * n for _ in range(n)])
        self.one = Mat([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def random(self, rng, lo=-2, hi=2) -> Mat:
        return Mat(
            [[rng.randint(lo, hi) for _ in range(self.n)] for _ in range(self.n)]
        )


class FreeWord:
    """Element of the free associative algebra over Q, words truncated."""

    __slots__ = ("coeffs", "maxlen")

    def __init__(self, coeffs: dict, maxlen: int):
        self.coeffs = {w: c for w, c in coeffs.items() if c and len(w) <= maxlen}
        self.maxlen = maxlen

    def __add__(self, other):
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            s = out.get(w, 0) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return FreeWord(out, self.maxlen)

    def __neg__(self):
        return FreeWord({w: -c for w, c in self.coeffs.items()}, self.maxlen)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out: dict = {}
        for w1, c1 in self.coeffs.items():
            for w2, c2 in other.coeffs.items():
                w = w1 + w2
                if len(w) > self.maxlen:
                    continue
                s = out.get(w, 0) + c1 * c2
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        return FreeWord(out, self.maxlen)

    def __eq__(self, other):
        return isinstance(other, FreeWord) and self.coeffs == other.coeffs

    def __repr__(self):
        return f"FreeWord({self.coeffs!r})"


class FreeWordRing:
    """Free words in a fixed alphabet, truncated beyond maxlen letters."""

    def __init__(self, letters: int, maxlen: int):
        self.letters = letters
        self.maxlen = maxlen
        self.zero = FreeWord({}, maxlen)
        self.one = FreeWord({(): Fraction(1)}, maxlen)

    def letter(self, i: int) -> FreeWord:
        return FreeWord({(i,): Fraction(1)}, self.maxlen)

    def random(self, rng) -> FreeWord:
        out = {(): Fraction(rng.randint(-2, 2))}
        for _ in range(rng.randint(1, 3)):
            w = tuple(rng.randrange(self.letters) for _ in range(rng.randint(1, 2)))
            out[w] = Fraction(rng.randint(-2, 2))
        return FreeWord(out, self.maxlen)


def random_family(ctx, ring, rng, bound: int) -> dict:
    """Random coefficient family on the window |alpha| <= bound."""
    return {p: ring.random(rng) for p in lattice_points(ctx.dim, bound)}


def default_context() -> StabilityContext:
    """N^2 minus 0 with slope mu(a, b) = b/(a+b) in [0, 1]."""
    return StabilityContext(2, (0, 1), (1, 1))

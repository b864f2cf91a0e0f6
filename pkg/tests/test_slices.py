"""Abstract slice/inversion engine against its definitional oracles."""

import random
from fractions import Fraction

import pytest

from pairzeta.slices import (FreeWordRing, Mat, MatrixRing, StabilityContext,
                             a_from_b, b_from_a, compositions, cone_points,
                             default_context, inverse_coefficients,
                             lattice_points, ordered_partitions, series_eq,
                             series_inverse, series_mul, slice_def,
                             slice_via_b)

F = Fraction
WINDOW = 4  # component-sum bound: partition counts stay in the hundreds
UNIT_KEY = (0, 0)


@pytest.fixture(scope="module")
def ctx():
    return default_context()


@pytest.fixture(scope="module", params=[7, 11, 13])
def matrix_family(request, ctx):
    ring = MatrixRing(2)
    rng = random.Random(request.param)
    fam = {p: ring.random(rng) for p in lattice_points(2, WINDOW)}
    return ring, fam


def make_b(ctx, ring, fam):
    return {p: b_from_a(ctx, ring, fam, p) for p in lattice_points(2, WINDOW)}


class TestOrderedPartitions:
    def test_compositions_of_three(self):
        ctx1 = StabilityContext(1, (1,), (1,))
        got = sorted(ordered_partitions(ctx1, (3,)))
        assert got == sorted([((3,),), ((1,), (2,)), ((2,), (1,)),
                              ((1,), (1,), (1,))])

    def test_two_dim_enumeration(self, ctx):
        got = sorted(ordered_partitions(ctx, (1, 1)))
        assert got == sorted([((1, 1),), ((1, 0), (0, 1)), ((0, 1), (1, 0))])

    def test_predicate_filter_vs_brute(self, ctx):
        alpha = (2, 2)
        def decreasing(chain):
            mus = [ctx.slope(p) for p in chain]
            return all(mus[i] > mus[i + 1] for i in range(len(mus) - 1))
        filtered = ordered_partitions(ctx, alpha, decreasing)
        brute = [ch for ch in ordered_partitions(ctx, alpha) if decreasing(ch)]
        assert filtered == brute
        assert 0 < len(filtered) < len(ordered_partitions(ctx, alpha))

    def test_compositions_helper(self):
        assert sorted(compositions(3)) == sorted([(3,), (1, 2), (2, 1), (1, 1, 1)])
        assert compositions(0) == [()]


class TestRoundTrip:
    def test_noncommutativity_exercised(self, ctx, matrix_family):
        ring, fam = matrix_family
        pts = lattice_points(2, WINDOW)
        assert any(fam[p] * fam[r] != fam[r] * fam[p] for p in pts for r in pts)

    def test_b_equals_a_on_minimal(self, ctx, matrix_family):
        ring, fam = matrix_family
        b = make_b(ctx, ring, fam)
        for p in ((1, 0), (0, 1)):
            assert b[p] == fam[p]

    def test_round_trip(self, ctx, matrix_family):
        ring, fam = matrix_family
        b = make_b(ctx, ring, fam)
        for p in lattice_points(2, WINDOW):
            assert a_from_b(ctx, ring, b, p) == fam[p]

    def test_zero_family_passthrough(self, ctx):
        ring = MatrixRing(2)
        one_class = (1, 1)
        fam = {p: ring.zero for p in lattice_points(2, WINDOW)}
        fam[one_class] = Mat([[1, 2], [3, 4]])
        b = make_b(ctx, ring, fam)
        assert b[one_class] == fam[one_class]

    def test_hand_expanded_two_term_correction(self, ctx):
        # b supported on two classes of distinct slopes: a picks up the
        # k = 2 chain with a minus sign.
        ring = MatrixRing(2)
        x = Mat([[0, 1], [0, 0]])
        y = Mat([[0, 0], [1, 0]])
        b = {p: ring.zero for p in lattice_points(2, WINDOW)}
        b[(1, 0)] = x          # slope 0
        b[(0, 1)] = y          # slope 1
        b[(1, 1)] = ring.zero
        got = a_from_b(ctx, ring, b, (1, 1))
        # chains with mu(prefix) > mu((1,1)) = 1/2 for the k=2 term:
        # only ((0,1),(1,0)) qualifies; sign (-1)^(2-1) = -1
        assert got == ring.zero - y * x

    def test_free_word_ring_round_trip(self, ctx):
        ring = FreeWordRing(letters=3, maxlen=4)
        rng = random.Random(5)
        fam = {p: ring.random(rng) for p in lattice_points(2, 3)}
        b = {p: b_from_a(ctx, ring, fam, p) for p in lattice_points(2, 3)}
        for p in lattice_points(2, 3):
            assert a_from_b(ctx, ring, b, p) == fam[p]


TAUS = [F(1, 3), F(1, 2), F(2, 3)]


class TestSliceForms:
    def test_unconstrained_slice_saturates(self, ctx, matrix_family):
        ring, fam = matrix_family
        b = make_b(ctx, ring, fam)
        # tau above every slope: the constraint is vacuous, so the <= slice
        # is the full decreasing-chain sum b; at tau = mu(alpha) it is a.
        for p in lattice_points(2, WINDOW):
            assert slice_def(ctx, ring, fam, p, "<=", F(2)) == b[p]
            assert slice_def(ctx, ring, fam, p, "<=", ctx.slope(p)) == fam[p]

    def test_empty_interval_is_zero(self, ctx, matrix_family):
        ring, fam = matrix_family
        assert slice_def(ctx, ring, fam, (1, 1), "interval", F(1, 4), F(3, 4)) \
            == ring.zero

    def test_five_closed_forms_match_definitional(self, ctx, matrix_family):
        ring, fam = matrix_family
        b = make_b(ctx, ring, fam)
        for tau in TAUS:
            for p in lattice_points(2, WINDOW):
                mu = ctx.slope(p)
                for mode, pred in (("<=", mu <= tau), (">=", mu >= tau),
                                   ("<", mu < tau), (">", mu > tau)):
                    if pred:
                        assert slice_via_b(ctx, ring, b, p, mode, tau) == \
                            slice_def(ctx, ring, fam, p, mode, tau), (p, mode, tau)
                for tau2 in (F(0), F(1, 4)):
                    if tau2 <= mu <= tau:
                        assert slice_via_b(ctx, ring, b, p, "interval", tau, tau2) \
                            == slice_def(ctx, ring, fam, p, "interval", tau, tau2)

    def test_interval_with_minus_infinity_floor(self, ctx, matrix_family):
        ring, fam = matrix_family
        b = make_b(ctx, ring, fam)
        neg_inf = float("-inf")
        for p in lattice_points(2, WINDOW):
            if ctx.slope(p) <= F(1, 2):
                assert slice_via_b(ctx, ring, b, p, "interval", F(1, 2), neg_inf) \
                    == slice_via_b(ctx, ring, b, p, "<=", F(1, 2))

    def test_single_class_is_b(self, ctx, matrix_family):
        ring, fam = matrix_family
        b = make_b(ctx, ring, fam)
        p = (1, 0)
        assert slice_via_b(ctx, ring, b, p, "<=", F(1, 2)) == b[p]

    def test_factorization(self, ctx, matrix_family):
        ring, fam = matrix_family
        b = make_b(ctx, ring, fam)
        unit = {UNIT_KEY: ring.one}
        for tau in TAUS:
            age = dict(unit)
            alt = dict(unit)
            for p in lattice_points(2, WINDOW):
                age[p] = slice_def(ctx, ring, fam, p, ">=", tau)
                alt[p] = slice_def(ctx, ring, fam, p, "<", tau)
            full = dict(unit)
            full.update(b)
            assert series_eq(series_mul(age, alt, 2, WINDOW, ring), full, ring)


class TestInversion:
    def test_minimal_class_is_minus_b(self, ctx, matrix_family):
        ring, fam = matrix_family
        b = make_b(ctx, ring, fam)
        assert inverse_coefficients(ctx, ring, b, (1, 0), "<=", F(1, 2)) == -b[(1, 0)]

    def test_two_sided_inverses(self, ctx, matrix_family):
        ring, fam = matrix_family
        b = make_b(ctx, ring, fam)
        unit = {UNIT_KEY: ring.one}
        for tau in TAUS:
            for mode in ("<=", ">=", "<", ">"):
                aser = dict(unit)
                cser = dict(unit)
                for p in lattice_points(2, WINDOW):
                    aser[p] = slice_def(ctx, ring, fam, p, mode, tau)
                    cser[p] = inverse_coefficients(ctx, ring, b, p, mode, tau)
                assert series_eq(series_mul(aser, cser, 2, WINDOW, ring), unit, ring)
                assert series_eq(series_mul(cser, aser, 2, WINDOW, ring), unit, ring)

    def test_interval_inverse(self, ctx, matrix_family):
        ring, fam = matrix_family
        b = make_b(ctx, ring, fam)
        unit = {UNIT_KEY: ring.one}
        tau, tau2 = F(2, 3), F(1, 4)
        aser = dict(unit)
        cser = dict(unit)
        for p in lattice_points(2, WINDOW):
            aser[p] = slice_def(ctx, ring, fam, p, "interval", tau, tau2)
            cser[p] = inverse_coefficients(ctx, ring, b, p, "interval", tau, tau2)
        assert series_eq(series_mul(aser, cser, 2, WINDOW, ring), unit, ring)
        assert series_eq(series_mul(cser, aser, 2, WINDOW, ring), unit, ring)

    def test_ray_corollary(self, ctx, matrix_family):
        ring, fam = matrix_family
        b = make_b(ctx, ring, fam)
        tau = F(1, 2)
        ray = [p for p in lattice_points(2, WINDOW) if ctx.slope(p) == tau]
        assert ray
        aser = {UNIT_KEY: ring.one}
        for p in ray:
            aser[p] = fam[p]
        cser = series_inverse(aser, 2, WINDOW, ring)
        for p in ray:
            c_tau = inverse_coefficients(ctx, ring, b, p, "=", tau)
            assert cser[p] == c_tau
            assert c_tau == inverse_coefficients(ctx, ring, b, p, "<=", tau)
            assert c_tau == inverse_coefficients(ctx, ring, b, p, ">=", tau)

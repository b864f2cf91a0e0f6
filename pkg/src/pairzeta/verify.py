"""Named invariant suites behind `verify`: one entry per module property.

Each suite returns an ordered dict mapping check names to booleans.  The
random families are seeded, so a fixed seed gives a reproducible report.
Failures never stop a suite; the CLI aggregates and sets the exit code.
"""

from __future__ import annotations

import random
import sys
from fractions import Fraction

from . import curve as cv
from . import motivic as mv
from . import nazeta as nz
from . import qplane as qp
from . import slices as sl
from . import wallcross as wc
from .curve import CurveDatum
from .motivic import ChernClass
from .qplane import UNIT, FramedClass, SeriesSupport, SkewSeries, Window
from .ratfun import RationalFunc, TPoly
from .scalar import (ONE, ScalarValue, rat_floor_ceil_frac, scalar_parse,
                     scalar_text)

SUITES = ("scalar", "curve", "slices", "motivic", "qplane", "wallcross", "nazeta")


def _progress(msg: str) -> None:
    print(f"[verify] {msg}", file=sys.stderr, flush=True)


def _random_scalar(rng: random.Random, depth: int = 0) -> ScalarValue:
    r = rng.random()
    if depth > 2 or r < 0.25:
        return ScalarValue.from_rational(
            Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        )
    if r < 0.45:
        return ScalarValue.q_pow(rng.randint(0, 2))
    if r < 0.55:
        return ScalarValue.var("c1") if rng.random() < 0.5 else ScalarValue.var("s")
    a = _random_scalar(rng, depth + 1)
    b = _random_scalar(rng, depth + 1)
    op = rng.choice(["+", "-", "*", "/"])
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    return a / b if not b.is_zero() else a


def suite_scalar(seed: int) -> dict:
    rng = random.Random(seed)
    out: dict = {}
    ok_laws = ok_canonical = ok_eval = True
    for _ in range(60):
        a, b, c = (_random_scalar(rng) for _ in range(3))
        ok_laws &= (a + b) + c == a + (b + c)
        ok_laws &= a * (b + c) == a * b + a * c
        ok_laws &= a + b == b + a and a * b == b * a
        ok_laws &= (a - a).is_zero()
        if not b.is_zero():
            ok_laws &= (a / b) * b == a
        # cross-multiplication equality iff identical canonical form
        from .scalar import poly_mul
        cross = poly_mul(a.num, b.den) == poly_mul(b.num, a.den)
        ok_canonical &= cross == (a == b)
        bindings = {"s": Fraction(rng.randint(2, 7)), "c1": Fraction(rng.randint(-3, 3))}
        try:
            va, vb = a.eval(bindings), b.eval(bindings)
            ok_eval &= (a + b).eval(bindings) == va + vb
            ok_eval &= (a * b).eval(bindings) == va * vb
        except Exception:
            pass  # pole at the binding: nothing to check
    out["field_laws"] = ok_laws
    out["canonical_form_uniqueness"] = ok_canonical
    out["eval_commutes_with_arith"] = ok_eval
    ok_fcf = True
    for _ in range(200):
        x = Fraction(rng.randint(-40, 40), rng.randint(1, 12))
        fl, ce, fr = rat_floor_ceil_frac(x)
        ok_fcf &= fl <= x < fl + 1
        ok_fcf &= ce - fl in (0, 1) and (ce == fl) == (x.denominator == 1)
        fr2 = rat_floor_ceil_frac(-x)[2]
        ok_fcf &= fr + fr2 in (0, 1)
    out["floor_ceil_frac"] = ok_fcf
    ok_rt = True
    for _ in range(40):
        v = _random_scalar(rng)
        ok_rt &= scalar_parse(scalar_text(v)) == v
    out["text_round_trip"] = ok_rt
    return out


def _curves():
    return [
        CurveDatum.make_symbolic(0),
        CurveDatum.make_symbolic(1),
        CurveDatum.make_symbolic(2),
        CurveDatum.make_numeric(1, [ScalarValue.from_rational(-1)]),
    ]


def suite_curve(seed: int) -> dict:
    out: dict = {}
    curves = _curves()
    out["functional_equation"] = all(cv.functional_equation_ok(c) for c in curves)
    out["hat_functional_equation"] = all(
        cv.zeta_hat_functional_equation_ok(c) for c in curves
    )
    ok_sym = True
    for c in curves:
        series = cv.zeta(c).series(20)
        ok_sym &= all(cv.sym_power(c, n) == series[n] for n in range(21))
    out["sym_power_matches_series"] = ok_sym
    q = ScalarValue.q_pow
    out["b2_hat_identities"] = all(
        cv.b_r(c, 2) == cv.b_r(c, 1) * cv.zeta_hat_at(c, q(1))
        and cv.b_r(c, 2) == cv.b_r(c, 1) * cv.zeta_hat_at(c, q(-2))
        for c in curves
    )
    out["q_integrality"] = all(
        cv.sym_power(c, n).is_q_integral() and cv.jacobian_class(c).is_q_integral()
        for c in curves for n in range(8)
    )
    return out


def suite_slices(seed: int, window: int = 5) -> dict:
    out: dict = {}
    ctx = sl.default_context()
    ring = sl.MatrixRing(2)
    pts = sl.lattice_points(2, window)
    taus = [Fraction(1, 3), Fraction(1, 2), Fraction(2, 3)]
    ok_rt = ok_fact = ok_slices = ok_inv = ok_ray = ok_nc = True
    for pass_n in range(3):
        rng = random.Random(seed + pass_n)
        fam = sl.random_family(ctx, ring, rng, window)
        ok_nc &= any(
            fam[p] * fam[q2] != fam[q2] * fam[p] for p in pts for q2 in pts
        )
        b_fam = {p: sl.b_from_a(ctx, ring, fam, p) for p in pts}
        ok_rt &= all(sl.a_from_b(ctx, ring, b_fam, p) == fam[p] for p in pts)
        unit = {(0, 0): ring.one}
        for tau in taus:
            age = dict(unit)
            alt = dict(unit)
            for p in pts:
                age[p] = sl.slice_def(ctx, ring, fam, p, ">=", tau)
                alt[p] = sl.slice_def(ctx, ring, fam, p, "<", tau)
            prod = sl.series_mul(age, alt, 2, window, ring)
            full = dict(unit)
            full.update(b_fam)
            ok_fact &= sl.series_eq(prod, full, ring)
            for p in pts:
                mu = ctx.slope(p)
                for mode, pred in (("<=", mu <= tau), (">=", mu >= tau),
                                   ("<", mu < tau), (">", mu > tau)):
                    if pred:
                        ok_slices &= sl.slice_via_b(ctx, ring, b_fam, p, mode, tau) \
                            == sl.slice_def(ctx, ring, fam, p, mode, tau)
            tau2 = Fraction(1, 4)
            for p in pts:
                if tau2 <= ctx.slope(p) <= tau:
                    ok_slices &= (
                        sl.slice_via_b(ctx, ring, b_fam, p, "interval", tau, tau2)
                        == sl.slice_def(ctx, ring, fam, p, "interval", tau, tau2)
                    )
            for mode in ("<=", ">=", "<", ">"):
                aser = dict(unit)
                cser = dict(unit)
                for p in pts:
                    aser[p] = sl.slice_def(ctx, ring, fam, p, mode, tau)
                    cser[p] = sl.inverse_coefficients(ctx, ring, b_fam, p, mode, tau)
                ok_inv &= sl.series_eq(sl.series_mul(aser, cser, 2, window, ring), unit, ring)
                ok_inv &= sl.series_eq(sl.series_mul(cser, aser, 2, window, ring), unit, ring)
            aser = dict(unit)
            cser = dict(unit)
            for p in pts:
                aser[p] = sl.slice_def(ctx, ring, fam, p, "interval", tau, tau2)
                cser[p] = sl.inverse_coefficients(ctx, ring, b_fam, p, "interval", tau, tau2)
            ok_inv &= sl.series_eq(sl.series_mul(aser, cser, 2, window, ring), unit, ring)
            ok_inv &= sl.series_eq(sl.series_mul(cser, aser, 2, window, ring), unit, ring)
        ray_tau = Fraction(1, 2)
        ray = [p for p in pts if ctx.slope(p) == ray_tau]
        aray = dict(unit)
        for p in ray:
            aray[p] = fam[p]
        cray = sl.series_inverse(aray, 2, window, ring)
        for p in ray:
            ctau = sl.inverse_coefficients(ctx, ring, b_fam, p, "=", ray_tau)
            ok_ray &= cray[p] == ctau
            ok_ray &= ctau == sl.inverse_coefficients(ctx, ring, b_fam, p, "<=", ray_tau)
            ok_ray &= ctau == sl.inverse_coefficients(ctx, ring, b_fam, p, ">=", ray_tau)
        _progress(f"slices pass {pass_n + 1}/3 done")
    out["noncommutativity_exercised"] = ok_nc
    out["a_b_round_trip"] = ok_rt
    out["hn_factorization"] = ok_fact
    out["five_slice_closed_forms"] = ok_slices
    out["inversions_two_sided"] = ok_inv
    out["ray_inversion_corollary"] = ok_ray
    return out


def suite_motivic(seed: int) -> dict:
    rng = random.Random(seed)
    out: dict = {}
    F = Fraction
    ok_per = ok_mu = ok_bf = ok_inv = ok_qi = True
    for g in (0, 1):
        c = CurveDatum.make_symbolic(g)
        for r in (1, 2, 3):
            for _ in range(5):
                d = rng.randint(-4, 6)
                ok_per &= mv.beta(c, ChernClass(r, d)) == mv.beta(c, ChernClass(r, d + r))
                ok_qi &= mv.beta(c, ChernClass(r, d)).is_q_integral()
        for (r, d) in [(2, 1), (2, 2), (3, 2)]:
            al = ChernClass(r, d)
            ok_mu &= mv.slice_closed(c, al, ">=", al.slope) == mv.beta(c, al)
            ok_mu &= mv.slice_closed(c, al, "<=", al.slope) == mv.beta(c, al)
        for tau in (F(3, 4), F(2), F(-1, 2)):
            for r in (1, 2, 3):
                for d in range(-2, 4):
                    al = ChernClass(r, d)
                    if al.slope >= tau:
                        got = mv.slice_closed(c, al, ">=", tau)
                        ok_bf &= got == mv.slice_bruteforce(c, al, ">=", tau)
                        ok_bf &= got == mv.slice_closed_sec6(c, al, tau)
                        ok_qi &= got.is_q_integral()
                    if al.slope > tau:
                        ok_bf &= mv.slice_closed(c, al, ">", tau) == \
                            mv.slice_bruteforce(c, al, ">", tau)
                    if tau - 2 <= al.slope <= tau:
                        ok_bf &= mv.slice_closed(c, al, "interval", tau, tau - 2) == \
                            mv.slice_bruteforce(c, al, "interval", tau, tau - 2)
                    if al.slope <= tau:
                        phi = min(al.slope, F(-8))
                        ok_bf &= mv.slice_closed(c, al, "<=", tau) == \
                            mv.slice_closed(c, al, "interval", tau, phi)
        _progress(f"motivic closed/bruteforce g={g} done")
        tau = F(3, 4)
        w = mv.u_window(">", tau, 3, lambda rk: mv.slope_lb(">", tau, rk) + 3)
        uinv = qp.skew_inverse(mv.u_series(c, ">", tau, w), g, w)
        for fc in w.classes(0):
            al = ChernClass(fc.rank, fc.degree)
            ok_inv &= uinv.coeff(fc) == ScalarValue.neg_s_pow(mv.chi(al, g)) * \
                mv.inverse_closed(c, al, ">", tau)
    out["beta_periodicity"] = ok_per
    out["slice_at_mu_equals_beta"] = ok_mu
    out["closed_matches_bruteforce"] = ok_bf
    out["qplane_inverse_matches_closed"] = ok_inv
    out["q_integrality"] = ok_qi
    # cache consistency on sampled hits
    c = CurveDatum.make_symbolic(1)
    table = mv.SliceTable(c)
    for _ in range(10):
        r = rng.randint(1, 3)
        d = rng.randint(0, 6)
        table.value(ChernClass(r, d), ">=", F(1, 2))
    out["slice_table_cache"] = table.verify_sample(rng, 5)
    return out


def suite_qplane(seed: int) -> dict:
    rng = random.Random(seed)
    out: dict = {}
    q = ScalarValue.q_pow

    def rand_series(framing: int, with_unit: bool) -> SkewSeries:
        coeffs = {}
        if with_unit:
            coeffs[UNIT] = ONE
        for _ in range(4):
            fc = FramedClass(rng.randint(1, 2), rng.randint(-2, 2), framing)
            coeffs[fc] = ScalarValue.from_rational(rng.randint(1, 3)) * q(rng.randint(0, 2))
        return SkewSeries(coeffs)

    window = Window({r: (-8, 8) for r in range(1, 7)}, framing_max=1)
    ok_assoc = True
    for g in (0, 1, 2):
        for _ in range(6):
            s1, s2, s3 = rand_series(0, True), rand_series(0, False), rand_series(1, False)
            big = Window({r: (-12, 12) for r in range(1, 7)}, framing_max=2)
            lhs = qp.skew_mul(qp.skew_mul(s1, s2, g, big), s3, g, big)
            rhs = qp.skew_mul(s1, qp.skew_mul(s2, s3, g, big), g, big)
            ok_assoc &= lhs.coeffs == rhs.coeffs
    out["associativity"] = ok_assoc
    ok_unframed = True
    for g in (0, 2):
        s1, s2 = rand_series(0, False), rand_series(0, False)
        prod = qp.skew_mul(s1, s2, g, window)
        # framing-0 series multiply through the unframed pairing: bracket is
        # even there, so every coefficient stays q-integral
        ok_unframed &= all(v.is_q_integral() for v in prod.coeffs.values())
        for a in s1.coeffs:
            for b in s2.coeffs:
                ok_unframed &= qp.framed_bracket(a, b, g) == qp.bracket(a, b)
    out["unframed_reduction_and_parity"] = ok_unframed
    # mixed products may carry odd s-powers
    ex = qp.skew_mul(
        SkewSeries({FramedClass(1, 0, 0): ONE}),
        SkewSeries({FramedClass(0, 0, 1): ONE}),
        0, Window({1: (0, 0)}, framing_max=1),
    )
    out["mixed_framing_odd_power_example"] = \
        not ex.coeff(FramedClass(1, 0, 1)).is_q_integral()
    ok_inv = True
    for g in (0, 1):
        c = CurveDatum.make_symbolic(g)
        tau = Fraction(1, 2)
        w = mv.u_window(">=", tau, 3, lambda rk: mv.slope_lb(">=", tau, rk) + 3)
        u = mv.u_series(c, ">=", tau, w)
        uinv = qp.skew_inverse(u, g, w)
        wsmall = mv.u_window(">=", tau, 2, lambda rk: mv.slope_lb(">=", tau, rk) + 1)
        lhs = qp.skew_mul(u, uinv, g, wsmall)
        rhs = qp.skew_mul(uinv, u, g, wsmall)
        ok_inv &= set(lhs.coeffs) == {UNIT} and lhs.coeff(UNIT).is_one()
        ok_inv &= set(rhs.coeffs) == {UNIT} and rhs.coeff(UNIT).is_one()
        ok_inv &= qp.skew_inverse(uinv, g, w).coeffs == u.coeffs
    out["inverse_two_sided"] = ok_inv
    return out


def suite_wallcross(seed: int) -> dict:
    rng = random.Random(seed)
    out: dict = {}
    F = Fraction
    ok_routes = ok_vanish = ok_qi = ok_r1 = True
    for g in (0, 1):
        c = CurveDatum.make_symbolic(g)
        taus = [F(7, 4), F(1)]
        for r in (2, 3):
            for tau in taus:
                for d in wc.support_range(r, tau):
                    a = wc.f_tau_product(c, r, d, tau)
                    b = wc.f_tau_convolution(c, r, d, tau)
                    lem = wc.f_tau_lemma(c, r, d, tau)
                    ok_routes &= a == b == lem
                    ok_qi &= a.is_q_integral()
                    if wc.is_generic(tau, r, d):
                        scale = ScalarValue.q_pow((g - 1) * (r * (r - 1) // 2))
                        ok_routes &= wc.pairs_moduli_motive(c, r, d, tau) == scale * lem
            # strictly outside the closed support hull the routes vanish
            for (d, tau) in [(5, F(7, 4)), (-1, F(1)), (2, F(1, 3))]:
                if F(d, r) > tau or tau > F(d, max(r - 1, 1)):
                    zero = ScalarValue.from_rational(0)
                    ok_vanish &= wc.f_tau_product(c, r, d, tau) == zero
                    ok_vanish &= wc.f_tau_convolution(c, r, d, tau) == zero
                    ok_vanish &= wc.f_tau_lemma(c, r, d, tau) == zero
        for d in range(0, 3):
            ok_r1 &= wc.f_tau_product(c, 1, d, F(d)) == cv.sym_power(c, d)
            ok_r1 &= wc.f_tau_product(c, 1, d, F(d) - F(1, 3)).is_zero()
        _progress(f"wallcross routes g={g} done")
    out["four_route_agreement"] = ok_routes
    out["vanishing_outside_support"] = ok_vanish
    out["q_integrality"] = ok_qi
    out["rank_one_hilbert"] = ok_r1
    # numeric specialization: Weil-bound elliptic datum at q = 2
    ok_num = True
    for a1 in (-2, -1, 0, 1, 2):
        ce = CurveDatum.make_numeric(1, [ScalarValue.from_rational(a1)])
        for r in (2, 3):
            tau = F(7, 4)
            for d in wc.support_range(r, tau):
                if not wc.is_generic(tau, r, d):
                    continue
                val = wc.pairs_moduli_motive(ce, r, d, tau).eval_at_q(2)
                ok_num &= val.denominator == 1 and val >= 0
    out["numeric_specialization_nonnegative"] = ok_num
    return out


def suite_nazeta(seed: int) -> dict:
    out: dict = {}
    ok_series = ok_rat = ok_fe = ok_cm = ok_uni = True
    for g in (0, 1):
        c = CurveDatum.make_symbolic(g)
        for r in (2, 3, 4):
            n = 5 if r <= 3 else 3
            ok_series &= nz.zeta_r_series(c, r, n) == nz.zeta_r(c, r).series(n)
            _progress(f"nazeta series/closed g={g} r={r} done")
    for g in (0, 1, 2):
        c = CurveDatum.make_symbolic(g)
        for r in (1, 2, 3):
            p = nz.numerator_P(c, r)
            ok_rat &= p.degree() <= 2 * g
            ok_fe &= nz.functional_equation_check(c, r)
            if r >= 2:
                ok_cm &= nz.counting_miracle_check(c, r)
            if r in (2, 3):
                ok_uni &= nz.uniformity_check(c, r)
        _progress(f"nazeta properties g={g} done")
    ce = CurveDatum.make_numeric(1, [ScalarValue.from_rational(-1)])
    ok_fe &= nz.functional_equation_check(ce, 4)
    ok_cm &= nz.counting_miracle_check(ce, 4)
    for g in (0, 1):
        ok_cm &= nz.counting_miracle_check(CurveDatum.make_symbolic(g), 4)
    out["series_matches_closed"] = ok_series
    out["rationality_degree_le_2g"] = ok_rat
    out["functional_equation"] = ok_fe
    out["counting_miracle"] = ok_cm
    out["special_uniformity"] = ok_uni
    out["zeta_r1_equals_zeta"] = nz.zeta_r(CurveDatum.make_symbolic(1), 1) == \
        cv.zeta(CurveDatum.make_symbolic(1))
    return out


_SUITE_FNS = {
    "scalar": suite_scalar,
    "curve": suite_curve,
    "slices": suite_slices,
    "motivic": suite_motivic,
    "qplane": suite_qplane,
    "wallcross": suite_wallcross,
    "nazeta": suite_nazeta,
}


def run_suites(selector: str, seed: int) -> dict:
    """Run one suite or all; returns {suite: {check: bool}}."""
    if selector == "all":
        names = SUITES
    elif selector in _SUITE_FNS:
        names = (selector,)
    else:
        raise KeyError(f"unknown suite {selector!r}")
    report = {}
    for name in names:
        _progress(f"running suite {name}")
        report[name] = _SUITE_FNS[name](seed)
    return report

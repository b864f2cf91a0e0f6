"""Pair-moduli invariants along four independent computation routes.

The invariant f_tau(r, d) counts framed semistable pairs of rank r and
degree d at stability tau, normalized so that the moduli-space motive at
generic tau is q^((g-1) C(r,2)) f_tau(r, d).  The routes:

* `f_tau_product`   - coefficient extraction from the skew triple product
                      u_(>tau)^{-1} o f_infinity o u_(>=tau), with windows
                      derived from the factors' slope supports;
* `f_tau_convolution` - the resolved three-part convolution over symmetric
                      powers and closed-form slice/inverse coefficients;
* `f_tau_lemma`     - the single summation formula with floor/ceiling
                      exponents (valid on walls, where it carries an extra
                      delta term);
* `pairs_moduli_motive` - the generic-tau closed form via residue-style
                      coefficient extraction from Z_X(t), giving [M_tau].

Route agreement across the full support grid is the core acceptance test.
"""

from __future__ import annotations

from fractions import Fraction

from . import motivic
from .curve import CurveDatum, b_r, sym_power, zeta
from .motivic import ChernClass, inverse_closed, slice_closed_sec6
from .qplane import (FramedClass, SeriesSupport, SkewSeries, Window,
                     skew_inverse, skew_mul, unit_series)
from .ratfun import RationalFunc, TPoly
from .scalar import ONE, ZERO, ScalarValue, rceil, rfloor, rfrac
from .slices import compositions


class NonGenericTauError(ValueError):
    """The explicit-theorem route needs (r, d)-generic tau; use the lemma."""


def is_generic(tau, r: int, d: int) -> bool:
    """tau != d/r and tau not in (1/r') Z for any 1 <= r' < r."""
    tau = Fraction(tau)
    if tau == Fraction(d, r):
        return False
    for rp in range(1, r):
        if (tau * rp).denominator == 1:
            return False
    return True


def support_range(r: int, tau) -> list:
    """Degrees d with 0 <= d/r <= tau < d/(r-1); for r = 1: 0 <= d <= tau."""
    tau = Fraction(tau)
    if tau < 0:
        return []
    if r == 1:
        return list(range(0, rfloor(tau) + 1))
    lo = max(0, rfloor((r - 1) * tau) + 1)
    hi = rfloor(r * tau)
    return list(range(lo, hi + 1))


def f_infinity_coeff(c: CurveDatum, d: int) -> ScalarValue:
    """[S^d X] for d >= 0, zero for negative d (empty Hilbert scheme)."""
    if d < 0:
        return ZERO
    return sym_power(c, d)


def f_infinity_series(c: CurveDatum, emax: int) -> SkewSeries:
    """f_infinity = x1 x3 Z_X(x2), stored for section degrees 0..emax."""
    window = Window({1: (0, emax)}, framing_max=1)
    coeffs = {
        FramedClass(1, e, 1): sym_power(c, e) for e in range(0, emax + 1)
    }
    support = SeriesSupport(1, {1: 0}, has_unit=False, ranks_complete=True)
    return SkewSeries(coeffs, window, support)


def _lbgt(rank: int, tau: Fraction) -> int:
    return rfloor(rank * tau) + 1 if rank >= 1 else 0


def _lbge(rank: int, tau: Fraction) -> int:
    return rceil(rank * tau) if rank >= 1 else 0


def f_tau_product(c: CurveDatum, r: int, d: int, tau) -> ScalarValue:
    """Coefficient of x^(r,d,1) in u_(>tau)^{-1} o f_inf o u_(>=tau)."""
    tau = Fraction(tau)
    if r < 1:
        raise ValueError("rank must be positive")
    if Fraction(d, r) > tau:
        return ZERO  # truncation |_{mu <= tau}
    g = c.genus
    R = r - 1
    if R == 0:
        u_inv = unit_series()
        u_ge = unit_series()
    else:
        w_gt = Window(
            {rho: (_lbgt(rho, tau), d - _lbge(R - rho, tau)) for rho in range(1, R + 1)},
            framing_max=0,
        )
        w_ge = Window(
            {rho: (_lbge(rho, tau), d - _lbgt(R - rho, tau)) for rho in range(1, R + 1)},
            framing_max=0,
        )
        u_inv = skew_inverse(motivic.u_series(c, ">", tau, w_gt), g, w_gt)
        u_ge = motivic.u_series(c, ">=", tau, w_ge)
    emax = d - min(
        _lbgt(rho, tau) + _lbge(R - rho, tau) for rho in range(0, R + 1)
    )
    if emax < 0:
        return ZERO
    f_inf = f_infinity_series(c, emax)
    w_mid = Window(
        {m: (_lbgt(m - 1, tau), d - _lbge(r - m, tau)) for m in range(1, r + 1)},
        framing_max=1,
    )
    mid = skew_mul(u_inv, f_inf, g, w_mid)
    w_out = Window({r: (d, d)}, framing_max=1)
    out = skew_mul(mid, u_ge, g, w_out)
    return out.coeff(FramedClass(r, d, 1))


def f_tau_convolution(c: CurveDatum, r: int, d: int, tau) -> ScalarValue:
    """The three-part convolution over symmetric powers (rank >= 2)."""
    if r < 2:
        raise ValueError("convolution route needs rank >= 2")
    tau = Fraction(tau)
    g = c.genus
    q = ScalarValue.q_pow
    total = ZERO

    def a_ge(rank: int, deg: int) -> ScalarValue:
        return slice_closed_sec6(c, ChernClass(rank, deg), tau)

    def c_gt(rank: int, deg: int) -> ScalarValue:
        return inverse_closed(c, ChernClass(rank, deg), ">", tau)

    for e in range(0, d - _lbge(r - 1, tau) + 1):
        total = total + sym_power(c, e) * a_ge(r - 1, d - e) * q(d - r * e)
    for e in range(0, d - _lbgt(r - 1, tau) + 1):
        total = total + sym_power(c, e) * c_gt(r - 1, d - e) * q((1 - g + e) * (r - 1))
    for rp in range(1, r - 1):
        rpp = r - 1 - rp
        for e in range(0, d - _lbgt(rp, tau) - _lbge(rpp, tau) + 1):
            for dp in range(_lbgt(rp, tau), d - e - _lbge(rpp, tau) + 1):
                dpp = d - e - dp
                exp = (1 - g + e) * rp - rpp * e + (rp + 1) * dpp - rpp * dp
                total = total + (
                    sym_power(c, e) * c_gt(rp, dp) * a_ge(rpp, dpp) * q(exp)
                )
    return total


def f_tau_lemma(c: CurveDatum, r: int, d: int, tau) -> ScalarValue:
    """The summation-lemma route (rank >= 2); valid at walls."""
    if r < 2:
        raise ValueError("lemma route needs rank >= 2")
    tau = Fraction(tau)
    if Fraction(d, r) > tau:
        return ZERO
    g = c.genus
    q = ScalarValue.q_pow
    x = d - (r - 1) * tau
    e_hi = rceil(x) - 1
    total = ZERO
    for comp in compositions(r - 1):
        k = len(comp)
        m = [comp[i] + comp[i + 1] for i in range(k - 1)]
        pref = [0]
        for ri in comp:
            pref.append(pref[-1] + ri)
        suff = [pref[-1] - p for p in pref]  # suff[i] = r_{>= i+1} with 0-index
        ceil_ge = [rceil(suff[i + 1] * tau) for i in range(k - 1)]
        floor_le = [rfloor(pref[i + 1] * tau) for i in range(k - 1)]
        s_ge = sum(mi * ci for mi, ci in zip(m, ceil_ge))
        s_le = sum(mi * fi for mi, fi in zip(m, floor_le))
        denom = ONE
        for mi in m:
            denom = denom * (1 - q(mi))
        bprod = ONE
        for ri in comp:
            bprod = bprod * b_r(c, ri)
        inner = ZERO
        if x.denominator == 1 and x >= 0:
            a0 = (comp[0] + 1) * (d - int(x)) - (r - 1) * d + s_ge
            inner = inner + sym_power(c, int(x)) * q(a0)
        for e in range(0, e_hi + 1):
            a_exp = -(r - 1 - comp[0]) * (d - e) + d - r * e + s_ge
            b_exp = (r - 1 - comp[-1]) * (d - e) + (1 - g + e) * (r - 1) - s_le
            term = q(a_exp) - q(b_exp)
            for p in range(1, k):
                c_p = (
                    (1 - g) * pref[p]
                    + (pref[p - 1] - suff[p]) * d
                    + comp[p - 1] * e
                    - sum(m[i] * floor_le[i] for i in range(p - 1))
                    + sum(m[i] * ceil_ge[i] for i in range(p, k - 1))
                )
                d_p = (m[p - 1] + 1) * ceil_ge[p - 1]
                e_p = (m[p - 1] + 1) * rceil(d - e - pref[p] * tau)
                term = term - (
                    q(c_p) * (q(d_p) - q(e_p)) * (1 - q(m[p - 1])) / (1 - q(m[p - 1] + 1))
                )
            inner = inner + sym_power(c, e) * term
        total = total + bprod / denom * inner
    return total


def pairs_moduli_motive(c: CurveDatum, r: int, d: int, tau) -> ScalarValue:
    """[M_tau(r, d)] for (r, d)-generic tau via coefficient extraction."""
    if r < 2:
        raise ValueError("explicit route needs rank >= 2")
    tau = Fraction(tau)
    if not is_generic(tau, r, d):
        raise NonGenericTauError(
            f"tau = {tau} is not ({r},{d})-generic; use the lemma route"
        )
    g = c.genus
    q = ScalarValue.q_pow
    n_coeff = d - rceil((r - 1) * tau)
    if n_coeff < 0:
        return ZERO
    z = zeta(c)
    total = ZERO
    for comp in compositions(r - 1):
        k = len(comp)
        m = [comp[i] + comp[i + 1] for i in range(k - 1)]
        pref = [0]
        for ri in comp:
            pref.append(pref[-1] + ri)
        suff = [pref[-1] - p for p in pref]
        rr = [0] + list(comp) + [0]  # rr[p] = r_p with the r_0 = r_{k+1} = 0 rule

        def f_exp(p: int) -> int:
            return (
                (1 - g) * pref[p]
                + (pref[p] - suff[p]) * d
                - rr[p] * rceil(pref[p] * tau)
                + (rr[p + 1] + 1) * rceil(suff[p] * tau)
                - sum(m[i] * rfloor(pref[i + 1] * tau) for i in range(p - 1))
                + sum(m[i] * rceil(suff[i + 1] * tau) for i in range(p, k - 1))
            )

        def lin(coeff: ScalarValue) -> TPoly:
            return TPoly([ONE, -coeff])

        inner = RationalFunc(TPoly([q(f_exp(0))]), lin(q(comp[0] + 1)))
        for p in range(1, k):
            delta = 1 if rfrac(pref[p] * tau) + rfrac(suff[p] * tau) < 1 else 0
            num = TPoly.t_power(delta, q(f_exp(p)) * (1 - q(m[p - 1])))
            den = lin(q(comp[p] + 1)) * lin(q(-comp[p - 1]))
            inner = inner - RationalFunc(num, den)
        inner = inner - RationalFunc(TPoly([q(f_exp(k))]), lin(q(-comp[-1])))
        val = (z * inner).coeff(n_coeff)
        denom = ONE
        for mi in m:
            denom = denom * (1 - q(mi))
        bprod = ONE
        for ri in comp:
            bprod = bprod * b_r(c, ri)
        total = total + bprod / denom * val
    return q((g - 1) * (r * (r - 1) // 2)) * total

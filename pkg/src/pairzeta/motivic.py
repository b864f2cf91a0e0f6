"""Curve-specific invariants: Zagier's semistable classes and slope slices.

`beta` is the twisted class of the semistable-bundle stack, computed by the
Zagier composition sum over b_r data.  `slice_closed` and `inverse_closed`
are the closed-form slice/inversion coefficients in the q-variable
convention (the appendix works in x = 1/q; only the q-forms are stored
here).  `slice_bruteforce` is the definitional chain sum over beta values
with the quantum-torus twist resolved to integer q-powers; it is finite for
the modes bounded below in slope, and takes an explicit slope floor for the
other modes.

A note on the downward modes: the "<=" and "<" closed forms are the
stabilizations of the two-parameter interval form, whose chain sums are
finite.  For any fixed class the interval form with a deep enough floor is
literally the same rational function, which is how those modes get their
enumeration oracle.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import NamedTuple

from . import curve as curve_mod
from .curve import CurveDatum, b_r
from .qplane import (FramedClass, SeriesSupport, SkewSeries, Window, bracket,
                     chi, chi2)
from .scalar import ONE, ZERO, ScalarValue, rceil, rfloor, rfrac
from .slices import compositions

log = logging.getLogger(__name__)

__all__ = [
    "ChernClass", "chi", "chi2", "bracket", "beta", "slice_closed",
    "slice_closed_sec6", "inverse_closed", "slice_bruteforce", "u_series",
    "u_window", "slope_lb", "SliceTable",
]


class ChernClass(NamedTuple):
    rank: int
    degree: int

    @property
    def slope(self) -> Fraction:
        return Fraction(self.degree, self.rank)


def _q(e: int) -> ScalarValue:
    return ScalarValue.q_pow(e)


def beta(c: CurveDatum, alpha: ChernClass) -> ScalarValue:
    """Zagier's composition formula for the semistable-stack class."""
    r, d = alpha
    if r < 1:
        raise ValueError("beta needs rank >= 1")
    cached = c._beta_cache.get((r, d))
    if cached is not None:
        return cached
    total = ZERO
    for comp in compositions(r):
        k = len(comp)
        prefix = 0
        exp = Fraction(0)
        denom = ONE
        for i in range(k - 1):
            prefix += comp[i]
            m = comp[i] + comp[i + 1]
            exp += m * rfrac(Fraction(prefix * d, r))
            denom = denom * (1 - _q(m))
        if exp.denominator != 1:
            raise AssertionError("non-integral q-exponent in Zagier sum")
        term = _q(int(exp)) / denom
        for ri in comp:
            term = term * b_r(c, ri)
        total = total + term
    c._beta_cache[(r, d)] = total
    return total


MODES = ("<=", ">=", "<", ">", "interval")


def _mode_ok(mode: str, mu: Fraction, tau, tau2) -> bool:
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
    raise ValueError(f"unknown slice mode {mode!r}")


def slice_closed(c: CurveDatum, alpha: ChernClass, mode: str, tau,
                 tau2=None) -> ScalarValue:
    """Closed-form slice coefficient a^{mode tau}_alpha in q-variables."""
    r, d = alpha
    tau = Fraction(tau)
    if mode == "interval":
        if tau2 is None:
            raise ValueError("interval mode needs tau2")
    if not _mode_ok(mode, alpha.slope, tau, tau2):
        log.debug("slice_closed: slope of %s incompatible with %s", alpha, mode)
        return ZERO
    cache = c._beta_cache.setdefault("slice", {})
    key = (r, d, mode, tau, tau2)
    cached = cache.get(key)
    if cached is not None:
        return cached
    total = ZERO
    for comp in compositions(r):
        k = len(comp)
        if mode in (">=", ">"):
            exp = -(r - comp[-1]) * d
        else:
            exp = (r - comp[-1]) * d
        denom = ONE
        prefix = 0
        for i in range(k - 1):
            prefix += comp[i]
            m = comp[i] + comp[i + 1]
            if mode == ">=":
                exp += m * rceil(prefix * tau)
            elif mode == ">":
                exp += m * (1 + rfloor(prefix * tau))
            elif mode == "<=":
                exp -= m * rfloor(prefix * tau)
            elif mode == "<":
                exp += m * (1 - rceil(prefix * tau))
            else:
                bound = min(Fraction(prefix) * tau,
                            d + (prefix - r) * Fraction(tau2))
                exp -= m * rfloor(bound)
            denom = denom * (1 - _q(m))
        term = _q(exp) / denom
        for ri in comp:
            term = term * b_r(c, ri)
        total = total + term
    cache[key] = total
    return total


def slice_closed_sec6(c: CurveDatum, alpha: ChernClass, tau) -> ScalarValue:
    """The ">=" slice in the reversed-composition presentation.

    Same value as slice_closed(..., ">=", tau): suffix partial sums with the
    prefactor q^{-(r - r_1) d} instead of prefix sums with q^{-(r - r_k) d}.
    """
    r, d = alpha
    tau = Fraction(tau)
    if alpha.slope < tau:
        return ZERO
    total = ZERO
    for comp in compositions(r):
        k = len(comp)
        exp = -(r - comp[0]) * d
        denom = ONE
        suffix = r
        for i in range(k - 1):
            suffix -= comp[i]
            m = comp[i] + comp[i + 1]
            exp += m * rceil(suffix * tau)
            denom = denom * (1 - _q(m))
        term = _q(exp) / denom
        for ri in comp:
            term = term * b_r(c, ri)
        total = total + term
    return total


def inverse_closed(c: CurveDatum, alpha: ChernClass, mode: str, tau) -> ScalarValue:
    """Closed-form inverse coefficient c^{mode tau}_alpha in q-variables."""
    r, d = alpha
    tau = Fraction(tau)
    if not _mode_ok(mode, alpha.slope, tau, None):
        log.debug("inverse_closed: slope of %s incompatible with %s", alpha, mode)
        return ZERO
    cache = c._beta_cache.setdefault("inverse", {})
    key = (r, d, mode, tau)
    cached = cache.get(key)
    if cached is not None:
        return cached
    total = ZERO
    for comp in compositions(r):
        k = len(comp)
        if mode in (">=", ">"):
            exp = (r - comp[-1]) * d
        else:
            exp = -(r - comp[-1]) * d
        denom = ONE
        prefix = 0
        for i in range(k - 1):
            prefix += comp[i]
            m = comp[i] + comp[i + 1]
            if mode == ">":
                exp -= m * rfloor(prefix * tau)
            elif mode == ">=":
                exp += m * (1 - rceil(prefix * tau))
            elif mode == "<=":
                exp += m * (1 + rfloor(prefix * tau))
            else:  # "<"
                exp += m * rceil(prefix * tau)
            denom = denom * (1 - _q(m))
        term = _q(exp) / denom
        for ri in comp:
            term = term * b_r(c, ri)
        total = total - term
    cache[key] = total
    return total


def slice_bruteforce(c: CurveDatum, alpha: ChernClass, mode: str, tau,
                     tau2=None, floor=None) -> ScalarValue:
    """Definitional slice sum: slope-decreasing beta-chains with q-twist.

    The twist on a chain is q raised to sum_{i<j} (r_i d_j - r_j d_i).
    Modes ">=", ">" and "interval" have finite chain sets; "<=" and "<"
    need an explicit slope `floor` bounding chains below (the result then
    equals the interval slice with that floor).
    """
    r, d = alpha
    tau = Fraction(tau)
    if mode == "interval":
        if tau2 is None:
            raise ValueError("interval mode needs tau2")
        lo_slope = Fraction(tau2)
    elif mode in ("<=", "<"):
        if floor is None:
            raise ValueError(f"mode {mode!r} has infinite chains; give a floor")
        lo_slope = Fraction(floor)
    else:
        lo_slope = tau
    if mode in ("<=", "<", "interval"):
        mu = alpha.slope
        top_ok = mu < tau if mode == "<" else mu <= tau
        if not (top_ok and mu >= lo_slope):
            log.debug("slice_bruteforce: slope of %s incompatible", alpha)
            return ZERO
    elif not _mode_ok(mode, alpha.slope, tau, None):
        log.debug("slice_bruteforce: slope of %s incompatible", alpha)
        return ZERO
    strict_lo = mode == ">"
    total = ZERO
    for comp in compositions(r):
        k = len(comp)
        lbs = []
        for ri in comp:
            if strict_lo:
                lbs.append(rfloor(ri * lo_slope) + 1)
            else:
                lbs.append(rceil(ri * lo_slope))
        lb_suffix = [0] * (k + 1)
        for i in range(k - 1, -1, -1):
            lb_suffix[i] = lb_suffix[i + 1] + lbs[i]

        def rec(i: int, remaining: int, prev_slope, degs: list):
            nonlocal total
            if i == k:
                if remaining == 0:
                    exp = 0
                    for a in range(k):
                        for bb in range(a + 1, k):
                            exp += comp[a] * degs[bb] - comp[bb] * degs[a]
                    term = _q(exp)
                    for ri, di in zip(comp, degs):
                        term = term * beta(c, ChernClass(ri, di))
                    total = total + term
                return
            ri = comp[i]
            lo = lbs[i]
            hi = remaining - lb_suffix[i + 1]
            if prev_slope is not None:
                hi = min(hi, rceil(ri * prev_slope) - 1)
            elif mode in ("<=", "interval"):
                hi = min(hi, rfloor(ri * tau))
            elif mode == "<":
                hi = min(hi, rceil(ri * tau) - 1)
            for di in range(lo, hi + 1):
                degs.append(di)
                rec(i + 1, remaining - di, Fraction(di, ri), degs)
                degs.pop()

        rec(0, d, None, [])
    return total


def u_window(mode: str, tau, rank_max: int, deg_hi) -> Window:
    """Window for a u-type series: per-rank degrees from the slope bound.

    `deg_hi` is either an int (uniform cap) or a callable rank -> cap.
    """
    tau = Fraction(tau)
    deg = {}
    for rank in range(1, rank_max + 1):
        lo = slope_lb(mode, tau, rank)
        hi = deg_hi(rank) if callable(deg_hi) else deg_hi
        deg[rank] = (lo, hi)
    return Window(deg, framing_max=0)


def slope_lb(mode: str, tau, rank: int) -> int:
    """Least degree a rank-`rank` class can have under the slope bound."""
    if rank == 0:
        return 0
    tau = Fraction(tau)
    if mode in (">=", "="):
        return rceil(rank * tau)
    if mode == ">":
        return rfloor(rank * tau) + 1
    raise ValueError(f"no degree lower bound for mode {mode!r}")


def u_series(c: CurveDatum, mode: str, tau, window: Window) -> SkewSeries:
    """Unit-constant-term slice series in the framed quantum plane.

    The coefficient at x^{(alpha, 0)} is (-s)^{chi(alpha)} a^{mode tau}_alpha
    for modes ">=" and ">", and (-s)^{chi(alpha)} beta_alpha on the
    slope-tau ray for mode "=".
    """
    if mode not in (">=", ">", "="):
        raise ValueError(f"u_series supports modes >=, >, =; got {mode!r}")
    if not window.deg:
        raise ValueError("empty window")
    tau = Fraction(tau)
    g = c.genus
    from .qplane import UNIT
    coeffs = {UNIT: ONE}
    lb = {}
    for rank in window.deg:
        lb[rank] = slope_lb(mode, tau, rank)
    for fc in window.classes(0):
        alpha = ChernClass(fc.rank, fc.degree)
        if mode == "=":
            if alpha.slope != tau:
                continue
            val = beta(c, alpha)
        else:
            if not _mode_ok(mode, alpha.slope, tau, None):
                continue
            val = slice_closed(c, alpha, mode, tau)
        if val.is_zero():
            continue
        coeffs[fc] = ScalarValue.neg_s_pow(chi(alpha, g)) * val
    support = SeriesSupport(0, lb, True, ranks_complete=False)
    return SkewSeries(coeffs, window, support)


class SliceTable:
    """Lazily populated cache of closed-form slice values for one curve."""

    def __init__(self, c: CurveDatum):
        self.curve = c
        self._table: dict = {}

    def value(self, alpha: ChernClass, mode: str, tau, tau2=None) -> ScalarValue:
        key = (alpha, mode, Fraction(tau), None if tau2 is None else Fraction(tau2))
        got = self._table.get(key)
        if got is None:
            got = slice_closed(self.curve, alpha, mode, tau, tau2)
            self._table[key] = got
        return got

    def verify_sample(self, rng, n: int = 5) -> bool:
        """Recompute sampled cached entries; cached values must match."""
        items = list(self._table.items())
        if not items:
            return True
        for _ in range(min(n, len(items))):
            (alpha, mode, tau, tau2), val = items[rng.randrange(len(items))]
            if slice_closed(self.curve, alpha, mode, tau, tau2) != val:
                return False
        return True

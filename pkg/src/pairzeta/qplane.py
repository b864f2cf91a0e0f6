"""Framed quantum affine plane: skew series over framed classes.

A framed class is (rank, degree, framing).  Series multiply by the twisted
rule x^a * x^b = (-s)^<a,b> x^(a+b) with the framed antisymmetric pairing
<a,b>.  The underlying series of interest (u-type slope slices and the
section series f) are infinite, so every stored series is a finite window
truncation plus metadata saying where the truncation is complete and what
the true support looks like.  Products check, per requested output class,
that every potentially contributing pair of classes lies inside the stored
windows, and raise `WindowError` instead of silently dropping terms.

Unframed pairings live here too (the framed ones restrict to them at
framing zero); `motivic` re-exports them.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, NamedTuple

from .scalar import ONE, ScalarValue


class WindowError(ValueError):
    """A window is too small to contain all contributing terms."""


class FramedClass(NamedTuple):
    rank: int
    degree: int
    framing: int

    def __add__(self, other):
        return FramedClass(
            self.rank + other.rank,
            self.degree + other.degree,
            self.framing + other.framing,
        )

    def __sub__(self, other):
        return FramedClass(
            self.rank - other.rank,
            self.degree - other.degree,
            self.framing - other.framing,
        )


UNIT = FramedClass(0, 0, 0)


# -- pairings ---------------------------------------------------------------


def chi(alpha, g: int) -> int:
    """chi((r, d)) = d + (1-g) r."""
    r, d = alpha[0], alpha[1]
    return d + (1 - g) * r


def chi2(alpha, beta, g: int) -> int:
    """chi((r,d), (r',d')) = r d' - r' d + (1-g) r r'."""
    r, d = alpha[0], alpha[1]
    rp, dp = beta[0], beta[1]
    return r * dp - rp * d + (1 - g) * r * rp


def bracket(alpha, beta) -> int:
    """<alpha, beta> = 2 (r d' - r' d); genus-independent."""
    r, d = alpha[0], alpha[1]
    rp, dp = beta[0], beta[1]
    return 2 * (r * dp - rp * d)


def framed_chi(a: FramedClass, b: FramedClass, g: int) -> int:
    return (1 - g) * a.framing * b.framing + chi2(a, b, g) - a.framing * chi(b, g)


def framed_bracket(a: FramedClass, b: FramedClass, g: int) -> int:
    return bracket(a, b) - a.framing * chi(b, g) + b.framing * chi(a, g)


# -- windows and support metadata --------------------------------------------


class Window:
    """Per-rank inclusive degree intervals, with a framing cap.

    Empty intervals (lo > hi) are kept: they record that a rank was
    considered and found to carry no contributing degrees, which the
    product completeness checks rely on.
    """

    def __init__(self, deg: dict, framing_max: int = 1):
        self.deg = dict(deg)
        self.framing_max = framing_max

    def contains(self, fc: FramedClass) -> bool:
        if fc == UNIT:
            return True
        if not 0 <= fc.framing <= self.framing_max:
            return False
        rng = self.deg.get(fc.rank)
        return rng is not None and rng[0] <= fc.degree <= rng[1]

    def classes(self, framing: int) -> Iterable[FramedClass]:
        for r in sorted(self.deg):
            lo, hi = self.deg[r]
            for d in range(lo, hi + 1):
                yield FramedClass(r, d, framing)

    def __repr__(self):
        return f"Window({self.deg!r}, framing_max={self.framing_max})"


class SeriesSupport:
    """What the underlying (possibly infinite) series looks like.

    `lb` maps each rank to the least degree the true series can carry at
    that rank; ranks missing from `lb` carry no support at all when
    `ranks_complete` is true, and are unknown otherwise.  `framing` is the
    framing of every non-unit class.  `total` marks an exactly-known finite
    series (no completeness checks needed).
    """

    def __init__(self, framing: int, lb: dict, has_unit: bool,
                 ranks_complete: bool = False, total: bool = False):
        self.framing = framing
        self.lb = dict(lb)
        self.has_unit = has_unit
        self.ranks_complete = ranks_complete
        self.total = total

    @classmethod
    def exact(cls) -> "SeriesSupport":
        return cls(0, {}, True, ranks_complete=True, total=True)


class SkewSeries:
    """Finitely supported coefficient map on framed classes.

    The unit coefficient is stored at the zero class.  `window` is the
    region in which the stored coefficients are complete (None for exact
    finite series), and `support` describes the underlying series.
    """

    def __init__(self, coeffs: dict, window: Window | None = None,
                 support: SeriesSupport | None = None):
        self.coeffs = {fc: c for fc, c in coeffs.items() if not c.is_zero()}
        self.window = window
        self.support = support if support is not None else SeriesSupport.exact()

    def coeff(self, fc: FramedClass) -> ScalarValue:
        return self.coeffs.get(fc, ScalarValue.from_rational(0))

    def has_unit_one(self) -> bool:
        return self.coeff(UNIT).is_one()

    def support_classes(self):
        return set(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, SkewSeries) and self.coeffs == other.coeffs

    def __repr__(self):
        return f"SkewSeries({len(self.coeffs)} terms)"


def unit_series() -> SkewSeries:
    return SkewSeries({UNIT: ONE})


def _require_class(series: SkewSeries, fc: FramedClass, gamma: FramedClass) -> None:
    """fc's coefficient must be exactly known; WindowError otherwise."""
    if fc == UNIT or series.support.total:
        return
    sup = series.support
    if fc.rank < 1 or fc.framing != sup.framing:
        return  # outside the support cone: known zero
    lb = sup.lb.get(fc.rank)
    if lb is None:
        if sup.ranks_complete:
            return
        raise WindowError(
            f"support at rank {fc.rank} unknown; needed for coefficient at {gamma}"
        )
    if fc.degree < lb:
        return
    if series.window is None or not series.window.contains(fc):
        raise WindowError(f"stored window misses {fc} needed for {gamma}")


def _require_range(series: SkewSeries, rank: int, lo: int, hi: int,
                   gamma: FramedClass) -> None:
    if hi < lo:
        return  # empty contribution range
    win = series.window
    if win is None:
        raise WindowError(f"series without window needed at rank {rank} for {gamma}")
    rng = win.deg.get(rank)
    if rng is None or rng[0] > lo or rng[1] < hi:
        raise WindowError(
            f"window {rng} at rank {rank} does not cover [{lo},{hi}] "
            f"needed for coefficient at {gamma}"
        )


def _check_product_complete(S: SkewSeries, T: SkewSeries,
                            targets: Iterable[FramedClass]) -> None:
    """Raise WindowError unless S*T is exactly computable on the targets."""
    ss, tt = S.support, T.support
    if ss.total and tt.total:
        return
    if ss.total:
        for gamma in targets:
            for a in S.coeffs:
                _require_class(T, gamma - a, gamma)
        return
    if tt.total:
        for gamma in targets:
            for b in T.coeffs:
                _require_class(S, gamma - b, gamma)
        return
    for gamma in targets:
        # unit x class and class x unit contributions
        if ss.has_unit:
            _require_class(T, gamma, gamma)
        if tt.has_unit:
            _require_class(S, gamma, gamma)
        # class x class contributions
        if ss.framing + tt.framing != gamma.framing:
            continue
        for r1 in range(1, gamma.rank):
            r2 = gamma.rank - r1
            lb1 = ss.lb.get(r1)
            lb2 = tt.lb.get(r2)
            if lb1 is None and ss.ranks_complete:
                continue
            if lb2 is None and tt.ranks_complete:
                continue
            if lb1 is None or lb2 is None:
                raise WindowError(
                    f"unknown support at rank split ({r1},{r2}) for {gamma}"
                )
            _require_range(S, r1, lb1, gamma.degree - lb2, gamma)
            _require_range(T, r2, lb2, gamma.degree - lb1, gamma)


def _combined_support(S: SkewSeries, T: SkewSeries) -> SeriesSupport:
    ss, tt = S.support, T.support
    if ss.total and tt.total:
        return SeriesSupport.exact()
    framings = set()
    if ss.has_unit and tt.lb:
        framings.add(tt.framing)
    if tt.has_unit and ss.lb:
        framings.add(ss.framing)
    if ss.lb and tt.lb:
        framings.add(ss.framing + tt.framing)
    if len(framings) > 1:
        raise ValueError("product support has mixed framings; not representable")
    framing = framings.pop() if framings else 0
    lb: dict = {}

    def note(r: int, v: int):
        lb[r] = min(lb.get(r, v), v)

    if ss.has_unit:
        for r, v in tt.lb.items():
            note(r, v)
    if tt.has_unit:
        for r, v in ss.lb.items():
            note(r, v)
    for r1, v1 in ss.lb.items():
        for r2, v2 in tt.lb.items():
            note(r1 + r2, v1 + v2)
    return SeriesSupport(
        framing,
        lb,
        ss.has_unit and tt.has_unit,
        ranks_complete=ss.ranks_complete and tt.ranks_complete,
    )


def skew_mul(S: SkewSeries, T: SkewSeries, g: int, window: Window) -> SkewSeries:
    """Twisted product, exact on `window`; per-class completeness checked."""
    targets = [
        fc for v in range(window.framing_max + 1) for fc in window.classes(v)
    ]
    _check_product_complete(S, T, targets + [UNIT])
    out: dict = {}
    for a, ca in S.coeffs.items():
        for b, cb in T.coeffs.items():
            c = a + b
            if not window.contains(c):
                continue
            tw = framed_bracket(a, b, g)
            term = ca * cb * ScalarValue.neg_s_pow(tw)
            prev = out.get(c)
            out[c] = term if prev is None else prev + term
    return SkewSeries(out, window, _combined_support(S, T))


def skew_inverse(S: SkewSeries, g: int, window: Window) -> SkewSeries:
    """Inverse of a unit-constant-term series, computed on `window`.

    Graded recursion on rank: every non-unit class of S must have rank >= 1.
    """
    if not S.has_unit_one():
        raise ValueError("skew_inverse needs a series with constant term 1")
    nonunit = [fc for fc in S.coeffs if fc != UNIT]
    if any(fc.rank < 1 for fc in nonunit):
        raise ValueError("skew_inverse needs all non-unit classes of rank >= 1")
    lb = S.support.lb

    def in_support(fc: FramedClass) -> bool:
        if fc == UNIT:
            return True
        if fc.framing != S.support.framing or fc.rank < 1:
            return False
        bound = lb.get(fc.rank)
        if bound is None:
            return not S.support.ranks_complete
        return fc.degree >= bound
    out = {UNIT: ONE}
    order = sorted(
        (fc for fc in window.classes(S.support.framing)),
        key=lambda fc: (fc.rank, fc.degree),
    )
    for gamma in order:
        acc = ScalarValue.from_rational(0)
        for a, ca in S.coeffs.items():
            if a == UNIT:
                continue
            rest = gamma - a
            if rest == UNIT:
                coeff = ONE
            else:
                if rest.rank < 0:
                    continue
                coeff = out.get(rest)
                if coeff is None:
                    if in_support(rest) and not window.contains(rest) \
                            and not S.support.total:
                        raise WindowError(
                            f"inversion window misses {rest} needed for {gamma}"
                        )
                    continue
            tw = framed_bracket(a, rest, g)
            acc = acc + ca * coeff * ScalarValue.neg_s_pow(tw)
        if not acc.is_zero():
            out[gamma] = -acc
    support = SeriesSupport(
        S.support.framing, dict(lb), True,
        ranks_complete=S.support.ranks_complete, total=S.support.total,
    )
    return SkewSeries(out, window, support)


_CMP: dict = {
    "<=": lambda mu, tau: mu <= tau,
    "<": lambda mu, tau: mu < tau,
    "=": lambda mu, tau: mu == tau,
    ">=": lambda mu, tau: mu >= tau,
    ">": lambda mu, tau: mu > tau,
}


def truncate_slope(S: SkewSeries, cmp: str, tau) -> SkewSeries:
    """Keep classes whose slope satisfies the comparison; unit survives."""
    test = _CMP[cmp]
    out = {}
    for fc, c in S.coeffs.items():
        if fc == UNIT:
            out[fc] = c
            continue
        if fc.rank < 1:
            raise ValueError(f"slope truncation undefined for rank-0 class {fc}")
        if test(Fraction(fc.degree, fc.rank), tau):
            out[fc] = c
    return SkewSeries(out, S.window, S.support)

"""(Q, <) and the generic cyclic order on Q/Z."""

from __future__ import annotations

from fractions import Fraction

from .base import StructureOracle, dyadic_stream, equality_pattern_ok, linear_order_ok


def place_in_gap(lo, hi, r: Fraction) -> Fraction:
    """Map ``r`` in (0, 1) into the open interval (lo, hi); ``None`` is unbounded.

    Unbounded sides use a window of width one next to the finite endpoint,
    or (0, 1) itself when both sides are open.
    """
    if lo is None and hi is None:
        return r
    if hi is None:
        return lo + r
    if lo is None:
        return hi - r
    return lo + (hi - lo) * r


def gap_of(ref, src):
    """Nearest elements of ``src`` strictly below and above ``ref``."""
    lo = hi = None
    for s in src:
        if s < ref and (lo is None or s > lo):
            lo = s
        elif s > ref and (hi is None or s < hi):
            hi = s
    return lo, hi


class DenseLinearOrder(StructureOracle):
    name = "dlo"
    signature = "(Q, <); points are rationals"

    def same_type(self, a, b):
        self._check_lengths(a, b)
        return linear_order_ok(a, b)

    def _candidates(self, src, ref, dst, rng):
        if src:
            lo, hi = gap_of(ref, src)
            lo = None if lo is None else dst[src.index(lo)]
            hi = None if hi is None else dst[src.index(hi)]
        else:
            lo = hi = None
        for r in dyadic_stream(rng):
            yield place_in_gap(lo, hi, r)

    def parse_point(self, s):
        return Fraction(s)


def ccw(a, b) -> Fraction:
    """Counter-clockwise distance from ``a`` to ``b`` on Q/Z."""
    return (b - a) % 1


def betweenness(a, b, c) -> bool:
    """t(a, b, c): ``b`` lies strictly inside the ccw arc from ``a`` to ``c``."""
    if a == b or b == c or a == c:
        return False
    return ccw(a, b) < ccw(a, c)


class CyclicOrder(StructureOracle):
    name = "cyclic"
    signature = "(Q/Z, t) with t the ccw betweenness relation; points in [0, 1)"

    def same_type(self, a, b):
        self._check_lengths(a, b)
        if not equality_pattern_ok(a, b):
            return False
        pairs = sorted(dict(zip(a, b)).items())
        images = [y for _, y in pairs]
        if len(images) <= 2:
            return True
        descents = sum(images[i] > images[(i + 1) % len(images)] for i in range(len(images)))
        return descents == 1

    def _candidates(self, src, ref, dst, rng):
        pts = sorted(set(src))
        if not pts:
            for r in dyadic_stream(rng):
                yield r
            return
        if len(pts) == 1:
            start, length = dst[src.index(pts[0])], Fraction(1)
        else:
            below = [p for p in pts if p < ref]
            above = [p for p in pts if p > ref]
            p = below[-1] if below else pts[-1]
            s = above[0] if above else pts[0]
            start = dst[src.index(p)]
            length = ccw(start, dst[src.index(s)])
        for r in dyadic_stream(rng):
            yield (start + length * r) % 1

    def parse_point(self, s):
        v = Fraction(s)
        if not 0 <= v < 1:
            raise ValueError("cyclic points live in [0, 1)")
        return v

"""The random permutation: a countable set with two independent dense orders.

Points are pairs of rationals in generic position (no two registered points
share a coordinate); the two orders are the coordinate orders.
"""

from __future__ import annotations

from fractions import Fraction

from .base import StructureOracle, dyadic_stream, linear_order_ok
from .dlo import gap_of, place_in_gap


class RandomPermutation(StructureOracle):
    name = "perm2"
    signature = "two dense linear orders; points are generic pairs in Q^2"
    shareable = False

    def __init__(self, seed: int = 0, max_candidates: int = 10_000):
        super().__init__(seed, max_candidates)
        self.points: set = set()
        self.xs: set = set()
        self.ys: set = set()

    def _ctor_args(self):
        return {"seed": self.seed, "max_candidates": self.max_candidates}

    def same_type(self, a, b):
        self._check_lengths(a, b)
        return linear_order_ok(a, b, key=lambda p: p[0]) and linear_order_ok(a, b, key=lambda p: p[1])

    def _accept(self, z):
        self.register(z)

    def register(self, z):
        if z in self.points:
            return
        if z[0] in self.xs or z[1] in self.ys:
            raise ValueError(f"point {z} breaks generic position")
        self.points.add(z)
        self.xs.add(z[0])
        self.ys.add(z[1])

    def _coordinate(self, axis, src, ref, dst, rng):
        used = self.xs if axis == 0 else self.ys
        if src:
            lo, hi = gap_of(ref[axis], [s[axis] for s in src])
            col = {s[axis]: d[axis] for s, d in zip(src, dst)}
            lo = None if lo is None else col[lo]
            hi = None if hi is None else col[hi]
        else:
            lo = hi = None
        for r in dyadic_stream(rng):
            v = place_in_gap(lo, hi, r)
            if v not in used:
                return v

    def _candidates(self, src, ref, dst, rng):
        # candidates are registered on creation: callers may evaluate other
        # lazy maps on a candidate before accepting it
        while True:
            if ref is None:
                z = (self._coordinate(0, (), (0, 0), (), rng), self._coordinate(1, (), (0, 0), (), rng))
            else:
                z = (self._coordinate(0, src, ref, dst, rng), self._coordinate(1, src, ref, dst, rng))
            self.register(z)
            yield z

    def format_point(self, p):
        return f"({p[0]},{p[1]})"

    def parse_point(self, s):
        a, b = str(s).strip().strip("()").split(",")
        p = (Fraction(a), Fraction(b))
        self.register(p)
        return p

"""The countably infinite set with no relations; points are natural numbers."""

from __future__ import annotations

from .base import StructureOracle, equality_pattern_ok


class PureSet(StructureOracle):
    name = "set"
    signature = "no relations; points are natural numbers"

    def same_type(self, a, b):
        self._check_lengths(a, b)
        return equality_pattern_ok(a, b)

    def _candidates(self, src, ref, dst, rng):
        taken = set(dst)
        t = 0
        while True:
            z = rng.randrange(1 << min(60, 8 + t // 16))
            if z not in taken:
                yield z
            t += 1

    def parse_point(self, s):
        v = int(s)
        if v < 0:
            raise ValueError("points of the pure set are natural numbers")
        return v

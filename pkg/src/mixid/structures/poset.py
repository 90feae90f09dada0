"""The random poset as a lazily grown registry of points ``p0, p1, ...``.

The strict order is stored transitively closed.  New points come from
one-point strong amalgamation: a fresh point is placed above the down-closure
of its required lower bounds and below the up-closure of its required upper
bounds, and is incomparable to everything else.
"""

from __future__ import annotations

from .base import StructureOracle, equality_pattern_ok


class RandomPoset(StructureOracle):
    name = "poset"
    signature = "random partial order; registry-backed"
    shareable = False

    def __init__(self, seed: int = 0, max_candidates: int = 10_000):
        super().__init__(seed, max_candidates)
        self.up: dict = {}
        self.down: dict = {}
        self._grow = self.rng("registry")

    def _ctor_args(self):
        return {"seed": self.seed, "max_candidates": self.max_candidates}

    def less(self, a, b) -> bool:
        return b in self.up[a]

    def relation(self, a, b) -> str:
        if a == b:
            return "="
        if b in self.up[a]:
            return "<"
        if b in self.down[a]:
            return ">"
        return "|"

    def same_type(self, a, b):
        self._check_lengths(a, b)
        if not equality_pattern_ok(a, b):
            return False
        for v in (*a, *b):
            if v not in self.up:
                raise KeyError(f"unknown point p{v}")
        n = len(a)
        for i in range(n):
            ua, da, ub, db = self.up[a[i]], self.down[a[i]], self.up[b[i]], self.down[b[i]]
            for j in range(i + 1, n):
                if (a[j] in ua) != (b[j] in ub) or (a[j] in da) != (b[j] in db):
                    return False
        return True

    def new_point(self, below=(), above=()) -> int:
        """Fresh point greater than every element of ``below`` and less than ``above``."""
        down = set()
        for b in below:
            down.add(b)
            down |= self.down[b]
        up = set()
        for a in above:
            up.add(a)
            up |= self.up[a]
        if down & up:
            raise ValueError("inconsistent order request")
        v = len(self.up)
        self.up[v] = up
        self.down[v] = down
        for d in down:
            self.up[d].add(v)
        for u in up:
            self.down[u].add(v)
        return v

    def _candidates(self, src, ref, dst, rng):
        if ref is None:
            while True:
                if self.up and rng.random() < 0.5:
                    anchor = rng.choice(sorted(self.up))
                    yield self.new_point(below=[anchor]) if rng.random() < 0.5 else self.new_point(above=[anchor])
                else:
                    yield self.new_point()
        below = [d for s, d in zip(src, dst) if s in self.down[ref]]
        above = [d for s, d in zip(src, dst) if s in self.up[ref]]
        while True:
            yield self.new_point(below, above)

    def format_point(self, p):
        return f"p{p}"

    def parse_point(self, s):
        v = int(s[1:] if s.startswith("p") else s)
        if v not in self.up:
            raise KeyError(f"unknown point {s}")
        return v

    def export(self, points):
        pts = sorted(set(points))
        rel = [[a, b] for a in pts for b in pts if b in self.up[a]]
        return {"points": pts, "less": rel}

    def restored(self, data):
        p = RandomPoset(self.seed, self.max_candidates)
        for v in data.get("points", []):
            p.up[v] = set()
            p.down[v] = set()
        for a, b in data.get("less", []):
            p.up[a].add(b)
            p.down[b].add(a)
        return p

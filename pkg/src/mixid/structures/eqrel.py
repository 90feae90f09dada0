"""E_k: an equivalence relation with infinitely many classes of size k.

Points are pairs ``(cls, slot)`` with ``cls >= 0`` and ``0 <= slot < k``.
"""

from __future__ import annotations

from .base import StructureOracle, equality_pattern_ok


class EquivalenceK(StructureOracle):
    name = "eqrel"
    signature = "equivalence relation with k-element classes; points (class, slot)"
    no_algebraicity = False
    algebraically_convex = False

    def __init__(self, k: int = 2, seed: int = 0, max_candidates: int = 10_000):
        if k < 1:
            raise ValueError("class size must be positive")
        super().__init__(seed, max_candidates)
        self.k = k
        self.name = f"eqrel:{k}"
        if k == 1:
            self.no_algebraicity = True
            self.algebraically_convex = True

    def _ctor_args(self):
        return {"k": self.k, "seed": self.seed, "max_candidates": self.max_candidates}

    def same_type(self, a, b):
        self._check_lengths(a, b)
        return equality_pattern_ok(a, b) and equality_pattern_ok([p[0] for p in a], [p[0] for p in b])

    def acl(self, ys):
        return frozenset((c, s) for c in {y[0] for y in ys} for s in range(self.k))

    def in_acl(self, x, ys):
        return any(x[0] == y[0] for y in ys)

    def _candidates(self, src, ref, dst, rng):
        taken = set(dst)
        if ref is not None:
            for s, d in zip(src, dst):
                if s[0] == ref[0]:
                    slots = [t for t in range(self.k) if (d[0], t) not in taken]
                    rng.shuffle(slots)
                    for t in slots:
                        yield (d[0], t)
                    return
        used = {d[0] for d in dst}
        t = 0
        while True:
            c = rng.randrange(1 << min(60, 8 + t // 16))
            if c not in used:
                yield (c, rng.randrange(self.k))
            t += 1

    def format_point(self, p):
        return f"{p[0]}.{p[1]}"

    def parse_point(self, s):
        c, _, t = str(s).partition(".")
        c, t = int(c), int(t)
        if c < 0 or not 0 <= t < self.k:
            raise ValueError(f"bad E_{self.k} point {s!r}")
        return (c, t)

"""The Rado graph, grown lazily from a BIT-graph seed.

Vertices ``0 .. NATIVE-1`` carry the BIT adjacency (``i ~ j`` for ``i < j``
iff bit ``i`` of ``j`` is set).  Further vertices are created on demand by
one-point extensions: adjacency to the requested base follows the requested
type, adjacency to every other existing vertex is a seeded coin flip.
"""

from __future__ import annotations

from .base import StructureOracle, equality_pattern_ok

NATIVE = 64


def bit_adjacent(i: int, j: int) -> bool:
    if i == j:
        return False
    i, j = min(i, j), max(i, j)
    return bool((j >> i) & 1)


class RadoGraph(StructureOracle):
    name = "rado"
    signature = "random graph; BIT adjacency on 0..63, lazily extended"
    shareable = False

    def __init__(self, seed: int = 0, max_candidates: int = 10_000, native: int = NATIVE):
        super().__init__(seed, max_candidates)
        self.adj: dict = {v: set() for v in range(native)}
        for j in range(native):
            for i in range(j):
                if bit_adjacent(i, j):
                    self.adj[i].add(j)
                    self.adj[j].add(i)
        self._next = native
        self._grow = self.rng("registry")

    def _ctor_args(self):
        return {"seed": self.seed, "max_candidates": self.max_candidates}

    def adjacent(self, u, v) -> bool:
        try:
            return v in self.adj[u]
        except KeyError:
            raise KeyError(f"unknown vertex {u}") from None

    def same_type(self, a, b):
        self._check_lengths(a, b)
        if not equality_pattern_ok(a, b):
            return False
        for v in (*a, *b):
            if v not in self.adj:
                raise KeyError(f"unknown vertex {v}")
        n = len(a)
        for i in range(n):
            na, nb = self.adj[a[i]], self.adj[b[i]]
            for j in range(i + 1, n):
                if (a[j] in na) != (b[j] in nb):
                    return False
        return True

    def new_vertex(self, adjacent_to=(), not_adjacent_to=()) -> int:
        yes, no = set(adjacent_to), set(not_adjacent_to)
        if yes & no:
            raise ValueError("contradictory adjacency request")
        v = self._next
        self._next += 1
        nbrs = set(yes)
        for u in self.adj:
            if u not in yes and u not in no and self._grow.random() < 0.5:
                nbrs.add(u)
        self.adj[v] = nbrs
        for u in nbrs:
            self.adj[u].add(v)
        return v

    def extension_vertex(self, A, B, avoid=()):
        """A vertex adjacent to all of A and none of B (extension property)."""
        base = tuple(A) + tuple(B)
        avoid = set(avoid) | set(base)
        for v in sorted(self.adj):
            if v not in avoid and all(a in self.adj[v] for a in A) and not any(b in self.adj[v] for b in B):
                return v
        return self.new_vertex(A, B)

    def _candidates(self, src, ref, dst, rng):
        if ref is None:
            pool = sorted(self.adj)
            rng.shuffle(pool)
            yield from pool[:NATIVE]
            while True:
                yield self.new_vertex()
        A = [d for s, d in zip(src, dst) if s in self.adj[ref]]
        B = [d for s, d in zip(src, dst) if s not in self.adj[ref]]
        taken = set(dst)
        pool = sorted(self.adj)
        rng.shuffle(pool)
        for v in pool[:NATIVE]:
            nb = self.adj[v]
            if v not in taken and all(a in nb for a in A) and not any(b in nb for b in B):
                yield v
        while True:
            yield self.new_vertex(A, B)

    def format_point(self, p):
        return f"v{p}"

    def parse_point(self, s):
        v = int(s[1:] if s.startswith("v") else s)
        if v not in self.adj:
            raise KeyError(f"unknown vertex {s}")
        return v

    def export(self, points):
        pts = sorted(set(points))
        edges = [[u, v] for i, u in enumerate(pts) for v in pts[i + 1:] if v in self.adj[u]]
        return {"vertices": pts, "edges": edges}

    def restored(self, data):
        g = RadoGraph(self.seed, self.max_candidates, native=0)
        g.adj = {v: set() for v in data.get("vertices", [])}
        for u, v in data.get("edges", []):
            g.adj[u].add(v)
            g.adj[v].add(u)
        g._next = max(g.adj, default=-1) + 1
        return g

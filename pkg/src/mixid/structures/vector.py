"""The countably infinite dimensional vector space over F_q.

Points are finitely supported coordinate vectors, stored as tuples of
residues with trailing zeros stripped; ``()`` is the zero vector.
"""

from __future__ import annotations

import itertools

from .base import StructureOracle


def normalize(v, q: int) -> tuple:
    v = [c % q for c in v]
    while v and v[-1] == 0:
        v.pop()
    return tuple(v)


def is_prime(q: int) -> bool:
    return q >= 2 and all(q % d for d in range(2, int(q**0.5) + 1))


def row_reduce(rows, q: int) -> list:
    """Echelon basis of the span of ``rows`` as a list of ``(pivot, row)``."""
    width = max((len(r) for r in rows), default=0)
    work = [[c % q for c in r] + [0] * (width - len(r)) for r in rows]
    basis = []
    for col in range(width):
        k = next((i for i, r in enumerate(work) if r[col]), None)
        if k is None:
            continue
        r = work.pop(k)
        inv = pow(r[col], -1, q)
        r = [c * inv % q for c in r]
        for i, r2 in enumerate(work):
            f = r2[col]
            if f:
                work[i] = [(a - f * b) % q for a, b in zip(r2, r)]
        basis.append((col, list(normalize(r, q))))
    return basis


def rank(rows, q: int) -> int:
    return len(row_reduce(rows, q))


def in_span(v, rows, q: int) -> bool:
    return rank(list(rows) + [v], q) == rank(rows, q)


def solve(rows, v, q: int):
    """Coefficients ``a`` with ``sum a_i rows_i = v``, or ``None``."""
    n = len(rows)
    aug = []
    for i, r in enumerate(rows):
        unit = [0] * n
        unit[i] = 1
        aug.append((list(r), unit))
    target = list(v)
    width = max([len(r) for r in rows] + [len(target)], default=0)
    # eliminate on (row | identity) to track combinations
    work = [(r + [0] * (width - len(r)), u[:]) for r, u in aug]
    done = []
    for col in range(width):
        k = next((i for i, (r, _) in enumerate(work) if r[col] % q), None)
        if k is None:
            continue
        r, u = work.pop(k)
        inv = pow(r[col], -1, q)
        r = [c * inv % q for c in r]
        u = [c * inv % q for c in u]
        for i, (r2, u2) in enumerate(work):
            f = r2[col] % q
            if f:
                work[i] = ([(a - f * b) % q for a, b in zip(r2, r)], [(a - f * b) % q for a, b in zip(u2, u)])
        done.append((col, r, u))
    t = target + [0] * (width - len(target))
    coeff = [0] * n
    for col, r, u in done:
        f = t[col] % q
        if f:
            t = [(a - f * b) % q for a, b in zip(t, r)]
            coeff = [(a + f * b) % q for a, b in zip(coeff, u)]
    if any(c % q for c in t):
        return None
    return coeff


def combine(coeffs, vectors, q: int) -> tuple:
    width = max((len(v) for v in vectors), default=0)
    out = [0] * width
    for a, v in zip(coeffs, vectors):
        if a:
            for i, c in enumerate(v):
                out[i] = (out[i] + a * c) % q
    return normalize(out, q)


class VectorSpace(StructureOracle):
    name = "vec"
    signature = "F_q vector space of countable dimension; points are coordinate tuples"
    no_algebraicity = False
    algebraically_convex = False
    ACL_LIMIT = 1 << 16

    def __init__(self, q: int = 2, seed: int = 0, max_candidates: int = 10_000):
        if not is_prime(q):
            raise ValueError(f"q = {q} must be prime")
        super().__init__(seed, max_candidates)
        self.q = q
        self.name = f"vec:{q}"

    def _ctor_args(self):
        return {"q": self.q, "seed": self.seed, "max_candidates": self.max_candidates}

    def same_type(self, a, b):
        self._check_lengths(a, b)
        q = self.q
        ra, rb = rank(a, q), rank(b, q)
        if ra != rb:
            return False
        wa = max((len(v) for v in a), default=0)
        joint = [tuple(x) + (0,) * (wa - len(x)) + tuple(y) for x, y in zip(a, b)]
        return rank(joint, q) == ra

    def in_acl(self, x, ys):
        return in_span(x, list(ys), self.q)

    def acl(self, ys):
        basis = [r for _, r in row_reduce(list(ys), self.q)]
        if self.q ** len(basis) > self.ACL_LIMIT:
            raise OverflowError(f"span of dimension {len(basis)} too large to enumerate")
        return frozenset(
            combine(cs, basis, self.q) for cs in itertools.product(range(self.q), repeat=len(basis))
        )

    def _candidates(self, src, ref, dst, rng):
        q = self.q
        if ref is not None:
            coeff = solve(list(src), ref, q)
            if coeff is not None:
                yield combine(coeff, dst, q)
                return
        width = max((len(v) for v in dst), default=0)
        t = 0
        while True:
            fresh = width + rng.randrange(1 + t // 8 + 1)
            v = [0] * (fresh + 1)
            v[fresh] = rng.randrange(1, q)
            for d in dst:
                a = rng.randrange(q)
                for i, c in enumerate(d):
                    v[i] = (v[i] + a * c) % q
            for i in range(fresh):
                if rng.random() < 0.25:
                    v[i] = (v[i] + rng.randrange(q)) % q
            # no dst vector touches coordinate `fresh`, so v stays outside span(dst)
            yield normalize(v, q)
            t += 1

    def format_point(self, p):
        return "[" + ",".join(map(str, p)) + "]"

    def parse_point(self, s):
        body = str(s).strip().strip("[]").strip()
        vals = [int(c) for c in body.split(",")] if body else []
        return normalize(vals, self.q)

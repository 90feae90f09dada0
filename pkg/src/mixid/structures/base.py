"""Oracle interface for countable homogeneous structures."""

from __future__ import annotations

import random
from typing import Callable, Hashable, Iterable, Iterator, Sequence

Point = Hashable


class ExhaustedSearch(RuntimeError):
    """``realize`` ran past its candidate bound."""


class ContractViolation(RuntimeError):
    """A type or isomorphism check that must hold by construction failed."""


def forbidden_predicate(avoid) -> Callable[[Point], bool]:
    if avoid is None:
        return lambda z: False
    if callable(avoid):
        return avoid
    avoid = avoid if isinstance(avoid, (set, frozenset, dict)) else set(avoid)
    return avoid.__contains__


def equality_pattern_ok(a: Sequence, b: Sequence) -> bool:
    fwd: dict = {}
    back: dict = {}
    for x, y in zip(a, b):
        if fwd.setdefault(x, y) != y or back.setdefault(y, x) != x:
            return False
    return True


def linear_order_ok(a: Sequence, b: Sequence, key=lambda p: p) -> bool:
    """Does ``a_i -> b_i`` preserve a strict linear order (ties included)?"""
    idx = sorted(range(len(a)), key=lambda i: key(a[i]))
    for i, j in zip(idx, idx[1:]):
        ka, kb = key(a[i]), key(a[j])
        if ka == kb:
            if key(b[i]) != key(b[j]):
                return False
        elif not key(b[i]) < key(b[j]):
            return False
    return True


class StructureOracle:
    """Uniform access to a homogeneous structure with oligomorphic automorphism group.

    Subclasses supply ``same_type``, ``in_acl``/``acl`` and ``_candidates``;
    candidates must already have the requested type over ``dst``, ``realize``
    filters them against the forbidden set and double-checks the type.
    """

    name = "abstract"
    signature = ""
    no_algebraicity = True
    algebraically_convex = True
    shareable = True

    def __init__(self, seed: int = 0, max_candidates: int = 10_000):
        self.seed = seed
        self.max_candidates = max_candidates
        self._nonce = 0

    # -- randomness --------------------------------------------------------

    def rng(self, nonce=None) -> random.Random:
        if nonce is None:
            nonce = self._nonce
            self._nonce += 1
        return random.Random(f"{self.name}:{self.seed}:{nonce}")

    # -- type and closure --------------------------------------------------

    def same_type(self, a: Sequence, b: Sequence) -> bool:
        raise NotImplementedError

    def _check_lengths(self, a, b):
        if len(a) != len(b):
            raise ValueError(f"tuples of different length {len(a)} != {len(b)}")

    def acl(self, ys: Iterable) -> frozenset:
        return frozenset(ys)

    def in_acl(self, x: Point, ys: Iterable) -> bool:
        return x in self.acl(ys)

    def staggered_independent(self, t: Sequence) -> bool:
        return all(not self.in_acl(t[i], t[:i]) for i in range(len(t)))

    # -- realization -------------------------------------------------------

    def _candidates(self, src: Sequence, ref: Point, dst: Sequence, rng: random.Random) -> Iterator:
        raise NotImplementedError

    def _accept(self, z: Point) -> None:
        """Hook for registry-backed structures."""

    def realize(self, src: Sequence, ref: Point, dst: Sequence | None = None, avoid=None, nonce=None) -> Point:
        """A point ``z`` with ``(dst, z)`` of the same type as ``(src, ref)``.

        With ``dst`` omitted this samples the orbit of ``ref`` under the
        pointwise stabilizer of ``src``.  ``avoid`` is a finite collection or
        a predicate flagging forbidden points.
        """
        src = tuple(src)
        dst = src if dst is None else tuple(dst)
        self._check_lengths(src, dst)
        bad = forbidden_predicate(avoid)
        if ref in src:
            z = dst[src.index(ref)]
            if bad(z):
                raise ExhaustedSearch("the only realization is forbidden")
            return z
        rng = self.rng(nonce)
        for count, z in enumerate(self._candidates(src, ref, dst, rng)):
            if count >= self.max_candidates:
                break
            if bad(z):
                continue
            if not self.same_type(src + (ref,), dst + (z,)):
                raise ContractViolation(f"{self.name}: candidate {z!r} has the wrong type")
            self._accept(z)
            return z
        raise ExhaustedSearch(f"{self.name}: no admissible candidate within {self.max_candidates}")

    def sample(self, avoid=None, nonce=None) -> Point:
        """A point outside acl(empty set), avoiding the forbidden set."""
        bad = forbidden_predicate(avoid)
        rng = self.rng(nonce)
        for count, z in enumerate(self._generic(rng)):
            if count >= self.max_candidates:
                break
            if not bad(z) and not self.in_acl(z, ()):
                self._accept(z)
                return z
        raise ExhaustedSearch(f"{self.name}: sample exhausted")

    def _generic(self, rng: random.Random) -> Iterator:
        return self._candidates((), None, (), rng)

    # -- serialization -----------------------------------------------------

    def format_point(self, p: Point) -> str:
        return str(p)

    def parse_point(self, s: str) -> Point:
        raise NotImplementedError

    def export(self, points: Iterable) -> dict:
        """Relations among ``points`` not recoverable from their tokens."""
        return {}

    def restored(self, data: dict) -> "StructureOracle":
        """Fresh oracle that knows exactly the exported relations."""
        return type(self)(**self._ctor_args())

    def _ctor_args(self) -> dict:
        return {"seed": self.seed}

    def describe(self) -> str:
        return f"{self.name}: {self.signature}"

    def __repr__(self) -> str:
        return f"{type(self).__name__}(seed={self.seed})"


def dyadic_stream(rng: random.Random) -> Iterator:
    """Endless stream of dyadic rationals in (0, 1), depth growing slowly."""
    from fractions import Fraction

    t = 0
    while True:
        k = min(62, 1 + rng.randrange(2 + t // 4))
        m = rng.randrange(1 << (k - 1))
        yield Fraction(2 * m + 1, 1 << k)
        t += 1

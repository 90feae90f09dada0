"""Seeded random words, constants and free group elements for tests and scripts."""

from __future__ import annotations

import random
from fractions import Fraction

from .automorphisms import (
    CircleMap,
    EventuallyPeriodic,
    FinitePermutation,
    LazyAutomorphism,
    LinearMap,
    PLRationalMap,
    WreathElement,
)
from .germs import PLHomeo
from .metabelian import is_in_derived, is_in_second_derived
from .structures import make_oracle
from .structures.base import StructureOracle
from .words import FreeWord, WordWithConstants, commutator, free_reduce

CONST_NAMES = ("a", "b", "c", "d")


# --------------------------------------------------------------------------
# words


def raw_sequence(rng: random.Random, l_max: int = 16, r_max: int = 4, names=CONST_NAMES) -> list:
    """Unreduced mix of variables, constant letters and identity markers."""
    r = rng.randint(1, r_max)
    out = []
    for _ in range(rng.randint(0, l_max)):
        roll = rng.random()
        if roll < 0.5:
            out.append((rng.randint(1, r), rng.choice((1, -1))))
        elif roll < 0.9:
            out.append((rng.choice(names), rng.choice((1, -1))))
        else:
            out.append(None)
    return out


def _const_block(rng: random.Random, names, p: float) -> tuple:
    if rng.random() >= p:
        return ()
    return tuple(free_reduce([(rng.choice(names), rng.choice((1, -1))) for _ in range(rng.randint(1, 2))]))


def random_word(
    rng: random.Random,
    l_max: int = 8,
    r_max: int = 3,
    kind: str = "any",
    names=CONST_NAMES,
    const_p: float = 0.7,
    l_min: int = 1,
) -> WordWithConstants:
    """Reduced word; ``kind`` is any | strong | jminus | nonsingular."""
    for _ in range(10_000):
        r = rng.randint(1, r_max)
        l = rng.randint(l_min, l_max)
        iota, eps = [], []
        for j in range(l):
            i = rng.randint(1, r)
            e = rng.choice((1, -1))
            if kind == "strong" and j and i == iota[-1]:
                e = eps[-1]
            iota.append(i)
            eps.append(e)
        consts = [_const_block(rng, names, const_p) for _ in range(l + 1)]
        if kind == "jminus":
            if l < 2:
                continue
            j = rng.randint(1, l - 1)
            iota[j] = iota[j - 1]
            eps[j] = -eps[j - 1]
        for j in range(1, l):
            if iota[j] == iota[j - 1] and eps[j] == -eps[j - 1] and not consts[j]:
                consts[j] = ((rng.choice(names), rng.choice((1, -1))),)
        w = WordWithConstants(tuple(iota), tuple(eps), tuple(consts), r)
        if kind == "strong" and not w.is_strong():
            continue
        if kind == "jminus" and w.is_strong():
            continue
        if kind == "nonsingular" and w.is_singular():
            continue
        return w
    raise RuntimeError(f"could not sample a {kind} word")  # pragma: no cover


def random_onevar_word(rng: random.Random, l_max: int = 6, names=("h1", "h2", "h3")) -> WordWithConstants:
    """One-variable word with nonzero exponent sum."""
    while True:
        l = rng.randint(1, l_max)
        eps = [rng.choice((1, -1)) for _ in range(l)]
        if sum(eps) == 0:
            continue
        consts = [_const_block(rng, names, 0.7) for _ in range(l + 1)]
        for j in range(1, l):
            if eps[j] == -eps[j - 1] and not consts[j]:
                consts[j] = ((rng.choice(names), 1),)
        return WordWithConstants((1,) * l, tuple(eps), tuple(consts), 1)


# --------------------------------------------------------------------------
# free group F_2


def random_free_word(rng: random.Random, max_len: int = 3) -> FreeWord:
    while True:
        u = FreeWord(free_reduce([(rng.randint(1, 2), rng.choice((1, -1))) for _ in range(rng.randint(1, max_len))]))
        if not u.is_identity():
            return u


def random_second_derived(rng: random.Random, max_len: int = 20) -> FreeWord:
    """Nontrivial product of commutators of commutators, length at most ``max_len``."""
    while True:
        parts = []
        for _ in range(rng.randint(1, 2)):
            a = commutator(random_free_word(rng, 2), random_free_word(rng, 2))
            b = commutator(random_free_word(rng, 2), random_free_word(rng, 2))
            parts.append(commutator(a, b))
        u = parts[0]
        for v in parts[1:]:
            u = u * v
        if not u.is_identity() and len(u) <= max_len:
            return u


def random_derived_not_second(rng: random.Random, max_len: int = 20) -> FreeWord:
    """Element of [F_2, F_2] outside F_2'' (certified through the Magnus image)."""
    while True:
        u = FreeWord(())
        for _ in range(rng.randint(1, 2)):
            g = random_free_word(rng, 2)
            c = commutator(random_free_word(rng, 2), random_free_word(rng, 2))
            u = u * g.inverse() * c * g
        if len(u) <= max_len and is_in_derived(u) and not is_in_second_derived(u):
            return u


# --------------------------------------------------------------------------
# constants


def _dyadic(rng: random.Random, lo, hi, bits: int = 6) -> Fraction:
    d = 1 << bits
    return Fraction(rng.randrange(int(lo * d) + 1, int(hi * d)), d)


def random_constant(structure: str, rng: random.Random, oracle: StructureOracle | None = None, name: str = "c"):
    """A constant suitable for ``structure``; lazy for rado, poset and perm2."""
    base, _, arg = structure.partition(":")
    if base == "set":
        pts = rng.sample(range(1, 40), rng.randint(2, 5))
        return FinitePermutation.from_cycles([pts])
    if base == "dlo":
        choice = rng.random()
        if choice < 0.3:
            return PLRationalMap.translation(_dyadic(rng, -3, 3) or 1)
        xs = sorted({_dyadic(rng, -4, 4) for _ in range(rng.randint(1, 4))})
        ys = sorted({_dyadic(rng, -4, 4) for _ in range(len(xs))})
        while len(ys) < len(xs):
            ys = sorted(set(ys) | {_dyadic(rng, -4, 4)})
        return PLRationalMap.from_points(list(zip(xs, ys)))
    if base == "cyclic":
        if rng.random() < 0.3:
            return CircleMap.rotation(_dyadic(rng, 0, 1))
        xs = sorted({_dyadic(rng, 0, 1) for _ in range(rng.randint(1, 4))})
        ys = sorted({_dyadic(rng, 0, 1) for _ in range(len(xs))})
        while len(ys) < len(xs):
            ys = sorted(set(ys) | {_dyadic(rng, 0, 1)})
        off = rng.randrange(2)
        return CircleMap(tuple((x, y + off) for x, y in zip(xs, ys)))
    if base == "eqrel":
        k = int(arg or 2)
        if rng.random() < 0.5:
            classes = EventuallyPeriodic.shift_pairs(2 * rng.randrange(3))
        else:
            classes = FinitePermutation.from_cycles([rng.sample(range(10), 3)])
        slot = list(range(k))
        rng.shuffle(slot)
        exc = []
        for c in rng.sample(range(10), 2):
            s = list(range(k))
            rng.shuffle(s)
            exc.append((c, tuple(s)))
        return WreathElement(k, classes, tuple(slot), tuple(exc))
    if base == "vec":
        q = int(arg or 2)
        lam = rng.randrange(1, q)
        for _ in range(100):
            rows = []
            for _ in range(rng.randint(0, 2)):
                u = [rng.randrange(q) for _ in range(rng.randint(1, 4))]
                phi = [rng.randrange(q) for _ in range(rng.randint(1, 4))]
                rows.append((u, phi))
            try:
                return LinearMap.from_rows(q, lam, rows)
            except ValueError:
                continue
        return LinearMap.scalar(q, lam)  # pragma: no cover
    if oracle is None:
        oracle = make_oracle(structure, seed=rng.randrange(1 << 30))
    return LazyAutomorphism.random(oracle, seed=rng.randrange(1 << 30), warmup=rng.randint(0, 4), name=name)


def random_constants(structure: str, names, rng: random.Random, oracle: StructureOracle | None = None) -> dict:
    return {n: random_constant(structure, rng, oracle, n) for n in sorted(names)}


def non_small_constant(structure: str, rng: random.Random, oracle: StructureOracle, name: str = "c"):
    """A constant that is neither small nor slender: shifts on dlo, generic lazy maps otherwise."""
    if structure == "dlo":
        return PLRationalMap.translation(rng.choice((1, 2, Fraction(1, 2), -1)))
    return LazyAutomorphism.random(oracle, seed=rng.randrange(1 << 30), warmup=rng.randint(1, 4), name=name)


# --------------------------------------------------------------------------
# PL homeomorphisms of [0, 1]


def random_plhomeo(rng: random.Random, max_breaks: int = 8, den: int = 64) -> PLHomeo:
    """Random PL homeomorphism with at most ``max_breaks`` interior breakpoints."""
    m = rng.randint(0, max_breaks)
    xs = sorted({Fraction(rng.randrange(1, den), den) for _ in range(m)})
    ys = sorted({Fraction(rng.randrange(1, den), den) for _ in range(len(xs))})
    while len(ys) < len(xs):
        ys = sorted(set(ys) | {Fraction(rng.randrange(1, den), den)})
    return PLHomeo.from_nodes(list(zip(xs, ys)))


def dyadic_bump(p: Fraction, w: Fraction) -> PLHomeo:
    """Slope 2 on [p, p+w], slope 1/2 on [p+w, p+3w], identity elsewhere."""
    return PLHomeo.from_nodes([(p, p), (p + w, p + 2 * w), (p + 3 * w, p + 3 * w)])


def random_half_double(rng: random.Random) -> PLHomeo:
    """PL homeomorphism with all slopes in {1/2, 1, 2}."""
    h = PLHomeo.identity()
    cut = Fraction(rng.randrange(1, 8), 8)
    for lo, hi in ((Fraction(0), cut), (cut, Fraction(1))):
        if rng.random() < 0.6:
            w = (hi - lo) / (3 * rng.randint(1, 3))
            p = lo + (hi - lo - 3 * w) * Fraction(rng.randrange(0, 5), 4)
            b = dyadic_bump(p, w)
            h = h.then(b if rng.random() < 0.5 else b.inverse())
    return h


def case_three_instance(structure: str, rng: random.Random, oracle: StructureOracle, l_max: int = 6, r_max: int = 3):
    """A word with critical indices whose critical constants are not small.

    Closed-form critical blocks are checked with the detector and resampled
    when a product happens to be small (for instance two equal shifts cancel).
    """
    from .automorphisms import UnsupportedRepresentation, is_small
    from .words import classify, resolve_constant

    while True:
        w = random_word(rng, l_max, r_max, "jminus")
        crit = {n for _, c in classify(w).critical for n, _ in c}
        consts = {
            n: non_small_constant(structure, rng, oracle, n) if n in crit else random_constant(structure, rng, oracle, n)
            for n in sorted(w.constant_names())
        }
        ok = True
        for _, c in classify(w).critical:
            try:
                ok = ok and not is_small(resolve_constant(c, consts))
            except UnsupportedRepresentation:
                pass
        if ok:
            return w, consts

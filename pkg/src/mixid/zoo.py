"""Explicit singular mixed identities and their randomized verification.

* ``dlo``: ``[[g1^x, g3], [g2^x, g2]]`` with bumps on (0,1), (2,3), (4,5).
* ``cyclic``: ``[[[g1^x, g4], [g3^x, g5]], [g2^x, g2]]`` with bumps on five
  cyclically ordered disjoint arcs.
* ``cyclic-pm``: the same word at ``x^2``, valid also for orientation
  reversing maps.

Randomized verification is evidence, not proof.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .automorphisms import (
    Automorphism,
    CircleMap,
    Composite,
    LazyAutomorphism,
    PLRationalMap,
    Reflection,
    UnsupportedRepresentation,
    is_small,
)
from .dsl import parse_word
from .structures.dlo import DenseLinearOrder, ccw
from .words import WordWithConstants, classify, const_str, resolve_constant, substitute

EVIDENCE_NOTE = "randomized evidence, not a proof"

DLO_SUPPORTS = ((0, 1), (2, 3), (4, 5))
CYCLIC_ARCS = tuple((Fraction(2 * i, 10), Fraction(2 * i + 1, 10)) for i in range(5))
DLO_WORD = "[[g1^x,g3],[g2^x,g2]]"
CYCLIC_WORD = "[[[g1^x,g4],[g3^x,g5]],[g2^x,g2]]"
CYCLIC_PM_WORD = "[[[g1^(x^2),g4],[g3^(x^2),g5]],[g2^(x^2),g2]]"


@dataclass
class IdentityCandidate:
    name: str
    word: WordWithConstants
    bindings: Mapping[str, Automorphism]
    structure: str  # dlo | cyclic | cyclic-pm
    provenance: str = ""
    notes: list = field(default_factory=list)


def build_dlo_identity() -> IdentityCandidate:
    binds = {f"g{i + 1}": PLRationalMap.bump(a, b) for i, (a, b) in enumerate(DLO_SUPPORTS)}
    return IdentityCandidate("dlo", parse_word(DLO_WORD), binds, "dlo", "interval bumps a1<b1<a2<b2<a3<b3")


def build_cyclic_identities() -> tuple:
    binds = {f"g{i + 1}": CircleMap.bump(a, b) for i, (a, b) in enumerate(CYCLIC_ARCS)}
    w = IdentityCandidate("cyclic", parse_word(CYCLIC_WORD), binds, "cyclic", "five ccw ordered disjoint arcs")
    wpm = IdentityCandidate("cyclic-pm", parse_word(CYCLIC_PM_WORD), binds, "cyclic-pm", "w(x^2)")
    return w, wpm


def build_broken_dlo_candidate() -> IdentityCandidate:
    """The DLO identity with the support of g2 widened to overlap that of g3."""
    cand = build_dlo_identity()
    binds = dict(cand.bindings)
    binds["g2"] = PLRationalMap.bump(2, 6)
    return IdentityCandidate("dlo-broken", cand.word, binds, "dlo", "control: overlapping supports")


def shipped(name: str) -> IdentityCandidate:
    if name == "dlo":
        return build_dlo_identity()
    if name in ("cyclic", "cyclic-pm"):
        w, wpm = build_cyclic_identities()
        return w if name == "cyclic" else wpm
    raise KeyError(f"no shipped identity named {name!r} (dlo, cyclic, cyclic-pm)")


# --------------------------------------------------------------------------
# random automorphisms and points


def _rand_frac(rng: random.Random, lo, hi, den: int = 1000) -> Fraction:
    return Fraction(lo) + Fraction(rng.randrange(1, den * (hi - lo)), den)


def random_pl_map(rng: random.Random, lo=-2, hi=8, nodes: int | None = None) -> PLRationalMap:
    m = nodes or rng.randint(1, 6)
    xs = sorted({_rand_frac(rng, lo, hi) for _ in range(m)})
    ys = sorted({_rand_frac(rng, lo, hi) for _ in range(len(xs))})
    while len(ys) < len(xs):
        ys = sorted(set(ys) | {_rand_frac(rng, lo, hi)})
    return PLRationalMap.from_points(list(zip(xs, ys)))


def random_circle_map(rng: random.Random, nodes: int | None = None) -> CircleMap:
    m = nodes or rng.randint(1, 6)
    xs = sorted({Fraction(rng.randrange(1000), 1000) for _ in range(m)})
    off = Fraction(rng.randrange(1000), 1000)
    ys = sorted({Fraction(rng.randrange(1000), 1000) for _ in range(len(xs))})
    while len(ys) < len(xs):
        ys = sorted(set(ys) | {Fraction(rng.randrange(1000), 1000)})
    return CircleMap(tuple((x, off + y) for x, y in zip(xs, ys)))


def random_assignment(structure: str, r: int, rng: random.Random, lazy: bool = False) -> dict:
    out = {}
    for k in range(1, r + 1):
        if structure == "dlo":
            if lazy:
                oracle = DenseLinearOrder(seed=rng.randrange(1 << 30))
                h = LazyAutomorphism(oracle, seed=rng.randrange(1 << 30), name=f"x{k}")
                for _ in range(4):
                    h.apply(_rand_frac(rng, -2, 8))
                out[k] = h
            else:
                out[k] = random_pl_map(rng)
        elif structure in ("cyclic", "cyclic-pm"):
            g = random_circle_map(rng)
            if structure == "cyclic-pm" and rng.random() < 0.5:
                g = Composite((g, Reflection()))
            out[k] = g
        else:
            raise ValueError(f"randomized verification supports dlo, cyclic, cyclic-pm; not {structure!r}")
    return out


def random_point(structure: str, rng: random.Random) -> Fraction:
    if structure == "dlo":
        return _rand_frac(rng, -2, 8)
    return Fraction(rng.randrange(10_000), 10_000)


def verify_identity(cand: IdentityCandidate, trials: int = 200, points: int = 50, seed: int = 0) -> dict:
    """Evaluate ``cand.word`` at random assignments and points; list violations."""
    if trials < 1 or points < 1:
        raise ValueError("trials and points must be positive")
    violations = []
    seeds = []
    reversing = 0
    for t in range(trials):
        tseed = f"{seed}:{cand.name}:{t}"
        seeds.append(tseed)
        rng = random.Random(tseed)
        lazy = cand.structure == "dlo" and t % 5 == 4
        assignment = random_assignment(cand.structure, cand.word.r, rng, lazy=lazy)
        reversing += any(isinstance(a, Composite) for a in assignment.values())
        wmap = substitute(cand.word, assignment, cand.bindings)
        for _ in range(points):
            p = random_point(cand.structure, rng)
            got = wmap.apply(p)
            if got != p:
                violations.append({"trial": t, "seed": tseed, "point": str(p), "got": str(got)})
    return {
        "candidate": cand.name,
        "word": str(cand.word),
        "structure": cand.structure,
        "trials": trials,
        "points": points,
        "seed": seed,
        "seeds": seeds,
        "orientation_reversing_trials": reversing,
        "violations": violations,
        "singular": cand.word.is_singular(),
        "small_critical_constants": small_critical_constants(cand),
        "note": EVIDENCE_NOTE,
    }


def small_critical_constants(cand: IdentityCandidate) -> list:
    out = []
    for j, c in classify(cand.word).critical:
        try:
            if is_small(resolve_constant(c, cand.bindings)):
                out.append({"index": j, "constant": const_str(c)})
        except UnsupportedRepresentation:
            pass
    return out


# --------------------------------------------------------------------------
# geometry behind the cyclic identity


def in_open_arc(p, arc) -> bool:
    a, b = arc
    return p != a and ccw(a, p) < ccw(a, b)


def arcs_meet(u, v) -> bool:
    """Do the open ccw arcs ``u`` and ``v`` intersect?"""
    return u[0] == v[0] or in_open_arc(v[0], u) or in_open_arc(u[0], v)


def image_arc(g: Automorphism, arc) -> tuple:
    """Image of an open arc under an orientation preserving map."""
    return g.apply(arc[0]), g.apply(arc[1])


def geometric_lemma(g: Automorphism, arcs=CYCLIC_ARCS) -> tuple:
    """``(hypothesis, conclusion)``: I1.g meets I4 and I3.g meets I5; I2.g misses I2."""
    I1, I2, I3, I4, I5 = arcs
    hyp = arcs_meet(image_arc(g, I1), I4) and arcs_meet(image_arc(g, I3), I5)
    concl = not arcs_meet(image_arc(g, I2), I2)
    return hyp, concl


def lemma_sample(rng: random.Random, arcs=CYCLIC_ARCS) -> CircleMap:
    """Random circle map, half of the time forced to satisfy the lemma's hypothesis."""
    if rng.random() < 0.5:
        return random_circle_map(rng)
    I1, _, I3, I4, I5 = arcs

    def inside(arc):
        a, b = arc
        return a + (b - a) * Fraction(rng.randrange(1, 1000), 1000)

    p1, p3, q1, q3 = inside(I1), inside(I3), inside(I4), inside(I5)
    return CircleMap(((p1, q1), (p3, q3)))

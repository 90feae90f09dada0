from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mixid.automorphisms import IDENTITY_MAP, FinitePermutation, PLRationalMap
from mixid.dsl import parse_word
from mixid.words import (
    FreeWord,
    WordWithConstants,
    classify,
    collapse_critical,
    commutator,
    content,
    free_reduce,
    reduce,
    substitute,
    X,
    Y,
)
from oracles import naive_classes, naive_content, naive_reduce
from strategies import letters, raw_items

C1 = ("c1", 1)
C1i = ("c1", -1)
x, xi = (1, 1), (1, -1)


def test_reduce_keeps_reduced_word():
    w = reduce([None, x, C1, xi])
    assert w.length == 2 and w.consts[1] == (C1,)


def test_reduce_cancels_to_identity():
    w = reduce([None, x, C1, xi, None, x, C1i, xi, None])
    assert w.length == 0 and w.letters() == ()
    assert w.emptied


def test_reduce_square():
    w = reduce([None, x, None, x, None])
    assert w.length == 2 and w.eps == (1, 1)


def test_classify_mixed_word():
    w = parse_word("x*c1*x*c2*x^-1*c3*x^-1")
    cls = classify(w)
    assert cls.Jplus == {1, 3} and cls.Jminus == {2} and cls.J0 == set()
    assert cls.critical == ((2, (("c2", 1),)),)


def test_classify_conjugate_and_two_variables():
    assert classify(parse_word("x^-1*c*x")).Jminus == {1}
    assert classify(parse_word("x*c*y")).J0 == {1}


def test_content_examples():
    assert parse_word("[g1^x,g3]").is_singular()
    assert content(parse_word("x*c1*x*c2")) == FreeWord(((1, 1), (1, 1)))
    assert content(parse_word("x^-1*c*x*c'*x")) == FreeWord(((1, 1),))


def test_strong_and_singular_flags():
    assert parse_word("x*c*x").is_strong() and not parse_word("x*c*x").is_singular()
    assert not parse_word("x^-1*c*x").is_strong()


def test_unreduced_construction_rejected():
    with pytest.raises(ValueError):
        WordWithConstants((1, 1), (1, -1), ((), (), ()), 1)


def _size(bindings):
    return lambda c: len(FinitePermutation.from_dict(dict(_perm(c, bindings))).support())


def _perm(c, bindings):
    from mixid.words import resolve_constant

    return resolve_constant(c, bindings).as_dict if c else {}


def test_collapse_single_transposition():
    tau = FinitePermutation.from_cycles([[1, 2]])
    w = parse_word("x^-1*t*x")
    w2, f = collapse_critical(w, lambda c: True, lambda c: len(tau.support()))
    assert w2.length == 0 and f == 2


def test_collapse_strong_word_unchanged():
    w = parse_word("x*c*y*d*x")
    assert collapse_critical(w, lambda c: True, lambda c: 1) == (w, 0)


def test_collapse_keeps_content():
    w = parse_word("x^-1*t*x*c*x")
    w2, f = collapse_critical(w, lambda c: c == (("t", 1),), lambda c: 2)
    assert f == 2 and w2.length == 1 and w2.content() == w.content()
    assert str(w2) == "c * x"


def test_collapse_rejects_noncritical_index():
    with pytest.raises(ValueError):
        collapse_critical(parse_word("x*c*x"), [1], lambda c: 1)


def test_substitute_examples():
    g = PLRationalMap.translation(3)
    assert substitute(parse_word("x"), {1: g}, {}).apply(Fraction(1)) == 4
    c = PLRationalMap.bump(0, 1)
    m = substitute(parse_word("x*c*x"), {1: IDENTITY_MAP}, {"c": c})
    assert all(m.apply(Fraction(k, 7)) == c.apply(Fraction(k, 7)) for k in range(-7, 14))


def test_substitute_unresolved_constant():
    with pytest.raises(KeyError):
        substitute(parse_word("x*c"), {1: IDENTITY_MAP}, {})


def test_commutator_convention():
    assert commutator(X, Y).letters == ((1, 1), (2, 1), (1, -1), (2, -1))


# ---------------------------------------------------------------------------
# properties against the naive oracle


@given(letters)
def test_free_reduce_matches_naive(seq):
    assert free_reduce(seq) == naive_reduce(seq)


@given(raw_items)
def test_reduce_idempotent_and_content(items):
    w = reduce(items)
    assert reduce(w.letters(), w.r) == w
    flat = [t for t in items if t is not None]
    assert w.content().letters == naive_content(flat)
    assert w.length <= sum(1 for t in flat if isinstance(t[0], int))


@given(raw_items)
def test_partition_matches_naive(items):
    w = reduce(items)
    cls = classify(w)
    l = w.length
    assert cls.J0 | cls.Jplus | cls.Jminus == set(range(1, l))
    assert not (cls.J0 & cls.Jplus or cls.J0 & cls.Jminus or cls.Jplus & cls.Jminus)
    assert (set(cls.J0), set(cls.Jplus), set(cls.Jminus)) == naive_classes(w.letters())


@given(raw_items, raw_items)
def test_content_homomorphism(a, b):
    wa, wb = reduce(a), reduce(b)
    assert (wa * wb).content().letters == naive_reduce(wa.content().letters + wb.content().letters)


@given(st.lists(st.tuples(st.integers(1, 3), st.sampled_from(("a", "b", ""))), min_size=1, max_size=10))
def test_strong_words_are_nonsingular(spec):
    # build a strong word: every repeated variable keeps its sign
    iota = [i for i, _ in spec]
    eps, consts = [], [()]
    for j, (i, name) in enumerate(spec):
        eps.append(eps[-1] if j and iota[j - 1] == i else (1 if (i + j) % 2 else -1))
        consts.append(((name, 1),) if name else ())
    w = WordWithConstants(tuple(iota), tuple(eps), tuple(consts), 3)
    assert w.is_strong() and not w.is_singular()


@given(raw_items)
def test_collapse_properties(items):
    w = reduce(items)
    w2, f = collapse_critical(w, lambda c: len(c) == 1, lambda c: 2)
    assert w2.content() == w.content()
    assert w2.length <= w.length and f % 2 == 0
    assert all(len(c) != 1 for _, c in classify(w2).critical)


@given(raw_items)
def test_json_round_trip(items):
    w = reduce(items)
    assert WordWithConstants.from_json(w.to_json()) == w

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mixid.automorphisms import (
    IDENTITY_MAP,
    INFINITE,
    CircleMap,
    Composite,
    ContractViolation,
    EventuallyPeriodic,
    FinitePermutation,
    LazyAutomorphism,
    LinearMap,
    PartialIso,
    PLRationalMap,
    Reflection,
    UnsupportedRepresentation,
    WreathElement,
    compose,
    compose_all,
    invert,
    is_slender,
    is_small,
    support_size,
)
from mixid.generators import random_constant
from mixid.structures import make_oracle
from mixid.zoo import random_pl_map
from oracles import perm_compose, perm_inverse

F = Fraction
DOUBLE_POS = PLRationalMap(((None, 1, 0), (0, 2, 0)))
STRUCTS = ["set", "dlo", "rado", "eqrel:3", "poset", "perm2", "cyclic", "vec:3"]


def test_transposition():
    tau = FinitePermutation.from_cycles([[1, 2]])
    assert tau.apply(1) == 2 and tau.apply(5) == 5
    assert is_small(tau) and is_slender(tau)
    assert support_size(tau) == 2
    assert compose(tau, tau).apply(1) == 1 and support_size(compose(tau, tau)) == 0


def test_three_cycle_support():
    assert support_size(FinitePermutation.from_cycles([[1, 2, 3]])) == 3


def test_finite_permutation_against_naive_dicts():
    rng = random.Random(1)
    for _ in range(200):
        a = FinitePermutation.from_cycles([rng.sample(range(12), rng.randint(2, 5))])
        b = FinitePermutation.from_cycles([rng.sample(range(12), rng.randint(2, 5))])
        assert compose(a, b).as_dict == perm_compose(a.as_dict, b.as_dict)
        assert invert(a).as_dict == perm_inverse(a.as_dict)


def test_pl_doubling():
    assert DOUBLE_POS.apply(3) == 6 and DOUBLE_POS.apply(-3) == -3
    assert invert(DOUBLE_POS).apply(6) == 3
    assert support_size(DOUBLE_POS) == INFINITE
    assert is_small(DOUBLE_POS)


def test_translation_not_small():
    assert not is_small(PLRationalMap.translation(1))
    assert is_small(IDENTITY_MAP) and support_size(IDENTITY_MAP) == 0


def test_lazy_is_undecidable():
    h = LazyAutomorphism(make_oracle("dlo"), seed=3)
    with pytest.raises(UnsupportedRepresentation):
        is_small(h)


def test_lazy_determinism():
    o = make_oracle("dlo", seed=2)
    h = LazyAutomorphism(o, seed=9)
    assert h.apply(F(5)) == h.apply(F(5))
    h2 = LazyAutomorphism(make_oracle("dlo", seed=2), seed=9)
    assert h2.apply(F(5)) == h.apply(F(5))


def test_partial_iso_rejects_bad_types():
    o = make_oracle("dlo")
    with pytest.raises(ContractViolation):
        PartialIso(o, [F(1), F(2)], [F(2), F(1)])
    p = PartialIso(o, [F(1)], [F(4)])
    with pytest.raises(ContractViolation):
        p.extend(F(2), F(3))


def test_linear_examples():
    two = LinearMap.scalar(3, 2)
    assert is_slender(two) and two.rank_minus(2) == 0
    assert two.apply((1, 2)) == (2, 1)
    rank_one = LinearMap.from_rows(3, 1, [([1], [0, 1])])
    assert is_slender(rank_one) and rank_one.rank_minus(1) == 1
    assert rank_one.apply((0, 1)) == (1, 1)


def test_linear_composition_stays_closed_form():
    a = LinearMap.from_rows(5, 2, [([1, 1], [0, 1])])
    b = LinearMap.from_rows(5, 3, [([0, 0, 1], [1])])
    ab = compose(a, b)
    assert isinstance(ab, LinearMap) and ab.lam == 1
    for v in [(1,), (0, 1), (0, 0, 1), (2, 3, 4, 1)]:
        assert ab.apply(v) == b.apply(a.apply(v))


def test_wreath_shift_not_slender():
    w = WreathElement(2, EventuallyPeriodic.shift_pairs(0), (0, 1), ())
    assert not is_slender(w) and not is_small(w)
    fin = WreathElement(2, FinitePermutation.from_cycles([[0, 1]]), (0, 1), ((5, (1, 0)),))
    assert is_slender(fin) and is_small(fin)
    assert support_size(fin) == 2 * 2 + 2


def test_circle_rotation_not_small():
    assert not is_small(CircleMap.rotation(F(1, 3)))
    assert is_small(CircleMap.bump(F(1, 10), F(2, 10)))


def test_reflection_involution():
    r = Reflection()
    for k in range(10):
        t = F(k, 10)
        assert r.apply(r.apply(t)) == t


@given(st.integers(0, 2**32))
def test_conjugate_support(seed):
    rng = random.Random(seed)
    a = F(rng.randrange(-20, 20), 4)
    h = PLRationalMap.bump(a, a + F(rng.randint(1, 8), 4))
    g = random_pl_map(rng)
    conj = compose_all([invert(g), h, g])
    want = [(g.apply(lo), g.apply(hi)) for lo, hi in h.support_intervals()]
    assert conj.support_intervals() == want


@given(st.integers(0, 2**32))
def test_disjoint_supports_commute(seed):
    rng = random.Random(seed)
    a = F(rng.randrange(-20, 20), 4)
    w1, gap, w2 = (F(rng.randint(1, 8), 4) for _ in range(3))
    g = PLRationalMap.bump(a, a + w1)
    h = PLRationalMap.bump(a + w1 + gap, a + w1 + gap + w2)
    comm = compose_all([g, h, invert(g), invert(h)])
    for _ in range(50):
        t = F(rng.randrange(-200, 400), 8)
        assert comm.apply(t) == t


@pytest.mark.parametrize("name", STRUCTS)
def test_group_axioms_fuzz(name):
    """10^4 (point, automorphism) samples: inverse, associativity of application."""
    rng = random.Random(f"axioms:{name}")
    o = make_oracle(name, seed=7)
    maps = [random_constant(name, rng, o, f"c{i}") for i in range(6)]
    pts = [o.sample(nonce=f"p{i}") for i in range(20)]
    count = 0
    while count < 10_000:
        a, b = rng.choice(maps), rng.choice(maps)
        ab = compose(a, b)
        for p in pts:
            assert a.apply_inverse(a.apply(p)) == p
            assert invert(a).apply(a.apply(p)) == p
            assert ab.apply(p) == b.apply(a.apply(p))
            assert invert(ab).apply(ab.apply(p)) == p
            count += 1


@pytest.mark.parametrize("name", ["dlo", "rado", "poset", "perm2", "eqrel:3", "vec:2"])
@settings(max_examples=20)
@given(seed=st.integers(0, 2**20))
def test_back_and_forth_soundness(name, seed):
    o = make_oracle(name, seed=seed)
    h = LazyAutomorphism.random(o, seed=seed, warmup=3)
    for i in range(6):
        p = o.sample(nonce=f"q{i}")
        h.apply(p) if i % 2 else h.apply_inverse(p)
    d, r = zip(*h.graph())
    assert o.same_type(d, r)
    assert all(h.apply(h.apply_inverse(x)) == x for x in r)


@pytest.mark.parametrize("name", ["set", "dlo", "cyclic"])
def test_slender_equals_small_without_algebraicity(name):
    rng = random.Random(name)
    for _ in range(100):
        c = random_constant(name, rng)
        assert is_slender(c) == is_small(c)


def test_composite_inverse():
    c = Composite((PLRationalMap.translation(1), DOUBLE_POS))
    assert c.inverse().apply(c.apply(F(7, 3))) == F(7, 3)

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mixid.dsl import parse_word
from mixid.generators import dyadic_bump, random_half_double, random_plhomeo
from mixid.germs import (
    ContentMismatch,
    Germ,
    Inconclusive,
    LaurentPoly,
    NonvanishingWitness,
    PLHomeo,
    SingularInput,
    alpha,
    cocycle_holds_at,
    commutator_bound,
    evaluate_pl_word,
    exponent_chain,
    germ_of_word,
    nonvanishing_witness,
    numeric_germ_log,
    onevar_bound,
    pl_compose,
    pl_invert,
)
from mixid.words import FreeWord, commutator, free_reduce
from oracles import eval_pl_nodes, laurent_eval
from strategies import free_letters

F = Fraction
PAT = "h1*x*h2*y*h3*x^-1*h4*y^-1"


def power(v, n):
    return FreeWord(((v, 1 if n > 0 else -1),) * abs(n))


def fw(text):
    return parse_word(text).content()


def test_commutator_germ():
    g = germ_of_word(fw("[x,y]"))
    assert g.e == 0 and g.P.as_dict() == {-1: 1, 0: -1}
    assert str(g.P) == "X^-1 - X^0"


def test_power_commutator_germ():
    assert str(germ_of_word(fw("[x^2,y^3]")).P) == "3*X^-2 - 3*X^0"


def test_single_variable_germ():
    g = germ_of_word(fw("x"))
    assert g.e == 1 and g.P.is_zero()


@pytest.mark.parametrize("n", [k for k in range(-5, 6) if k])
@pytest.mark.parametrize("m", [k for k in range(-5, 6) if k])
def test_germ_formula(n, m):
    u = commutator(power(1, n), power(2, m))
    assert germ_of_word(u) == Germ(0, LaurentPoly({-n: m, 0: -m}.items()))


def test_numeric_cross_check():
    kappa, lam, t = 2.0, 3.0, 1e-6
    for n in (1, 2, -3):
        for m in (1, -2, 4):
            u = commutator(power(1, n), power(2, m))
            want = numeric_germ_log(u, kappa, lam, t)
            got = germ_of_word(u).log_value(math.log(t), kappa, lam)
            assert math.isclose(got, want, rel_tol=1e-6)


@given(free_letters, st.sampled_from([(2.0, 3.0), (0.5, 5.0), (3.0, 0.5)]), st.sampled_from([1e-4, 1e-6, 1e-8]))
def test_germ_matches_numeric_composition(a, kl, t):
    u = FreeWord(free_reduce(a[:12]))
    kappa, lam = kl
    got = germ_of_word(u).log_value(math.log(t), kappa, lam)
    want = numeric_germ_log(u, kappa, lam, t)
    assert math.isclose(got, want, rel_tol=1e-6, abs_tol=1e-9)


@given(free_letters, free_letters)
def test_germ_composition_law(a, b):
    u, v = FreeWord(free_reduce(a)), FreeWord(free_reduce(b))
    assert germ_of_word(u * v) == germ_of_word(u).then(germ_of_word(v))
    assert germ_of_word(u.inverse()) == germ_of_word(u).inverse()


@given(free_letters, free_letters, free_letters, free_letters)
def test_alpha_is_a_homomorphism(a, b, c, d):
    u = commutator(FreeWord(free_reduce(a)), FreeWord(free_reduce(b)))
    v = commutator(FreeWord(free_reduce(c)), FreeWord(free_reduce(d)))
    assert alpha(u * v) == alpha(u) + alpha(v)


def test_alpha_rejects_non_commutator():
    with pytest.raises(ContentMismatch):
        alpha(fw("x*y"))


def test_nonvanishing_examples():
    w = nonvanishing_witness(fw("[x,y]"))
    assert isinstance(w, NonvanishingWitness)
    assert w.kappa == 2 and w.value == F(-1, 2)
    assert isinstance(nonvanishing_witness(fw("[[x,y],[x,y^2]]")), Inconclusive)
    assert isinstance(nonvanishing_witness(FreeWord(())), Inconclusive)


@given(free_letters, free_letters)
def test_witness_value_is_exact(a, b):
    u = commutator(FreeWord(free_reduce(a)), FreeWord(free_reduce(b)))
    res = nonvanishing_witness(u)
    if isinstance(res, NonvanishingWitness):
        assert laurent_eval(res.P.as_dict(), res.kappa) == res.value != 0


# --------------------------------------------------------------------------
# PL homeomorphisms and the cocycle


def test_g_lambda_two():
    g = PLHomeo.g_lambda(2)
    assert g.breaks == (0, F(1, 4), 1) and g.values == (0, F(1, 2), 1)
    assert g(F(1, 8)) == F(1, 4)
    t = F(3, 5)
    assert g(t) == (1 + t - F(1, 2)) / F(3, 2)


def test_compose_with_inverse_is_identity():
    a = dyadic_bump(F(1, 8), F(1, 16))
    assert pl_compose(a, pl_invert(a)).is_identity()


def test_invalid_homeomorphisms():
    with pytest.raises(ValueError):
        PLHomeo((0, F(1, 2), 1), (0, F(1, 2), F(1, 2)))
    with pytest.raises(ValueError):
        PLHomeo((0, 1), (F(1, 3), 1))


def test_evaluation_matches_naive_interpolation():
    rng = random.Random(3)
    for _ in range(50):
        a = random_plhomeo(rng)
        nodes = list(zip(a.breaks, a.values))
        for k in range(17):
            t = F(k, 16)
            assert a(t) == eval_pl_nodes(nodes, t)


def test_cocycle_at_hundred_points():
    rng = random.Random(11)
    a, b = random_plhomeo(rng), random_plhomeo(rng)
    assert all(cocycle_holds_at(a, b, F(k, 101)) for k in range(100))


@settings(max_examples=500)
@given(st.integers(0, 2**32))
def test_cocycle_fuzz(seed):
    rng = random.Random(seed)
    a, b = random_plhomeo(rng), random_plhomeo(rng)
    pts = set(a.breaks) | {pl_invert(a)(x) for x in b.breaks} | {F(rng.randrange(0, 97), 97)}
    assert all(cocycle_holds_at(a, b, t) for t in pts if t < 1)


# --------------------------------------------------------------------------
# one variable and the commutator bound


def test_onevar_identity_constant():
    res = onevar_bound(parse_word("x*c*x"), {"c": PLHomeo.identity()})
    assert res.lam == 2 and res.slope_at_zero == 4 and res.M == 1
    assert res.image != res.point


def test_onevar_half_double_constant():
    c = dyadic_bump(F(0), F(1, 8))
    res = onevar_bound(parse_word("x*c*x"), {"c": c})
    assert res.M == 2 and res.lam == 3 and res.threshold_respected()
    assert res.slope_at_zero >= F(9, 2)


def test_onevar_singular():
    with pytest.raises(SingularInput):
        onevar_bound(parse_word("x*c*x^-1"), {"c": PLHomeo.identity()})


@given(st.integers(0, 2**32))
def test_onevar_witness_moves_point(seed):
    rng = random.Random(seed)
    from mixid.generators import random_onevar_word

    w = random_onevar_word(rng)
    consts = {n: random_half_double(rng) for n in ("h1", "h2", "h3")}
    res = onevar_bound(w, consts)
    assert res.threshold_respected()
    g = PLHomeo.g_lambda(res.lam)
    full = evaluate_pl_word(w, {1: g.inverse() if res.used_inverse else g}, consts)
    assert full(res.point) == res.image != res.point


def test_commutator_chain_and_lambda():
    w = parse_word(PAT)
    assert exponent_chain(w) == [F(1, 2), F(3, 2), F(5, 2), 5, 6]
    half = dyadic_bump(F(0), F(1, 16)).inverse()
    res = commutator_bound(w, {f"h{i}": half for i in range(1, 5)}, F(1, 2))
    assert res.E == 6 and res.lam == 65 and res.verified
    assert res.lower > res.t0


def test_commutator_eta_one():
    w = parse_word(PAT)
    res = commutator_bound(w, {f"h{i}": PLHomeo.identity() for i in range(1, 5)}, 1)
    assert res.lam == 2 and res.verified


def test_commutator_wrong_content():
    with pytest.raises(ContentMismatch):
        commutator_bound(parse_word("h1*x*y"), {"h1": PLHomeo.identity()}, 1)

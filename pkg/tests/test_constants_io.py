import json
import random
from fractions import Fraction

import pytest

from mixid.automorphisms import IDENTITY_MAP, FinitePermutation, LazyAutomorphism
from mixid.constants_io import (
    KINDS,
    ConstantsError,
    build_constant,
    dump_constant,
    dump_constants,
    load_constants,
    rat,
)
from mixid.germs import PLHomeo
from mixid.structures import make_oracle

F = Fraction

SPECS = {
    "identity": {"kind": "identity"},
    "perm": {"kind": "perm", "cycles": [[1, 2, 3]]},
    "periodic": {"kind": "periodic", "head": [0, 1], "period": 2, "block": [1, 0]},
    "pl": {"kind": "pl", "pieces": [["-inf", "1", "0"], ["0", "2", "0"]]},
    "pl-points": {"kind": "pl-points", "points": [["0", "0"], ["1", "3"]]},
    "translation": {"kind": "translation", "by": "1/2"},
    "bump": {"kind": "bump", "a": 0, "b": 1},
    "circle": {"kind": "circle", "nodes": [["1/4", "1/2"]]},
    "circle-bump": {"kind": "circle-bump", "a": "1/10", "b": "2/10"},
    "rotation": {"kind": "rotation", "by": "1/3"},
    "reflection": {"kind": "reflection"},
    "wreath": {
        "kind": "wreath",
        "k": 2,
        "classes": {"kind": "perm", "cycles": [[0, 1]]},
        "default": [1, 0],
        "exceptions": [[5, [0, 1]]],
    },
    "linear": {"kind": "linear", "q": 3, "lam": 1, "rows": [[[1], [0, 1]]]},
    "scalar": {"kind": "scalar", "q": 5, "lam": 2},
    "coordperm": {"kind": "coordperm", "q": 2, "perm": {"kind": "perm", "cycles": [[0, 1]]}},
    "plhomeo": {"kind": "plhomeo", "nodes": [["1/4", "1/8"]]},
}
PROBES = {
    "pl": [F(-1), F(3)],
    "pl-points": [F(1, 2), F(5)],
    "translation": [F(0)],
    "bump": [F(1, 3), F(2)],
    "circle": [F(1, 8), F(1, 2)],
    "circle-bump": [F(3, 20), F(1, 2)],
    "rotation": [F(0), F(5, 6)],
    "reflection": [F(1, 4)],
    "perm": [1, 2, 7],
    "periodic": [0, 5],
    "wreath": [(0, 0), (5, 1), (7, 0)],
    "linear": [(0, 1), (1, 1, 1)],
    "scalar": [(1, 3)],
    "coordperm": [(1,), (0, 1, 1)],
    "plhomeo": [F(1, 8), F(3, 4)],
}


def test_every_kind_is_covered():
    assert set(SPECS) | {"lazy"} == set(KINDS)


@pytest.mark.parametrize("kind", sorted(SPECS))
def test_round_trip(kind):
    c = build_constant(SPECS[kind])
    back = build_constant(json.loads(json.dumps(dump_constant(c))))
    for p in PROBES.get(kind, []):
        assert back.apply(p) == c.apply(p) if not isinstance(c, PLHomeo) else back(p) == c(p)


def test_examples_evaluate():
    consts = load_constants(json.dumps({k: SPECS[k] for k in ("perm", "pl", "linear")}))
    assert consts["perm"].apply(1) == 2
    assert consts["pl"].apply(F(3)) == 6
    assert consts["linear"].apply((0, 1)) == (1, 1)
    assert build_constant(SPECS["identity"]) is IDENTITY_MAP


def test_rationals():
    assert rat("3/4") == F(3, 4) and rat(2) == 2 and rat(0.5) == F(1, 2)
    for bad in ("x", True, "1/0", None):
        with pytest.raises(ConstantsError):
            rat(bad)


@pytest.mark.parametrize(
    "spec",
    [
        {},
        {"kind": "nope"},
        {"kind": "perm"},
        {"kind": "pl", "pieces": [["0", "-1", "0"]]},
        {"kind": "linear", "q": 4, "lam": 1},
        {"kind": "plhomeo", "nodes": [["1/2", "2"]]},
        {"kind": "lazy", "seed": 1},
        [1, 2],
    ],
)
def test_bad_specs(spec):
    with pytest.raises(ConstantsError):
        build_constant(spec)


def test_load_rejects_non_objects(tmp_path):
    with pytest.raises(ConstantsError):
        load_constants("[1, 2]")
    with pytest.raises(ConstantsError):
        load_constants("{not json")
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"t": {"kind": "perm", "cycles": [[1, 2]]}}))
    assert isinstance(load_constants(path)["t"], FinitePermutation)
    assert isinstance(load_constants(str(path))["t"], FinitePermutation)


def test_lazy_replays_on_another_seed():
    o = make_oracle("rado", seed=1)
    h = LazyAutomorphism.random(o, seed=4, warmup=5, name="h")
    blob = dump_constants({"h": h}, o)
    o2 = make_oracle("rado", seed=1)
    h2 = load_constants(blob, o2)["h"]
    assert h2.graph() == h.graph()


def test_lazy_parses_point_tokens():
    o = make_oracle("dlo")
    h = build_constant({"kind": "lazy", "seed": 2, "graph": [["0", "1"], ["1", "5/2"]]}, o)
    assert h.apply(F(1)) == F(5, 2)
    with pytest.raises(ConstantsError):
        build_constant({"kind": "lazy", "graph": [["0", "1"], ["1", "-3"]]}, o)


def test_random_dumps_reload():
    from mixid.generators import random_constant

    rng = random.Random(8)
    for name in ("set", "dlo", "cyclic", "eqrel:2", "vec:3"):
        for _ in range(20):
            c = random_constant(name, rng)
            back = build_constant(dump_constant(c))
            o = make_oracle(name, seed=1)
            for i in range(5):
                p = o.sample(nonce=i)
                assert back.apply(p) == c.apply(p)

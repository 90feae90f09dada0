"""Constant definition files.

A constants file is a JSON object mapping names to closed forms, e.g.::

    {
      "c":  {"kind": "perm", "cycles": [[1, 2]]},
      "g1": {"kind": "bump", "a": "0", "b": "1"},
      "h":  {"kind": "pl", "pieces": [["-inf", "1", "0"], ["0", "2", "0"]]},
      "s":  {"kind": "linear", "q": 3, "lam": 1, "rows": [[[1], [0, 1]]]},
      "k":  {"kind": "plhomeo", "nodes": [["1/4", "1/8"]]}
    }

Rationals are ints or strings ``"p/q"``.  ``lazy`` constants need an oracle.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Mapping

from .automorphisms import (
    IDENTITY_MAP,
    CircleMap,
    CoordinatePermutation,
    EventuallyPeriodic,
    FinitePermutation,
    LazyAutomorphism,
    LinearMap,
    PartialIso,
    PLRationalMap,
    Reflection,
    WreathElement,
)
from .germs import PLHomeo
from .structures.base import ContractViolation, StructureOracle

KINDS = (
    "identity",
    "perm",
    "periodic",
    "pl",
    "pl-points",
    "translation",
    "bump",
    "circle",
    "circle-bump",
    "rotation",
    "reflection",
    "wreath",
    "linear",
    "scalar",
    "coordperm",
    "lazy",
    "plhomeo",
)


class ConstantsError(ValueError):
    pass


def rat(v) -> Fraction:
    if isinstance(v, bool):
        raise ConstantsError(f"not a rational: {v!r}")
    try:
        return Fraction(v) if not isinstance(v, float) else Fraction(str(v))
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ConstantsError(f"not a rational: {v!r}") from exc


def rat_str(q: Fraction) -> str:
    return str(Fraction(q))


def _point(v, oracle: StructureOracle | None):
    if oracle is not None and isinstance(v, str):
        return oracle.parse_point(v)
    if isinstance(v, list):
        return tuple(v)
    return v


def _need(spec: Mapping, *keys):
    missing = [k for k in keys if k not in spec]
    if missing:
        raise ConstantsError(f"{spec.get('kind')!r} constant lacks {', '.join(missing)}")


def build_constant(spec: Mapping, oracle: StructureOracle | None = None, name: str = "c"):
    """Build one automorphism (or PLHomeo) from its JSON description."""
    if not isinstance(spec, Mapping) or "kind" not in spec:
        raise ConstantsError(f"constant {name!r} must be an object with a 'kind'")
    kind = spec["kind"]
    try:
        if kind == "identity":
            return IDENTITY_MAP
        if kind == "perm":
            _need(spec, "cycles")
            return FinitePermutation.from_cycles([[_point(p, oracle) for p in cyc] for cyc in spec["cycles"]])
        if kind == "periodic":
            _need(spec, "head", "period", "block")
            return EventuallyPeriodic(tuple(spec["head"]), int(spec["period"]), tuple(spec["block"]))
        if kind == "pl":
            _need(spec, "pieces")
            pieces = []
            for s, m, c in spec["pieces"]:
                pieces.append((None if s in (None, "-inf") else rat(s), rat(m), rat(c)))
            return PLRationalMap(tuple(pieces))
        if kind == "pl-points":
            _need(spec, "points")
            return PLRationalMap.from_points([(rat(x), rat(y)) for x, y in spec["points"]])
        if kind == "translation":
            _need(spec, "by")
            return PLRationalMap.translation(rat(spec["by"]))
        if kind == "bump":
            _need(spec, "a", "b")
            return PLRationalMap.bump(rat(spec["a"]), rat(spec["b"]), rat(spec.get("push", "1/4")))
        if kind == "circle":
            _need(spec, "nodes")
            return CircleMap(tuple((rat(x), rat(y)) for x, y in spec["nodes"]))
        if kind == "circle-bump":
            _need(spec, "a", "b")
            return CircleMap.bump(rat(spec["a"]), rat(spec["b"]), rat(spec.get("push", "1/4")))
        if kind == "rotation":
            _need(spec, "by")
            return CircleMap.rotation(rat(spec["by"]))
        if kind == "reflection":
            return Reflection()
        if kind == "wreath":
            _need(spec, "k")
            classes = build_constant(spec.get("classes", {"kind": "identity"}), None, name)
            exc = tuple((int(c), tuple(p)) for c, p in spec.get("exceptions", []))
            return WreathElement(int(spec["k"]), classes, tuple(spec.get("default", ())), exc)
        if kind == "linear":
            _need(spec, "q", "lam")
            rows = [(list(u), list(phi)) for u, phi in spec.get("rows", [])]
            return LinearMap.from_rows(int(spec["q"]), int(spec["lam"]), rows)
        if kind == "scalar":
            _need(spec, "q", "lam")
            return LinearMap.scalar(int(spec["q"]), int(spec["lam"]))
        if kind == "coordperm":
            _need(spec, "q", "perm")
            return CoordinatePermutation(int(spec["q"]), build_constant(spec["perm"], None, name))
        if kind == "lazy":
            if oracle is None:
                raise ConstantsError(f"lazy constant {name!r} needs a structure")
            h = LazyAutomorphism(oracle, seed=spec.get("seed", 0), name=name)
            for a, b in spec.get("graph", []):
                PartialIso(oracle, h.dom + [_point(a, oracle)], h.rng + [_point(b, oracle)])
                h._record(_point(a, oracle), _point(b, oracle))
            for i in range(int(spec.get("warmup", 0))):
                h.apply(oracle.sample(avoid=set(h.dom), nonce=f"warm:{name}:{h.seed}:{i}"))
            return h
        if kind == "plhomeo":
            _need(spec, "nodes")
            return PLHomeo.from_nodes([(rat(a), rat(b)) for a, b in spec["nodes"]])
    except ConstantsError:
        raise
    except (ValueError, TypeError, KeyError, ContractViolation) as exc:
        raise ConstantsError(f"constant {name!r}: {exc}") from exc
    raise ConstantsError(f"constant {name!r} has unknown kind {kind!r}; known: {', '.join(KINDS)}")


def load_constants(data, oracle: StructureOracle | None = None) -> dict:
    """Parse a constants mapping from a dict, JSON text or a file path."""
    if isinstance(data, Path) or (isinstance(data, str) and not data.lstrip().startswith(("{", "["))):
        try:
            data = Path(data).read_text()
        except OSError as exc:
            raise ConstantsError(f"cannot read constants file: {exc}") from exc
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ConstantsError(f"constants file is not valid JSON: {exc}") from exc
    if not isinstance(data, Mapping):
        raise ConstantsError("constants file must hold a JSON object")
    return {name: build_constant(spec, oracle, name) for name, spec in sorted(data.items())}


def dump_constant(c, oracle: StructureOracle | None = None) -> dict:
    """Inverse of :func:`build_constant` for the closed forms."""
    fmt = oracle.format_point if oracle is not None else (lambda p: p)
    if c is IDENTITY_MAP:
        return {"kind": "identity"}
    if isinstance(c, FinitePermutation):
        return {"kind": "perm", "cycles": [[fmt(p) for p in cyc] for cyc in c.cycles()]}
    if isinstance(c, EventuallyPeriodic):
        return {"kind": "periodic", "head": list(c.head), "period": c.period, "block": list(c.block)}
    if isinstance(c, PLRationalMap):
        return {
            "kind": "pl",
            "pieces": [["-inf" if s is None else rat_str(s), rat_str(m), rat_str(b)] for s, m, b in c.pieces],
        }
    if isinstance(c, CircleMap):
        return {"kind": "circle", "nodes": [[rat_str(x), rat_str(y)] for x, y in c.nodes]}
    if isinstance(c, Reflection):
        return {"kind": "reflection"}
    if isinstance(c, WreathElement):
        return {
            "kind": "wreath",
            "k": c.k,
            "classes": dump_constant(c.classes),
            "default": list(c.default),
            "exceptions": [[cl, list(p)] for cl, p in c.exceptions],
        }
    if isinstance(c, LinearMap):
        # one row per block coordinate: (A - lam) e_i recorded as u = column, phi = e_i
        rows = []
        for j, cj in enumerate(c.coords):
            u = [0] * (c.coords[-1] + 1)
            for i, ci in enumerate(c.coords):
                u[ci] = (c.matrix[i][j] - (c.lam if i == j else 0)) % c.q
            if any(u):
                phi = [0] * (cj + 1)
                phi[cj] = 1
                rows.append([u, phi])
        return {"kind": "linear", "q": c.q, "lam": c.lam, "rows": rows}
    if isinstance(c, CoordinatePermutation):
        return {"kind": "coordperm", "q": c.q, "perm": dump_constant(c.perm)}
    if isinstance(c, LazyAutomorphism):
        return {
            "kind": "lazy",
            "seed": c.seed,
            "graph": [[c.oracle.format_point(a), c.oracle.format_point(b)] for a, b in c.graph()],
        }
    if isinstance(c, PLHomeo):
        return {"kind": "plhomeo", "nodes": c.to_json()}
    raise ConstantsError(f"cannot serialize {type(c).__name__}")


def dump_constants(constants: Mapping, oracle: StructureOracle | None = None) -> dict:
    return {name: dump_constant(c, oracle) for name, c in sorted(constants.items())}

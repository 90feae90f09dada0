"""Concrete homogeneous structures behind a common oracle interface."""

from __future__ import annotations

from .base import ContractViolation, ExhaustedSearch, StructureOracle
from .dlo import CyclicOrder, DenseLinearOrder
from .eqrel import EquivalenceK
from .perm2 import RandomPermutation
from .poset import RandomPoset
from .pure import PureSet
from .rado import RadoGraph
from .vector import VectorSpace

STRUCTURES = ("set", "dlo", "rado", "eqrel:k", "poset", "perm2", "cyclic", "vec:q")

_SIMPLE = {
    "set": PureSet,
    "dlo": DenseLinearOrder,
    "rado": RadoGraph,
    "poset": RandomPoset,
    "perm2": RandomPermutation,
    "cyclic": CyclicOrder,
}


def make_oracle(name: str, seed: int = 0, max_candidates: int = 10_000) -> StructureOracle:
    """Oracle for a structure name such as ``dlo``, ``eqrel:3`` or ``vec:5``."""
    base, _, arg = name.partition(":")
    if base in _SIMPLE and not arg:
        return _SIMPLE[base](seed=seed, max_candidates=max_candidates)
    if base == "eqrel":
        return EquivalenceK(int(arg or 2), seed=seed, max_candidates=max_candidates)
    if base == "vec":
        return VectorSpace(int(arg or 2), seed=seed, max_candidates=max_candidates)
    raise ValueError(f"unknown structure {name!r}; choose from {', '.join(STRUCTURES)}")


__all__ = [
    "ContractViolation",
    "CyclicOrder",
    "DenseLinearOrder",
    "EquivalenceK",
    "ExhaustedSearch",
    "PureSet",
    "RadoGraph",
    "RandomPermutation",
    "RandomPoset",
    "STRUCTURES",
    "StructureOracle",
    "VectorSpace",
    "make_oracle",
]

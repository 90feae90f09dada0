"""Words with constants in G * F_r.

A word is kept in alternating normal form

    c_0 x_{i(1)}^{e(1)} c_1 ... x_{i(l)}^{e(l)} c_l

where every constant c_j is a *symbolic* product of named constants, stored as
a freely reduced tuple of ``(name, +-1)`` letters.  The empty tuple is the
identity.  Variables are letters ``(index, +-1)`` with ``index >= 1``.

Treating constant names as free generators means reduction is plain free
reduction over the joint alphabet; the only constant recognised as central
is the literal identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence, Union

Letter = tuple  # (int, +-1) for variables, (str, +-1) for constant names
Const = tuple  # freely reduced tuple of constant-name letters

IDENTITY: Const = ()


def is_var(letter: Letter) -> bool:
    return isinstance(letter[0], int)


def var(index: int, exp: int = 1) -> Letter:
    if index < 1 or exp not in (1, -1):
        raise ValueError(f"bad variable letter ({index}, {exp})")
    return (index, exp)


def const(name: str, exp: int = 1) -> Const:
    if exp not in (1, -1):
        raise ValueError("constant exponent must be +-1")
    return ((name, exp),)


def free_reduce(letters: Iterable[Letter]) -> tuple:
    out: list = []
    for g, e in letters:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def invert_letters(letters: Sequence[Letter]) -> tuple:
    return tuple((g, -e) for g, e in reversed(letters))


def const_str(c: Const) -> str:
    if not c:
        return "1"
    return " * ".join(n if e == 1 else f"{n}^-1" for n, e in c)


def _var_name(i: int) -> str:
    return {1: "x", 2: "y", 3: "z"}.get(i, f"x{i}")


# --------------------------------------------------------------------------
# free words (content)


@dataclass(frozen=True)
class FreeWord:
    """Freely reduced element of F_r as a tuple of ``(variable, +-1)``."""

    letters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", free_reduce(self.letters))

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return FreeWord(self.letters + other.letters)

    def inverse(self) -> "FreeWord":
        return FreeWord(invert_letters(self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def abelianization(self, r: int | None = None) -> tuple:
        r = r or max((g for g, _ in self.letters), default=0)
        v = [0] * r
        for g, e in self.letters:
            v[g - 1] += e
        return tuple(v)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " * ".join(
            _var_name(g) if e == 1 else f"{_var_name(g)}^-1" for g, e in self.letters
        )

    @classmethod
    def parse(cls, pairs: Iterable) -> "FreeWord":
        return cls(tuple((int(g), int(e)) for g, e in pairs))


def commutator(a: FreeWord, b: FreeWord) -> FreeWord:
    """[a, b] = a b a^-1 b^-1."""
    return a * b * a.inverse() * b.inverse()


X = FreeWord(((1, 1),))
Y = FreeWord(((2, 1),))


# --------------------------------------------------------------------------
# words with constants


@dataclass(frozen=True)
class IndexClassification:
    J0: frozenset
    Jplus: frozenset
    Jminus: frozenset
    critical: tuple  # (index, constant) for index in Jminus, ascending


@dataclass(frozen=True)
class WordWithConstants:
    iota: tuple
    eps: tuple
    consts: tuple
    r: int = 1
    emptied: bool = field(default=False, compare=False)

    def __post_init__(self):
        l = len(self.iota)
        if len(self.eps) != l or len(self.consts) != l + 1:
            raise ValueError("need len(iota) == len(eps) == len(consts) - 1")
        for j in range(1, l):
            if (
                self.iota[j - 1] == self.iota[j]
                and self.eps[j - 1] == -self.eps[j]
                and not self.consts[j]
            ):
                raise ValueError(f"word is not reduced at index {j}")
        if any(i > self.r for i in self.iota):
            raise ValueError("variable index exceeds r")

    # -- construction ------------------------------------------------------

    @classmethod
    def from_letters(cls, letters: Iterable[Letter], r: int | None = None) -> "WordWithConstants":
        red = free_reduce(letters)
        iota, eps, consts, cur = [], [], [], []
        for g, e in red:
            if isinstance(g, int):
                consts.append(tuple(cur))
                cur = []
                iota.append(g)
                eps.append(e)
            else:
                cur.append((g, e))
        consts.append(tuple(cur))
        rr = max(iota, default=1)
        return cls(tuple(iota), tuple(eps), tuple(consts), max(r or 1, rr))

    @classmethod
    def identity(cls, r: int = 1) -> "WordWithConstants":
        return cls((), (), ((),), r)

    def letters(self) -> tuple:
        out = list(self.consts[0])
        for j in range(self.length):
            out.append((self.iota[j], self.eps[j]))
            out.extend(self.consts[j + 1])
        return tuple(out)

    # -- basic data --------------------------------------------------------

    @property
    def length(self) -> int:
        return len(self.iota)

    def __len__(self) -> int:
        return self.length

    def constant_names(self) -> set:
        return {n for c in self.consts for n, _ in c}

    def __mul__(self, other: "WordWithConstants") -> "WordWithConstants":
        return WordWithConstants.from_letters(
            self.letters() + other.letters(), max(self.r, other.r)
        )

    def inverse(self) -> "WordWithConstants":
        return WordWithConstants.from_letters(invert_letters(self.letters()), self.r)

    def conjugate_first_constant(self) -> "WordWithConstants":
        """Return c_0^-1 w c_0, whose first constant is trivial."""
        c0 = self.consts[0]
        letters = invert_letters(c0) + self.letters() + c0
        return WordWithConstants.from_letters(letters, self.r)

    def __str__(self) -> str:
        parts = []
        if self.consts[0]:
            parts.append(const_str(self.consts[0]))
        for j in range(self.length):
            v = _var_name(self.iota[j])
            parts.append(v if self.eps[j] == 1 else f"{v}^-1")
            if self.consts[j + 1]:
                parts.append(const_str(self.consts[j + 1]))
        return " * ".join(parts) if parts else "1"

    # -- analysis ----------------------------------------------------------

    def classify(self) -> IndexClassification:
        return classify(self)

    def content(self) -> FreeWord:
        return content(self)

    def is_strong(self) -> bool:
        return not classify(self).Jminus

    def is_singular(self) -> bool:
        return content(self).is_identity()

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "iota": list(self.iota),
            "eps": list(self.eps),
            "consts": [[[n, e] for n, e in c] for c in self.consts],
            "text": str(self),
        }

    @classmethod
    def from_json(cls, d: Mapping) -> "WordWithConstants":
        return cls(
            tuple(d["iota"]),
            tuple(d["eps"]),
            tuple(tuple((n, e) for n, e in c) for c in d["consts"]),
            d["r"],
        )


RawItem = Union[None, str, tuple]


def _flatten(seq: Iterable[RawItem]) -> list:
    out = []
    for item in seq:
        if item is None or item == "1" or item == ():
            continue
        if isinstance(item, str):
            out.append((item, 1))
        elif len(item) == 2 and isinstance(item[0], (int, str)) and item[1] in (1, -1):
            out.append(tuple(item))
        else:
            out.extend(_flatten(item))
    return out


def reduce(seq: Iterable[RawItem], r: int | None = None) -> WordWithConstants:
    """Normalize a raw sequence of letters / constants into a reduced word.

    Items may be ``None`` (identity), a constant name, a letter ``(gen, +-1)``
    or a nested sequence of those.  A result of length 0 coming from a
    non-empty input is flagged with ``emptied=True``.
    """
    flat = _flatten(seq)
    w = WordWithConstants.from_letters(flat, r)
    if w.length == 0 and any(is_var(t) for t in flat):
        w = WordWithConstants(w.iota, w.eps, w.consts, w.r, emptied=True)
    return w


def classify(w: WordWithConstants) -> IndexClassification:
    J0, Jp, Jm = set(), set(), set()
    for j in range(1, w.length):
        if w.iota[j - 1] != w.iota[j]:
            J0.add(j)
        elif w.eps[j - 1] == w.eps[j]:
            Jp.add(j)
        else:
            Jm.add(j)
    crit = tuple((j, w.consts[j]) for j in sorted(Jm))
    return IndexClassification(frozenset(J0), frozenset(Jp), frozenset(Jm), crit)


def content(w: WordWithConstants) -> FreeWord:
    return FreeWord(tuple(zip(w.iota, w.eps)))


def is_strong(w: WordWithConstants) -> bool:
    return w.is_strong()


def is_singular(w: WordWithConstants) -> bool:
    return w.is_singular()


def collapse_critical(
    w: WordWithConstants,
    drop: Union[Callable[[Const], bool], Iterable[int]],
    support_size: Callable[[Const], int],
) -> tuple:
    """Replace droppable critical constants by the identity, one at a time.

    ``drop`` is either a predicate on constants (consulted for critical
    constants only) or an explicit collection of indices, which must all be
    critical in ``w``.  Returns ``(w', f)`` where ``f`` is the summed support
    size of the replaced constants.
    """
    if not callable(drop):
        idx = set(drop)
        bad = idx - set(classify(w).Jminus)
        if bad:
            raise ValueError(f"indices {sorted(bad)} are not critical")
        chosen = {w.consts[j] for j in idx}
        pred = lambda c: c in chosen  # noqa: E731
    else:
        pred = drop

    f = 0
    while True:
        for j, c in classify(w).critical:
            if pred(c):
                break
        else:
            return w, f
        f += support_size(c)
        consts = list(w.consts)
        consts[j] = IDENTITY
        letters = list(consts[0])
        for k in range(w.length):
            letters.append((w.iota[k], w.eps[k]))
            letters.extend(consts[k + 1])
        new = WordWithConstants.from_letters(letters, w.r)
        assert new.length <= w.length - 2
        w = new


def substitute(w: WordWithConstants, assignment: Mapping, constants: Mapping):
    """Evaluate ``w`` at the assignment, returning a lazily composed automorphism.

    ``assignment`` maps variable indices to automorphisms; ``constants`` maps
    constant names to automorphisms.
    """
    from .automorphisms import Composite

    factors = []
    for g, e in w.letters():
        if isinstance(g, int):
            if g not in assignment:
                raise KeyError(f"no value for variable {g}")
            a = assignment[g]
        else:
            if g not in constants:
                raise KeyError(f"unresolved constant {g!r}")
            a = constants[g]
        factors.append(a if e == 1 else a.inverse())
    return Composite(tuple(factors))


def resolve_constant(c: Const, constants: Mapping):
    """Automorphism represented by a symbolic constant product."""
    from .automorphisms import IDENTITY_MAP, compose_all

    if not c:
        return IDENTITY_MAP
    out = []
    for n, e in c:
        if n not in constants:
            raise KeyError(f"unresolved constant {n!r}")
        out.append(constants[n] if e == 1 else constants[n].inverse())
    return compose_all(out)

"""Germs at 0 and PL homeomorphisms of [0, 1], all exact.

With ``t.f_kappa = t^kappa`` and ``t.g_lambda = lambda t`` near 0, every word in
``f, g`` has germ ``t -> Lambda t^(kappa^e)`` where ``log Lambda = log(lambda) P(kappa)``
for an integer Laurent polynomial ``P``.  Composition "a then b" is

    (e1, P1) . (e2, P2) = (e1 + e2, P2 + X^e2 P1).

Derivatives are kept multiplicatively (exact rational slopes); logarithms only
appear in threshold comparisons, which are done on integer powers.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .metabelian import is_in_derived
from .words import FreeWord, WordWithConstants, commutator, X, Y


class SingularInput(ValueError):
    """The word has trivial content where a non-singular one is required."""


class ContentMismatch(ValueError):
    """The content of the word is not of the required shape."""


# --------------------------------------------------------------------------
# Laurent polynomials


@dataclass(frozen=True)
class LaurentPoly:
    coeffs: tuple = ()  # sorted (exponent, nonzero int)

    def __post_init__(self):
        d: dict = {}
        for k, c in self.coeffs:
            d[int(k)] = d.get(int(k), 0) + int(c)
        object.__setattr__(self, "coeffs", tuple(sorted((k, c) for k, c in d.items() if c)))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "LaurentPoly":
        return cls(((k, c),))

    @classmethod
    def from_dict(cls, d: Mapping) -> "LaurentPoly":
        return cls(tuple(d.items()))

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def __add__(self, other):
        return LaurentPoly(self.coeffs + other.coeffs)

    def __neg__(self):
        return LaurentPoly(tuple((k, -c) for k, c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly(tuple((k, c * other) for k, c in self.coeffs))
        return LaurentPoly(tuple((a + b, c * d) for a, c in self.coeffs for b, d in other.coeffs))

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by X^k."""
        return LaurentPoly(tuple((e + k, c) for e, c in self.coeffs))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        return sum((c * x**k for k, c in self.coeffs), Fraction(0))

    def evaluate_float(self, x: float) -> float:
        return sum(c * x**k for k, c in self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in self.coeffs:
            mag = abs(c)
            term = f"X^{k}" if mag == 1 else f"{mag}*X^{k}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, term))
        first = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return " ".join([first] + [f"{s} {t}" for s, t in parts[1:]])

    def to_json(self) -> dict:
        return {str(k): c for k, c in self.coeffs}


ZERO = LaurentPoly()
ONE = LaurentPoly.monomial(0)


# --------------------------------------------------------------------------
# germs


@dataclass(frozen=True)
class Germ:
    """``t -> Lambda t^(kappa^e)`` with ``log Lambda = log(lambda) P(kappa)``."""

    e: int = 0
    P: LaurentPoly = ZERO

    def then(self, other: "Germ") -> "Germ":
        return Germ(self.e + other.e, other.P + self.P.shift(other.e))

    def inverse(self) -> "Germ":
        return Germ(-self.e, -self.P.shift(-self.e))

    def __str__(self) -> str:
        return f"t -> lambda^({self.P}) * t^(X^{self.e})"

    def log_value(self, log_t: float, kappa: float, lam: float) -> float:
        """log of the germ's value at ``t = exp(log_t)``."""
        return math.log(lam) * self.P.evaluate_float(kappa) + kappa**self.e * log_t


F_KAPPA = Germ(1, ZERO)
G_LAMBDA = Germ(0, ONE)


def germ_of_word(u: FreeWord, f_var: int = 1, g_var: int = 2) -> Germ:
    """Germ of ``u(f_kappa, g_lambda)``; other variables are sent to the identity."""
    out = Germ()
    for v, e in u.letters:
        if v == f_var:
            step = F_KAPPA
        elif v == g_var:
            step = G_LAMBDA
        else:
            continue
        out = out.then(step if e == 1 else step.inverse())
    return out


def alpha(u: FreeWord) -> LaurentPoly:
    """The homomorphism alpha / log(lambda) on [F_2, F_2]."""
    if not is_in_derived(u):
        raise ContentMismatch(f"{u} is not in the derived subgroup")
    g = germ_of_word(u)
    assert g.e == 0
    return g.P


def numeric_germ_log(u: FreeWord, kappa: float, lam: float, t: float, f_var: int = 1, g_var: int = 2) -> float:
    """log of ``t.u(f, g)`` computed by actually composing the power and linear maps."""
    L = math.log(t)
    for v, e in u.letters:
        if v == f_var:
            L = L * kappa if e == 1 else L / kappa
        elif v == g_var:
            L = L + math.log(lam) if e == 1 else L - math.log(lam)
    return L


@dataclass(frozen=True)
class NonvanishingWitness:
    kappa: Fraction
    lam: Fraction
    value: Fraction  # P(kappa), nonzero
    P: LaurentPoly

    def to_json(self):
        return {"kappa": str(self.kappa), "lambda": str(self.lam), "P": str(self.P), "P_at_kappa": str(self.value)}


@dataclass(frozen=True)
class Inconclusive:
    reason: str
    P: LaurentPoly = ZERO

    def to_json(self):
        return {"inconclusive": True, "reason": self.reason, "P": str(self.P)}


def nonvanishing_witness(u: FreeWord, max_kappa: int = 10_000):
    """A kappa with ``alpha(u)(kappa) != 0``; scans kappa = 2, 3, 4, ..."""
    P = alpha(u)
    if P.is_zero():
        return Inconclusive(
            "alpha(u) vanishes identically; a change of basis of F_2 might still help (not implemented)", P
        )
    # P has finitely many positive roots, at most (span of exponents) many
    for k in range(2, max_kappa):
        v = P(k)
        if v != 0:
            return NonvanishingWitness(Fraction(k), Fraction(2), v, P)
    return Inconclusive("scan bound reached", P)  # pragma: no cover


# --------------------------------------------------------------------------
# PL homeomorphisms of [0, 1]


@dataclass(frozen=True)
class SlopeCocycle:
    """Right-continuous piecewise constant derivative: ``slopes[i]`` on ``[breaks[i], breaks[i+1])``."""

    breaks: tuple
    slopes: tuple

    def __post_init__(self):
        if len(self.breaks) != len(self.slopes) + 1 or any(s <= 0 for s in self.slopes):
            raise ValueError("bad slope data")

    def __call__(self, t) -> Fraction:
        i = bisect.bisect_right(self.breaks, Fraction(t)) - 1
        return self.slopes[min(max(i, 0), len(self.slopes) - 1)]


@dataclass(frozen=True)
class PLHomeo:
    """Increasing PL bijection of [0, 1] through the nodes ``(breaks[i], values[i])``."""

    breaks: tuple
    values: tuple

    def __post_init__(self):
        b = tuple(Fraction(x) for x in self.breaks)
        v = tuple(Fraction(x) for x in self.values)
        if len(b) != len(v) or len(b) < 2:
            raise ValueError("need matching node lists with at least two nodes")
        if b[0] != 0 or b[-1] != 1 or v[0] != 0 or v[-1] != 1:
            raise ValueError("a homeomorphism of [0, 1] fixes both endpoints")
        if any(x >= y for x, y in zip(b, b[1:])) or any(x >= y for x, y in zip(v, v[1:])):
            raise ValueError("nodes must be strictly increasing")
        nb, nv = [b[0]], [v[0]]
        for i in range(1, len(b) - 1):
            s1 = (v[i] - nv[-1]) / (b[i] - nb[-1])
            s2 = (v[i + 1] - v[i]) / (b[i + 1] - b[i])
            if s1 != s2:
                nb.append(b[i])
                nv.append(v[i])
        nb.append(b[-1])
        nv.append(v[-1])
        object.__setattr__(self, "breaks", tuple(nb))
        object.__setattr__(self, "values", tuple(nv))

    @classmethod
    def identity(cls) -> "PLHomeo":
        return cls((0, 1), (0, 1))

    @classmethod
    def from_nodes(cls, nodes: Sequence) -> "PLHomeo":
        nodes = sorted((Fraction(a), Fraction(b)) for a, b in nodes)
        if not nodes or nodes[0][0] != 0:
            nodes = [(Fraction(0), Fraction(0))] + nodes
        if nodes[-1][0] != 1:
            nodes.append((Fraction(1), Fraction(1)))
        return cls(tuple(a for a, _ in nodes), tuple(b for _, b in nodes))

    @classmethod
    def g_lambda(cls, lam) -> "PLHomeo":
        """``lambda t`` on [0, 1/(2 lambda)], then the affine piece ``(1 + t - 1/lambda)/(2 - 1/lambda)``."""
        lam = Fraction(lam)
        if lam < 1:
            raise ValueError("lambda must be at least 1")
        if lam == 1:
            return cls.identity()
        b = 1 / (2 * lam)
        return cls((0, b, 1), (0, lam * b, 1))

    def slopes(self) -> tuple:
        return tuple((v2 - v1) / (b2 - b1) for b1, b2, v1, v2 in zip(self.breaks, self.breaks[1:], self.values, self.values[1:]))

    def slope(self) -> SlopeCocycle:
        return SlopeCocycle(self.breaks, self.slopes())

    def __call__(self, t) -> Fraction:
        t = Fraction(t)
        if not 0 <= t <= 1:
            raise ValueError(f"{t} outside [0, 1]")
        i = min(bisect.bisect_right(self.breaks, t) - 1, len(self.breaks) - 2)
        b1, b2, v1, v2 = self.breaks[i], self.breaks[i + 1], self.values[i], self.values[i + 1]
        return v1 + (v2 - v1) * (t - b1) / (b2 - b1)

    def inverse(self) -> "PLHomeo":
        return PLHomeo(self.values, self.breaks)

    def then(self, other: "PLHomeo") -> "PLHomeo":
        """First ``self``, then ``other``."""
        inv = self.inverse()
        pts = sorted(set(self.breaks) | {inv(b) for b in other.breaks})
        return PLHomeo(tuple(pts), tuple(other(self(t)) for t in pts))

    def is_identity(self) -> bool:
        return self.breaks == (0, 1)

    def first_slope(self) -> Fraction:
        return self.slopes()[0]

    def max_log_ratio(self) -> Fraction:
        """``M`` with ``log M = ||log slope||_inf``."""
        return max(max(s, 1 / s) for s in self.slopes())

    def to_json(self):
        return [[str(b), str(v)] for b, v in zip(self.breaks, self.values)]

    def __str__(self):
        return "[" + ", ".join(f"({b}, {v})" for b, v in zip(self.breaks, self.values)) + "]"


def pl_compose(a: PLHomeo, b: PLHomeo) -> PLHomeo:
    return a.then(b)


def pl_invert(a: PLHomeo) -> PLHomeo:
    return a.inverse()


def slope(a: PLHomeo) -> SlopeCocycle:
    return a.slope()


def cocycle_holds_at(a: PLHomeo, b: PLHomeo, t) -> bool:
    """Multiplicative chain rule for right derivatives: (ab)'(t) = a'(t) b'(t.a)."""
    t = Fraction(t)
    return pl_compose(a, b).slope()(t) == a.slope()(t) * b.slope()(a(t))


# --------------------------------------------------------------------------
# one variable


def _resolve_pl(c, constants: Mapping) -> PLHomeo:
    out = PLHomeo.identity()
    for name, e in c:
        if name not in constants:
            raise KeyError(f"unresolved constant {name!r}")
        h = constants[name]
        out = out.then(h if e == 1 else h.inverse())
    return out


def evaluate_pl_word(w: WordWithConstants, assignment: Mapping, constants: Mapping) -> PLHomeo:
    out = _resolve_pl(w.consts[0], constants)
    for j in range(w.length):
        g = assignment[w.iota[j]]
        out = out.then(g if w.eps[j] == 1 else g.inverse())
        out = out.then(_resolve_pl(w.consts[j + 1], constants))
    return out


@dataclass
class OnevarResult:
    lam: int
    e: int
    l: int
    M: Fraction  # C = log M
    slope_at_zero: Fraction
    point: Fraction
    image: Fraction
    used_inverse: bool

    def threshold_respected(self) -> bool:
        """lambda > exp(l C / e), i.e. lambda^|e| > M^l."""
        return Fraction(self.lam) ** abs(self.e) > self.M**self.l

    def to_json(self):
        return {
            "lambda": self.lam,
            "e": self.e,
            "l": self.l,
            "M": str(self.M),
            "C": f"log({self.M})",
            "threshold": f"exp({self.l}*log({self.M})/{abs(self.e)})",
            "threshold_float": float(self.M) ** (self.l / abs(self.e)),
            "slope_at_zero": str(self.slope_at_zero),
            "witness_point": str(self.point),
            "witness_image": str(self.image),
            "substituted": "g_lambda^-1" if self.used_inverse else "g_lambda",
        }


def onevar_bound(w: WordWithConstants, constants: Mapping[str, PLHomeo]) -> OnevarResult:
    """Pick lambda above exp(lC/e) and exhibit a point moved by w(g_lambda)."""
    if any(i != 1 for i in w.iota):
        raise ValueError("onevar_bound expects a word in one variable")
    e = sum(w.eps)
    if e == 0:
        raise SingularInput(f"{w} is singular")
    wn = w.conjugate_first_constant() if w.consts[0] else w
    l = wn.length
    hs = [_resolve_pl(c, constants) for c in wn.consts[1:]]
    M = max((h.max_log_ratio() for h in hs), default=Fraction(1))
    lam = 2
    while Fraction(lam) ** abs(e) <= M**l:
        lam += 1
    g = PLHomeo.g_lambda(lam)
    if e < 0:
        g = g.inverse()
    inner = evaluate_pl_word(wn, {1: g}, constants)
    s0 = inner.first_slope()
    assert s0 >= Fraction(lam) ** abs(e) / M**l > 1
    t_star = inner.breaks[1] / 2
    c0 = _resolve_pl(w.consts[0], constants)
    point = c0.inverse()(t_star)
    full = evaluate_pl_word(w, {1: g}, constants)
    image = full(point)
    if image == point:  # pragma: no cover - excluded by the slope bound
        raise AssertionError("witness point is fixed")
    return OnevarResult(lam, e, l, M, s0, point, image, e < 0)


# --------------------------------------------------------------------------
# the commutator


@dataclass
class CommutatorBound:
    eta: Fraction
    chain: list | None  # exponents of eta along the nested growth, duplicates merged
    E: Fraction
    lam: int
    verified: bool
    t0: Fraction | None
    lower: Fraction | None
    upper: Fraction | None

    def to_json(self):
        return {
            "eta": str(self.eta),
            "chain": None if self.chain is None else [str(c) for c in self.chain],
            "E": str(self.E),
            "lambda": self.lam,
            "bound": f"{self.lam} * ({self.eta})^{self.E}",
            "verified": self.verified,
            "t0": None if self.t0 is None else str(self.t0),
            "enclosure": None if self.lower is None else [str(self.lower), str(self.upper)],
        }


KAPPA_SQRT = Fraction(1, 2)


def _u_letters(w: WordWithConstants) -> list:
    """Letters of [x, y]^-1 w, freely reduced, as ('c', name-tuple) or ('v', (i, e))."""
    from .words import free_reduce

    pre = [(2, 1), (1, 1), (2, -1), (1, -1)]
    letters = free_reduce(pre + list(w.letters()))
    out = []
    cur: list = []
    for g, e in letters:
        if isinstance(g, int):
            if cur:
                out.append(("c", tuple(cur)))
                cur = []
            out.append(("v", (g, e)))
        else:
            cur.append((g, e))
    if cur:
        out.append(("c", tuple(cur)))
    return out


def _x_weight(letters, start: int) -> int:
    return sum(e for kind, (g, e) in ((k, v) for k, v in letters[start:] if k == "v") if g == 1)


def exponent_sum(w: WordWithConstants, kappa: Fraction = KAPPA_SQRT) -> Fraction:
    """E = sum over constants h of kappa^(x-exponent of the suffix after h) in [x,y]^-1 w."""
    u = _u_letters(w)
    return sum((kappa ** _x_weight(u, i + 1) for i, (k, _) in enumerate(u) if k == "c"), Fraction(0))


def exponent_chain(w: WordWithConstants, kappa: Fraction = KAPPA_SQRT):
    """Nested lower-bound exponents, growing a block outward from the first constant.

    Absorbing a constant adds 1; wrapping the block in ``v^-s ... v^s`` multiplies
    by ``kappa^s`` for ``v = x`` and by 1 for ``v = y``.  Returns ``None`` when the
    word is not of nested shape.
    """
    u = _u_letters(w)
    first = next((i for i, (k, _) in enumerate(u) if k == "c"), None)
    if first is None:
        return []
    lo, hi = first, first
    val = Fraction(1)
    chain: list = []
    while lo > 0 or hi < len(u) - 1:
        if hi < len(u) - 1 and u[hi + 1][0] == "c":
            hi += 1
            val += 1
        elif lo > 0 and u[lo - 1][0] == "c":
            lo -= 1
            val += 1
        elif lo > 0 and hi < len(u) - 1:
            (g1, e1), (g2, e2) = u[lo - 1][1], u[hi + 1][1]
            if g1 != g2 or e1 != -e2:
                return None
            if g1 == 1:
                val *= kappa**e2
            lo, hi = lo - 1, hi + 1
        else:
            return None
        if not chain or chain[-1] != val:
            chain.append(val)
    return chain


def _sqrt_bounds(q: Fraction, bits: int) -> tuple:
    """Dyadic ``lo <= sqrt(q) <= hi`` with denominators ``2^bits``."""
    scale = 1 << (2 * bits)
    num = q.numerator * scale
    lo = math.isqrt(num // q.denominator)
    hi = lo if lo * lo * q.denominator == num else lo + 1
    return Fraction(lo, 1 << bits), Fraction(hi, 1 << bits)


def _round(lo: Fraction, hi: Fraction, bits: int) -> tuple:
    d = 1 << bits
    return Fraction(math.floor(lo * d), d), Fraction(math.ceil(hi * d), d)


def enclose(w: WordWithConstants, lam: int, constants: Mapping[str, PLHomeo], t0: Fraction, bits: int) -> tuple:
    """Rigorous interval for ``t0 . w(f, g_lambda)`` with ``t.f = sqrt(t)``."""
    g = PLHomeo.g_lambda(lam)
    ginv = g.inverse()
    lo = hi = Fraction(t0)
    for item in w.letters():
        name, e = item
        if isinstance(name, int):
            if name == 1 and e == 1:
                lo, _ = _sqrt_bounds(lo, bits)
                _, hi = _sqrt_bounds(hi, bits)
            elif name == 1:
                lo, hi = lo * lo, hi * hi
            else:
                m = g if e == 1 else ginv
                lo, hi = m(lo), m(hi)
        else:
            h = constants[name] if e == 1 else constants[name].inverse()
            lo, hi = h(lo), h(hi)
        lo, hi = _round(lo, hi, bits)
        lo, hi = max(lo, Fraction(0)), min(hi, Fraction(1))
    return lo, hi


def commutator_bound(w: WordWithConstants, constants: Mapping[str, PLHomeo], eta) -> CommutatorBound:
    """Lower bound ``lambda eta^E`` for the derivative of w(f, g_lambda) near 0, then verify."""
    eta = Fraction(eta)
    if not 0 < eta <= 1:
        raise ValueError("eta must lie in (0, 1]")
    if w.content() != commutator(X, Y):
        raise ContentMismatch(f"content of {w} is {w.content()}, expected [x, y]")
    for name in sorted(w.constant_names()):
        h = constants[name]
        if min(h.first_slope(), 1 / h.first_slope()) < eta:
            raise ValueError(f"constant {name} has slope below eta near 0")
    E = exponent_sum(w)
    chain = exponent_chain(w)
    lam = 2
    while Fraction(lam) * eta**E <= 1:
        lam += 1
    verified, t0, lo, hi = False, None, None, None
    for k in range(8, 400, 8):
        t0 = Fraction(1, 1 << k)
        lo, hi = enclose(w, lam, constants, t0, bits=2 * k + 64)
        if lo > t0:
            verified = True
            break
    return CommutatorBound(eta, chain, E, lam, verified, t0, lo, hi)

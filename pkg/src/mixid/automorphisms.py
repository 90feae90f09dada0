"""Automorphisms: closed forms, finite partial isomorphisms and lazy extensions.

All maps act on the right, ``compose(a, b)`` is "first a, then b" and
``Composite((a, b, c))`` evaluates left to right, matching ``x.(gh) = (x.g).h``.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .structures.base import ContractViolation, StructureOracle

INFINITE = math.inf


class UnsupportedRepresentation(TypeError):
    """No decision rule exists for this representation."""


class Automorphism:
    def apply(self, p):
        raise NotImplementedError

    def apply_inverse(self, p):
        raise NotImplementedError

    def inverse(self) -> "Automorphism":
        return _Inverse(self)

    def __call__(self, p):
        return self.apply(p)

    def then(self, other: "Automorphism") -> "Automorphism":
        return compose(self, other)


class _Identity(Automorphism):
    def apply(self, p):
        return p

    apply_inverse = apply

    def inverse(self):
        return self

    def __repr__(self):
        return "IDENTITY_MAP"


IDENTITY_MAP = _Identity()


class _Inverse(Automorphism):
    def __init__(self, base: Automorphism):
        self.base = base

    def apply(self, p):
        return self.base.apply_inverse(p)

    def apply_inverse(self, p):
        return self.base.apply(p)

    def inverse(self):
        return self.base

    def __repr__(self):
        return f"{self.base!r}^-1"


@dataclass(frozen=True)
class Composite(Automorphism):
    """Lazily evaluated product ``factors[0] * factors[1] * ...``."""

    factors: tuple = ()

    def apply(self, p):
        for f in self.factors:
            p = f.apply(p)
        return p

    def apply_inverse(self, p):
        for f in reversed(self.factors):
            p = f.apply_inverse(p)
        return p

    def inverse(self):
        return Composite(tuple(f.inverse() for f in reversed(self.factors)))


def compose(a: Automorphism, b: Automorphism) -> Automorphism:
    """The product ``ab``: first ``a``, then ``b``."""
    if a is IDENTITY_MAP:
        return b
    if b is IDENTITY_MAP:
        return a
    if type(a) is type(b) and hasattr(a, "_compose"):
        out = a._compose(b)
        if out is not NotImplemented:
            return out
    fa = a.factors if isinstance(a, Composite) else (a,)
    fb = b.factors if isinstance(b, Composite) else (b,)
    return Composite(fa + fb)


def compose_all(maps: Iterable[Automorphism]) -> Automorphism:
    out: Automorphism = IDENTITY_MAP
    for m in maps:
        out = compose(out, m)
    return out


def invert(a: Automorphism) -> Automorphism:
    return a.inverse()


# --------------------------------------------------------------------------
# pure set


@dataclass(frozen=True)
class FinitePermutation(Automorphism):
    """Finitely supported permutation; ``mapping`` lists moved points only."""

    mapping: tuple = ()  # sorted (point, image) pairs

    def __post_init__(self):
        d = {a: b for a, b in self.mapping if a != b}
        if sorted(d.values()) != sorted(d):
            raise ValueError("mapping is not a permutation of its support")
        object.__setattr__(self, "mapping", tuple(sorted(d.items())))

    @classmethod
    def from_dict(cls, d) -> "FinitePermutation":
        return cls(tuple(d.items()))

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence]) -> "FinitePermutation":
        d = {}
        seen = set()
        for cyc in cycles:
            for i, a in enumerate(cyc):
                if a in seen:
                    raise ValueError(f"point {a} appears twice in the cycles")
                seen.add(a)
                d[a] = cyc[(i + 1) % len(cyc)]
        return cls.from_dict(d)

    @property
    def as_dict(self) -> dict:
        return dict(self.mapping)

    def apply(self, p):
        return self.as_dict.get(p, p)

    def apply_inverse(self, p):
        for a, b in self.mapping:
            if b == p:
                return a
        return p

    def inverse(self):
        return FinitePermutation(tuple((b, a) for a, b in self.mapping))

    def support(self) -> frozenset:
        return frozenset(a for a, _ in self.mapping)

    def _compose(self, other):
        pts = self.support() | other.support()
        return FinitePermutation(tuple((p, other.apply(self.apply(p))) for p in pts))

    def cycles(self) -> list:
        d, out, seen = self.as_dict, [], set()
        for a in sorted(d):
            if a in seen:
                continue
            cyc = [a]
            seen.add(a)
            b = d[a]
            while b != a:
                cyc.append(b)
                seen.add(b)
                b = d[b]
            out.append(cyc)
        return out


def _check_perm(seq: Sequence[int], n: int, what: str):
    if sorted(seq) != list(range(n)):
        raise ValueError(f"{what} must be a permutation of range({n})")


@dataclass(frozen=True)
class EventuallyPeriodic(Automorphism):
    """Permutation of N: ``head`` on ``range(N)``, then ``block`` repeated with period P."""

    head: tuple
    period: int
    block: tuple

    def __post_init__(self):
        n, p = len(self.head), self.period
        if p < 1 or n % p:
            raise ValueError("head length must be a multiple of the period")
        _check_perm(self.head, n, "head")
        _check_perm(self.block, p, "block")

    @classmethod
    def shift_pairs(cls, start: int = 0) -> "EventuallyPeriodic":
        """Swap 2m and 2m+1 for every 2m >= start (start even)."""
        head = tuple(range(start))
        return cls(head, 2, (1, 0))

    def apply(self, i):
        if i < len(self.head):
            return self.head[i]
        p = self.period
        return p * (i // p) + self.block[i % p]

    def apply_inverse(self, i):
        if i < len(self.head):
            return self.head.index(i)
        p = self.period
        return p * (i // p) + self.block.index(i % p)

    def inverse(self):
        inv_h = [0] * len(self.head)
        for i, v in enumerate(self.head):
            inv_h[v] = i
        inv_b = [0] * self.period
        for i, v in enumerate(self.block):
            inv_b[v] = i
        return EventuallyPeriodic(tuple(inv_h), self.period, tuple(inv_b))

    def _compose(self, other):
        p = math.lcm(self.period, other.period)
        n = max(len(self.head), len(other.head))
        n = -(-n // p) * p
        f = lambda i: other.apply(self.apply(i))  # noqa: E731
        head = tuple(f(i) for i in range(n))
        block = tuple(f(n + r) - n for r in range(p))
        return EventuallyPeriodic(head, p, block)

    def finite_support(self) -> bool:
        return all(b == i for i, b in enumerate(self.block))

    def support_size(self):
        if not self.finite_support():
            return INFINITE
        return sum(1 for i, v in enumerate(self.head) if i != v)


# --------------------------------------------------------------------------
# (Q, <)


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass(frozen=True)
class PLRationalMap(Automorphism):
    """Increasing piecewise affine bijection of Q.

    ``pieces`` is a tuple of ``(start, slope, intercept)``; the first start is
    ``None`` (minus infinity) and the map is ``t -> slope * t + intercept`` on
    ``[start_i, start_{i+1})``.
    """

    pieces: tuple

    def __post_init__(self):
        ps = []
        for i, (s, m, c) in enumerate(self.pieces):
            s = None if s is None else _frac(s)
            m, c = _frac(m), _frac(c)
            if m <= 0:
                raise ValueError("slopes must be positive")
            if (s is None) != (i == 0):
                raise ValueError("only the first piece starts at -infinity")
            if len(ps) > 1 and s <= ps[-1][0]:
                raise ValueError("breakpoints must increase")
            if ps:
                pm, pc = ps[-1][1], ps[-1][2]
                if pm * s + pc != m * s + c:
                    raise ValueError(f"discontinuity at {s}")
            ps.append((s, m, c))
        if not ps:
            raise ValueError("need at least one piece")
        merged = [ps[0]]
        for s, m, c in ps[1:]:
            if (m, c) == merged[-1][1:]:
                continue
            merged.append((s, m, c))
        object.__setattr__(self, "pieces", tuple(merged))

    @classmethod
    def identity(cls) -> "PLRationalMap":
        return cls(((None, 1, 0),))

    @classmethod
    def translation(cls, k) -> "PLRationalMap":
        return cls(((None, 1, _frac(k)),))

    @classmethod
    def from_points(cls, pts: Sequence) -> "PLRationalMap":
        """Interpolate increasing ``(x, y)`` nodes, slope one outside them."""
        pts = [(_frac(x), _frac(y)) for x, y in pts]
        if not pts:
            return cls.identity()
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if not (x1 > x0 and y1 > y0):
                raise ValueError("nodes must be strictly increasing in both coordinates")
        x0, y0 = pts[0]
        pieces = [(None, Fraction(1), y0 - x0)]
        for (xa, ya), (xb, yb) in zip(pts, pts[1:]):
            m = (yb - ya) / (xb - xa)
            pieces.append((xa, m, ya - m * xa))
        xn, yn = pts[-1]
        pieces.append((xn, Fraction(1), yn - xn))
        return cls(tuple(pieces))

    @classmethod
    def bump(cls, a, b, push=Fraction(1, 4)) -> "PLRationalMap":
        """Supported on (a, b); the midpoint moves right by ``push`` of the width."""
        a, b = _frac(a), _frac(b)
        mid = (a + b) / 2
        return cls.from_points([(a, a), (mid, mid + (b - a) * _frac(push)), (b, b)])

    def _starts(self):
        return [s for s, _, _ in self.pieces[1:]]

    def apply(self, t):
        t = _frac(t)
        i = bisect.bisect_right(self._starts(), t)
        _, m, c = self.pieces[i]
        return m * t + c

    def apply_inverse(self, t):
        return self.inverse().apply(t)

    def inverse(self):
        out = []
        for s, m, c in self.pieces:
            out.append((None if s is None else m * s + c, 1 / m, -c / m))
        return PLRationalMap(tuple(out))

    def breakpoints(self) -> list:
        return self._starts()

    def _compose(self, other):
        cuts = set(self._starts())
        inv = self.inverse()
        cuts |= {inv.apply(s) for s in other._starts()}
        cuts = sorted(cuts)
        reps = [cuts[0] - 1] if cuts else [Fraction(0)]
        reps += [cuts[i] for i in range(len(cuts))]
        pieces = []
        for i, r in enumerate(reps):
            _, m1, c1 = self.pieces[bisect.bisect_right(self._starts(), r)]
            y = m1 * r + c1
            _, m2, c2 = other.pieces[bisect.bisect_right(other._starts(), y)]
            pieces.append((None if i == 0 else cuts[i - 1], m1 * m2, m2 * c1 + c2))
        return PLRationalMap(tuple(pieces))

    def is_identity(self) -> bool:
        return self.pieces == ((None, 1, 0),)

    def has_identity_piece(self) -> bool:
        return any(m == 1 and c == 0 for _, m, c in self.pieces)

    def support_intervals(self) -> list:
        """Maximal intervals ``(lo, hi)`` covered by non-identity pieces (``None`` = infinite)."""
        out = []
        bounds = self._starts() + [None]
        for i, (s, m, c) in enumerate(self.pieces):
            if m == 1 and c == 0:
                continue
            hi = bounds[i]
            if out and out[-1][1] == s:
                out[-1] = (out[-1][0], hi)
            else:
                out.append((s, hi))
        return out

    def to_json(self):
        return [[None if s is None else str(s), str(m), str(c)] for s, m, c in self.pieces]


# --------------------------------------------------------------------------
# Q/Z


@dataclass(frozen=True)
class CircleMap(Automorphism):
    """Orientation preserving PL homeomorphism of Q/Z given by lift nodes.

    ``nodes`` are ``(x_i, F(x_i))`` with ``0 <= x_0 < ... < x_n < 1``, the lift
    values strictly increasing and ``F(x_n) < F(x_0) + 1``.  The lift is linear
    between nodes and satisfies ``F(t + 1) = F(t) + 1``.
    """

    nodes: tuple

    def __post_init__(self):
        pts = [(_frac(x), _frac(y)) for x, y in self.nodes]
        if not pts:
            raise ValueError("need at least one node")
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if not (x1 > x0 and y1 > y0):
                raise ValueError("nodes must increase")
        if not (0 <= pts[0][0] and pts[-1][0] < 1 and pts[-1][1] < pts[0][1] + 1):
            raise ValueError("nodes must lie in [0, 1) and wind once")
        # normalize: F(x_0) in [0, 1), drop collinear nodes
        k = math.floor(pts[0][1])
        pts = [(x, y - k) for x, y in pts]
        n = len(pts)
        keep = []
        for i in range(n):
            xp, yp = pts[i - 1] if i else (pts[-1][0] - 1, pts[-1][1] - 1)
            xn, yn = pts[i + 1] if i + 1 < n else (pts[0][0] + 1, pts[0][1] + 1)
            x, y = pts[i]
            if (y - yp) * (xn - x) != (yn - y) * (x - xp):
                keep.append((x, y))
        if not keep:
            x, y = pts[0]
            keep = [(Fraction(0), (y - x) % 1)]
        object.__setattr__(self, "nodes", tuple(keep))

    @classmethod
    def rotation(cls, r) -> "CircleMap":
        return cls(((0, _frac(r) % 1),))

    @classmethod
    def identity(cls) -> "CircleMap":
        return cls(((0, 0),))

    @classmethod
    def bump(cls, a, b, push=Fraction(1, 4)) -> "CircleMap":
        """Supported on the ccw arc (a, b); ``b`` may be smaller than ``a`` (wrap)."""
        a, b = _frac(a) % 1, _frac(b) % 1
        length = (b - a) % 1
        mid = a + length / 2
        lift = [(a, a), (mid, mid + length * _frac(push)), (a + length, a + length)]
        pts = sorted(((x % 1, y - (x - x % 1)) for x, y in lift))
        return cls(tuple(pts))

    def lift(self, t):
        t = _frac(t)
        k = math.floor(t)
        u = t - k
        xs = [x for x, _ in self.nodes]
        i = bisect.bisect_right(xs, u) - 1
        if i < 0:
            xa, ya = self.nodes[-1][0] - 1, self.nodes[-1][1] - 1
            xb, yb = self.nodes[0]
        else:
            xa, ya = self.nodes[i]
            xb, yb = self.nodes[i + 1] if i + 1 < len(xs) else (self.nodes[0][0] + 1, self.nodes[0][1] + 1)
        return ya + (yb - ya) * (u - xa) / (xb - xa) + k

    def apply(self, t):
        return self.lift(t) % 1

    def inverse(self):
        pts = sorted(((y % 1, x - (y - y % 1)) for x, y in self.nodes))
        return CircleMap(tuple(pts))

    def apply_inverse(self, t):
        return self.inverse().apply(t)

    def _compose(self, other):
        inv = self.inverse()
        xs = {x for x, _ in self.nodes} | {inv.apply(x) for x, _ in other.nodes}
        return CircleMap(tuple((x, other.lift(self.lift(x))) for x in sorted(xs)))

    def pieces(self) -> list:
        """``(x_a, x_b, slope, F(x_a) - x_a)`` for each linear piece of the lift."""
        out = []
        n = len(self.nodes)
        for i in range(n):
            xa, ya = self.nodes[i]
            xb, yb = self.nodes[i + 1] if i + 1 < n else (self.nodes[0][0] + 1, self.nodes[0][1] + 1)
            out.append((xa, xb, (yb - ya) / (xb - xa), ya - xa))
        return out

    def has_identity_piece(self) -> bool:
        return any(m == 1 and off.denominator == 1 for _, _, m, off in self.pieces())

    def image_arc(self, a, b) -> tuple:
        """Image of the ccw arc (a, b)."""
        return self.apply(a), self.apply(b)


@dataclass(frozen=True)
class Reflection(Automorphism):
    """``t -> -t`` on Q/Z, orientation reversing."""

    def apply(self, t):
        return (-_frac(t)) % 1

    apply_inverse = apply

    def inverse(self):
        return self


# --------------------------------------------------------------------------
# E_k


@dataclass(frozen=True)
class WreathElement(Automorphism):
    """Element of S_k wr Sym(N): classes move by ``classes``, slots by a table.

    ``default`` is the slot permutation used in every class not listed in
    ``exceptions`` (a tuple of ``(class, slot permutation)``).
    """

    k: int
    classes: Automorphism
    default: tuple = ()
    exceptions: tuple = ()

    def __post_init__(self):
        default = self.default or tuple(range(self.k))
        _check_perm(default, self.k, "default slot permutation")
        exc = {}
        for c, perm in self.exceptions:
            perm = tuple(perm)
            _check_perm(perm, self.k, "slot permutation")
            if perm != default:
                exc[c] = perm
        if not isinstance(self.classes, (FinitePermutation, EventuallyPeriodic, _Identity)):
            raise TypeError("class permutation must be finite or eventually periodic")
        object.__setattr__(self, "default", default)
        object.__setattr__(self, "exceptions", tuple(sorted(exc.items())))

    def slot_perm(self, c) -> tuple:
        return dict(self.exceptions).get(c, self.default)

    def apply(self, p):
        c, s = p
        return (self.classes.apply(c), self.slot_perm(c)[s])

    def inverse(self):
        inv = lambda perm: tuple(sorted(range(self.k), key=lambda i: perm[i]))  # noqa: E731
        exc = tuple((self.classes.apply(c), inv(perm)) for c, perm in self.exceptions)
        return WreathElement(self.k, self.classes.inverse(), inv(self.default), exc)

    def apply_inverse(self, p):
        return self.inverse().apply(p)

    def _compose(self, other):
        if self.k != other.k:
            return NotImplemented
        cls = compose(self.classes, other.classes)
        if isinstance(cls, Composite):
            return NotImplemented
        keys = {c for c, _ in self.exceptions} | {self.classes.apply_inverse(c) for c, _ in other.exceptions}
        default = tuple(other.default[self.default[s]] for s in range(self.k))
        exc = []
        for c in keys:
            a, b = self.slot_perm(c), other.slot_perm(self.classes.apply(c))
            exc.append((c, tuple(b[a[s]] for s in range(self.k))))
        return WreathElement(self.k, cls, default, tuple(exc))

    def class_support_finite(self) -> bool:
        if isinstance(self.classes, EventuallyPeriodic):
            return self.classes.finite_support()
        return True


# --------------------------------------------------------------------------
# F_q vector space


def _mat_mul(a, b, q):
    n = len(a)
    return tuple(tuple(sum(a[i][t] * b[t][j] for t in range(n)) % q for j in range(n)) for i in range(n))


def _mat_inv(a, q):
    n = len(a)
    aug = [list(a[i]) + [int(i == j) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] % q), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = pow(aug[col][col], -1, q)
        aug[col] = [v * inv % q for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [(x - f * y) % q for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


@dataclass(frozen=True)
class LinearMap(Automorphism):
    """``x -> lam * x`` off the coordinate block ``coords``, ``A x`` on it.

    Equivalently ``lam * id + F`` with ``F`` of finite rank supported on the block.
    """

    q: int
    lam: int
    coords: tuple
    matrix: tuple

    def __post_init__(self):
        from .structures.vector import is_prime

        q = self.q
        if not is_prime(q):
            raise ValueError(f"q = {q} must be prime")
        lam = self.lam % q
        if lam == 0:
            raise ValueError("lambda must be invertible")
        n = len(self.coords)
        if len(set(self.coords)) != n or any(len(r) != n for r in self.matrix) or len(self.matrix) != n:
            raise ValueError("matrix must be square over distinct coordinates")
        order = sorted(range(n), key=lambda i: self.coords[i])
        coords = tuple(self.coords[i] for i in order)
        mat = tuple(tuple(self.matrix[i][j] % q for j in order) for i in order)
        if n and _mat_inv(mat, q) is None:
            raise ValueError("map is not invertible")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "matrix", mat)

    @classmethod
    def from_rows(cls, q: int, lam: int, rows: Sequence) -> "LinearMap":
        """``lam * id + sum_k phi_k(x) u_k`` for rows ``(u_k, phi_k)`` of coordinate lists."""
        coords = sorted({i for u, phi in rows for vec in (u, phi) for i, v in enumerate(vec) if v % q})
        n = len(coords)
        mat = [[lam % q if i == j else 0 for j in range(n)] for i in range(n)]
        for u, phi in rows:
            for a, ci in enumerate(coords):
                ui = u[ci] if ci < len(u) else 0
                if not ui:
                    continue
                for b, cj in enumerate(coords):
                    pj = phi[cj] if cj < len(phi) else 0
                    mat[a][b] = (mat[a][b] + ui * pj) % q
        return cls(q, lam, tuple(coords), tuple(map(tuple, mat)))

    @classmethod
    def scalar(cls, q: int, lam: int) -> "LinearMap":
        return cls(q, lam, (), ())

    def apply(self, x):
        from .structures.vector import normalize

        q = self.q
        out = [self.lam * v % q for v in x]
        if self.coords:
            width = max(len(out), self.coords[-1] + 1)
            out += [0] * (width - len(out))
            xs = [x[c] if c < len(x) else 0 for c in self.coords]
            for a, ci in enumerate(self.coords):
                out[ci] = sum(self.matrix[a][b] * xs[b] for b in range(len(xs))) % q
        return normalize(out, q)

    def inverse(self):
        inv = _mat_inv(self.matrix, self.q) if self.coords else ()
        return LinearMap(self.q, pow(self.lam, -1, self.q), self.coords, inv)

    def apply_inverse(self, x):
        return self.inverse().apply(x)

    def _block(self, coords):
        idx = {c: i for i, c in enumerate(self.coords)}
        return tuple(
            tuple(
                self.matrix[idx[a]][idx[b]] if a in idx and b in idx else (self.lam if a == b else 0)
                for b in coords
            )
            for a in coords
        )

    def _compose(self, other):
        if self.q != other.q:
            return NotImplemented
        coords = tuple(sorted(set(self.coords) | set(other.coords)))
        # (x.a).b with column vectors: B A x
        mat = _mat_mul(other._block(coords), self._block(coords), self.q)
        return LinearMap(self.q, self.lam * other.lam, coords, mat)

    def rank_minus(self, mu: int):
        """rk(c - mu id): finite only for ``mu == lam``."""
        from .structures.vector import rank

        if mu % self.q != self.lam:
            return INFINITE
        n = len(self.coords)
        rows = [tuple((self.matrix[i][j] - (self.lam if i == j else 0)) % self.q for j in range(n)) for i in range(n)]
        return rank(rows, self.q)

    def is_identity(self) -> bool:
        return self.lam == 1 and self.rank_minus(1) == 0


@dataclass(frozen=True)
class CoordinatePermutation(Automorphism):
    """Permutes basis vectors: ``e_i -> e_{perm(i)}``."""

    q: int
    perm: Automorphism

    def apply(self, x):
        from .structures.vector import normalize

        nz = {self.perm.apply(i): v for i, v in enumerate(x) if v % self.q}
        width = max(nz, default=-1) + 1
        return normalize([nz.get(i, 0) for i in range(width)], self.q)

    def apply_inverse(self, x):
        return self.inverse().apply(x)

    def inverse(self):
        return CoordinatePermutation(self.q, self.perm.inverse())

    def finite_support(self) -> bool:
        if isinstance(self.perm, EventuallyPeriodic):
            return self.perm.finite_support()
        return True


# --------------------------------------------------------------------------
# partial isomorphisms and lazy automorphisms


@dataclass
class PartialIso:
    oracle: StructureOracle
    domain: list = field(default_factory=list)
    range: list = field(default_factory=list)

    def __post_init__(self):
        self.domain, self.range = list(self.domain), list(self.range)
        if len(set(self.domain)) != len(self.domain):
            raise ContractViolation("domain entries repeat")
        if not self.oracle.same_type(self.domain, self.range):
            raise ContractViolation("domain and range have different types")

    def extend(self, a, b) -> None:
        if a in self.domain:
            if self.range[self.domain.index(a)] != b:
                raise ContractViolation(f"{a} already maps elsewhere")
            return
        if not self.oracle.same_type(self.domain + [a], self.range + [b]):
            raise ContractViolation(f"adding {a} -> {b} breaks the type")
        self.domain.append(a)
        self.range.append(b)

    def as_dict(self) -> dict:
        return dict(zip(self.domain, self.range))


class LazyAutomorphism(Automorphism):
    """An automorphism revealed on demand by back-and-forth.

    Unseen points are sent through ``oracle.realize`` with nonces derived from
    ``seed`` and the current log length, so the whole map is a deterministic
    function of the seed and the query order.
    """

    def __init__(self, oracle: StructureOracle, partial: PartialIso | None = None, seed=0, name: str = "h"):
        self.oracle = oracle
        self.seed = seed
        self.name = name
        self.dom: list = []
        self.rng: list = []
        self.fwd: dict = {}
        self.back: dict = {}
        if partial is not None:
            if partial.oracle is not oracle:
                oracle.same_type(partial.domain, partial.range)
            for a, b in zip(partial.domain, partial.range):
                self._record(a, b)

    def _record(self, a, b):
        self.dom.append(a)
        self.rng.append(b)
        self.fwd[a] = b
        self.back[b] = a

    def apply(self, p):
        if p in self.fwd:
            return self.fwd[p]
        z = self.oracle.realize(self.dom, p, self.rng, nonce=f"lazy:{self.name}:{self.seed}:{len(self.dom)}")
        self._record(p, z)
        return z

    def apply_inverse(self, p):
        if p in self.back:
            return self.back[p]
        z = self.oracle.realize(self.rng, p, self.dom, nonce=f"lazy:{self.name}:{self.seed}:{len(self.dom)}")
        self._record(z, p)
        return z

    def graph(self) -> list:
        return list(zip(self.dom, self.rng))

    def partial(self) -> PartialIso:
        return PartialIso(self.oracle, list(self.dom), list(self.rng))

    @classmethod
    def random(cls, oracle: StructureOracle, seed=0, warmup: int = 4, name: str = "h") -> "LazyAutomorphism":
        h = cls(oracle, seed=seed, name=name)
        for i in range(warmup):
            h.apply(oracle.sample(avoid=set(h.dom), nonce=f"warm:{name}:{seed}:{i}"))
        return h

    def __repr__(self):
        return f"LazyAutomorphism({self.oracle.name}, seed={self.seed}, known={len(self.dom)})"


# --------------------------------------------------------------------------
# detectors


def _collapse(c: Automorphism) -> Automorphism:
    if isinstance(c, Composite):
        c = compose_all(c.factors)
    if isinstance(c, _Inverse):
        inner = _collapse(c.base)
        if not isinstance(inner, (LazyAutomorphism, Composite, _Inverse)):
            return inner.inverse()
    return c


def is_small(c: Automorphism) -> bool:
    """Does ``c`` fix an infinite definable set pointwise (closed forms only)?"""
    c = _collapse(c)
    if c is IDENTITY_MAP or isinstance(c, FinitePermutation):
        return True
    if isinstance(c, EventuallyPeriodic):
        return c.finite_support()
    if isinstance(c, (PLRationalMap, CircleMap)):
        return c.has_identity_piece()
    if isinstance(c, WreathElement):
        return c.class_support_finite() and c.default == tuple(range(c.k))
    if isinstance(c, LinearMap):
        return c.is_identity()
    if isinstance(c, CoordinatePermutation):
        return c.finite_support() and support_size(c.perm) == 0
    raise UnsupportedRepresentation(f"smallness is not decidable for {type(c).__name__}")


def is_slender(c: Automorphism) -> bool:
    c = _collapse(c)
    if isinstance(c, WreathElement):
        return c.class_support_finite()
    if isinstance(c, LinearMap):
        return True
    if isinstance(c, CoordinatePermutation):
        return c.finite_support()
    return is_small(c)


def support_size(c: Automorphism):
    c = _collapse(c)
    if c is IDENTITY_MAP:
        return 0
    if isinstance(c, FinitePermutation):
        return len(c.mapping)
    if isinstance(c, EventuallyPeriodic):
        return c.support_size()
    if isinstance(c, PLRationalMap):
        return 0 if c.is_identity() else INFINITE
    if isinstance(c, CircleMap):
        return 0 if c == CircleMap.identity() else INFINITE
    if isinstance(c, LinearMap):
        return 0 if c.is_identity() else INFINITE
    if isinstance(c, WreathElement):
        if not is_small(c):
            return INFINITE
        classes = support_size(c.classes)
        exc = dict(c.exceptions)
        moved = {cl for cl, _ in getattr(c.classes, "mapping", ())}
        fixed_moves = sum(
            sum(1 for s, t in enumerate(perm) if s != t) for cl, perm in exc.items() if cl not in moved
        )
        return classes * c.k + fixed_moves
    if isinstance(c, CoordinatePermutation):
        return 0 if is_small(c) else INFINITE
    if isinstance(c, Reflection):
        return INFINITE
    raise UnsupportedRepresentation(f"support size unknown for {type(c).__name__}")

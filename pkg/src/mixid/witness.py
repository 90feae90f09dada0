"""Certified refutation of mixed identities by back-and-forth.

Given a reduced word ``w`` with constants, ``build_witness`` constructs pairs
``(alpha_i, beta_i)`` and finite partial isomorphisms ``h_k`` (from
``Omega_k^+`` onto ``Omega_k^-``) such that ``alpha_i . w(h) = beta_i`` for
every extension of the ``h_k`` to automorphisms.  Each step walks the chain

    alpha = w_1^{e(1)} -h-> w_1^{-e(1)} -c_1-> w_2^{e(2)} -h-> ... -c_l-> beta

choosing the new point ``w_j^{-e(j)}`` in the orbit of ``w_j^{e(j)}`` (moved
over by the current partial isomorphism) while keeping the next chain point
outside the relevant algebraic closure.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping

from .automorphisms import (
    INFINITE,
    Automorphism,
    LazyAutomorphism,
    PartialIso,
    UnsupportedRepresentation,
    is_slender,
    is_small,
    support_size,
)
from .structures.base import ContractViolation, ExhaustedSearch, StructureOracle
from .structures.pure import PureSet
from .words import (
    WordWithConstants,
    classify,
    collapse_critical,
    const_str,
    resolve_constant,
    substitute,
)

BRANCHES = {
    "strong": "strong",
    "convex": "convex",
    "convex-no-small": "convex",
    "slender": "slender",
    "no-slender": "slender",
}


class PreconditionError(ValueError):
    """The request does not meet the hypotheses of the selected branch."""


class RetryExhausted(RuntimeError):
    def __init__(self, j: int, constant: str, budget: int):
        self.j = j
        self.constant = constant
        self.budget = budget
        super().__init__(
            f"step {j}: no admissible choice after {budget} attempts; "
            f"critical constant {constant} looks small/slender"
        )


@dataclass
class WitnessRequest:
    word: WordWithConstants
    bindings: Mapping[str, Automorphism]
    oracle: StructureOracle
    n: int = 1
    branch: str = "strong"
    retry_budget: int = 64
    seed: int = 0

    def __post_init__(self):
        if self.branch not in BRANCHES:
            raise PreconditionError(f"unknown branch {self.branch!r}")
        self.branch = BRANCHES[self.branch]
        if self.n < 1:
            raise PreconditionError("n must be positive")
        if self.retry_budget < 1:
            raise PreconditionError("retry budget must be positive")


@dataclass
class WitnessCertificate:
    word: WordWithConstants
    normalized: WordWithConstants
    structure: str
    seed: int
    branch: str
    pairs: list
    normalized_pairs: list
    chains: list
    h_maps: dict  # k -> (domain list, range list)
    log: list = field(default_factory=list)
    constant_maps: dict = field(default_factory=dict)
    structure_data: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)

    def points(self) -> list:
        out = [p for a, b in self.pairs for p in (a, b)]
        out += [p for a, b in self.normalized_pairs for p in (a, b)]
        for ch in self.chains:
            out += ch
        for dom, rng in self.h_maps.values():
            out += dom + rng
        for graph in self.constant_maps.values():
            out += [p for ab in graph for p in ab]
        return out

    def to_json(self, oracle: StructureOracle) -> dict:
        fmt = oracle.format_point
        return {
            "word": self.word.to_json(),
            "normalized_word": self.normalized.to_json(),
            "structure": self.structure,
            "seed": self.seed,
            "branch": self.branch,
            "pairs": [{"alpha": fmt(a), "beta": fmt(b)} for a, b in self.pairs],
            "normalized_pairs": [{"alpha": fmt(a), "beta": fmt(b)} for a, b in self.normalized_pairs],
            "chains": [[fmt(p) for p in ch] for ch in self.chains],
            "omega_sets": {
                str(k): {"plus": [fmt(p) for p in dom], "minus": [fmt(p) for p in rng]}
                for k, (dom, rng) in sorted(self.h_maps.items())
            },
            "h_maps": [
                {"variable": k, "domain": [fmt(p) for p in dom], "range": [fmt(p) for p in rng]}
                for k, (dom, rng) in sorted(self.h_maps.items())
            ],
            "log": self.log,
            "constant_maps": {
                name: [[fmt(a), fmt(b)] for a, b in graph] for name, graph in sorted(self.constant_maps.items())
            },
            "structure_data": self.structure_data,
            "warnings": self.warnings,
        }

    def dumps(self, oracle: StructureOracle) -> str:
        return json.dumps(self.to_json(oracle), sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, d: Mapping, oracle: StructureOracle) -> "WitnessCertificate":
        parse = oracle.parse_point
        return cls(
            word=WordWithConstants.from_json(d["word"]),
            normalized=WordWithConstants.from_json(d["normalized_word"]),
            structure=d["structure"],
            seed=d["seed"],
            branch=d["branch"],
            pairs=[(parse(p["alpha"]), parse(p["beta"])) for p in d["pairs"]],
            normalized_pairs=[(parse(p["alpha"]), parse(p["beta"])) for p in d["normalized_pairs"]],
            chains=[[parse(t) for t in ch] for ch in d["chains"]],
            h_maps={m["variable"]: ([parse(t) for t in m["domain"]], [parse(t) for t in m["range"]]) for m in d["h_maps"]},
            log=list(d.get("log", [])),
            constant_maps={n: [(parse(a), parse(b)) for a, b in g] for n, g in d.get("constant_maps", {}).items()},
            structure_data=dict(d.get("structure_data", {})),
            warnings=list(d.get("warnings", [])),
        )


def _sign(e: int) -> int:
    return 0 if e == 1 else 1


def _detector_warnings(req: WitnessRequest, w: WordWithConstants) -> list:
    """Cross-check the selected branch against closed-form detectors."""
    out = []
    if req.branch == "strong":
        return out
    test = is_small if req.branch == "convex" else is_slender
    label = "small" if req.branch == "convex" else "slender"
    for j, c in classify(w).critical:
        try:
            if test(resolve_constant(c, req.bindings)):
                out.append(f"critical constant {const_str(c)} at index {j} is {label}")
        except UnsupportedRepresentation:
            continue
    return out


def build_witness(req: WitnessRequest) -> WitnessCertificate:
    oracle = req.oracle
    w = req.word
    if w.length == 0:
        raise PreconditionError("word has length zero")
    cls = classify(w)
    if req.branch == "strong" and cls.Jminus:
        raise PreconditionError(f"word is not strong: critical indices {sorted(cls.Jminus)}")
    if req.branch == "convex" and not oracle.algebraically_convex:
        raise PreconditionError(f"{oracle.name} is not algebraically convex")

    c0 = resolve_constant(w.consts[0], req.bindings)
    wn = w.conjugate_first_constant() if w.consts[0] else w
    cls = classify(wn)
    l = wn.length
    consts = [resolve_constant(c, req.bindings) for c in wn.consts]
    warnings = _detector_warnings(req, wn)
    in_acl = oracle.in_acl

    omega = {k: ([], []) for k in range(1, wn.r + 1)}  # k -> (plus, minus)
    pairs_n, chains, log = [], [], []
    flat: list = []

    for i in range(req.n):
        k1, e1 = wn.iota[0], wn.eps[0]
        lam = list(omega[k1][_sign(e1)])
        prev = list(flat)
        alpha = oracle.sample(
            avoid=lambda z: in_acl(z, lam) or in_acl(z, prev),
            nonce=f"wit:{req.seed}:{i}:alpha",
        )
        log.append({"pair": i, "step": "alpha", "avoid": ["acl(Lambda)", "acl(previous pairs)"]})
        point = alpha
        chain = [alpha]
        beta = None
        for j in range(1, l + 1):
            k, e = wn.iota[j - 1], wn.eps[j - 1]
            src, dst = omega[k][_sign(e)], omega[k][_sign(-e)]
            if in_acl(point, src):
                raise ContractViolation(f"pair {i} step {j}: chain point fell into acl(Omega)")
            c = consts[j]
            nonce = f"wit:{req.seed}:{i}:{j}"
            if j == l:
                target = prev + [alpha]
                case = "final"
            elif j in cls.J0:
                target = list(omega[wn.iota[j]][_sign(wn.eps[j])])
                case = "J0"
            elif j in cls.Jplus:
                target = src + [point]
                case = "J+"
            else:
                case = "J-"
            if case != "J-":
                other = oracle.realize(
                    src, point, dst, avoid=lambda z, c=c, t=target: in_acl(c.apply(z), t), nonce=nonce
                )
                log.append({"pair": i, "step": j, "case": case, "base": len(src), "avoid": len(target)})
            else:
                other = _case_three(req, oracle, src, dst, point, c, j, wn, nonce, log, i)
            src.append(point)
            dst.append(other)
            chain.append(other)
            nxt = c.apply(other)
            if j < l:
                chain.append(nxt)
                point = nxt
            else:
                beta = nxt
        pairs_n.append((alpha, beta))
        flat += [alpha, beta]
        chains.append(chain)

    pairs = [(c0.apply_inverse(a), c0.apply_inverse(b)) for a, b in pairs_n]
    h_maps = {}
    for k, (plus, minus) in omega.items():
        h_maps[k] = (list(plus), list(minus))
    cmaps = {
        name: a.graph() for name, a in sorted(req.bindings.items()) if isinstance(a, LazyAutomorphism)
    }
    cert = WitnessCertificate(
        word=w,
        normalized=wn,
        structure=oracle.name,
        seed=req.seed,
        branch=req.branch,
        pairs=pairs,
        normalized_pairs=pairs_n,
        chains=chains,
        h_maps=h_maps,
        log=log,
        constant_maps=cmaps,
        warnings=warnings,
    )
    cert.structure_data = oracle.export(cert.points())
    return cert


def _case_three(req, oracle, src, dst, point, c, j, wn, nonce, log, i):
    """Choose w_j^{-e(j)} so that its image under c_j escapes acl(Omega^- + itself)."""
    name = const_str(wn.consts[j])
    if req.branch == "strong":  # unreachable after the precondition check
        raise PreconditionError("critical index under the strong branch")
    if req.branch == "convex":
        base = oracle.realize(src, point, dst, nonce=nonce + ":sigma")
        closure = oracle.acl(list(dst) + [base]) - {base}
        punct = sorted(closure, key=oracle.format_point)
    rejected: set = set()
    for attempt in range(req.retry_budget):
        try:
            if req.branch == "convex":
                cand = oracle.realize(punct, base, punct, avoid=rejected, nonce=f"{nonce}:try{attempt}")
            else:
                cand = oracle.realize(src, point, dst, avoid=rejected, nonce=f"{nonce}:try{attempt}")
        except ExhaustedSearch:
            break
        rejected.add(cand)
        if not oracle.in_acl(c.apply(cand), list(dst) + [cand]):
            log.append({"pair": i, "step": j, "case": "J-", "branch": req.branch, "attempts": attempt + 1})
            return cand
    raise RetryExhausted(j, name, req.retry_budget)


# --------------------------------------------------------------------------
# verification


@dataclass
class Verdict:
    ok: bool
    failure: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def _constant_evaluator(cert: WitnessCertificate, bindings: Mapping):
    fwd, back = {}, {}
    for name, graph in cert.constant_maps.items():
        fwd[name] = dict(graph)
        back[name] = {b: a for a, b in graph}

    def run(c, p, inverse=False):
        letters = reversed(c) if inverse else c
        for name, e in letters:
            e = -e if inverse else e
            if name in fwd:
                table = fwd[name] if e == 1 else back[name]
                if p not in table:
                    raise KeyError(f"{name} is not recorded at {p}")
                p = table[p]
            else:
                a = bindings[name]
                p = a.apply(p) if e == 1 else a.apply_inverse(p)
        return p

    return run


def verify_certificate(cert, req: WitnessRequest) -> Verdict:
    """Replay every claim of ``cert`` with oracle primitives and constant maps only."""
    try:
        checker = req.oracle.restored(cert.structure_data if isinstance(cert, WitnessCertificate) else cert.get("structure_data", {}))
        if not isinstance(cert, WitnessCertificate):
            cert = WitnessCertificate.from_json(cert, checker)
        return _verify(cert, req, checker)
    except (KeyError, ValueError, TypeError, IndexError) as exc:
        return Verdict(False, f"malformed certificate: {exc}")


def _verify(cert: WitnessCertificate, req: WitnessRequest, checker: StructureOracle) -> Verdict:
    w = cert.word
    if w != req.word:
        return Verdict(False, "certificate is for a different word")
    wn = w.conjugate_first_constant() if w.consts[0] else w
    if wn != cert.normalized:
        return Verdict(False, "normalized word does not match")
    if len(cert.pairs) != req.n or len(cert.chains) != req.n:
        return Verdict(False, f"expected {req.n} pairs")
    run = _constant_evaluator(cert, req.bindings)
    for name, graph in cert.constant_maps.items():
        dom = [a for a, _ in graph]
        if len(set(dom)) != len(dom) or not checker.same_type(dom, [b for _, b in graph]):
            return Verdict(False, f"recorded map of constant {name} is not a partial isomorphism")
    l = wn.length
    hmap = {k: dict(zip(d, r)) for k, (d, r) in cert.h_maps.items()}
    for k, (d, r) in cert.h_maps.items():
        if len(d) != len(r) or len(set(d)) != len(d) or len(set(r)) != len(r):
            return Verdict(False, f"h_{k} is not a bijection")
        if not checker.same_type(d, r):
            return Verdict(False, f"h_{k}: Omega^+ and Omega^- have different types")
    for i, ((a, b), (an, bn), ch) in enumerate(zip(cert.pairs, cert.normalized_pairs, cert.chains)):
        if len(ch) != 2 * l:
            return Verdict(False, f"chain {i} has wrong length")
        if run(w.consts[0], a) != an or run(w.consts[0], b) != bn:
            return Verdict(False, f"pair {i} does not match its normalized form under c_0")
        if ch[0] != an:
            return Verdict(False, f"chain {i} does not start at alpha")
        for j in range(1, l + 1):
            k, e = wn.iota[j - 1], wn.eps[j - 1]
            here, there = ch[2 * j - 2], ch[2 * j - 1]
            plus, minus = (here, there) if e == 1 else (there, here)
            if hmap.get(k, {}).get(plus) != minus:
                return Verdict(False, f"chain {i} step {j}: h_{k} does not send {plus} to {minus}")
            nxt = run(wn.consts[j], there)
            want = ch[2 * j] if j < l else bn
            if nxt != want:
                return Verdict(False, f"chain {i} step {j}: omega.c_{j} != next chain point")
    flat = [p for ab in cert.pairs for p in ab]
    if not checker.staggered_independent(flat):
        return Verdict(False, "pairs are not staggered algebraically independent")
    return Verdict(True)


def lazy_completion(cert: WitnessCertificate, oracle: StructureOracle, seed=0) -> dict:
    return {
        k: LazyAutomorphism(oracle, PartialIso(oracle, d, r), seed=seed, name=f"h{k}")
        for k, (d, r) in cert.h_maps.items()
    }


def evaluate_pairs(cert: WitnessCertificate, req: WitnessRequest) -> bool:
    """Direct evaluation: alpha_i . w(h) == beta_i with h completed lazily."""
    h = lazy_completion(cert, req.oracle, req.seed)
    wmap = substitute(cert.word, h, req.bindings)
    return all(wmap.apply(a) == b for a, b in cert.pairs)


def refute_mixed_identity(req: WitnessRequest) -> dict:
    cert = build_witness(req)
    verdict = verify_certificate(cert, req)
    a, b = cert.pairs[0]
    fmt = req.oracle.format_point
    return {
        "certificate": cert.to_json(req.oracle),
        "verified": verdict.ok,
        "failure": verdict.failure,
        "moved_point": {"point": fmt(a), "image": fmt(b)},
        "conclusion": "w is not a mixed identity" if verdict.ok and a != b else "no conclusion",
    }


def sym_nonsingular_pipeline(
    word: WordWithConstants,
    bindings: Mapping[str, Automorphism],
    oracle: StructureOracle | None = None,
    seed: int = 0,
    retry_budget: int = 64,
) -> dict:
    """Refute a non-singular word over the pure set via collapse plus Hamming distance."""
    oracle = oracle or PureSet(seed=seed)
    if not isinstance(oracle, PureSet):
        raise PreconditionError("the pipeline works over the pure set only")
    if word.is_singular():
        raise PreconditionError("word is singular")

    def size(c):
        return support_size(resolve_constant(c, bindings))

    collapsed, f = collapse_critical(word, lambda c: size(c) < INFINITE, size)
    branch = "strong" if collapsed.is_strong() else "slender"
    req = WitnessRequest(collapsed, bindings, oracle, n=f + 2, branch=branch, retry_budget=retry_budget, seed=seed)
    cert = build_witness(req)
    verdict = verify_certificate(cert, req)
    h = lazy_completion(cert, oracle, seed)
    orig = substitute(word, h, bindings)
    new = substitute(collapsed, h, bindings)
    disagree = sum(1 for a, _ in cert.pairs if orig.apply(a) != new.apply(a))
    moved = [(a, orig.apply(a)) for a, _ in cert.pairs if orig.apply(a) != a]
    return {
        "word": str(word),
        "collapsed": str(collapsed),
        "collapsed_word": collapsed,
        "f": f,
        "n": f + 2,
        "branch": branch,
        "certificate": cert,
        "verified": verdict.ok,
        "failure": verdict.failure,
        "disagreements": disagree,
        "moved_point": moved[0] if moved else None,
        "conclusion": (
            f"w'(h) moves the {f + 2} points alpha_i while dist(w(h), w'(h)) <= {f}, so w(h) != id"
            if verdict.ok and moved
            else "no conclusion"
        ),
    }

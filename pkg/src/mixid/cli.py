"""Command-line front end: ``mixid <command> WORD [options]``.

Exit codes: 0 success or verified, 1 refuted or violations found,
2 inconclusive, 3 usage or parse error, 4 engine failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, fields
from fractions import Fraction
from pathlib import Path

from . import __version__
from .automorphisms import UnsupportedRepresentation, is_slender, is_small, support_size
from .constants_io import ConstantsError, load_constants
from .dsl import ParseError, parse_word
from .germs import (
    ContentMismatch,
    Inconclusive,
    PLHomeo,
    SingularInput,
    commutator_bound,
    germ_of_word,
    nonvanishing_witness,
    onevar_bound,
)
from .metabelian import is_in_derived, is_in_second_derived
from .structures import STRUCTURES, make_oracle
from .structures.base import ContractViolation, ExhaustedSearch
from .witness import (
    PreconditionError,
    RetryExhausted,
    WitnessRequest,
    build_witness,
    verify_certificate,
)
from .words import WordWithConstants, const_str, resolve_constant
from .zoo import IdentityCandidate, shipped, verify_identity

EXIT_OK, EXIT_REFUTED, EXIT_INCONCLUSIVE, EXIT_USAGE, EXIT_ENGINE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    structure: str = "set"
    constants: str | None = None
    seed: int = 0
    n: int = 1
    trials: int = 200
    points: int = 50
    retry_budget: int = 64
    branch: str = "strong"
    eta: str = "1/2"
    json: bool = False
    out: str | None = None

    def __post_init__(self):
        if not -(1 << 63) <= self.seed < (1 << 64):
            raise UsageError("seed must fit in 64 bits")

    @classmethod
    def from_file(cls, path: str) -> dict:
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise UsageError("config must be a JSON object")
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise UsageError(f"unknown config fields: {', '.join(unknown)}")
        return data


def _emit(report: dict, cfg: RunConfig, text: str) -> None:
    blob = json.dumps(report, sort_keys=True, indent=2)
    if cfg.out:
        Path(cfg.out).write_text(blob + "\n")
    print(blob if cfg.json else text)


def _word(text: str) -> WordWithConstants:
    return parse_word(text)


def _constants(cfg: RunConfig, oracle=None) -> dict:
    if cfg.constants is None:
        return {}
    return load_constants(Path(cfg.constants), oracle)


def _check_bound(w: WordWithConstants, consts: dict) -> None:
    missing = sorted(w.constant_names() - set(consts))
    if missing:
        raise UsageError(f"unknown constant(s): {', '.join(missing)}")


def _sets(s) -> list:
    return sorted(s)


# --------------------------------------------------------------------------
# commands


def cmd_analyze(text: str, cfg: RunConfig) -> int:
    w = _word(text)
    consts = _constants(cfg, make_oracle(cfg.structure, cfg.seed)) if cfg.constants else None
    if consts is not None:
        _check_bound(w, consts)
    cls = w.classify()
    u = w.content()
    report = {
        "word": str(w),
        "reduced": w.to_json(),
        "l": w.length,
        "r": w.r,
        "J0": _sets(cls.J0),
        "Jplus": _sets(cls.Jplus),
        "Jminus": _sets(cls.Jminus),
        "critical": [{"index": j, "constant": const_str(c)} for j, c in cls.critical],
        "strong": w.is_strong(),
        "singular": w.is_singular(),
        "content": str(u),
    }
    if w.r <= 2:
        report["content_in_derived"] = is_in_derived(u)
        report["content_in_second_derived"] = is_in_second_derived(u)
    if consts:
        det = []
        for j, c in cls.critical:
            a = resolve_constant(c, consts)
            entry = {"index": j, "constant": const_str(c)}
            for key, fn in (("small", is_small), ("slender", is_slender)):
                try:
                    entry[key] = fn(a)
                except UnsupportedRepresentation:
                    entry[key] = "undecided"
            try:
                s = support_size(a)
                entry["support_size"] = "inf" if s == float("inf") else s
            except UnsupportedRepresentation:
                entry["support_size"] = "undecided"
            det.append(entry)
        report["critical_detectors"] = det
    lines = [
        f"word      {w}",
        f"l = {w.length}, r = {w.r}",
        f"J0 = {report['J0']}  J+ = {report['Jplus']}  J- = {report['Jminus']}",
        "critical  " + (", ".join(f"{c['index']}:{c['constant']}" for c in report["critical"]) or "none"),
        f"content   {u}",
        f"strong = {w.is_strong()}, singular = {w.is_singular()}",
    ]
    if "content_in_second_derived" in report:
        lines.append(f"content in F2'' = {report['content_in_second_derived']}")
    _emit(report, cfg, "\n".join(lines))
    return EXIT_OK


def cmd_witness(text: str, cfg: RunConfig, check: str | None = None) -> int:
    w = _word(text)
    oracle = make_oracle(cfg.structure, cfg.seed)
    consts = _constants(cfg, oracle)
    _check_bound(w, consts)
    req = WitnessRequest(w, consts, oracle, cfg.n, cfg.branch, cfg.retry_budget, cfg.seed)
    if check:
        try:
            data = json.loads(Path(check).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read certificate {check}: {exc}") from exc
        if isinstance(data, dict) and "certificate" in data:
            data = data["certificate"]
        verdict = verify_certificate(data, req)
        report = {"certificate": check, "verified": verdict.ok, "failure": verdict.failure}
        _emit(report, cfg, f"certificate {check}: {'verified' if verdict.ok else 'REJECTED ' + str(verdict.failure)}")
        return EXIT_OK if verdict.ok else EXIT_ENGINE
    try:
        cert = build_witness(req)
    except RetryExhausted as exc:
        report = {
            "word": str(w),
            "structure": oracle.name,
            "error": "retry-exhausted",
            "step": exc.j,
            "constant": exc.constant,
            "budget": exc.budget,
            "message": str(exc),
        }
        _emit(report, cfg, f"engine failure: {exc}")
        return EXIT_ENGINE
    verdict = verify_certificate(cert.to_json(oracle), req)
    fmt = oracle.format_point
    report = {
        "word": str(w),
        "structure": oracle.name,
        "branch": req.branch,
        "n": req.n,
        "seed": cfg.seed,
        "verified": verdict.ok,
        "failure": verdict.failure,
        "pairs": [[fmt(a), fmt(b)] for a, b in cert.pairs],
        "warnings": cert.warnings,
        "certificate": cert.to_json(oracle),
    }
    lines = [f"word {w} over {oracle.name}, branch {req.branch}, n = {req.n}"]
    lines += [f"  alpha_{i} = {fmt(a)}  ->  beta_{i} = {fmt(b)}" for i, (a, b) in enumerate(cert.pairs)]
    lines += [f"  warning: {x}" for x in cert.warnings]
    lines.append("certificate verified" if verdict.ok else f"certificate REJECTED: {verdict.failure}")
    _emit(report, cfg, "\n".join(lines))
    return EXIT_OK if verdict.ok else EXIT_ENGINE


def cmd_verify_identity(target: str, cfg: RunConfig) -> int:
    try:
        cand = shipped(target)
    except KeyError:
        if cfg.structure not in ("dlo", "cyclic", "cyclic-pm"):
            raise UsageError("custom identities need --structure dlo, cyclic or cyclic-pm") from None
        w = _word(target)
        consts = _constants(cfg)
        _check_bound(w, consts)
        cand = IdentityCandidate("custom", w, consts, cfg.structure, "command line")
    rep = verify_identity(cand, cfg.trials, cfg.points, cfg.seed)
    v = rep["violations"]
    lines = [
        f"{rep['candidate']}: {rep['word']} over {rep['structure']}",
        f"{rep['trials']} trials x {rep['points']} points, seed {rep['seed']}: {len(v)} violations",
        f"singular = {rep['singular']}, small critical constants: "
        + (", ".join(f"{c['index']}:{c['constant']}" for c in rep["small_critical_constants"]) or "none"),
    ]
    if cand.structure == "cyclic-pm":
        lines.append(f"orientation reversing trials: {rep['orientation_reversing_trials']}")
    lines += [f"  violation: trial {x['trial']} at {x['point']} -> {x['got']}" for x in v[:5]]
    lines.append(f"({rep['note']})")
    _emit(rep, cfg, "\n".join(lines))
    return EXIT_REFUTED if v else EXIT_OK


def cmd_germ(text: str, cfg: RunConfig) -> int:
    w = _word(text)
    if w.constant_names():
        raise UsageError("germ expects a word without constants")
    if w.r > 2:
        raise UsageError("germ expects a word in x and y")
    u = w.content()
    g = germ_of_word(u)
    report = {
        "word": str(u),
        "e": g.e,
        "P": str(g.P),
        "P_coefficients": g.P.to_json(),
        "germ": str(g),
        "in_derived": is_in_derived(u),
        "in_second_derived": is_in_second_derived(u),
    }
    code = EXIT_OK
    lines = [f"u = {u}", f"germ  {g}", f"e = {g.e}, P = {g.P}"]
    if report["in_derived"]:
        res = nonvanishing_witness(u)
        report["nonvanishing"] = res.to_json()
        if isinstance(res, Inconclusive):
            code = EXIT_INCONCLUSIVE
            lines.append(f"inconclusive: {res.reason}")
        else:
            lines.append(f"P({res.kappa}) = {res.value} != 0 with lambda = {res.lam}")
    _emit(report, cfg, "\n".join(lines))
    return code


def _pl_constants(cfg: RunConfig) -> dict:
    consts = _constants(cfg)
    bad = sorted(n for n, c in consts.items() if not isinstance(c, PLHomeo))
    if bad:
        raise UsageError(f"constants {', '.join(bad)} must have kind 'plhomeo'")
    return consts


def cmd_onevar(text: str, cfg: RunConfig) -> int:
    w = _word(text)
    consts = _pl_constants(cfg)
    _check_bound(w, consts)
    res = onevar_bound(w, consts)
    report = {"word": str(w), **res.to_json(), "threshold_respected": res.threshold_respected()}
    lines = [
        f"w = {w}: e = {res.e}, l = {res.l}, C = log({res.M})",
        f"lambda = {res.lam} > exp(lC/|e|) = {report['threshold_float']:.6g}",
        f"w(g_lambda) moves {res.point} to {res.image}",
    ]
    _emit(report, cfg, "\n".join(lines))
    return EXIT_OK


def cmd_commutator(text: str, cfg: RunConfig) -> int:
    w = _word(text)
    consts = _pl_constants(cfg)
    _check_bound(w, consts)
    try:
        eta = Fraction(cfg.eta)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad eta {cfg.eta!r}") from exc
    res = commutator_bound(w, consts, eta)
    report = {"word": str(w), **res.to_json()}
    chain = "none" if res.chain is None else ", ".join(f"eta^{c}" for c in res.chain)
    lines = [
        f"w = {w}, eta = {res.eta}",
        f"chain  {chain}",
        f"bound  lambda * eta^{res.E} > 1 for lambda = {res.lam}",
        "verified" if res.verified else "not verified",
    ]
    _emit(report, cfg, "\n".join(lines))
    return EXIT_OK if res.verified else EXIT_INCONCLUSIVE


def cmd_list_structures(cfg: RunConfig) -> int:
    rows = []
    for name in STRUCTURES:
        o = make_oracle(name.replace(":k", ":2").replace(":q", ":2"))
        rows.append(
            {
                "name": name,
                "signature": o.signature,
                "no_algebraicity": o.no_algebraicity,
                "algebraically_convex": o.algebraically_convex,
            }
        )
    text = "\n".join(
        f"{r['name']:8s} {r['signature']}  [noalg={r['no_algebraicity']}, convex={r['algebraically_convex']}]"
        for r in rows
    )
    _emit({"structures": rows}, cfg, text)
    return EXIT_OK


# --------------------------------------------------------------------------
# argument handling


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with RunConfig fields; flags override it")
    common.add_argument("--structure", help="set, dlo, rado, poset, perm2, cyclic, eqrel:K, vec:Q")
    common.add_argument("--constants", help="JSON constants file")
    common.add_argument("--seed", type=int)
    common.add_argument("--n", type=int, help="number of witness pairs")
    common.add_argument("--trials", type=int)
    common.add_argument("--points", type=int)
    common.add_argument("--retry-budget", type=int, dest="retry_budget")
    common.add_argument("--branch", choices=["strong", "convex", "convex-no-small", "slender", "no-slender"])
    common.add_argument("--eta", help="lower slope bound near 0 (commutator)")
    common.add_argument("--json", action="store_true", default=None, help="print the JSON report")
    common.add_argument("--out", help="also write the JSON report here")

    p = argparse.ArgumentParser(prog="mixid", description="Mixed identities: analysis, witnesses and germ bounds.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name, helptext in (
        ("analyze", "reduce and classify a word with constants"),
        ("witness", "build and verify a certificate that the word is not an identity"),
        ("germ", "germ at 0 of a word in f_kappa, g_lambda"),
        ("onevar", "one-variable lambda bound with PL constants"),
        ("commutator", "lower bound for words with content [x, y]"),
    ):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("word")
        if name == "witness":
            sp.add_argument("--check", metavar="CERT", help="verify a stored certificate instead of building one")
    sp = sub.add_parser("verify-identity", parents=[common], help="randomized check of a candidate identity")
    sp.add_argument("target", help="dlo, cyclic, cyclic-pm or a word")
    sub.add_parser("list-structures", parents=[common], help="list the available structures")
    return p


def make_config(ns: argparse.Namespace) -> RunConfig:
    data = RunConfig.from_file(ns.config) if ns.config else {}
    for f in fields(RunConfig):
        v = getattr(ns, f.name, None)
        if v is not None:
            data[f.name] = v
    try:
        return RunConfig(**data)
    except TypeError as exc:
        raise UsageError(str(exc)) from exc


def run(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        cfg = make_config(ns)
        if ns.command == "analyze":
            return cmd_analyze(ns.word, cfg)
        if ns.command == "witness":
            return cmd_witness(ns.word, cfg, ns.check)
        if ns.command == "verify-identity":
            return cmd_verify_identity(ns.target, cfg)
        if ns.command == "germ":
            return cmd_germ(ns.word, cfg)
        if ns.command == "onevar":
            return cmd_onevar(ns.word, cfg)
        if ns.command == "commutator":
            return cmd_commutator(ns.word, cfg)
        return cmd_list_structures(cfg)
    except ParseError as exc:
        print(f"parse error: {exc}\n{exc.pointer()}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, ConstantsError, PreconditionError, SingularInput, ContentMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ExhaustedSearch, ContractViolation, OverflowError) as exc:
        print(f"engine failure: {exc}", file=sys.stderr)
        return EXIT_ENGINE
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()

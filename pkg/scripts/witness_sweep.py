"""Build and verify witnesses for random words on every structure.

    python3 scripts/witness_sweep.py --words 50 --n 4 --out sweep.json
"""

from __future__ import annotations

import argparse
import json
import random
import statistics
import time
from dataclasses import asdict, dataclass, field

from mixid.generators import case_three_instance, random_constants, random_word
from mixid.structures import make_oracle
from mixid.witness import RetryExhausted, WitnessRequest, build_witness, verify_certificate


@dataclass
class SweepConfig:
    words: int = 50
    n: int = 4
    l_max: int = 8
    seed: int = 0
    structures: list = field(
        default_factory=lambda: ["set", "dlo", "rado", "eqrel:3", "poset", "perm2", "cyclic", "vec:2"]
    )
    case_three: list = field(default_factory=lambda: ["dlo", "rado", "poset"])


def run_one(structure: str, branch: str, cfg: SweepConfig) -> dict:
    rng = random.Random(f"{cfg.seed}:{structure}:{branch}")
    times, failures = [], []
    for i in range(cfg.words):
        o = make_oracle(structure, seed=cfg.seed + i)
        if branch == "strong":
            w = random_word(rng, cfg.l_max, 3, "strong")
            consts = random_constants(structure, w.constant_names(), rng, o)
        else:
            w, consts = case_three_instance(structure, rng, o, l_max=min(cfg.l_max, 6))
        req = WitnessRequest(w, consts, o, n=cfg.n, branch=branch, seed=cfg.seed + i)
        t0 = time.perf_counter()
        try:
            ok = verify_certificate(build_witness(req), req).ok
        except RetryExhausted as exc:
            ok = False
            failures.append({"word": str(w), "error": str(exc)})
        times.append(time.perf_counter() - t0)
        if not ok and (not failures or failures[-1]["word"] != str(w)):
            failures.append({"word": str(w), "error": "certificate rejected"})
    return {
        "structure": structure,
        "branch": branch,
        "words": cfg.words,
        "failures": failures,
        "median_s": round(statistics.median(times), 4),
        "max_s": round(max(times), 4),
    }


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--words", type=int, default=SweepConfig.words)
    p.add_argument("--n", type=int, default=SweepConfig.n)
    p.add_argument("--seed", type=int, default=SweepConfig.seed)
    p.add_argument("--out")
    a = p.parse_args()
    cfg = SweepConfig(words=a.words, n=a.n, seed=a.seed)
    rows = [run_one(s, "strong", cfg) for s in cfg.structures]
    rows += [run_one(s, b, cfg) for s in cfg.case_three for b in ("convex", "slender")]
    for r in rows:
        print(f"{r['structure']:8s} {r['branch']:8s} fail {len(r['failures']):3d}/{r['words']}  "
              f"median {r['median_s']:.4f} s  max {r['max_s']:.4f} s")
    if a.out:
        with open(a.out, "w") as fh:
            json.dump({"config": asdict(cfg), "rows": rows}, fh, indent=2, sort_keys=True)


if __name__ == "__main__":
    main()

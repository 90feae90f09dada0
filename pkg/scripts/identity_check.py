"""Randomized check of the shipped singular identities and the broken control."""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from mixid.zoo import build_broken_dlo_candidate, shipped, verify_identity


@dataclass
class CheckConfig:
    trials: int = 200
    points: int = 50
    seed: int = 0


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--trials", type=int, default=CheckConfig.trials)
    p.add_argument("--points", type=int, default=CheckConfig.points)
    p.add_argument("--seed", type=int, default=CheckConfig.seed)
    a = p.parse_args()
    cfg = CheckConfig(a.trials, a.points, a.seed)
    cands = [shipped(n) for n in ("dlo", "cyclic", "cyclic-pm")] + [build_broken_dlo_candidate()]
    for cand in cands:
        rep = verify_identity(cand, cfg.trials, cfg.points, cfg.seed)
        small = ", ".join(c["constant"] for c in rep["small_critical_constants"][:4]) or "none"
        print(f"{cand.name:10s} {len(rep['violations']):4d} violations in {cfg.trials}x{cfg.points}"
              f"  reversing trials {rep['orientation_reversing_trials']:3d}  small critical: {small}")
    print("(randomized evidence, not a proof)")


if __name__ == "__main__":
    main()

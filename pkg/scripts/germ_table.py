"""Germ data of [x^n, y^m], plus the one-variable and commutator bounds on small examples."""

from __future__ import annotations

import argparse
import random
from fractions import Fraction

from mixid.dsl import parse_word
from mixid.generators import dyadic_bump, random_half_double, random_onevar_word
from mixid.germs import PLHomeo, commutator_bound, germ_of_word, onevar_bound


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--range", type=int, default=3, dest="k")
    p.add_argument("--seed", type=int, default=0)
    a = p.parse_args()

    print("germ of [x^n, y^m]  (log Lambda = log(lambda) * P(kappa))")
    for n in range(1, a.k + 1):
        for m in range(1, a.k + 1):
            g = germ_of_word(parse_word(f"[x^{n},y^{m}]").content())
            print(f"  n={n} m={m}  e={g.e}  P = {g.P}")

    print("\none-variable bound, constants with slopes in {1/2, 1, 2}")
    rng = random.Random(a.seed)
    for _ in range(5):
        w = random_onevar_word(rng)
        consts = {n: random_half_double(rng) for n in ("h1", "h2", "h3")}
        r = onevar_bound(w, consts)
        print(f"  {str(w):40s} e={r.e:+d} l={r.l} M={r.M}  lambda={r.lam}  {r.point} -> {r.image}")

    print("\ncommutator pattern h1 x h2 y h3 x^-1 h4 y^-1")
    w = parse_word("h1*x*h2*y*h3*x^-1*h4*y^-1")
    for eta in (Fraction(1), Fraction(1, 2), Fraction(1, 4)):
        h = PLHomeo.identity() if eta == 1 else dyadic_bump(Fraction(0), Fraction(1, 64)).inverse()
        if eta == Fraction(1, 4):
            h = h.then(h)
        r = commutator_bound(w, {f"h{i}": h for i in range(1, 5)}, eta)
        print(f"  eta={eta}  E={r.E}  lambda={r.lam}  verified={r.verified}  t0={r.t0}")


if __name__ == "__main__":
    main()

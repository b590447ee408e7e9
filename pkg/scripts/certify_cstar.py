"""Evaluate the real class on many randomly decorated lifted cycles and tabulate the results.

    python scripts/certify_cstar.py --genus 3 --rounds 20 --seed 1
"""
import argparse
import random
import sys
from fractions import Fraction

from fluxcocycles import bar_calculus as bc
from fluxcocycles import cocycles as cc
from fluxcocycles.scalars import PolyScalar, format_poly, parse_poly


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--genus", type=int, default=2)
    p.add_argument("--rounds", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--r", action="append", help="coefficient r (repeatable); default 1, -3/2, t1")
    args = p.parse_args(argv)

    rng = random.Random(args.seed)
    values = [parse_poly(r) for r in (args.r or ["1", "-3/2", "t1"])]
    bad = 0
    print(f"{'r':>8}  {'i':>2}  {'terms':>5}  {'alpha':>10}  {'pair(kv,fC)':>12}  {'pair(fC,fC)':>12}")
    for r in values:
        for _ in range(args.rounds):
            i = rng.randint(1, args.genus - 1)
            choices = cc.random_cstar_choices(rng, args.genus, i, ("t1", "t2"))
            z = cc.build_cstar_cycle(r, i, args.genus, choices, rng)
            rep = cc.check_fluxc_decomposition(z)
            ok = rep.holds and rep.alpha == r * 2
            bad += not ok
            print(f"{format_poly(r):>8}  {i:>2}  {len(z.terms):>5}  {format_poly(rep.alpha):>10}  "
                  f"{format_poly(rep.pair_kv_fluxc):>12}  {format_poly(rep.pair_fluxc_fluxc):>12}"
                  + ("" if ok else "  MISMATCH"))
    # rescaling the kv normalisation scales the value
    s = Fraction(5, 2)
    z = cc.build_cstar_cycle(1, 1, args.genus, cc.random_cstar_choices(rng, args.genus, 1, kv_scale=s), rng)
    scaled = bc.evaluate(cc.alpha(1), z)
    print(f"kv normalisation {s}: alpha = {format_poly(scaled)}")
    bad += scaled != PolyScalar.const(2 * s)
    print("all values equal 2r" if not bad else f"{bad} mismatches")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())

"""Level-2 refined class on the cross product of two lifted cycles, by Pfaffian and by brute force.

    python scripts/level2_product.py [--literal]
"""
import argparse
import sys
import time

from fluxcocycles import bar_calculus as bc
from fluxcocycles import cocycles as cc
from fluxcocycles.scalars import format_poly, format_sym, project, symbols


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--literal", action="store_true", help="also run the 24-permutation sum (slower)")
    args = p.parse_args(argv)

    t1, t2 = symbols("t1 t2")
    z1, z2 = cc.build_cstar_cycle(t1, 1, 2), cc.build_cstar_cycle(t2, 1, 2)
    a1 = bc.evaluate(cc.alpha_tilde(1), z1)
    a2 = bc.evaluate(cc.alpha_tilde(1), z2)
    print("alpha~(z1) =", format_sym(a1), "->", format_poly(project(a1)))
    print("alpha~(z2) =", format_sym(a2), "->", format_poly(project(a2)))

    x = bc.cross_product(z1, z2, 2, 2)
    print(f"cross product: {len(x.terms)} terms, cycle = {bc.is_cycle(x)}")
    start = time.perf_counter()
    value = bc.evaluate(cc.alpha_tilde(2), x)
    print(f"pfaffian route: {time.perf_counter() - start:.1f}s")
    print("alpha~(2)(z1 x z2) =", format_sym(value))
    print("projection         =", format_poly(project(value)))
    print("2 alpha(z1) alpha(z2) =", format_poly(project(a1) * project(a2) * 2))

    if args.literal:
        start = time.perf_counter()
        literal = bc.evaluate(bc.BarCochain(4, lambda t: cc.alpha_tilde_literal(2, t), "sym"), x)
        print(f"literal route: {time.perf_counter() - start:.1f}s, agrees = {literal == value}")
        if literal != value:
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Write an eval input file holding an explicit lifted cycle, ready for ``fluxcoc eval``.

    python scripts/export_cstar_example.py --r 3 --out cstar.json
    fluxcoc eval cstar.json          # prints 6
"""
import argparse
import json
import random
import sys

from fluxcocycles import cocycles as cc
from fluxcocycles.descriptors import chain_to_json
from fluxcocycles.scalars import parse_poly


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--r", default="1")
    p.add_argument("--genus", type=int, default=2)
    p.add_argument("--i", type=int, default=1)
    p.add_argument("--seed", type=int, help="randomise decorations and the boundary witness")
    p.add_argument("--cocycle", default="alpha")
    p.add_argument("--out", default="-")
    args = p.parse_args(argv)

    rng = random.Random(args.seed) if args.seed is not None else None
    choices = cc.random_cstar_choices(rng, args.genus, args.i) if rng else None
    z = cc.build_cstar_cycle(parse_poly(args.r), args.i, args.genus, choices, rng)
    text = json.dumps({"cocycle": args.cocycle, "genus": args.genus, "chain": chain_to_json(z)}, indent=1)
    if args.out == "-":
        print(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        print(f"wrote {len(z.terms)} terms to {args.out}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())

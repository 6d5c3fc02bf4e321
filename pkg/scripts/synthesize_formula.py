"""Synthesize an existential formula defining the right coordinate of a
product and check it on products drawn from a fixture family."""

import argparse
import itertools
import time

from centrax import fixtures
from centrax.central import check_formula_R
from centrax.free import synthesize

FAMILY = {"C2-meet": "meet", "C2-lattice": "distributive", "Z2": "ring"}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("generator", nargs="?", default="C2-meet", choices=sorted(FAMILY))
    ap.add_argument("--max-size", type=int, default=8)
    args = ap.parse_args()

    gen = fixtures.algebras()[args.generator]
    start = time.perf_counter()
    syn = synthesize(gen)
    print(f"F(x,y) has {syn.two.size} elements, F(y) has {syn.one.size}")
    print(f"chain length k = {syn.chain.k}, parameters p = {len(syn.chain.params)}")
    print(syn.formula.to_sexpr())

    fam = fixtures.family(FAMILY[args.generator], args.max_size)
    bad = [(A.name, B.name) for A, B in itertools.product(fam, repeat=2) if not check_formula_R(syn.formula, A, B)]
    print(f"checked {len(fam) ** 2} products in {time.perf_counter() - start:.2f}s, {len(bad)} failures")
    for pair in bad:
        print("  fails on", pair)


if __name__ == "__main__":
    main()

"""Sweep every homomorphism between small fixtures and compare pushout
stability of central elements with preservation of complementary pairs.

Finite evidence only; agreement here says nothing about a whole variety.
"""

import argparse
import itertools
from collections import Counter

from centrax import fixtures
from centrax.algebra import all_homomorphisms
from centrax.central import analyze_homomorphism
from centrax.errors import PremiseError
from centrax.transfer import stability_pushout_check


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-size", type=int, default=4)
    args = ap.parse_args()

    algs = [A for A in fixtures.algebras().values() if A.size <= args.max_size]
    tally = Counter()
    for A, B in itertools.product(algs, repeat=2):
        if A.signature != B.signature:
            continue
        for f in all_homomorphisms(A, B):
            rep = analyze_homomorphism(f)
            try:
                stable = stability_pushout_check(f).stable
            except PremiseError:
                tally["premise fails"] += 1
                continue
            agree = stable == rep.preserves_complementary
            tally["agree" if agree else "DISAGREE"] += 1
            tally["stable" if stable else "unstable"] += 1
            if not agree:
                print("disagreement:", A.name, "->", B.name, f.map)
    for key, n in sorted(tally.items()):
        print(f"{key:>14}: {n}")


if __name__ == "__main__":
    main()

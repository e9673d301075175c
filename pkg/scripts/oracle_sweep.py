"""Cross-check computed modular polynomials against brute-force isogeny enumeration.

    python3 scripts/oracle_sweep.py [--samples N] [--seed S]
"""

import argparse
import random

from drinfeld_modpoly.oracle import cross_check, random_split_module
from drinfeld_modpoly.pipeline import compute_modpoly

CASES = [(2, 2, (3,)), (3, 2, (4,)), (4, 2, (5,)), (2, 3, (1, 2)), (2, 3, (4, 1)), (2, 3, (7, 0))]


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    for q, r, e in CASES:
        for t in ("outgoing", "incoming"):
            mp = compute_modpoly(q, r, e, t)
            fails = 0
            for _ in range(args.samples):
                m, ts = random_split_module(q, r, rng)
                fails += not cross_check(mp, m, ts).passed
            print(f"q={q} r={r} J={e} {t}: {args.samples - fails}/{args.samples} passed")


if __name__ == "__main__":
    main()

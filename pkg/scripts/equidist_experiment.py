#!/usr/bin/env python3
"""Equidistribution of s_q(p^2) mod m over primes, across several (q, m).

Prints one line per configuration: residue counts, pi(x), the maximal
relative discrepancy, and whether (q, m) sits in the coprimality regime of
the headline equidistribution statement.
"""

import argparse
import time

from sqdigits.harness import equidist_counts


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--x", type=lambda s: int(float(s)), default=10**6)
    ap.add_argument("--configs", default="2:2,2:3,3:2,3:5,5:3,10:7",
                    help="comma-separated q:m pairs")
    args = ap.parse_args()

    print(f"x = {args.x}")
    for pair in args.configs.split(","):
        q, m = (int(v) for v in pair.split(":"))
        t0 = time.time()
        rep = equidist_counts(args.x, q, m)
        regime = "coprime" if rep.coprime_to_q_minus_1 else "NOT coprime"
        print(
            f"q={q:3d} m={m:3d} ({regime:12s})  pi(x)={rep.pi_x}  "
            f"max_rel_disc={rep.max_rel_discrepancy:.5f}  "
            f"counts={list(rep.counts)}  [{time.time() - t0:.2f}s]"
        )


if __name__ == "__main__":
    main()

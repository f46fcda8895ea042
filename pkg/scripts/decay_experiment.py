#!/usr/bin/env python3
"""Decay of |sum_{n<=x} Lambda(n) f(n^2) e(theta n)| / x along growing x.

The von Mangoldt weighted digital sum along squares should lose a power of
x for proper f.  The asymptotic saving exponent is far too small to read
off at desk scale, but the trend (value shrinking, negative log-log slope)
is already very clear.
"""

import argparse
import time
from fractions import Fraction

from sqdigits.harness import decay_fit
from sqdigits.qmult import make_digit_exponential


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, default=2)
    ap.add_argument("--gamma", default="1/2")
    ap.add_argument("--theta", type=float, default=0.0)
    ap.add_argument("--xs", default="1e4,1e5,1e6,1e7")
    args = ap.parse_args()

    f = make_digit_exponential(args.q, Fraction(args.gamma))
    xs = [int(float(s)) for s in args.xs.split(",")]
    t0 = time.time()
    fit = decay_fit(xs, f, args.theta)
    for x, v in zip(fit.xs, fit.values):
        print(f"x = {x:>12d}   |S(x)|/x = {v:.8f}")
    print(f"fitted log-log slope: {fit.fitted_exponent:+.4f}   [{time.time() - t0:.1f}s]")


if __name__ == "__main__":
    main()

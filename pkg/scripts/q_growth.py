#!/usr/bin/env python3
"""Growth of the distinct-field count Q_n(X) against X**(kappa_n/3) / log X."""
import argparse
import math
import time

from trisieve.sieve import q_exact
from trisieve.trinomial import kappa


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=5)
    ap.add_argument("--exponents", type=int, nargs="+", default=[4, 5, 6, 7, 8, 9])
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    k = float(kappa(args.n))
    print("X,q_lower_bound,floor,log_q_over_log_x,seconds")
    for e in args.exponents:
        x = 10**e
        t0 = time.perf_counter()
        q = q_exact(args.n, x, args.threads)
        dt = time.perf_counter() - t0
        floor = x ** (k / 3) / math.log(x)
        fit = math.log(q) / math.log(x) if q > 1 else 0.0
        print(f"{x},{q},{floor:.6g},{fit:.4f},{dt:.2f}")


if __name__ == "__main__":
    main()

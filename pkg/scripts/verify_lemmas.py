#!/usr/bin/env python3
"""Measured constants for the character-sum and irreducible-count bounds, per degree."""
import argparse
import sys

from trisieve.cli import RunReport, render, verify_lemmas


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--degrees", type=int, nargs="+", default=[5, 9])
    ap.add_argument("--lmax", type=int, default=300)
    args = ap.parse_args()

    combined = RunReport("verify-lemmas", {"degrees": args.degrees, "lmax": args.lmax})
    for n in args.degrees:
        combined.results += [{"n": n, **row} for row in verify_lemmas(n, args.lmax).results]
    sys.stdout.write(render(combined, "csv"))
    sys.exit(1 if any(r["status"] == "FAIL" for r in combined.results) else 0)


if __name__ == "__main__":
    main()

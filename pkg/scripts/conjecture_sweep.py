#!/usr/bin/env python3
"""Sweep Hurwitz stability of the r-Stirling peak polynomials T_{n,r}.

Prints one row per (r, n) with the right half-plane root count, then a
summary.  Exit status is 0 when every instance is stable.
"""

import argparse
import sys

from stabcomb.families import family
from stabcomb.hurwitz import is_hurwitz_stable, rhp_root_count


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--r", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--n", type=int, default=10, help="largest index")
    args = ap.parse_args(argv)

    unstable = []
    print(f"{'r':>3} {'n':>3} {'deg':>4} {'rhp':>4}  stable")
    for r in args.r:
        t = family("stirling_peaks_T", {"r": r}, args.n)
        for n in t.indices:
            p = t[n]
            rep = rhp_root_count(p)
            ok = is_hurwitz_stable(p)
            print(f"{r:>3} {n:>3} {p.degree:>4} {rep.strictly_right_count:>4}  {'yes' if ok else 'NO'}")
            if not ok:
                unstable.append((r, n))
    total = sum(len(family("stirling_peaks_T", {"r": r}, args.n).indices) for r in args.r)
    print(f"\n{total - len(unstable)}/{total} stable")
    if unstable:
        print("unstable:", unstable)
    return 1 if unstable else 0


if __name__ == "__main__":
    sys.exit(main())

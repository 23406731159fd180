#!/usr/bin/env python3
"""Survey Hurwitz stability of Turan expressions across the built-in families.

Runs the turan-hurwitz suite (parameter grids included) and prints a
pass count per family.  Use --json to dump every certificate instead.
"""

import argparse
import sys
from collections import Counter

from stabcomb.suites import TURAN_TARGETS, _grid_gen_eulerian, _grid_swr, exit_status, run_suite


def targets(grids: bool):
    out = list(TURAN_TARGETS)
    if grids:
        out += [("gen_eulerian_rows", p) for p in _grid_gen_eulerian()]
        out += [("swr_rows", p) for p in _grid_swr()]
    return out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=10)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--no-grids", action="store_true", help="skip the parameter grids")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)

    certs = run_suite("turan-hurwitz", targets(not args.no_grids), args.n, jobs=args.jobs)
    if args.json:
        for c in certs:
            print(c.to_json())
        return exit_status(certs)

    seen, passed = Counter(), Counter()
    for c in certs:
        seen[c.family] += 1
        passed[c.family] += c.passed
    width = max(map(len, seen))
    for fam in seen:
        print(f"{fam:<{width}}  {passed[fam]:>5}/{seen[fam]:<5}")
    for c in certs:
        if not c.passed:
            print("FAIL", c.to_json())
    return exit_status(certs)


if __name__ == "__main__":
    sys.exit(main())

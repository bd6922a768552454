"""Run the acceptance criteria and print one line per criterion.

    python3 scripts/run_acceptance.py            # all criteria
    python3 scripts/run_acceptance.py 4 8 12     # a subset
    python3 scripts/run_acceptance.py --detail   # also list failing checks
"""

import argparse
import sys
import time

from heatlab.acceptance import CRITERIA, run_acceptance


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("criteria", nargs="*", type=int)
    parser.add_argument("--detail", action="store_true")
    args = parser.parse_args()
    bad = [c for c in args.criteria if not 1 <= c <= len(CRITERIA)]
    if bad:
        parser.error(f"criteria out of range: {bad}")
    start = time.perf_counter()
    results = run_acceptance(args.criteria or None)
    for res in results:
        print(res.line())
        if args.detail:
            for r in res.blocking:
                if not r.passed:
                    print(f"    {r.check_name}: {r.quantity!r} vs {r.oracle!r} (err {r.abs_error:.3e})")
    n_pass = sum(r.passed for r in results)
    print(f"{n_pass}/{len(results)} criteria passed in {time.perf_counter() - start:.1f} s")
    return 0 if n_pass == len(results) else 3


if __name__ == "__main__":
    sys.exit(main())

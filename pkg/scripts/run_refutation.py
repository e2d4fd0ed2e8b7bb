"""Run the refutation search on the built-in candidates and print each trace."""

import argparse
import time

from blindcounter import refute
from blindcounter.cli import CANDIDATES
from blindcounter.refute import RefuteConfig, report_lines


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("candidates", nargs="*", help=f"subset of {sorted(CANDIDATES)}")
    ap.add_argument("--box", type=int, default=3)
    ap.add_argument("--circuits", type=int, default=2)
    args = ap.parse_args()
    unknown = set(args.candidates) - set(CANDIDATES)
    if unknown:
        ap.error(f"unknown candidates: {sorted(unknown)}")

    config = RefuteConfig(box=args.box, circuit_bound=args.circuits)
    for name in args.candidates or sorted(CANDIDATES):
        start = time.perf_counter()
        result = refute(CANDIDATES[name](), 2, config)
        elapsed = time.perf_counter() - start
        print(f"== {name} ({elapsed:.3f}s)")
        for line in report_lines(result, 2):
            print("  " + line)


if __name__ == "__main__":
    main()

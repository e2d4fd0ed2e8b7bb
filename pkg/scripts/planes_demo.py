"""Grid coverage for random affine translates: per-translate counts against k^m."""

import argparse
import random
from fractions import Fraction

from blindcounter.lattice import AffineTranslate, grid_coverage_check


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--seed", type=int, default=5)
    ap.add_argument("--aligned", action="store_true", help="hyperplanes x_n = c, which meet the k^m bound")
    args = ap.parse_args()

    rng = random.Random(args.seed)
    n = args.n

    def rat():
        return Fraction(rng.randint(-3, 3), rng.randint(1, 3))

    print(" m  r  k  counts          r*k^m  k^n  uncovered")
    for _ in range(args.trials):
        m = rng.randint(1, n - 1)
        r = rng.randint(1, 4)
        if args.aligned:
            m = n - 1
            axes = [[int(i == a) for i in range(n)] for a in range(m)]
            ts = [AffineTranslate.of([0] * m + [c], axes) for c in range(1, r + 1)]
        else:
            ts = [AffineTranslate.of([rat() for _ in range(n)], [[rat() for _ in range(n)] for _ in range(m)])
                  for _ in range(r)]
        rep = grid_coverage_check(n, ts)
        k = rep.k
        print(f"{m:2d} {r:2d} {k:2d}  {str(rep.counts):<15} {r * k**m:5d} {k**n:4d}  {rep.uncovered}")


if __name__ == "__main__":
    main()

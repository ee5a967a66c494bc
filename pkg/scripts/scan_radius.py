"""Scan the admissible radius window for the smallest certifiable valence bound.

For each R strictly inside (2 eps, 5 eps / 2), bisect for the largest
certifiable lower bound c and report floor((B(R) - b(eps/2)) / c).

Usage: python scripts/scan_radius.py [--epsilon 1.0986122886681098] [--points 9]
"""

import argparse
import math

from hypercert import optimize_radius, radius_grid


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--epsilon", type=float, default=math.log(3.0))
    parser.add_argument("--points", type=int, default=9)
    parser.add_argument("--c-tol", type=float, default=1e-5)
    args = parser.parse_args()

    grid = radius_grid(args.epsilon, args.points)
    scan = optimize_radius(args.epsilon, grid, c_tol=args.c_tol)
    print(f"epsilon = {scan.epsilon:.17g}, b(eps/2) = {scan.b_half_eps:.17g}")
    print(f"{'R':>20}  {'certified c':>20}  valence")
    for entry in scan.entries:
        print(f"{entry.R:>20.12f}  {entry.certified_c:>20.12f}  {entry.valence_bound}")
    for radius, reason in scan.skipped:
        print(f"{radius:>20.12f}  skipped: {reason}")
    best = scan.best
    print(f"\nbest: R = {best.R:.12f}, c = {best.certified_c:.12f}, valence = {best.valence_bound}")


if __name__ == "__main__":
    main()

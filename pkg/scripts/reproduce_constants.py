"""Reproduce the headline constants end to end.

Verifies the 47-cell reference partition, then prints the constants the
certificate implies: the valence bound 314 and the rank/homology
coefficients.  Everything is recomputed from scratch; nothing is read from
disk.

Usage: python scripts/reproduce_constants.py [--quad-tol 1e-10]
"""

import argparse
import math

from hypercert import (
    QuadratureConfig,
    REFERENCE_RADIUS,
    b_ratio,
    ball_volume,
    lambda0,
    lambda1,
    lambda1_compact_p2,
    lambda1_noncompact,
    packing_density,
    reference_valence_bound,
    verify_reference_partition,
)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quad-tol", type=float, default=1e-10)
    args = parser.parse_args()
    quad = QuadratureConfig(abs_tol=args.quad_tol)

    cert = verify_reference_partition()
    print(f"reference partition: {cert.cell_count} cells, all good")
    print(f"certified lower bound for Phi on I: {cert.certified_c:.17g}")
    margins = [min(c.margins[k] for c in cert.cells) for k in range(3)]
    print(f"worst goodness margins: {margins[0]:.6g}, {margins[1]:.6g}, {margins[2]:.6g}")
    print()

    half = 0.5 * math.log(3.0)
    b_half = b_ratio(half, quad)
    print(f"B(log3/2)  = {ball_volume(half):.17g}")
    print(f"d(log3/2)  = {packing_density(half, quad):.17g}")
    print(f"b(log3/2)  = {b_half:.17g}")
    quotient = (ball_volume(REFERENCE_RADIUS) - b_half) / 0.496
    print(f"quotient   = {quotient:.17g}")
    print(f"valence    = {reference_valence_bound(quad)}")
    print()
    print(f"lambda0    = {lambda0(quad):.17g}")
    print(f"lambda1    = {lambda1(quad):.17g}")
    print(f"lambda1'   = {lambda1_noncompact(quad):.17g}")
    print(f"lambda1''  = {lambda1_compact_p2(quad):.17g}")


if __name__ == "__main__":
    main()

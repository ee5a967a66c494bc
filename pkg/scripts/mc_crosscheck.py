"""Cross-check every closed-form volume against the Monte-Carlo estimator.

Runs the default configuration of each shape at the requested sample count
and prints the deviation in standard errors.

Usage: python scripts/mc_crosscheck.py [--samples 1000000] [--seed 801125]
"""

import argparse

from hypercert.cli import _SHAPE_DEFAULTS, _mc_setup
from hypercert.mcoracle import estimate_volume


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=1_000_000)
    parser.add_argument("--seed", type=int, default=801125)
    args = parser.parse_args()

    print(f"{'shape':>10}  {'closed form':>14}  {'MC mean':>14}  {'std err':>12}  sigma")
    failures = 0
    for shape in sorted(_SHAPE_DEFAULTS):
        predicate, center, radius, closed = _mc_setup(shape, _SHAPE_DEFAULTS[shape])
        est = estimate_volume(predicate, center, radius, args.samples, args.seed)
        sigma = abs(est.mean - closed) / est.standard_error if est.standard_error else 0.0
        flag = "" if sigma <= 3.0 else "  <-- OUTSIDE 3 SIGMA"
        failures += sigma > 3.0
        print(f"{shape:>10}  {closed:>14.8f}  {est.mean:>14.8f}  {est.standard_error:>12.8f}  {sigma:5.2f}{flag}")
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()

"""Stratify a rational grid of parameter points by node count.

    python scripts/fitting_grid.py --nodes "t0*t1" "t0 - t1" --parameters 2 --radius 2
"""
import argparse
import itertools
from fractions import Fraction

from tree_moduli import LocalFamily, diagonal_presentation, parse_poly, stratify_points
from tree_moduli.fitting import fitting_rank_at, stratum_counts


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nodes", nargs="*", default=["t0", "t1"])
    ap.add_argument("--parameters", type=int, default=2)
    ap.add_argument("--radius", type=int, default=1)
    ap.add_argument("--step", type=Fraction, default=Fraction(1))
    args = ap.parse_args()

    m = args.parameters
    fam = LocalFamily(tuple(parse_poly(s, m) for s in args.nodes), m)
    axis = [args.step * i for i in range(-args.radius, args.radius + 1)]
    points = list(itertools.product(axis, repeat=m))
    strata = stratify_points(fam, points)
    pres = diagonal_presentation(fam)
    disagreements = sum(1 for p, s in zip(points, strata) if fitting_rank_at(pres, p) != s.exact)

    print(f"family: {', '.join(str(f) for f in fam.node_equations)}")
    print(f"{len(points)} points on a grid of radius {args.radius}, step {args.step}")
    for k, c in stratum_counts(strata).items():
        print(f"  T^{k}: {c}")
    print(f"minor-vanishing route disagreements: {disagreements}")


if __name__ == "__main__":
    main()

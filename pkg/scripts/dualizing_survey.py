"""Survey h0/h1 of omega^k over all strata up to a node bound.

Shows where pushing forward the dual dualizing sheaf stops being a rank-3
bundle: h1(omega^v) = h0(omega^2) becomes nonzero once a component carries
four nodes.

    python scripts/dualizing_survey.py --max-nodes 5
"""
import argparse
from collections import Counter

from tree_moduli import canonical_code, enumerate_trees, h0, h1, multiplicity_profile, power_bundle


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-nodes", type=int, default=5)
    ap.add_argument("--powers", type=int, nargs="+", default=[-1, 2])
    args = ap.parse_args()

    header = ["nodes", "code", "max_mult"] + [f"h0/h1(w^{k})" for k in args.powers]
    print("\t".join(header))
    summary = Counter()
    for n in range(1, args.max_nodes + 2):
        for t in enumerate_trees(n):
            cells = []
            for k in args.powers:
                b = power_bundle(t, k)
                cells.append(f"{h0(b).dimension}/{h1(b)}")
            mm = multiplicity_profile(t).max_multiplicity
            summary[(mm >= 4, h1(power_bundle(t, -1)) == 0)] += 1
            print("\t".join([str(n - 1), canonical_code(t), str(mm)] + cells))

    print()
    for (high, vanishing), count in sorted(summary.items()):
        print(f"max multiplicity {'>=4' if high else '<=3'}: h1(w^v)=0 {'yes' if vanishing else 'no '} -> {count} strata")


if __name__ == "__main__":
    main()

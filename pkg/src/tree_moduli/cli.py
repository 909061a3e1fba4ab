"""Command line entry point: ``tree-moduli <subcommand> ...``.

Exit status is 0 on success, 2 on usage errors, 1 on computation errors.
Results go to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .cohomology import euler_characteristic, h0, h1, parse_bundle
from .errors import InvalidTree, TreeModuliError
from .fitting import LocalFamily, parse_point, stratify_points, stratum_counts
from .strata import (
    SpecializationPoset,
    StratumDescriptor,
    deformation_space,
    specialization_poset,
    stratum_descriptor,
)
from .trees import RationalTree, automorphism_group, edge_action, multiplicity_profile

DEFAULT_MAX_N = 12
DASH = "—"


class UsageError(Exception):
    pass


def _cap(args) -> int:
    if args.cap is not None:
        return args.cap
    env = os.environ.get("TREE_MODULI_MAX_N")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"TREE_MODULI_MAX_N must be an integer, got {env!r}")
    return DEFAULT_MAX_N


def _check_max_nodes(args) -> int:
    n = args.max_nodes
    if n < 0:
        raise UsageError(f"--max-nodes must be nonnegative, got {n}")
    cap = _cap(args)
    if n > cap:
        raise UsageError(f"--max-nodes {n} exceeds the enumeration cap {cap} (see --cap / TREE_MODULI_MAX_N)")
    return n


def _tree(text: str) -> RationalTree:
    try:
        return RationalTree.from_json(text)
    except InvalidTree as exc:
        raise UsageError(f"--tree: {exc}")


def _frac(x: Fraction):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def render_strata_table(strata: list[StratumDescriptor], fmt: str = "table") -> str:
    strata = sorted(strata, key=lambda s: (s.node_count, s.code))
    if fmt == "json":
        return json.dumps({"strata": [s.to_json() for s in strata]}, indent=2)
    if fmt != "table":
        raise ValueError(f"unknown format {fmt!r}")
    header = ["code", "nodes", "codim", "max_mult", "|Aut(G)|", "dim Aut(C)", "stack dim"]
    rows = [header]
    for s in strata:
        aut = s.aut_structure
        rows.append([
            s.code,
            str(s.node_count),
            str(s.codimension),
            str(s.max_multiplicity),
            str(s.component_order),
            str(aut.dimension) if aut else DASH,
            str(s.stack_dimension) if aut else DASH,
        ])
    widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    return "\n".join(lines)


def render_poset(p: SpecializationPoset, fmt: str = "dot") -> str:
    strata = sorted(p.strata, key=lambda s: (s.node_count, s.code))
    if fmt == "json":
        return json.dumps(
            {"strata": [s.to_json() for s in strata], "covers": [list(c) for c in p.cover_relations]},
            indent=2,
        )
    if fmt != "dot":
        raise ValueError(f"unknown format {fmt!r}")
    ids = {s.code: f"s{i}" for i, s in enumerate(strata)}
    lines = ["digraph strata {", "  rankdir=BT;"]
    for k in sorted({s.node_count for s in strata}):
        members = " ".join(ids[s.code] + ";" for s in strata if s.node_count == k)
        lines.append(f"  {{ rank=same; {members} }}")
    for s in strata:
        lines.append(f'  {ids[s.code]} [label="{s.code}\\nnodes={s.node_count}", nodes={s.node_count}];')
    # arrows point from the smoother stratum to the more degenerate one
    for a, b in p.cover_relations:
        lines.append(f"  {ids[b]} -> {ids[a]};")
    lines.append("}")
    return "\n".join(lines)


def cmd_strata(args) -> str:
    n = _check_max_nodes(args)
    return render_strata_table(list(specialization_poset(n).strata), args.format)


def cmd_poset(args) -> str:
    n = _check_max_nodes(args)
    return render_poset(specialization_poset(n), args.format)


def cmd_aut(args) -> str:
    t = _tree(args.tree)
    g = automorphism_group(t)
    prof = multiplicity_profile(t)
    s = stratum_descriptor(t)
    out = {
        "tree": t.to_json(),
        "code": s.code,
        "order": g.order,
        "generators": [list(p) for p in g.generators],
        "edge_action": [list(p) for p in edge_action(t)],
        "delta_counts": {str(k): v for k, v in prof.delta_counts.items()},
        "max_multiplicity": prof.max_multiplicity,
        "codim": s.codimension,
        "deformation_dim": deformation_space(t).dimension,
    }
    if s.aut_structure is not None:
        a = s.aut_structure
        out.update(
            aut_dim=a.dimension,
            e_factors=a.e_factor_count,
            gm_factors=a.gm_factor_count,
            is_smooth_exception=a.is_smooth_exception,
            stack_dim=s.stack_dimension,
        )
    return json.dumps(out, indent=2)


def cmd_cohom(args) -> str:
    t = _tree(args.tree)
    try:
        bundle = parse_bundle(args.bundle, t)
    except ValueError as exc:
        raise UsageError(f"--bundle: {exc}")
    space = h0(bundle)
    text = f"h0={space.dimension} h1={h1(bundle)} chi={euler_characteristic(bundle)}"
    if args.basis:
        basis = [[[_frac(c) for c in coeffs] for coeffs in sec] for sec in space.basis]
        text += "\n" + json.dumps({"degrees": list(bundle.degrees), "basis": basis})
    return text


def cmd_fitting(args) -> str:
    try:
        fam = LocalFamily.from_json(args.family)
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"--family: {exc}")
    try:
        raw = json.loads(args.points)
        points = [parse_point(p) for p in raw]
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise UsageError(f"--points: {exc}")
    idx = stratify_points(fam, points)
    out = {
        "points": [
            {"point": [_frac(x) for x in p], "exact": s.exact, "at_least": s.at_least}
            for p, s in zip(points, idx)
        ],
        "counts": {str(k): v for k, v in stratum_counts(idx).items()},
    }
    return json.dumps(out, indent=2)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tree-moduli", description=__doc__.splitlines()[0])
    parser.add_argument("--cap", type=int, default=None,
                        help=f"largest allowed --max-nodes (default {DEFAULT_MAX_N} or $TREE_MODULI_MAX_N)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("strata", help="table of strata with at most N nodes")
    p.add_argument("--max-nodes", type=int, required=True)
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.set_defaults(func=cmd_strata)

    p = sub.add_parser("poset", help="specialization poset of strata")
    p.add_argument("--max-nodes", type=int, required=True)
    p.add_argument("--format", choices=["dot", "json"], default="dot")
    p.set_defaults(func=cmd_poset)

    p = sub.add_parser("aut", help="automorphism data of one tree")
    p.add_argument("--tree", required=True)
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("cohom", help="h0/h1 of a line bundle on one tree")
    p.add_argument("--tree", required=True)
    p.add_argument("--bundle", required=True)
    p.add_argument("--basis", action="store_true")
    p.set_defaults(func=cmd_cohom)

    p = sub.add_parser("fitting", help="node-count strata of parameter points")
    p.add_argument("--family", required=True)
    p.add_argument("--points", required=True)
    p.set_defaults(func=cmd_fitting)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (TreeModuliError, ValueError) as exc:
        print(f"{parser.prog} {args.command}: {exc}", file=sys.stderr)
        return 1
    print(text)
    return 0


def main() -> None:
    sys.exit(run())

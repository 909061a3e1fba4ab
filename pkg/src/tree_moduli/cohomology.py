"""Cohomology of line bundles on trees of projective lines.

A line bundle is a degree per component. A global section is a binary form of
degree ``d_v`` on every component ``v`` (nothing when ``d_v < 0``) such that
the two branches through each node take the same value there. On a tree every
choice of gluing scalars gives an isomorphic bundle, so evaluating forms at
fixed homogeneous representatives loses nothing:

    H^0 = kernel of  (+)_v H^0(O(d_v))  ->  k^{nodes}
    chi = sum_v (d_v + 1) - #nodes,    H^1 = H^0 - chi.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InternalInconsistency
from .linalg import nullspace
from .trees import RationalTree

# Homogeneous representatives [X, Y] of 0, 1, infinity.
ZERO = (0, 1)
ONE = (1, 1)
INFINITY = (1, 0)


def marking(position: int, count: int) -> tuple[int, int]:
    """Point assigned to the ``position``-th of ``count`` nodes on one component.

    One node sits at infinity; two at 0 and infinity; three at 0, 1,
    infinity. Further nodes go to [1, 2], [1, 3], ... (the points 1/2, 1/3, ...).
    """
    if count == 1:
        return INFINITY
    if count == 2:
        return (ZERO, INFINITY)[position]
    if position < 3:
        return (ZERO, ONE, INFINITY)[position]
    return (1, position - 1)


@dataclass(frozen=True)
class NodeCoordinates:
    """``points[v][edge_index]``: the marking of that node on component ``v``."""

    points: tuple[dict[int, tuple[int, int]], ...]

    @classmethod
    def of(cls, t: RationalTree) -> "NodeCoordinates":
        pts = []
        for v in range(t.vertex_count):
            inc = t.incident_edges(v)
            pts.append({e: marking(i, len(inc)) for i, e in enumerate(inc)})
        return cls(tuple(pts))

    def at(self, v: int, edge: int) -> tuple[int, int]:
        return self.points[v][edge]


@dataclass(frozen=True)
class LineBundle:
    tree: RationalTree
    degrees: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if len(self.degrees) != self.tree.vertex_count:
            raise ValueError(
                f"need {self.tree.vertex_count} degrees, got {len(self.degrees)}"
            )

    def dual(self) -> "LineBundle":
        return LineBundle(self.tree, tuple(-d for d in self.degrees))

    def tensor(self, other: "LineBundle") -> "LineBundle":
        if other.tree != self.tree:
            raise ValueError("bundles live on different trees")
        return LineBundle(self.tree, tuple(a + b for a, b in zip(self.degrees, other.degrees)))


Section = tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class SectionSpace:
    """Global sections; each basis member holds one coefficient vector per vertex.

    Coefficients of a degree-``d`` form are listed as X^d, X^(d-1) Y, ..., Y^d.
    """

    bundle: LineBundle
    basis: tuple[Section, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def dualizing_degrees(t: RationalTree) -> list[int]:
    """Degree of the dualizing sheaf on each component: nodes on it minus 2."""
    return [e - 2 for e in t.degrees()]


def power_bundle(t: RationalTree, k: int) -> LineBundle:
    """``omega^k``; k = -1 is the dual, k = 0 the structure sheaf."""
    return LineBundle(t, tuple(k * d for d in dualizing_degrees(t)))


def structure_sheaf(t: RationalTree) -> LineBundle:
    return power_bundle(t, 0)


def evaluate_form(coeffs: Sequence, point: tuple[int, int]):
    """Value of sum_j c_j X^(d-j) Y^j at (X, Y) = point."""
    d = len(coeffs) - 1
    x, y = point
    return sum((c * x ** (d - j) * y**j for j, c in enumerate(coeffs)), Fraction(0))


def _layout(bundle: LineBundle) -> list[range]:
    """Column range of each vertex's coefficients (vertex-major)."""
    spans, start = [], 0
    for d in bundle.degrees:
        width = max(d + 1, 0)
        spans.append(range(start, start + width))
        start += width
    return spans


def gluing_matrix(bundle: LineBundle) -> tuple[list[list[int]], int]:
    """One row per node (canonical edge order): value on the low end minus value on the high end."""
    t = bundle.tree
    coords = NodeCoordinates.of(t)
    spans = _layout(bundle)
    ncols = spans[-1].stop if spans else 0
    rows = []
    for i, (a, b) in enumerate(t.edges):
        row = [0] * ncols
        for v, sign in ((a, 1), (b, -1)):
            d = bundle.degrees[v]
            if d < 0:
                continue
            x, y = coords.at(v, i)
            for j, col in enumerate(spans[v]):
                row[col] += sign * x ** (d - j) * y**j
        rows.append(row)
    return rows, ncols


def h0(bundle: LineBundle) -> SectionSpace:
    rows, ncols = gluing_matrix(bundle)
    spans = _layout(bundle)
    basis = []
    for vec in nullspace(rows, ncols):
        basis.append(tuple(tuple(vec[c] for c in span) for span in spans))
    return SectionSpace(bundle, tuple(basis))


def euler_characteristic(bundle: LineBundle) -> int:
    return sum(d + 1 for d in bundle.degrees) - bundle.tree.node_count


def h1(bundle: LineBundle) -> int:
    value = h0(bundle).dimension - euler_characteristic(bundle)
    if value < 0:
        raise InternalInconsistency(f"negative h1 ({value}) for degrees {bundle.degrees}")
    return value


def node_values(section: Section, bundle: LineBundle) -> list[tuple[Fraction, Fraction]]:
    """Values of the two branches at every node, in canonical edge order."""
    t = bundle.tree
    coords = NodeCoordinates.of(t)
    out = []
    for i, (a, b) in enumerate(t.edges):
        vals = []
        for v in (a, b):
            coeffs = section[v]
            vals.append(evaluate_form(coeffs, coords.at(v, i)) if coeffs else Fraction(0))
        out.append(tuple(vals))
    return out


_POWER = re.compile(r"dualizing-power:(-?\d+)$")
_DEGREES = re.compile(r"degrees:(-?\d+(?:,-?\d+)*)$")


def parse_bundle(spec: str, t: RationalTree) -> LineBundle:
    """Bundle specifier: ``dualizing``, ``dualizing-dual``, ``dualizing-power:<k>``
    or ``degrees:<d0,d1,...>``."""
    spec = spec.strip()
    if spec == "dualizing":
        return power_bundle(t, 1)
    if spec == "dualizing-dual":
        return power_bundle(t, -1)
    m = _POWER.match(spec)
    if m:
        return power_bundle(t, int(m.group(1)))
    m = _DEGREES.match(spec)
    if m:
        return LineBundle(t, tuple(int(x) for x in m.group(1).split(",")))
    raise ValueError(f"unrecognised bundle specifier {spec!r}")

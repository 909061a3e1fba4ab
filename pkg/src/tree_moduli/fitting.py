"""Fitting ideals and the node-count stratification of local families.

Near a curve with k nodes, a family over Spec A is locally ``xy = f_i`` at
each node, and the singular locus has structure sheaf ``prod A/(f_i)``,
presented by ``diag(f_1, ..., f_k)``. A parameter point lies in T^{>=j}
(at least j nodes) iff the Fitting ideal F_{j-1} vanishes there, and in T^j
iff additionally it is not in T^{>=j+1}.

Ideal membership is only ever tested pointwise, by exact evaluation.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Sequence

from .errors import ArityError
from .poly import Poly, evaluate, parse_poly


@dataclass(frozen=True)
class PresentationMatrix:
    """Matrix X of a presentation O^rows --X--> O^cols -> M -> 0, entries in Q[t]."""

    rows: int
    cols: int
    entries: tuple[tuple[Poly, ...], ...]
    variable_count: int = 0

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError(f"entries do not form a {self.rows}x{self.cols} matrix")
        nv = {p.variable_count for r in self.entries for p in r}
        if len(nv) > 1:
            raise ArityError("matrix entries over different numbers of variables")
        if nv:
            object.__setattr__(self, "variable_count", nv.pop())

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Poly]], nvars: int) -> "PresentationMatrix":
        rows = tuple(tuple(r) for r in rows)
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, rows, nvars)

    def at(self, point: Sequence) -> list[list[Fraction]]:
        return [[evaluate(p, point) for p in row] for row in self.entries]


def determinant(m: Sequence[Sequence[Poly]], nvars: int) -> Poly:
    """Leibniz expansion; matrices here are at most a handful of rows."""
    n = len(m)
    if n == 0:
        return Poly.one(nvars)
    total = Poly.zero(nvars)
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Poly.constant(-1 if inversions % 2 else 1, nvars)
        for i, j in enumerate(perm):
            term = term * m[i][j]
            if term.is_zero():
                break
        total = total + term
    return total


def fitting_generators(x: PresentationMatrix, i: int) -> list[Poly]:
    """Generators of F_i: the nonzero (cols - i)-minors of ``x``.

    Returns ``[1]`` (unit ideal) when cols - i <= 0 and ``[]`` (zero ideal)
    when cols - i exceeds both dimensions. Minors are taken in lexicographic
    row-subset then column-subset order, duplicates dropped, signs untouched.
    """
    if i < 0:
        raise ValueError("Fitting index must be nonnegative")
    size = x.cols - i
    nv = x.variable_count
    if size <= 0:
        return [Poly.one(nv)]
    if size > min(x.rows, x.cols):
        return []
    gens: list[Poly] = []
    seen = set()
    for rs in combinations(range(x.rows), size):
        for cs in combinations(range(x.cols), size):
            minor = determinant([[x.entries[r][c] for c in cs] for r in rs], nv)
            if not minor.is_zero() and minor not in seen:
                seen.add(minor)
                gens.append(minor)
    return gens


def vanishes_at(generators: Sequence[Poly], point: Sequence) -> bool:
    return all(evaluate(g, point) == 0 for g in generators)


@dataclass(frozen=True)
class LocalFamily:
    node_equations: tuple[Poly, ...]
    parameter_count: int

    def __post_init__(self):
        object.__setattr__(self, "node_equations", tuple(self.node_equations))
        for f in self.node_equations:
            if f.variable_count != self.parameter_count:
                raise ArityError(
                    f"node equation over {f.variable_count} variables, family has {self.parameter_count}"
                )

    @property
    def k(self) -> int:
        return len(self.node_equations)

    @classmethod
    def versal(cls, k: int) -> "LocalFamily":
        """The family ``f_i = t_i`` over k parameters."""
        return cls(tuple(Poly.var(i, k) for i in range(k)), k)

    @classmethod
    def from_json(cls, data) -> "LocalFamily":
        """``{"parameters": m, "nodes": ["t0*t1 - 1", "t0"]}``"""
        if isinstance(data, (str, bytes)):
            data = json.loads(data)
        m = int(data["parameters"])
        return cls(tuple(parse_poly(s, m) for s in data.get("nodes", [])), m)

    def to_json(self) -> dict:
        return {"parameters": self.parameter_count, "nodes": [str(f) for f in self.node_equations]}


@dataclass(frozen=True)
class StratumIndex:
    """``at_least``: largest j with the point in T^{>=j}; ``exact``: the j with the point in T^j."""

    at_least: int
    exact: int

    def in_at_least(self, k: int) -> bool:
        return k <= self.at_least


def _check_point(fam: LocalFamily, point: Sequence) -> None:
    if len(point) != fam.parameter_count:
        raise ArityError(f"point has {len(point)} coordinates, family has {fam.parameter_count} parameters")


def node_count_at(fam: LocalFamily, point: Sequence) -> StratumIndex:
    """Number of node equations vanishing at ``point``."""
    _check_point(fam, point)
    k = sum(1 for f in fam.node_equations if evaluate(f, point) == 0)
    return StratumIndex(k, k)


def fitting_rank_at(x: PresentationMatrix, point: Sequence) -> int:
    """Largest j such that every generator of F_{j-1}(x) vanishes at ``point``.

    For the diagonal presentation of a family this is the node count.
    """
    j = 0
    while vanishes_at(fitting_generators(x, j), point):
        j += 1
    return j


def stratify_points(fam: LocalFamily, points: Sequence[Sequence]) -> list[StratumIndex]:
    """Stratum of each point, in input order."""
    return [node_count_at(fam, p) for p in points]


def stratum_counts(indices: Sequence[StratumIndex]) -> dict[int, int]:
    c = Counter(s.exact for s in indices)
    return dict(sorted(c.items()))


def diagonal_presentation(fam: LocalFamily) -> PresentationMatrix:
    k, m = fam.k, fam.parameter_count
    zero = Poly.zero(m)
    rows = tuple(
        tuple(fam.node_equations[i] if i == j else zero for j in range(k)) for i in range(k)
    )
    return PresentationMatrix(k, k, rows, m)


def parse_point(values: Sequence) -> tuple[Fraction, ...]:
    """Coordinates as ints, or strings like ``"3/4"``."""
    return tuple(Fraction(v) for v in values)

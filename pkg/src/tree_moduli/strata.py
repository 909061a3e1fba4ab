"""Strata of the stack of rational nodal curves, indexed by dual trees.

For a tree whose components carry at most three nodes the curve is unique up
to isomorphism and its automorphism group splits as

    Aut(C) = Aut(tree) x| (G_m^{components with 2 nodes} x E^{components with 1 node})

where E (automorphisms of P^1 fixing infinity) has dimension 2. Components
with three nodes contribute nothing. The stratum is the classifying stack of
Aut(C), so we record its dimension as ``-dim Aut(C)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import MaxMultiplicityExceeded
from .trees import (
    AutGroup,
    Perm,
    RationalTree,
    automorphism_group,
    canonical_code,
    contract_edge,
    edge_permutation,
    enumerate_trees,
    multiplicity_profile,
    tree_from_code,
)

PGL2_DIMENSION = 3
E_DIMENSION = 2
GM_DIMENSION = 1


@dataclass(frozen=True)
class CurveAutStructure:
    dimension: int
    e_factor_count: int
    gm_factor_count: int
    component_group: AutGroup
    is_smooth_exception: bool = False

    def dimension_from_factors(self) -> int:
        if self.is_smooth_exception:
            return PGL2_DIMENSION
        return E_DIMENSION * self.e_factor_count + GM_DIMENSION * self.gm_factor_count


def curve_aut_structure(t: RationalTree) -> CurveAutStructure:
    """Aut(C) for the unique curve with dual tree ``t``.

    Raises MaxMultiplicityExceeded when some component has four or more nodes:
    the curve then has moduli (cross-ratios) and the splitting above fails.
    """
    prof = multiplicity_profile(t)
    if t.vertex_count == 1:
        return CurveAutStructure(PGL2_DIMENSION, 0, 0, automorphism_group(t), True)
    if prof.max_multiplicity > 3:
        raise MaxMultiplicityExceeded(
            f"maximal multiplicity {prof.max_multiplicity} > 3; Aut(C) is not determined by the tree"
        )
    e_count, gm_count = prof.count(1), prof.count(2)
    return CurveAutStructure(
        E_DIMENSION * e_count + GM_DIMENSION * gm_count,
        e_count,
        gm_count,
        automorphism_group(t),
    )


@dataclass(frozen=True)
class StratumDescriptor:
    tree: RationalTree
    code: str
    node_count: int
    codimension: int
    max_multiplicity: int
    aut_structure: CurveAutStructure | None = None
    component_order: int = 1

    @property
    def stack_dimension(self) -> int | None:
        if self.aut_structure is None:
            return None
        return -self.aut_structure.dimension

    def to_json(self) -> dict:
        out = {"code": self.code, "nodes": self.node_count, "codim": self.codimension}
        if self.aut_structure is not None:
            out["stack_dim"] = self.stack_dimension
            out["aut_dim"] = self.aut_structure.dimension
        out["aut_component_order"] = self.component_order
        return out


def stratum_descriptor(t: RationalTree) -> StratumDescriptor:
    try:
        aut = curve_aut_structure(t)
    except MaxMultiplicityExceeded:
        aut = None
    order = aut.component_group.order if aut else automorphism_group(t).order
    return StratumDescriptor(
        tree=t,
        code=canonical_code(t),
        node_count=t.node_count,
        codimension=t.node_count,
        max_multiplicity=multiplicity_profile(t).max_multiplicity,
        aut_structure=aut,
        component_order=order,
    )


@dataclass(frozen=True)
class DeformationSpace:
    """First-order smoothings: one line per node, permuted by Aut(tree)."""

    summand_labels: tuple[tuple[int, int], ...]
    aut_edge_action: tuple[Perm, ...] = field(default_factory=tuple)

    @property
    def dimension(self) -> int:
        return len(self.summand_labels)


def deformation_space(t: RationalTree) -> DeformationSpace:
    gens = automorphism_group(t).generators
    return DeformationSpace(t.edges, tuple(edge_permutation(t, g) for g in gens))


def summand_orbits(space: DeformationSpace) -> list[set[int]]:
    """Orbits of the node summands under the automorphism action."""
    parent = list(range(space.dimension))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for perm in space.aut_edge_action:
        for i, j in enumerate(perm):
            parent[find(i)] = find(j)
    orbits: dict[int, set[int]] = {}
    for i in range(space.dimension):
        orbits.setdefault(find(i), set()).add(i)
    return sorted(orbits.values(), key=min)


# -- specialization -----------------------------------------------------------


@lru_cache(maxsize=None)
def contractions(code: str) -> frozenset[str]:
    """Codes of all single-edge contractions of the tree with this code."""
    t = tree_from_code(code)
    return frozenset(canonical_code(contract_edge(t, e)) for e in t.edges)


@dataclass(frozen=True)
class SpecializationPoset:
    """Strata ordered by edge contraction (smoothing a node).

    ``cover_relations`` holds ``(a, b)`` code pairs where ``b`` is obtained from
    ``a`` by contracting one edge, so ``a`` has exactly one more node.
    """

    strata: tuple[StratumDescriptor, ...]
    cover_relations: tuple[tuple[str, str], ...]

    def by_code(self) -> dict[str, StratumDescriptor]:
        return {s.code: s for s in self.strata}

    def rank(self, k: int) -> list[StratumDescriptor]:
        return [s for s in self.strata if s.node_count == k]


def specialization_poset(max_nodes: int) -> SpecializationPoset:
    if max_nodes < 0:
        raise ValueError("max_nodes must be nonnegative")
    strata = []
    covers = []
    for n in range(1, max_nodes + 2):
        for t in enumerate_trees(n):
            s = stratum_descriptor(t)
            strata.append(s)
            covers.extend((s.code, c) for c in sorted(contractions(s.code)))
    return SpecializationPoset(tuple(strata), tuple(covers))


def is_specialization(a: RationalTree, b: RationalTree) -> bool:
    """True when ``b`` arises from ``a`` by contracting some set of edges."""
    target = canonical_code(b)
    if b.vertex_count > a.vertex_count:
        return False
    level = {canonical_code(a)}
    for _ in range(a.vertex_count - b.vertex_count):
        level = set().union(*(contractions(c) for c in level))
    return target in level

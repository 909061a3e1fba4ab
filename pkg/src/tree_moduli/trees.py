"""Dual trees of rational nodal curves.

A vertex is an irreducible component (a projective line), an edge is a node.
Trees are compared up to isomorphism through a center-rooted AHU code: a
balanced parenthesis string of length ``2 * vertex_count``.
"""
from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import groupby
from typing import Iterable, Sequence

from .errors import EdgeNotFound, InvalidSize, InvalidTree

Edge = tuple[int, int]
Perm = tuple[int, ...]


def _norm(e: Sequence[int]) -> Edge:
    a, b = int(e[0]), int(e[1])
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class RationalTree:
    """Dual graph of a genus-0 nodal curve.

    Edges are stored as sorted ``(low, high)`` pairs in ascending order; that
    order is the canonical edge order used everywhere else (node coordinates,
    edge actions, constraint assembly).
    """

    vertex_count: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        n = self.vertex_count
        if not isinstance(n, int) or n < 1:
            raise InvalidTree(f"vertex_count must be a positive integer, got {n!r}")
        try:
            edges = tuple(sorted(_norm(e) for e in self.edges))
        except (TypeError, ValueError, IndexError) as exc:
            raise InvalidTree(f"malformed edge list: {self.edges!r}") from exc
        object.__setattr__(self, "edges", edges)
        if len(edges) != n - 1:
            raise InvalidTree(f"a tree on {n} vertices has {n - 1} edges, got {len(edges)}")
        if len(set(edges)) != len(edges):
            raise InvalidTree("duplicate edge")
        for a, b in edges:
            if a == b:
                raise InvalidTree(f"self-loop at vertex {a}")
            if a < 0 or b >= n:
                raise InvalidTree(f"edge {(a, b)} uses a vertex outside 0..{n - 1}")
        # n - 1 edges + connected => acyclic
        seen = {0}
        stack = [0]
        adj = self.adjacency()
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != n:
            raise InvalidTree("graph is not connected")

    # -- constructors -----------------------------------------------------

    @classmethod
    def point(cls) -> "RationalTree":
        return cls(1, ())

    @classmethod
    def path(cls, n: int) -> "RationalTree":
        """Chain of ``n`` components."""
        return cls(n, tuple((i, i + 1) for i in range(n - 1)))

    @classmethod
    def star(cls, leaves: int) -> "RationalTree":
        """One central component (the last vertex) meeting ``leaves`` tails."""
        return cls(leaves + 1, tuple((i, leaves) for i in range(leaves)))

    @classmethod
    def from_json(cls, data) -> "RationalTree":
        """Accepts ``{"vertices": n, "edges": [[i, j], ...]}`` as a dict or a string."""
        if isinstance(data, (str, bytes)):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise InvalidTree(f"tree is not valid JSON: {exc}") from exc
        if not isinstance(data, dict) or "vertices" not in data:
            raise InvalidTree('tree JSON must be an object with "vertices" and "edges"')
        return cls(data["vertices"], tuple(tuple(e) for e in data.get("edges", [])))

    def to_json(self) -> dict:
        return {"vertices": self.vertex_count, "edges": [list(e) for e in self.edges]}

    # -- basic structure --------------------------------------------------

    @property
    def node_count(self) -> int:
        return len(self.edges)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        for nbrs in adj:
            nbrs.sort()
        return adj

    def degrees(self) -> list[int]:
        deg = [0] * self.vertex_count
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def incident_edges(self, v: int) -> list[int]:
        """Indices (into ``edges``) of the nodes lying on component ``v``."""
        return [i for i, e in enumerate(self.edges) if v in e]

    def relabel(self, perm: Sequence[int]) -> "RationalTree":
        """Image of the tree under the vertex bijection ``v -> perm[v]``."""
        if sorted(perm) != list(range(self.vertex_count)):
            raise InvalidTree("relabeling is not a permutation of the vertex ids")
        return RationalTree(self.vertex_count, tuple((perm[a], perm[b]) for a, b in self.edges))


# -- canonical forms ----------------------------------------------------------


def centers(t: RationalTree) -> list[int]:
    """The one or two central vertices, by iterated leaf removal."""
    n = t.vertex_count
    if n <= 2:
        return list(range(n))
    adj = t.adjacency()
    deg = [len(a) for a in adj]
    layer = [v for v in range(n) if deg[v] == 1]
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return sorted(layer)


def _rooted(adj: list[list[int]], root: int, exclude: int | None = None):
    """Subtree codes and children lists for the tree hanging from ``root``.

    ``exclude`` cuts the edge to that neighbour (used to split at a central
    edge). Children are returned sorted by subtree code.
    """
    parent = {root: exclude}
    order = [root]
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        for w in adj[v]:
            if w != parent[v]:
                parent[w] = v
                order.append(w)
    code: dict[int, str] = {}
    children: dict[int, list[int]] = {}
    for v in reversed(order):
        kids = sorted((w for w in adj[v] if w != parent[v]), key=lambda w: code[w])
        children[v] = kids
        code[v] = "(" + "".join(code[w] for w in kids) + ")"
    return code, children


def _canonical_root(t: RationalTree) -> tuple[int, int | None]:
    """Root vertex of the canonical code and, for bicentral trees, the other center."""
    cs = centers(t)
    if len(cs) == 1:
        return cs[0], None
    a, b = cs
    adj = t.adjacency()
    code_a = _rooted(adj, a, exclude=b)[0][a]
    code_b = _rooted(adj, b, exclude=a)[0][b]
    return (a, b) if code_a <= code_b else (b, a)


def canonical_code(t: RationalTree) -> str:
    """Isomorphism-invariant code; equal codes iff the trees are isomorphic."""
    root, _ = _canonical_root(t)
    code, _ = _rooted(t.adjacency(), root)
    return code[root]


def are_isomorphic(a: RationalTree, b: RationalTree) -> bool:
    return a.vertex_count == b.vertex_count and canonical_code(a) == canonical_code(b)


def tree_from_code(code: str) -> RationalTree:
    """Decode a parenthesis code; vertices are numbered in preorder."""
    edges = []
    stack: list[int] = []
    count = 0
    for ch in code:
        if ch == "(":
            if stack:
                edges.append((stack[-1], count))
            stack.append(count)
            count += 1
        elif ch == ")":
            if not stack:
                raise InvalidTree(f"unbalanced code {code!r}")
            stack.pop()
        else:
            raise InvalidTree(f"bad character {ch!r} in code")
    if stack or count == 0:
        raise InvalidTree(f"unbalanced code {code!r}")
    return RationalTree(count, tuple(edges))


# -- enumeration --------------------------------------------------------------


@lru_cache(maxsize=None)
def _rooted_codes(n: int) -> tuple[str, ...]:
    """All canonical rooted-tree codes on ``n`` vertices."""
    if n == 1:
        return ("()",)
    pool = sorted((c, len(c) // 2) for m in range(1, n) for c in _rooted_codes(m))
    out = []

    def extend(start: int, remaining: int, chosen: list[str]):
        if remaining == 0:
            out.append("(" + "".join(chosen) + ")")
            return
        for i in range(start, len(pool)):
            c, size = pool[i]
            if size <= remaining:
                chosen.append(c)
                extend(i, remaining - size, chosen)
                chosen.pop()

    extend(0, n - 1, [])
    return tuple(out)


def enumerate_trees(n: int) -> list[RationalTree]:
    """One tree per isomorphism class on ``n`` vertices, in canonical-code order.

    Rooted canonical trees are generated directly; a rooted tree is kept when
    its root is the canonical root of the underlying free tree.
    """
    if not isinstance(n, int) or n < 1:
        raise InvalidSize(f"tree size must be a positive integer, got {n!r}")
    reps = []
    for code in _rooted_codes(n):
        t = tree_from_code(code)
        if canonical_code(t) == code:
            reps.append((code, t))
    reps.sort(key=lambda ct: ct[0])
    return [t for _, t in reps]


# -- multiplicities -----------------------------------------------------------


@dataclass(frozen=True)
class MultiplicityProfile:
    """Vertices grouped by number of incident nodes.

    ``delta[n]`` lists the vertices of multiplicity ``n`` for every
    ``0 <= n <= max_multiplicity``.
    """

    delta: dict[int, tuple[int, ...]]
    delta_counts: dict[int, int]
    max_multiplicity: int

    def count(self, n: int) -> int:
        return self.delta_counts.get(n, 0)


def multiplicity_profile(t: RationalTree) -> MultiplicityProfile:
    deg = t.degrees()
    top = max(deg)
    delta = {n: tuple(v for v in range(t.vertex_count) if deg[v] == n) for n in range(top + 1)}
    return MultiplicityProfile(delta, {n: len(vs) for n, vs in delta.items()}, top)


# -- automorphisms ------------------------------------------------------------


@dataclass(frozen=True)
class AutGroup:
    """Graph automorphism group given by its order and vertex-permutation generators."""

    order: int
    generators: tuple[Perm, ...] = field(default_factory=tuple)

    def elements(self, limit: int = 100_000) -> set[Perm]:
        """Closure of the generators (breadth-first); for small groups only."""
        if not self.generators:
            return set()
        n = len(self.generators[0])
        ident = tuple(range(n))
        seen = {ident}
        queue = deque([ident])
        while queue:
            g = queue.popleft()
            for s in self.generators:
                h = tuple(s[g[v]] for v in range(n))
                if h not in seen:
                    seen.add(h)
                    if len(seen) > limit:
                        raise RuntimeError("group closure exceeded limit")
                    queue.append(h)
        return seen


def _match(u: int, w: int, children: dict[int, list[int]], out: dict[int, int]):
    """Isomorphism between equal-coded rooted subtrees at ``u`` and ``w``."""
    stack = [(u, w)]
    while stack:
        x, y = stack.pop()
        out[x] = y
        stack.extend(zip(children[x], children[y]))


def _subtree_swap(n: int, u: int, w: int, children) -> Perm:
    phi: dict[int, int] = {}
    _match(u, w, children, phi)
    perm = list(range(n))
    for x, y in phi.items():
        perm[x] = y
        perm[y] = x
    return tuple(perm)


def automorphism_group(t: RationalTree) -> AutGroup:
    """Order and generators of Aut(t).

    The order is the product over vertices of ``m!`` for every class of ``m``
    identical child subtrees (rooted at the canonical root), doubled when a
    bicentral tree has two identical halves. Generators swap adjacent
    identical sibling subtrees, plus the half swap.
    """
    n = t.vertex_count
    root, other = _canonical_root(t)
    adj = t.adjacency()
    code, children = _rooted(adj, root)
    order = 1
    gens: list[Perm] = []
    for v in range(n):
        for _, grp in groupby(children[v], key=lambda w: code[w]):
            grp = list(grp)
            order *= math.factorial(len(grp))
            for x, y in zip(grp, grp[1:]):
                gens.append(_subtree_swap(n, x, y, children))
    if other is not None:
        half_code, half_children = _rooted(adj, other, exclude=root)
        root_code, root_children = _rooted(adj, root, exclude=other)
        if half_code[other] == root_code[root]:
            order *= 2
            merged = {**root_children, **half_children}
            gens.append(_subtree_swap(n, root, other, merged))
    return AutGroup(order, tuple(gens))


def edge_permutation(t: RationalTree, perm: Sequence[int]) -> Perm:
    """Permutation of edge indices induced by a vertex automorphism."""
    index = {e: i for i, e in enumerate(t.edges)}
    try:
        return tuple(index[_norm((perm[a], perm[b]))] for a, b in t.edges)
    except KeyError as exc:
        raise InvalidTree("vertex permutation does not preserve the edge set") from exc


def edge_action(t: RationalTree) -> list[Perm]:
    """Edge permutations induced by each generator of ``automorphism_group(t)``."""
    return [edge_permutation(t, g) for g in automorphism_group(t).generators]


# -- contraction --------------------------------------------------------------


def contract_edge(t: RationalTree, e: Iterable[int]) -> RationalTree:
    """Merge the endpoints of ``e``; the merged vertex keeps the smaller id."""
    u, w = _norm(tuple(e))
    if (u, w) not in t.edges:
        raise EdgeNotFound(f"{(u, w)} is not an edge of the tree")

    def new_id(x: int) -> int:
        if x == w:
            return u
        return x - 1 if x > w else x

    edges = tuple((new_id(a), new_id(b)) for a, b in t.edges if (a, b) != (u, w))
    return RationalTree(t.vertex_count - 1, edges)

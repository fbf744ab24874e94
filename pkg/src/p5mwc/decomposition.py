"""Modular decomposition: module closures, the maximal strong module
partition, quotients, vertex substitution, and the binary decomposition
tree whose leaves carry prime (or degenerate) representative graphs.

A *module* is a vertex set whose members are indistinguishable from the
outside: every other vertex is adjacent to all of it or none of it. The
algorithms here are straightforward closure computations over adjacency
bitmasks, polynomial at desk scale; no attempt is made at the known
linear-time constructions.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import NotAModuleError
from .graph import Graph, bits, mask_of


def _module_closure(masks: Sequence[int], n: int, start: int) -> int:
    """Smallest module containing the vertex set ``start`` (a bitmask).

    Repeatedly absorbs every splitter: a vertex outside the current set
    adjacent to some but not all of it. May return the full vertex set.
    """
    full = (1 << n) - 1
    cur = start
    while True:
        grow = 0
        rest = full & ~cur
        for w in bits(rest):
            a = masks[w] & cur
            if a and a != cur:
                grow |= 1 << w
        if not grow:
            return cur
        cur |= grow


def is_module(g: Graph, vertices: Iterable[int]) -> bool:
    """True iff every outside vertex sees all of ``vertices`` or none."""
    mask = mask_of(g._check_vertices(vertices))
    for w in range(g.n):
        if mask >> w & 1:
            continue
        a = g.neighbor_mask(w) & mask
        if a and a != mask:
            return False
    return True


def smallest_module_containing(g: Graph, u: int, v: int) -> frozenset[int]:
    """Inclusion-minimal module of ``g`` containing the two vertices."""
    g._check_vertices([u, v])
    if u == v:
        raise ValueError("seed vertices must be distinct")
    return frozenset(bits(_module_closure(g._masks, g.n, 1 << u | 1 << v)))


def maximal_strong_modules(g: Graph) -> list[frozenset[int]]:
    """The unique partition of V into maximal strong modules.

    Components when the graph is disconnected, co-components when the
    complement is, and otherwise the equivalence classes of "the smallest
    module containing both vertices is proper". Parts are ordered by
    smallest member; singletons are allowed.
    """
    n = g.n
    if n < 2:
        raise ValueError("maximal strong modules need at least 2 vertices")
    comps = g.components()
    if len(comps) > 1:
        return comps
    cocomps = g.co_components()
    if len(cocomps) > 1:
        return cocomps

    masks = g._masks
    full = (1 << n) - 1
    unclassified = full
    parts: list[frozenset[int]] = []
    while unclassified:
        v = (unclassified & -unclassified).bit_length() - 1
        part = 1 << v
        rest = unclassified & ~part
        for u in bits(rest):
            if part >> u & 1:
                continue
            grown = _module_closure(masks, n, part | 1 << u)
            if grown != full:
                part = grown
        parts.append(frozenset(bits(part)))
        unclassified &= ~part
    return parts


def quotient_substitute(g: Graph, module: Iterable[int], marker: str) -> Graph:
    """Contract the nontrivial module to a single fresh vertex ``marker``.

    The marker sits at the last index of the result and inherits the
    module's outside adjacencies. All other vertices keep their labels, in
    sorted original order.
    """
    mod = sorted(set(g._check_vertices(module)))
    if not 2 <= len(mod) <= g.n - 1:
        raise NotAModuleError(
            f"module must be nontrivial: 2 <= size <= n-1, got size {len(mod)}"
        )
    if not is_module(g, mod):
        raise NotAModuleError(f"vertex set {mod} is not a module")
    if marker in g._index and marker not in {g.labels[v] for v in mod}:
        raise ValueError(f"marker label {marker!r} collides with a kept vertex")
    mod_mask = mask_of(mod)
    keep = [v for v in range(g.n) if not mod_mask >> v & 1]
    pos = {v: i for i, v in enumerate(keep)}
    k = len(keep)
    masks = [0] * (k + 1)
    rep = mod[0]
    for i, v in enumerate(keep):
        for u in bits(g.neighbor_mask(v) & ~mod_mask):
            masks[i] |= 1 << pos[u]
        if g.adjacent(v, rep):
            masks[i] |= 1 << k
            masks[k] |= 1 << i
    labels = [g.labels[v] for v in keep] + [marker]
    return Graph._from_masks(masks, labels)


def substitute_vertex(g: Graph, v: int, sub: Graph) -> Graph:
    """Replace vertex ``v`` by the whole graph ``sub`` (inverse of a
    quotient): the copy of ``sub`` is internal as given, and each of its
    vertices inherits v's adjacencies to the rest of ``g``.

    Labels of the inserted vertices are ``"<v's label>.<sub label>"`` so
    the result's labels stay unique.
    """
    g._check_vertices([v])
    keep = [u for u in range(g.n) if u != v]
    pos = {u: i for i, u in enumerate(keep)}
    k = len(keep)
    n_new = k + sub.n
    masks = [0] * n_new
    for i, u in enumerate(keep):
        for w in bits(g.neighbor_mask(u)):
            if w != v:
                masks[i] |= 1 << pos[w]
    sub_block = ((1 << sub.n) - 1) << k
    for i, u in enumerate(keep):
        if g.adjacent(u, v):
            masks[i] |= sub_block
            for j in range(sub.n):
                masks[k + j] |= 1 << i
    for j in range(sub.n):
        masks[k + j] |= sub.neighbor_mask(j) << k
    base = g.labels[v]
    labels = [g.labels[u] for u in keep] + [f"{base}.{lab}" for lab in sub.labels]
    return Graph._from_masks(masks, labels)


@dataclass(frozen=True)
class DecompNode:
    """One node of the binary decomposition tree.

    ``graph`` is the representative graph of the node. Internal nodes
    record the extracted module (as labels of ``graph``), the fresh marker
    standing for it in the right child, the left child (the module's
    induced subgraph) and the right child (the quotient).
    """

    graph: Graph
    module_labels: frozenset[str] | None = None
    marker: str | None = None
    left: "DecompNode | None" = None
    right: "DecompNode | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    def walk(self) -> Iterable["DecompNode"]:
        yield self
        if not self.is_leaf:
            assert self.left is not None and self.right is not None
            yield from self.left.walk()
            yield from self.right.walk()


@dataclass(frozen=True)
class DecompTree:
    """Binary decomposition tree of a graph.

    ``markers`` resolves each marker label to the set of original-graph
    labels it abbreviates (markers nested inside modules are fully
    expanded); ``marker_nodes`` points at the left subtree each marker
    stands for.
    """

    root: DecompNode
    markers: dict[str, frozenset[str]] = field(default_factory=dict)
    marker_nodes: dict[str, DecompNode] = field(default_factory=dict)

    def leaves(self) -> list[DecompNode]:
        return [node for node in self.root.walk() if node.is_leaf]

    def internal_count(self) -> int:
        return sum(1 for node in self.root.walk() if not node.is_leaf)

    def leaf_edge_total(self) -> int:
        return sum(leaf.graph.m for leaf in self.leaves())

    def expand_labels(self, labels: Iterable[str]) -> frozenset[str]:
        """Map labels of any representative graph to original-graph labels."""
        out: set[str] = set()
        for lab in labels:
            out |= self.markers.get(lab, frozenset((lab,)))
        return frozenset(out)


def build_tree(g: Graph) -> DecompTree:
    """Build the binary decomposition tree of ``g``.

    Leaves are graphs with at most 2 vertices, prime graphs, or degenerate
    graphs (complete/edgeless: their maximal strong modules are all
    singletons, so there is nothing to extract). At an internal node the
    extracted module is the maximal strong module of size >= 2 containing
    the smallest vertex index; the left child is its induced subgraph and
    the right child the quotient with a fresh ``#k`` marker.

    The maximal strong module partition of a quotient equals the remaining
    parts of the parent's partition plus the marker singleton, so the
    partition is computed once per representative and reused down the
    right spine (each reused part is still re-verified as a module).
    """
    markers: dict[str, frozenset[str]] = {}
    marker_nodes: dict[str, DecompNode] = {}
    counter = [0]

    def fresh_marker(taken: Iterable[str]) -> str:
        used = set(taken)
        while True:
            counter[0] += 1
            lab = f"#{counter[0]}"
            if lab not in used:
                return lab

    def expand(labels: Iterable[str]) -> frozenset[str]:
        out: set[str] = set()
        for lab in labels:
            out |= markers.get(lab, frozenset((lab,)))
        return frozenset(out)

    def build(cur: Graph, hint: list[frozenset[int]] | None) -> DecompNode:
        if cur.n <= 2:
            return DecompNode(cur)
        parts = hint
        if parts is not None:
            covered = mask_of(v for p in parts for v in p)
            total = sum(len(p) for p in parts)
            if (
                covered != (1 << cur.n) - 1
                or total != cur.n
                or not all(len(p) == 1 or is_module(cur, p) for p in parts)
            ):
                parts = None
        if parts is None:
            parts = maximal_strong_modules(cur)
        big = [p for p in parts if len(p) >= 2]
        if not big:
            return DecompNode(cur)
        module = min(big, key=min)
        left = build(cur.induced_subgraph(module), None)
        marker = fresh_marker(cur.labels)
        quotient = quotient_substitute(cur, module, marker)
        keep = [v for v in range(cur.n) if v not in module]
        pos = {v: i for i, v in enumerate(keep)}
        next_hint = [
            frozenset(pos[v] for v in p) for p in parts if p != module
        ]
        next_hint.append(frozenset((len(keep),)))
        right = build(quotient, next_hint)
        markers[marker] = expand(cur.labels[v] for v in module)
        marker_nodes[marker] = left
        return DecompNode(
            cur,
            module_labels=frozenset(cur.labels[v] for v in module),
            marker=marker,
            left=left,
            right=right,
        )

    limit = sys.getrecursionlimit()
    needed = 4 * g.n + 200
    if limit < needed:
        sys.setrecursionlimit(needed)
    try:
        root = build(g, None)
    finally:
        if limit < needed:
            sys.setrecursionlimit(limit)
    return DecompTree(root, markers, marker_nodes)

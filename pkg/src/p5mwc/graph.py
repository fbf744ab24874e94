"""Immutable simple graphs with optional vertex weights.

Vertices are dense integer indices ``0..n-1``. Every vertex carries a
string label; labels survive induced subgraphs and quotients, so results
computed on derived graphs can be reported in the caller's original
names. Adjacency is stored as one bitmask per vertex, giving O(1)
membership tests and cheap neighborhood algebra at desk scale (a few
hundred vertices).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Simple undirected graph, immutable after construction."""

    __slots__ = ("n", "m", "labels", "_masks", "_index")

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]] = (),
        labels: Sequence[str] | None = None,
    ):
        if n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {n}")
        masks = [0] * n
        m = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range 0..{n - 1}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not masks[u] >> v & 1:
                masks[u] |= 1 << v
                masks[v] |= 1 << u
                m += 1
        if labels is None:
            labels = tuple(str(i) for i in range(n))
        else:
            labels = tuple(labels)
            if len(labels) != n:
                raise ValueError(f"expected {n} labels, got {len(labels)}")
            if len(set(labels)) != n:
                raise ValueError("vertex labels must be unique")
        self.n = n
        self.m = m
        self.labels = labels
        self._masks = tuple(masks)
        self._index = {lab: i for i, lab in enumerate(labels)}

    @classmethod
    def from_edge_list(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        labels: Sequence[str] | None = None,
    ) -> "Graph":
        """Build a graph from an unordered edge list; duplicates collapse."""
        return cls(n, edges, labels)

    @classmethod
    def _from_masks(cls, masks: Sequence[int], labels: Sequence[str]) -> "Graph":
        """Internal fast path: adopt prevalidated symmetric masks."""
        g = cls.__new__(cls)
        g.n = len(masks)
        g.m = sum(m.bit_count() for m in masks) // 2
        g.labels = tuple(labels)
        g._masks = tuple(masks)
        g._index = {lab: i for i, lab in enumerate(g.labels)}
        return g

    # -- basic queries ----------------------------------------------------

    def vertices(self) -> range:
        return range(self.n)

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self._masks[u] >> v & 1)

    def neighbor_mask(self, v: int) -> int:
        return self._masks[v]

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(bits(self._masks[v]))

    def degree(self, v: int) -> int:
        return self._masks[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            rest = self._masks[u] >> (u + 1) << (u + 1)
            for v in bits(rest):
                out.append((u, v))
        return out

    def label_of(self, v: int) -> str:
        return self.labels[v]

    def index_of(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise ValueError(f"unknown vertex label {label!r}") from None

    def label_set(self, vertices: Iterable[int]) -> frozenset[str]:
        return frozenset(self.labels[v] for v in vertices)

    def index_set(self, labels: Iterable[str]) -> frozenset[int]:
        return frozenset(self.index_of(lab) for lab in labels)

    def _check_vertices(self, vertices: Iterable[int]) -> list[int]:
        vs = list(vertices)
        for v in vs:
            if not (0 <= v < self.n):
                raise ValueError(f"unknown vertex {v}")
        return vs

    # -- derived graphs ---------------------------------------------------

    def induced_subgraph(self, keep: Iterable[int]) -> "Graph":
        """Subgraph induced on ``keep``, reindexed in sorted vertex order.

        Labels are preserved, so vertices of the result can be matched back
        to this graph by label.
        """
        order = sorted(set(self._check_vertices(keep)))
        pos = {v: i for i, v in enumerate(order)}
        masks = [0] * len(order)
        for i, v in enumerate(order):
            for u in bits(self._masks[v]):
                j = pos.get(u)
                if j is not None:
                    masks[i] |= 1 << j
        return Graph._from_masks(masks, [self.labels[v] for v in order])

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        masks = [full & ~self._masks[v] & ~(1 << v) for v in range(self.n)]
        return Graph._from_masks(masks, self.labels)

    # -- stable sets and cliques -------------------------------------------

    def is_stable_set(self, vertices: Iterable[int]) -> bool:
        """True iff no two of the given vertices are adjacent."""
        vs = self._check_vertices(vertices)
        mask = mask_of(vs)
        return all(self._masks[v] & mask == 0 for v in vs)

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = set(self._check_vertices(vertices))
        mask = mask_of(vs)
        return all(self._masks[v] & mask == mask & ~(1 << v) for v in vs)

    def maximal_cliques(self) -> list[frozenset[int]]:
        """All inclusion-maximal cliques, each exactly once.

        Pivoted recursive enumeration. Worst case exponential; intended for
        verification on desk-scale graphs.
        """
        masks = self._masks
        out: list[frozenset[int]] = []

        def expand(r: int, p: int, x: int) -> None:
            if p == 0 and x == 0:
                out.append(frozenset(bits(r)))
                return
            pivot, best = -1, -1
            for u in bits(p | x):
                score = (masks[u] & p).bit_count()
                if score > best:
                    pivot, best = u, score
            for v in bits(p & ~masks[pivot]):
                bv = 1 << v
                expand(r | bv, p & masks[v], x & masks[v])
                p &= ~bv
                x |= bv

        expand(0, (1 << self.n) - 1, 0)
        return sorted(out, key=sorted)

    # -- connectivity -------------------------------------------------------

    def components(self) -> list[frozenset[int]]:
        """Connected components, ordered by smallest member."""
        return _mask_components(self._masks, self.n)

    def co_components(self) -> list[frozenset[int]]:
        """Connected components of the complement."""
        full = (1 << self.n) - 1
        masks = [full & ~self._masks[v] & ~(1 << v) for v in range(self.n)]
        return _mask_components(masks, self.n)

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    # -- dunder -------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and self._masks == other._masks
            and self.labels == other.labels
        )

    def __hash__(self) -> int:
        return hash((self.n, self._masks, self.labels))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def _mask_components(masks: Sequence[int], n: int) -> list[frozenset[int]]:
    seen = 0
    comps = []
    for v in range(n):
        if seen >> v & 1:
            continue
        comp = 1 << v
        frontier = comp
        while frontier:
            grow = 0
            for u in bits(frontier):
                grow |= masks[u]
            frontier = grow & ~comp
            comp |= grow
        comps.append(frozenset(bits(comp)))
        seen |= comp
    return comps


@dataclass(frozen=True)
class WeightedGraph:
    """A graph plus a nonnegative integer weight per vertex."""

    graph: Graph
    weights: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.weights) != self.graph.n:
            raise ValueError(
                f"expected {self.graph.n} weights, got {len(self.weights)}"
            )
        for v, w in enumerate(self.weights):
            if not isinstance(w, int) or w < 0:
                raise ValueError(f"vertex {v}: weight must be a nonnegative int")

    @classmethod
    def uniform(cls, graph: Graph, weight: int = 1) -> "WeightedGraph":
        return cls(graph, (weight,) * graph.n)

    @classmethod
    def from_mapping(cls, graph: Graph, weights: Mapping[int, int]) -> "WeightedGraph":
        return cls(graph, tuple(weights.get(v, 0) for v in graph.vertices()))

    def weight_of(self, v: int) -> int:
        return self.weights[v]

    def total_weight(self) -> int:
        return sum(self.weights)

    def positive_vertices(self) -> list[int]:
        return [v for v, w in enumerate(self.weights) if w > 0]

    def restrict(self, keep: Iterable[int]) -> "WeightedGraph":
        """Weighted subgraph induced on ``keep`` (sorted reindexing)."""
        order = sorted(set(self.graph._check_vertices(keep)))
        return WeightedGraph(
            self.graph.induced_subgraph(order),
            tuple(self.weights[v] for v in order),
        )

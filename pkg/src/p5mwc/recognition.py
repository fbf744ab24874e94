"""Recognition utilities: induced-pattern search for the three 5-vertex
patterns that govern the supported class (the path P5, its complement,
and the cycle C5), class membership, primality, and buoy extraction.

Pattern search is exact backtracking over ordered embeddings with bitmask
pruning. It is input validation and test instrumentation, not part of the
solve path, and is documented as desk-scale only: proving a pattern
*absent* in a large dense graph can take a while.
"""

from __future__ import annotations

from dataclasses import dataclass

from .decomposition import build_tree, is_module
from .errors import ClassViolationError
from .graph import Graph, bits, mask_of

PATTERNS = ("P5", "co-P5", "C5")


def _find_induced_path5(g: Graph) -> tuple[int, ...] | None:
    """First induced 5-vertex path, as the ordered path, or None.

    Depth-first extension of induced paths: the next vertex must be
    adjacent to the current endpoint and to no earlier path vertex.
    """
    n = g.n
    masks = g._masks

    def extend(path: list[int], forbidden: int, used: int) -> tuple[int, ...] | None:
        last = path[-1]
        allowed = masks[last] & ~forbidden & ~used
        if len(path) == 4:
            if allowed:
                v = (allowed & -allowed).bit_length() - 1
                return (*path, v)
            return None
        for v in bits(allowed):
            found = extend(
                path + [v], forbidden | masks[last], used | 1 << v
            )
            if found:
                return found
        return None

    for a in range(n):
        for b in bits(masks[a]):
            found = extend([a, b], masks[a], 1 << a | 1 << b)
            if found:
                return found
    return None


def _find_induced_c5(g: Graph) -> tuple[int, ...] | None:
    """First induced 5-cycle, in cyclic order, or None.

    Enumerates induced 4-vertex paths and closes them: the fifth vertex
    must see both endpoints and neither midpoint.
    """
    n = g.n
    masks = g._masks
    for a in range(n):
        for b in bits(masks[a]):
            for c in bits(masks[b] & ~masks[a]):
                if c == a:
                    continue
                for d in bits(masks[c] & ~masks[b] & ~masks[a]):
                    if d == b:
                        continue
                    close = (
                        masks[a]
                        & masks[d]
                        & ~masks[b]
                        & ~masks[c]
                        & ~mask_of((a, b, c, d))
                    )
                    if close:
                        e = (close & -close).bit_length() - 1
                        return (a, b, c, d, e)
    return None


def find_induced(g: Graph, pattern: str) -> tuple[int, ...] | None:
    """An ordered embedding of the pattern as an induced subgraph, or None.

    For ``"P5"`` the tuple is in path order; for ``"co-P5"`` it is in path
    order of the complement; for ``"C5"`` in cyclic order.
    """
    if pattern == "P5":
        return _find_induced_path5(g)
    if pattern == "co-P5":
        return _find_induced_path5(g.complement())
    if pattern == "C5":
        return _find_induced_c5(g)
    raise ValueError(f"unknown pattern {pattern!r}; expected one of {PATTERNS}")


def is_in_class(g: Graph) -> bool:
    """True iff the graph has no induced P5 and no induced co-P5.

    Both patterns are prime, so one occurs in the graph iff it occurs in
    some leaf of the decomposition tree (markers stand for module
    representatives). Checking leaves is exact and far cheaper than a
    direct scan when the graph has modules.
    """
    return class_witness(g) is None


def class_witness(g: Graph) -> tuple[str, tuple[str, ...]] | None:
    """A forbidden induced pattern with its witness labels, or None.

    Returns ``(pattern, labels)`` where the labels name original vertices
    of ``g`` that induce the pattern (markers found inside decomposition
    leaves are expanded to arbitrary members of their modules).
    """
    tree = build_tree(g)
    for leaf in tree.leaves():
        for pattern in ("P5", "co-P5"):
            hit = find_induced(leaf.graph, pattern)
            if hit is None:
                continue
            labels = tuple(
                min(tree.expand_labels([leaf.graph.labels[v]])) for v in hit
            )
            return pattern, labels
    return None


def is_prime(g: Graph) -> bool:
    """True iff the graph has no nontrivial module.

    A nontrivial module exists iff the smallest module containing some
    vertex pair is proper, so all pair closures are scanned (with early
    exit). Desk scale only.
    """
    n = g.n
    if n <= 2:
        return True
    from .decomposition import _module_closure

    full = (1 << n) - 1
    masks = g._masks
    for u in range(n):
        for v in range(u + 1, n):
            if _module_closure(masks, n, 1 << u | 1 << v) != full:
                return False
    return True


@dataclass(frozen=True)
class BuoyPartition:
    """Five nonempty circular classes: all edges between consecutive
    classes, none between classes two apart (edges inside a class are
    unconstrained)."""

    classes: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if len(self.classes) != 5 or any(not c for c in self.classes):
            raise ValueError("a buoy partition needs five nonempty classes")

    def vertex_set(self) -> frozenset[int]:
        return frozenset().union(*self.classes)

    def verify(self, g: Graph) -> bool:
        """Direct edge check of both adjacency invariants."""
        cls_masks = [mask_of(c) for c in self.classes]
        for i in range(5):
            nxt = cls_masks[(i + 1) % 5]
            far = cls_masks[(i + 2) % 5] | cls_masks[(i + 3) % 5]
            for v in self.classes[i]:
                if g.neighbor_mask(v) & nxt != nxt:
                    return False
                if g.neighbor_mask(v) & far:
                    return False
        return True


def buoy_of_c5(g: Graph, cycle: tuple[int, int, int, int, int]) -> BuoyPartition:
    """Grow the maximal buoy around an induced 5-cycle.

    Starting from singleton classes on the cycle, repeatedly absorbs any
    vertex whose neighborhood is complete to two consecutive classes and
    empty toward the two classes opposite them; with nonempty classes that
    slot is unique when it exists. For a connected graph in the supported
    class the fixed point is the whole graph or a module; anything else
    raises :class:`ClassViolationError`.
    """
    if not g.is_connected():
        raise ValueError("buoy extraction requires a connected graph")
    if len(cycle) != 5 or len(set(cycle)) != 5:
        raise ValueError("cycle must list five distinct vertices")
    g._check_vertices(cycle)
    for i in range(5):
        if not g.adjacent(cycle[i], cycle[(i + 1) % 5]):
            raise ValueError("vertices do not form a 5-cycle in this order")
        if g.adjacent(cycle[i], cycle[(i + 2) % 5]):
            raise ValueError("5-cycle has a chord; not an induced C5")

    cls = [1 << cycle[i] for i in range(5)]
    placed = mask_of(cycle)
    changed = True
    while changed:
        changed = False
        for w in range(g.n):
            if placed >> w & 1:
                continue
            nb = g.neighbor_mask(w)
            for i in range(5):
                near = cls[(i + 1) % 5] | cls[(i + 4) % 5]
                far = cls[(i + 2) % 5] | cls[(i + 3) % 5]
                if nb & near == near and not nb & far:
                    cls[i] |= 1 << w
                    placed |= 1 << w
                    changed = True
                    break

    part = BuoyPartition(tuple(frozenset(bits(c)) for c in cls))
    full = (1 << g.n) - 1
    if placed != full and not is_module(g, bits(placed)):
        raise ClassViolationError(
            "buoy closure stopped on a set that is neither the whole graph "
            "nor a module; the graph is outside the supported class"
        )
    if not part.verify(g):
        raise ClassViolationError("grown classes violate the buoy adjacency rules")
    return part

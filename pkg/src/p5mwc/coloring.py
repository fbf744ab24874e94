"""Weighted colorings as first-class values, plus the two constructions
that drive the decomposition solver: the weighted quotient (the module is
contracted to a marker whose weight is the module's weighted chromatic
number) and the merge that splices a module coloring back into a quotient
coloring without changing the total.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import MergePreconditionError, NotAModuleError
from .graph import Graph, WeightedGraph, mask_of
from .decomposition import quotient_substitute


@dataclass(frozen=True)
class WeightedColoring:
    """An ordered list of (stable set, multiplicity) classes.

    Class vertex sets are label sets, so a coloring computed on a derived
    graph (induced subgraph, quotient) reads directly against the original
    graph. Zero-multiplicity classes are dropped on construction. A class
    with an empty vertex set is permitted (it is vacuously stable and
    covers nobody); the merge can emit one when its inputs over-cover the
    marker vertex.
    """

    classes: tuple[tuple[frozenset[str], int], ...]

    def __post_init__(self) -> None:
        cleaned = []
        for vs, mult in self.classes:
            if not isinstance(mult, int) or mult < 0:
                raise ValueError(f"multiplicity must be a nonnegative int: {mult!r}")
            if mult == 0:
                continue
            cleaned.append((frozenset(vs), mult))
        object.__setattr__(self, "classes", tuple(cleaned))

    @classmethod
    def of(cls, pairs: Iterable[tuple[Iterable[str], int]]) -> "WeightedColoring":
        return cls(tuple((frozenset(vs), mult) for vs, mult in pairs))

    @classmethod
    def empty(cls) -> "WeightedColoring":
        return cls(())

    @property
    def total(self) -> int:
        return sum(mult for _, mult in self.classes)

    def __len__(self) -> int:
        return len(self.classes)

    def coverage(self) -> dict[str, int]:
        cov: dict[str, int] = {}
        for vs, mult in self.classes:
            for lab in vs:
                cov[lab] = cov.get(lab, 0) + mult
        return cov

    def merged_duplicates(self) -> "WeightedColoring":
        """Combine classes with identical vertex sets (order of first
        occurrence is kept)."""
        seen: dict[frozenset[str], int] = {}
        order: list[frozenset[str]] = []
        for vs, mult in self.classes:
            if vs not in seen:
                seen[vs] = 0
                order.append(vs)
            seen[vs] += mult
        return WeightedColoring(tuple((vs, seen[vs]) for vs in order))


def validate_coloring(wg: WeightedGraph, coloring: WeightedColoring) -> bool:
    """True iff every class is stable and every vertex v is covered by
    total multiplicity at least its weight.

    Vertices of weight zero need no coverage. Unknown labels in a class
    raise ``ValueError``.
    """
    g = wg.graph
    for vs, _ in coloring.classes:
        if not g.is_stable_set(g.index_set(vs)):
            return False
    cov = coloring.coverage()
    for lab in cov:
        g.index_of(lab)
    for v in g.vertices():
        if wg.weights[v] > 0 and cov.get(g.labels[v], 0) < wg.weights[v]:
            return False
    return True


def substitute_f(
    wg: WeightedGraph,
    module: Iterable[int],
    marker: str,
    chi_module: int,
) -> WeightedGraph:
    """The weighted quotient: the module is contracted to ``marker``, whose
    weight is the module's weighted chromatic number ``chi_module``; all
    other weights are unchanged."""
    if not isinstance(chi_module, int) or chi_module < 0:
        raise ValueError("chi_module must be a nonnegative int")
    mod = set(wg.graph._check_vertices(module))
    quotient = quotient_substitute(wg.graph, mod, marker)
    weights = [
        wg.weights[v] for v in range(wg.graph.n) if v not in mod
    ]
    weights.append(chi_module)
    return WeightedGraph(quotient, tuple(weights))


def merge_color(
    module_coloring: WeightedColoring,
    quotient_coloring: WeightedColoring,
    marker: str,
    module_labels: Iterable[str],
    graph: Graph | None = None,
) -> WeightedColoring:
    """Splice a module coloring into a quotient coloring.

    The quotient classes containing the marker are processed first. Both
    lists are swept in parallel: each emitted class is the union of the
    current module class and the current marker class minus the marker,
    with multiplicity the smaller of the two residuals; the side that hits
    zero advances (both on ties). Once the module list is exhausted, the
    remaining quotient classes are emitted at their residual
    multiplicities, with the marker stripped from any that still carry it.
    The output total always equals the quotient coloring's total, and the
    class count is at most the sum of the input class counts.

    Requires the marker's total coverage in the quotient coloring to be at
    least the module coloring's total (``MergePreconditionError``
    otherwise). When ``graph`` is given, every emitted class is checked to
    be stable in it; a failure means the supposed module was not one
    (``NotAModuleError``).
    """
    mod_labels = frozenset(module_labels)
    for vs, _ in module_coloring.classes:
        if not vs <= mod_labels:
            raise ValueError(
                f"module coloring uses vertices outside the module: {sorted(vs - mod_labels)}"
            )
    with_marker = [(vs, m) for vs, m in quotient_coloring.classes if marker in vs]
    without = [(vs, m) for vs, m in quotient_coloring.classes if marker not in vs]
    marker_cover = sum(m for _, m in with_marker)
    need = module_coloring.total
    if marker_cover < need:
        raise MergePreconditionError(
            f"marker covered with multiplicity {marker_cover} < module total {need}"
        )

    ordered = with_marker + without
    out: list[tuple[frozenset[str], int]] = []
    xs = [(vs, m) for vs, m in module_coloring.classes]
    i = j = 0
    x_left = xs[i][1] if xs else 0
    y_left = ordered[j][1] if ordered else 0
    while i < len(xs):
        step = min(x_left, y_left)
        merged = xs[i][0] | (ordered[j][0] - {marker})
        out.append((merged, step))
        x_left -= step
        y_left -= step
        if x_left == 0:
            i += 1
            x_left = xs[i][1] if i < len(xs) else 0
        if y_left == 0:
            j += 1
            y_left = ordered[j][1] if j < len(ordered) else 0
    while j < len(ordered):
        out.append((ordered[j][0] - {marker}, y_left))
        j += 1
        y_left = ordered[j][1] if j < len(ordered) else 0

    result = WeightedColoring(tuple(out))
    if graph is not None:
        for vs, _ in result.classes:
            if not graph.is_stable_set(graph.index_set(vs)):
                raise NotAModuleError(
                    "a merged class is not stable; the contracted set was not a module"
                )
    return result

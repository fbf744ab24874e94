"""Minimum weighted coloring of prime graphs in the supported class, plus
the exact brute-force oracles used to certify optimality at desk scale.

A prime graph without induced P5 / co-P5 is either the 5-cycle or
C5-free. The 5-cycle has a closed-form optimum over its ten stable sets;
the C5-free case is perfectly orderable, hence perfect and strongly
perfect, and is colored by repeatedly extracting a stable set that meets
every maximal clique of the positive-weight part.
"""

from __future__ import annotations

import random
from itertools import product
from typing import Sequence

from .coloring import WeightedColoring
from .errors import (
    ClassViolationError,
    InvariantError,
    OracleBudgetError,
    StrongStableSetError,
)
from .graph import Graph, WeightedGraph, bits, mask_of
from .recognition import find_induced

# -- maximum weighted clique ------------------------------------------------


def max_weighted_clique(wg: WeightedGraph) -> tuple[frozenset[int], int]:
    """A clique maximizing total vertex weight, with its value.

    Exact branch and bound with a residual-weight bound; exponential worst
    case, intended for desk-scale verification. With all-zero weights the
    empty clique (value 0) is returned.
    """
    g = wg.graph
    order = sorted(
        (v for v in g.vertices() if wg.weights[v] > 0),
        key=lambda v: (-wg.weights[v], -g.degree(v), v),
    )
    suffix_weight = [0] * (len(order) + 1)
    for i in range(len(order) - 1, -1, -1):
        suffix_weight[i] = suffix_weight[i + 1] + wg.weights[order[i]]
    best_mask = 0
    best_value = 0

    def expand(i: int, cur_mask: int, cur_value: int, cand: int) -> None:
        nonlocal best_mask, best_value
        if cur_value > best_value:
            best_value = cur_value
            best_mask = cur_mask
        if i == len(order) or cur_value + suffix_weight[i] <= best_value:
            return
        v = order[i]
        if cand >> v & 1:
            expand(
                i + 1,
                cur_mask | 1 << v,
                cur_value + wg.weights[v],
                cand & g.neighbor_mask(v),
            )
        expand(i + 1, cur_mask, cur_value, cand)

    expand(0, 0, 0, (1 << g.n) - 1)
    return frozenset(bits(best_mask)), best_value


# -- strong stable sets -------------------------------------------------------


def _greedy_first_class(g: Graph, order: Sequence[int]) -> int:
    picked = 0
    forbidden = 0
    for v in order:
        if not forbidden >> v & 1:
            picked |= 1 << v
            forbidden |= g.neighbor_mask(v) | 1 << v
    return picked


def _maximal_stable_sets(g: Graph) -> list[int]:
    """Masks of all maximal stable sets (maximal cliques of the complement)."""
    co = g.complement()
    return [mask_of(c) for c in co.maximal_cliques()]


def strong_stable_set(g: Graph, seed: int = 0) -> frozenset[int]:
    """A stable set meeting every inclusion-maximal clique.

    Tries the greedy first color class under a family of vertex orderings
    (index order, degree descending, then seeded random restarts), each
    candidate verified against the full maximal-clique list; falls back to
    exhausting all maximal stable sets. Raises
    :class:`StrongStableSetError` when none exists, which certifies the
    graph is outside the supported class (e.g. the plain 5-cycle).
    """
    if g.n == 0:
        raise ValueError("empty graph has no stable set to return")
    cliques = [mask_of(c) for c in g.maximal_cliques()]

    def is_strong(mask: int) -> bool:
        return all(mask & k for k in cliques)

    orders: list[list[int]] = [
        list(g.vertices()),
        sorted(g.vertices(), key=lambda v: (-g.degree(v), v)),
        sorted(g.vertices(), key=lambda v: (g.degree(v), v)),
    ]
    rng = random.Random(seed)
    for _ in range(8):
        shuffled = list(g.vertices())
        rng.shuffle(shuffled)
        orders.append(shuffled)
    for order in orders:
        cand = _greedy_first_class(g, order)
        if is_strong(cand):
            return frozenset(bits(cand))
    for mask in _maximal_stable_sets(g):
        if is_strong(mask):
            return frozenset(bits(mask))
    raise StrongStableSetError(
        "no stable set meets every maximal clique; graph is outside the "
        "supported class"
    )


def color_via_strong_stable_sets(wg: WeightedGraph, seed: int = 0) -> WeightedColoring:
    """Minimum weighted coloring of a C5-free graph in the supported class.

    Loop: while some vertex has positive residual weight, extract a strong
    stable set of the positive-weight induced subgraph and spend the
    minimum residual on it. Each round zeroes at least one vertex, so the
    loop runs at most n times. Optimality holds because these graphs are
    perfect and hereditarily strongly perfect; the oracle tests check it
    exactly.
    """
    g = wg.graph
    residual = list(wg.weights)
    classes: list[tuple[frozenset[str], int]] = []
    while True:
        alive = [v for v in g.vertices() if residual[v] > 0]
        if not alive:
            break
        sub = g.induced_subgraph(alive)
        strong = strong_stable_set(sub, seed)
        members = [alive[i] for i in sorted(strong)]
        step = min(residual[v] for v in members)
        classes.append((g.label_set(members), step))
        for v in members:
            residual[v] -= step
    return WeightedColoring(tuple(classes))


# -- the weighted 5-cycle -----------------------------------------------------


def c5_value_closed_form(weights: Sequence[int]) -> int:
    """max(max adjacent pair sum, ceil(total/2)) for a weighted 5-cycle."""
    w = list(weights)
    if len(w) != 5 or any(x < 0 for x in w):
        raise ValueError("expected five nonnegative weights in cyclic order")
    adjacent = max(w[i] + w[(i + 1) % 5] for i in range(5))
    return max(adjacent, (sum(w) + 1) // 2)


def c5_value_bounded_search(weights: Sequence[int]) -> int:
    """Exact optimum by bounded search over stable-pair multiplicities.

    The ten stable sets of a 5-cycle are five nonadjacent pairs and five
    singletons. Given pair multiplicities, optimal singleton fill is
    forced, and some optimum uses no pair more than max(w) times, so the
    search over ``[0..max(w)]^5`` is exact. Exponential in max(w): use
    for small weights only.
    """
    w = list(weights)
    if len(w) != 5 or any(x < 0 for x in w):
        raise ValueError("expected five nonnegative weights in cyclic order")
    cap = max(w)
    best = sum(w)  # singletons only
    for x in product(range(cap + 1), repeat=5):
        total = sum(x)
        if total >= best:
            continue
        for j in range(5):
            short = w[j] - x[j] - x[(j - 2) % 5]
            if short > 0:
                total += short
        best = min(best, total)
    return best


def color_c5(
    weights: Sequence[int], labels: Sequence[str] | None = None
) -> WeightedColoring:
    """Minimum weighted coloring of a 5-cycle given weights in cyclic order.

    The optimum value is the closed form above (its exhaustive validation
    lives in the test suite). The witness is built by repeatedly taking a
    stable set and a step size that provably reduce the closed-form value
    by exactly the step; the construction self-certifies because the
    closed form is a lower bound and the emitted classes sum to it.
    """
    w = list(weights)
    target = c5_value_closed_form(w)
    if labels is None:
        labels = tuple(str(i + 1) for i in range(5))
    elif len(labels) != 5:
        raise ValueError("expected five labels in cyclic order")

    stable_sets: list[tuple[int, ...]] = [((i), (i + 2) % 5) for i in range(5)]
    stable_sets += [(i,) for i in range(5)]

    def after(cur: Sequence[int], s: tuple[int, ...], t: int) -> list[int]:
        nxt = list(cur)
        for j in s:
            nxt[j] = max(0, nxt[j] - t)
        return nxt

    classes: list[tuple[frozenset[str], int]] = []
    value = target
    guard = 0
    while any(w):
        guard += 1
        if guard > 1000:
            raise InvariantError("5-cycle coloring construction failed to converge")
        best: tuple[int, tuple[int, ...]] | None = None
        for s in stable_sets:
            lo, hi = 0, value
            while lo < hi:
                mid = (lo + hi + 1) // 2
                if c5_value_closed_form(after(w, s, mid)) == value - mid:
                    lo = mid
                else:
                    hi = mid - 1
            if lo >= 1 and (best is None or lo > best[0]):
                best = (lo, s)
        if best is None:
            raise InvariantError("no stable set reduces the 5-cycle bound")
        step, chosen = best
        classes.append((frozenset(labels[j] for j in chosen), step))
        w = after(w, chosen, step)
        value -= step
    if value != 0:
        raise InvariantError("5-cycle construction did not meet the bound")
    return WeightedColoring(tuple(classes)).merged_duplicates()


# -- prime dispatch -----------------------------------------------------------


def _c5_cycle_order(g: Graph) -> list[int] | None:
    """Vertex indices of ``g`` in cyclic order when it is a 5-cycle."""
    if g.n != 5 or g.m != 5 or any(g.degree(v) != 2 for v in g.vertices()):
        return None
    order = [0]
    prev = -1
    for _ in range(4):
        nxt = [u for u in bits(g.neighbor_mask(order[-1])) if u != prev]
        prev = order[-1]
        order.append(nxt[0])
    if len(set(order)) != 5 or not g.adjacent(order[-1], order[0]):
        return None
    return order


def color_prime(wg: WeightedGraph, seed: int = 0) -> WeightedColoring:
    """Minimum weighted coloring of a prime graph in the supported class.

    Dispatch: graphs on at most 4 vertices go to the stable-set loop
    (every such graph is perfect and hereditarily strongly perfect, so the
    loop is exact regardless of weight scale); the 5-cycle gets its
    closed-form solver; any other C5-free graph goes to the stable-set
    loop; a prime graph on 6+ vertices containing an induced C5 is outside
    the class and is rejected.
    """
    g = wg.graph
    if g.n <= 4:
        return color_via_strong_stable_sets(wg, seed)
    cycle = _c5_cycle_order(g)
    if cycle is not None:
        return color_c5(
            [wg.weights[v] for v in cycle], [g.labels[v] for v in cycle]
        )
    if find_induced(g, "C5") is not None:
        raise ClassViolationError(
            "prime graph on 6+ vertices contains an induced C5; it is outside "
            "the supported class"
        )
    return color_via_strong_stable_sets(wg, seed)


# -- exact brute-force oracle -------------------------------------------------


def _greedy_coloring(masks: Sequence[int]) -> list[int]:
    """DSATUR greedy: returns a color per vertex."""
    n = len(masks)
    colors = [-1] * n
    neighbor_colors: list[set[int]] = [set() for _ in range(n)]
    for _ in range(n):
        v = max(
            (u for u in range(n) if colors[u] == -1),
            key=lambda u: (len(neighbor_colors[u]), masks[u].bit_count(), -u),
        )
        c = 0
        while c in neighbor_colors[v]:
            c += 1
        colors[v] = c
        for u in bits(masks[v]):
            neighbor_colors[u].add(c)
    return colors


def _try_exact_coloring(masks: Sequence[int], k: int) -> list[int] | None:
    """A proper coloring with at most k colors, or None. Backtracking in
    saturation order with a clique preassigned for symmetry breaking."""
    n = len(masks)
    if n == 0:
        return []
    # greedy clique from the highest-degree vertex
    v0 = max(range(n), key=lambda v: masks[v].bit_count())
    clique = [v0]
    cand = masks[v0]
    while cand:
        u = max(bits(cand), key=lambda u: (masks[u] & cand).bit_count())
        clique.append(u)
        cand &= masks[u]
    if len(clique) > k:
        return None
    colors = [-1] * n
    color_masks = [0] * k
    for c, v in enumerate(clique):
        colors[v] = c
        color_masks[c] |= 1 << v
    used = len(clique)
    uncolored = [v for v in range(n) if colors[v] == -1]

    def pick() -> int:
        best, best_key = -1, (-1, -1)
        for v in uncolored:
            sat = sum(1 for c in range(used) if color_masks[c] & masks[v])
            key = (sat, masks[v].bit_count())
            if key > best_key:
                best, best_key = v, key
        return best

    def assign(remaining: int) -> bool:
        nonlocal used
        if remaining == 0:
            return True
        v = pick()
        uncolored.remove(v)
        limit = min(used + 1, k)
        for c in range(limit):
            if color_masks[c] & masks[v]:
                continue
            colors[v] = c
            color_masks[c] |= 1 << v
            bumped = c == used
            if bumped:
                used += 1
            if assign(remaining - 1):
                return True
            if bumped:
                used -= 1
            color_masks[c] &= ~(1 << v)
            colors[v] = -1
        uncolored.append(v)
        return False

    if assign(len(uncolored)):
        return colors
    return None


def _stable_set_lp_bound(wg: WeightedGraph) -> int:
    """ceil of the fractional cover optimum over maximal stable sets."""
    from scipy.optimize import linprog

    g = wg.graph
    sets = _maximal_stable_sets(g)
    rows = []
    for v in g.vertices():
        rows.append([-1.0 if s >> v & 1 else 0.0 for s in sets])
    res = linprog(
        c=[1.0] * len(sets),
        A_ub=rows,
        b_ub=[-float(w) for w in wg.weights],
        bounds=(0, None),
        method="highs",
    )
    if not res.success:
        raise InvariantError("stable-set cover LP failed to solve")
    return -int(-(res.fun - 1e-7) // 1)  # ceil with tolerance


def brute_force_chi_w(
    wg: WeightedGraph, budget: int = 60
) -> tuple[int, WeightedColoring]:
    """Exact weighted chromatic number with a witness, by clique expansion.

    Each vertex of positive weight w(v) becomes a clique of w(v) true
    twins; the expansion's ordinary chromatic number equals the weighted
    chromatic number. The expansion is colored exactly by branch and bound
    (DSATUR greedy upper bound, fractional stable-set-cover lower bound,
    then backtracking per color count). Independent of the decomposition
    solver by construction. Raises :class:`OracleBudgetError` when the
    total weight exceeds ``budget``.
    """
    total = wg.total_weight()
    if total > budget:
        raise OracleBudgetError(
            f"total weight {total} exceeds oracle budget {budget}"
        )
    if total == 0:
        return 0, WeightedColoring.empty()
    g = wg.graph
    positive = wg.positive_vertices()
    owner: list[int] = []
    offset: dict[int, int] = {}
    for v in positive:
        offset[v] = len(owner)
        owner.extend([v] * wg.weights[v])
    size = len(owner)
    masks = [0] * size
    for v in positive:
        block = ((1 << wg.weights[v]) - 1) << offset[v]
        for i in range(offset[v], offset[v] + wg.weights[v]):
            masks[i] |= block & ~(1 << i)
        for u in positive:
            if u > v and g.adjacent(u, v):
                ublock = ((1 << wg.weights[u]) - 1) << offset[u]
                for i in range(offset[v], offset[v] + wg.weights[v]):
                    masks[i] |= ublock
                for i in range(offset[u], offset[u] + wg.weights[u]):
                    masks[i] |= block

    greedy = _greedy_coloring(masks)
    best = greedy
    lower = _stable_set_lp_bound(wg)
    k = max(best)  # one color fewer than the greedy solution uses
    while k >= lower:
        attempt = _try_exact_coloring(masks, k)
        if attempt is None:
            break
        best = attempt
        k = max(best)
    chi = max(best) + 1

    by_color: dict[int, set[str]] = {}
    for i, c in enumerate(best):
        by_color.setdefault(c, set()).add(g.labels[owner[i]])
    coloring = WeightedColoring.of(
        (sorted_set, 1)
        for _, sorted_set in sorted(by_color.items())
    ).merged_duplicates()
    if coloring.total != chi:
        raise InvariantError("oracle witness does not match its value")
    return chi, coloring

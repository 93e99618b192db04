"""Exact ground truth on small graphs: gamma, domatic number, and the
two-class baseline every graph without isolated vertices admits."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IsolatedVertex, TooLarge
from .graph import Graph, is_dominating_set


@dataclass(frozen=True)
class GammaResult:
    size: int
    witness: frozenset[int]


@dataclass(frozen=True)
class DomaticResult:
    value: int
    certificate: list[frozenset[int]]


def _closed_masks(g: Graph) -> list[int]:
    masks = []
    for v in range(g.vertex_count):
        m = 1 << v
        for u in g.adjacency[v]:
            m |= 1 << u
        masks.append(m)
    return masks


def greedy_dominating_set(g: Graph) -> list[int]:
    """Repeatedly take the vertex covering the most undominated vertices
    (lowest index on ties)."""
    masks = _closed_masks(g)
    full = (1 << g.vertex_count) - 1
    dominated = 0
    chosen = []
    while dominated != full:
        best = max(range(g.vertex_count),
                   key=lambda v: (bin(masks[v] & ~dominated).count("1"), -v))
        chosen.append(best)
        dominated |= masks[best]
    return chosen


def min_dominating_set_exact(g: Graph, limit: int = 64) -> GammaResult:
    """Branch and bound on the lowest-index undominated vertex.

    One of its closed neighbors must be chosen, so each branch picks one of
    them. The incumbent starts at the greedy solution; a branch is cut when
    even dominating ``Delta + 1`` new vertices per pick cannot beat it.
    """
    n = g.vertex_count
    if n < 1:
        raise ValueError("graph has no vertices")
    if n > limit:
        raise TooLarge(f"{n} vertices exceeds exact-gamma limit {limit}")
    masks = _closed_masks(g)
    full = (1 << n) - 1
    reach = g.max_degree() + 1
    best = list(greedy_dominating_set(g))
    chosen: list[int] = []

    def search(dominated: int) -> None:
        nonlocal best
        if dominated == full:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        undominated = full & ~dominated
        need = -(-bin(undominated).count("1") // reach)
        if len(chosen) + need >= len(best):
            return
        u = (undominated & -undominated).bit_length() - 1
        cands = sorted(g.closed_neighborhood(u),
                       key=lambda w: (-bin(masks[w] & undominated).count("1"), w))
        for w in cands:
            chosen.append(w)
            search(dominated | masks[w])
            chosen.pop()

    search(0)
    return GammaResult(len(best), frozenset(best))


def _degeneracy_order(g: Graph) -> list[int]:
    deg = [g.degree(v) for v in range(g.vertex_count)]
    removed = [False] * g.vertex_count
    order = []
    for _ in range(g.vertex_count):
        v = min((x for x in range(g.vertex_count) if not removed[x]), key=lambda x: (deg[x], x))
        removed[v] = True
        order.append(v)
        for u in g.adjacency[v]:
            if not removed[u]:
                deg[u] -= 1
    # densest core first: its constraints bite earliest
    return order[::-1]


def _find_domatic_coloring(g: Graph, t: int) -> list[int] | None:
    """Color every vertex with one of ``t`` colors so that each closed
    neighborhood sees all of them, or return None."""
    n = g.vertex_count
    closed = [g.closed_neighborhood(v) for v in range(n)]
    order = _degeneracy_order(g)
    color = [-1] * n
    count = [[0] * t for _ in range(n)]
    present = [0] * n
    free = [len(closed[v]) for v in range(n)]

    def assign(x: int, c: int) -> bool:
        color[x] = c
        ok = True
        for w in closed[x]:
            free[w] -= 1
            count[w][c] += 1
            if count[w][c] == 1:
                present[w] += 1
            if present[w] + free[w] < t:
                ok = False
        return ok

    def unassign(x: int, c: int) -> None:
        color[x] = -1
        for w in closed[x]:
            free[w] += 1
            count[w][c] -= 1
            if count[w][c] == 0:
                present[w] -= 1

    def search(i: int, used: int) -> bool:
        if i == n:
            return True
        x = order[i]
        for c in range(min(used + 1, t)):
            if assign(x, c) and search(i + 1, max(used, c + 1)):
                return True
            unassign(x, c)
        return False

    return color if search(0, 0) else None


def domatic_number_exact(g: Graph, limit: int = 24) -> DomaticResult:
    """Exact domatic number with a certificate partition.

    Tries every ``t`` from ``min(delta + 1, n // gamma)`` downward; the first
    feasible ``t`` is the answer.
    """
    n = g.vertex_count
    if n < 1:
        raise ValueError("graph has no vertices")
    if n > limit:
        raise TooLarge(f"{n} vertices exceeds exact-domatic limit {limit}")
    gamma = min_dominating_set_exact(g, limit=max(limit, n)).size
    upper = min(g.min_degree() + 1, n // gamma)
    for t in range(upper, 0, -1):
        coloring = _find_domatic_coloring(g, t)
        if coloring is not None:
            classes = [frozenset(v for v in range(n) if coloring[v] == c) for c in range(t)]
            return DomaticResult(t, classes)
    raise AssertionError("t = 1 is always feasible")


def two_partition_baseline(g: Graph) -> list[frozenset[int]]:
    """A minimal dominating set D and its complement.

    Minimality makes the complement dominating: a member of D with no
    neighbor outside D could be dropped from D.
    """
    for v in range(g.vertex_count):
        if not g.adjacency[v]:
            raise IsolatedVertex(f"vertex {v} is isolated")
    dom = set(greedy_dominating_set(g))
    for v in sorted(dom, reverse=True):
        dom.discard(v)
        if not is_dominating_set(g, dom):
            dom.add(v)
    rest = frozenset(range(g.vertex_count)) - dom
    return [frozenset(dom), rest]

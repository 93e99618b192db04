"""Simple undirected graphs, generators and verification predicates.

Vertices are ``0..vertex_count-1``. Neighbor lists are kept sorted so that
membership tests can bisect and every traversal is deterministic.
"""

from __future__ import annotations

import random
from bisect import bisect_left
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    DuplicateEdge,
    GenerationFailed,
    InvalidOffset,
    InvalidVertex,
    ParseError,
    SelfLoop,
)


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.adjacency) != self.vertex_count:
            raise ValueError("adjacency length does not match vertex_count")
        for v, nbrs in enumerate(self.adjacency):
            for i, u in enumerate(nbrs):
                if not 0 <= u < self.vertex_count:
                    raise InvalidVertex(f"neighbor {u} of {v} out of range")
                if u == v:
                    raise SelfLoop(f"self-loop at {v}")
                if i and nbrs[i - 1] >= u:
                    raise ValueError(f"neighbor list of {v} not strictly increasing")
        for v, nbrs in enumerate(self.adjacency):
            for u in nbrs:
                if not self.has_edge(u, v):
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[tuple[int, int]]) -> Graph:
        adj: list[set[int]] = [set() for _ in range(vertex_count)]
        for u, v in edges:
            if u == v:
                raise SelfLoop(f"self-loop at {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise InvalidVertex(f"edge ({u}, {v}) out of range")
            if v in adj[u]:
                raise DuplicateEdge(f"duplicate edge ({u}, {v})")
            adj[u].add(v)
            adj[v].add(u)
        return cls(vertex_count, tuple(tuple(sorted(s)) for s in adj))

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def closed_neighborhood(self, v: int) -> tuple[int, ...]:
        nbrs = self.adjacency[v]
        i = bisect_left(nbrs, v)
        return nbrs[:i] + (v,) + nbrs[i:]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        nbrs = self.adjacency[u]
        i = bisect_left(nbrs, v)
        return i < len(nbrs) and nbrs[i] == v

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, nbrs in enumerate(self.adjacency) for v in nbrs if u < v]

    def min_degree(self) -> int:
        return min((len(a) for a in self.adjacency), default=0)

    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def without_edges(self, removed: Iterable[tuple[int, int]]) -> Graph:
        drop = {(min(u, v), max(u, v)) for u, v in removed}
        return Graph.from_edges(self.vertex_count, (e for e in self.edges() if e not in drop))

    def to_edge_list(self) -> str:
        return "".join(f"{u} {v}\n" for u, v in self.edges())


def from_edge_list(text: str) -> Graph:
    """Parse the line-oriented ``u v`` edge-list format.

    ``#`` comment lines and blank lines are skipped. The vertex count is one
    more than the largest index mentioned, so trailing isolated vertices
    cannot be expressed.
    """
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected two integers, got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: malformed token in {line!r}") from None
        if u < 0 or v < 0:
            raise ParseError(f"line {lineno}: negative vertex index")
        edges.append((u, v))
    n = 1 + max((max(e) for e in edges), default=-1)
    return Graph.from_edges(n, edges)


@dataclass(frozen=True)
class DegreeProfile:
    min_degree: int
    max_degree: int
    histogram: dict[int, int] = field(default_factory=dict)


def degree_profile(g: Graph) -> DegreeProfile:
    hist = Counter(len(a) for a in g.adjacency)
    return DegreeProfile(g.min_degree(), g.max_degree(), dict(sorted(hist.items())))


def is_kc_regular(g: Graph, k: int, c: float) -> bool:
    return g.min_degree() == k and g.max_degree() <= k * c


def _check_members(g: Graph, s: Iterable[int]) -> set[int]:
    members = set(s)
    for v in members:
        if not 0 <= v < g.vertex_count:
            raise InvalidVertex(f"vertex {v} out of range for {g.vertex_count} vertices")
    return members


def is_dominating_set(g: Graph, s: Iterable[int]) -> bool:
    members = _check_members(g, s)
    return all(v in members or any(u in members for u in g.adjacency[v])
               for v in range(g.vertex_count))


def is_total_dominating_set(g: Graph, s: Iterable[int]) -> bool:
    members = _check_members(g, s)
    return all(any(u in members for u in g.adjacency[v]) for v in range(g.vertex_count))


@dataclass(frozen=True)
class Violation:
    class_index: int
    reason: str  # "out_of_range" | "overlap" | "not_dominating" | "not_total_dominating"
    vertex: int


@dataclass(frozen=True)
class PartitionVerdict:
    valid: bool
    violations: list[Violation]


def verify_domatic_partition(g: Graph, classes: Sequence[Iterable[int]],
                             total: bool = False) -> PartitionVerdict:
    """Check that ``classes`` are pairwise disjoint dominating sets of ``g``.

    With ``total=True`` every vertex, members included, must also have a
    neighbor in each class. Each violation carries a witness vertex.
    """
    violations: list[Violation] = []
    owner: dict[int, int] = {}
    sets: list[set[int]] = []
    for i, cls in enumerate(classes):
        members = set()
        for v in cls:
            if not 0 <= v < g.vertex_count:
                violations.append(Violation(i, "out_of_range", v))
                continue
            if v in owner and owner[v] != i:
                violations.append(Violation(i, "overlap", v))
            owner.setdefault(v, i)
            members.add(v)
        sets.append(members)
    for i, members in enumerate(sets):
        for v in range(g.vertex_count):
            hit = any(u in members for u in g.adjacency[v])
            if not hit and v not in members:
                violations.append(Violation(i, "not_dominating", v))
            elif total and not hit:
                violations.append(Violation(i, "not_total_dominating", v))
    return PartitionVerdict(not violations, violations)


# ---- generators ---------------------------------------------------------


def generate_circulant(n: int, offsets: Iterable[int]) -> Graph:
    offs = list(offsets)
    if n < 3:
        raise InvalidOffset(f"circulant needs n >= 3, got {n}")
    if len(set(offs)) != len(offs):
        raise InvalidOffset("offsets must be distinct")
    for o in offs:
        if not 1 <= o <= n // 2:
            raise InvalidOffset(f"offset {o} outside [1, {n // 2}]")
    edges = set()
    for i in range(n):
        for o in offs:
            j = (i + o) % n
            edges.add((min(i, j), max(i, j)))
    return Graph.from_edges(n, sorted(edges))


def cycle_graph(n: int) -> Graph:
    return generate_circulant(n, [1])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def generate_random_regular(n: int, k: int, seed: int, max_tries: int = 1000) -> Graph:
    """Random simple k-regular graph from the pairing (configuration) model.

    Stubs are shuffled and paired; pairs that would form a loop or a repeated
    edge go back into the pool and are reshuffled. A pool that can no longer
    produce a legal pair restarts the attempt.
    """
    if (n * k) % 2:
        raise GenerationFailed(f"n*k = {n * k} is odd")
    if not 0 <= k < n:
        raise GenerationFailed(f"need 0 <= k < n, got k={k}, n={n}")
    rng = random.Random(seed)
    for _ in range(max_tries):
        edges = _try_pairing(n, k, rng)
        if edges is not None:
            return Graph.from_edges(n, sorted(edges))
    raise GenerationFailed(f"no simple {k}-regular graph on {n} vertices after {max_tries} tries")


def _try_pairing(n: int, k: int, rng: random.Random) -> set[tuple[int, int]] | None:
    edges: set[tuple[int, int]] = set()
    stubs = [v for v in range(n) for _ in range(k)]
    while stubs:
        rng.shuffle(stubs)
        leftover: list[int] = []
        for a, b in zip(stubs[::2], stubs[1::2]):
            e = (min(a, b), max(a, b))
            if a != b and e not in edges:
                edges.add(e)
            else:
                leftover += [a, b]
        if leftover and not _has_legal_pair(leftover, edges):
            return None
        stubs = leftover
    return edges


def _has_legal_pair(stubs: list[int], edges: set[tuple[int, int]]) -> bool:
    distinct = sorted(set(stubs))
    return any((a, b) not in edges for i, a in enumerate(distinct) for b in distinct[i + 1:])


# ---- short cycles -------------------------------------------------------


def short_cycles(g: Graph, g_max: int) -> tuple[list[tuple[int, ...]], int]:
    """All simple cycles of length at most ``g_max``, plus ``min(girth, g_max + 1)``.

    Each cycle is listed once, starting at its smallest vertex and oriented
    so that the second vertex is smaller than the last.
    """
    found: list[tuple[int, ...]] = []
    adj = g.adjacency
    for s in range(g.vertex_count):
        path = [s]
        on_path = {s}

        def extend(v: int) -> None:
            for w in adj[v]:
                if w == s and len(path) >= 3 and path[1] < path[-1]:
                    found.append(tuple(path))
                elif w > s and w not in on_path and len(path) < g_max:
                    path.append(w)
                    on_path.add(w)
                    extend(w)
                    path.pop()
                    on_path.discard(w)

        extend(s)
    girth = min((len(c) for c in found), default=g_max + 1)
    return found, girth

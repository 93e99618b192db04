"""Random-graph witnesses with few dominating sets of small size: sample
G(n, p), check the degree window, then cut one edge from every short cycle."""

from __future__ import annotations

import math
import random
from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Optional

from .errors import CyclesNotDisjoint, InvalidEpsilon, TooLarge
from .graph import Graph, short_cycles

MAX_WITNESS_N = 10**7

SUCCESS = "Success"
DEGREE_CHECK_FAILED = "DegreeCheckFailed"
CYCLES_NOT_DISJOINT = "CyclesNotDisjoint"


def gnp(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p) by geometric skipping over the pairs (u, v), u > v."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be a probability, got {p}")
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if p == 0.0 or n < 2:
        return Graph.from_edges(n, [])
    if p == 1.0:
        return Graph.from_edges(n, combinations(range(n), 2))
    rng = random.Random(seed)
    log_q = math.log1p(-p)
    edges = []
    v, w = 1, -1
    while v < n:
        w += 1 + int(math.log(1.0 - rng.random()) / log_q)
        while w >= v and v < n:
            w -= v
            v += 1
        if v < n:
            edges.append((w, v))
    return Graph.from_edges(n, edges)


@dataclass(frozen=True)
class Deletion:
    cycle: tuple[int, ...]
    edge: tuple[int, int]


def prune_short_cycles(g: Graph, g_max: int) -> tuple[Graph, list[Deletion]]:
    """Delete the first edge of every cycle of length at most ``g_max``.

    Requires the short cycles to be pairwise vertex-disjoint, so no vertex
    loses more than one edge.
    """
    cycles, _ = short_cycles(g, g_max)
    seen: dict[int, tuple[int, ...]] = {}
    for cyc in cycles:
        for v in cyc:
            if v in seen:
                raise CyclesNotDisjoint(f"cycles {seen[v]} and {cyc} share vertex {v}")
            seen[v] = cyc
    log = [Deletion(cyc, (min(cyc[0], cyc[1]), max(cyc[0], cyc[1]))) for cyc in cycles]
    return g.without_edges(d.edge for d in log), log


@dataclass
class WitnessReport:
    k: int
    g: int
    epsilon: float
    C: float
    seed: int
    r: int
    n: int
    p: float
    k_effective: float
    n_override: Optional[int] = None
    min_degree: int = 0
    max_degree: int = 0
    degree_ok: bool = False
    short_cycles_found: int = 0
    cycles_disjoint: bool = False
    edges_deleted: int = 0
    max_degree_loss: int = 0
    final_girth_exceeds_g: bool = False
    outcome: str = ""
    failed_checks: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


def construct_witness(k: int, g: int, epsilon: float, C: float, seed: int,
                      n_override: Optional[int] = None) -> tuple[Graph, WitnessReport]:
    """Sample ``G(k^r, (1 + eps/8) / k^(r-1))`` with ``r = 2g + 1`` and repair
    its short cycles.

    Every check runs even after an earlier one fails, so the report is
    complete; ``outcome`` names the first failure. The returned graph is the
    pruned one when the short cycles were disjoint, else the raw sample.

    With ``n_override`` the sample has that many vertices and ``k`` is
    replaced by ``n^(1/r)`` in both ``p`` and the degree window, which keeps
    the expected degree near ``(1 + eps/8) k``.
    """
    if not 0 < epsilon < 1:
        raise InvalidEpsilon(f"epsilon must lie in (0, 1), got {epsilon}")
    if not 1 + epsilon / 4 < C:
        raise ValueError(f"need 1 + epsilon/4 < C, got C={C}")
    r = 2 * g + 1
    if n_override is None:
        if r * math.log10(k) > math.log10(MAX_WITNESS_N):
            raise TooLarge(f"n = {k}^{r} exceeds {MAX_WITNESS_N}; pass n_override")
        n = k**r
        k_eff = float(k)
    else:
        n = n_override
        k_eff = n ** (1.0 / r)
    p = min(1.0, (1 + epsilon / 8) / k_eff ** (r - 1))
    report = WitnessReport(k, g, epsilon, C, seed, r, n, p, k_eff, n_override)

    sample = gnp(n, p, seed)
    report.min_degree, report.max_degree = sample.min_degree(), sample.max_degree()
    report.degree_ok = report.min_degree >= k_eff + 1 and report.max_degree <= k_eff * C
    if not report.degree_ok:
        report.failed_checks.append(DEGREE_CHECK_FAILED)

    cycles, _ = short_cycles(sample, g)
    report.short_cycles_found = len(cycles)
    result = sample
    try:
        pruned, log = prune_short_cycles(sample, g)
    except CyclesNotDisjoint:
        report.failed_checks.append(CYCLES_NOT_DISJOINT)
    else:
        report.cycles_disjoint = True
        report.edges_deleted = len(log)
        report.max_degree_loss = max((sample.degree(v) - pruned.degree(v)
                                      for v in range(n)), default=0)
        report.final_girth_exceeds_g = not short_cycles(pruned, g)[0]
        result = pruned

    report.outcome = report.failed_checks[0] if report.failed_checks else SUCCESS
    return result, report

"""Two-phase semi-random domatic colorings, the naive single-phase solver,
and the fallback chain tying them to the two-class baseline.

Phase 1 colors every vertex from ``{0..t}`` (0 is the transparent color) and
resamples until three local conditions hold: enough transparent neighbors,
few missing colors per neighborhood, and no large matching between the
neighbors of a vertex and the colors they miss. Phase 2 recolors the
transparent vertices from the colors their neighbors miss, resampling until
every color appears in every open neighborhood.
"""

from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass, field
from typing import Optional

from .errors import (
    CapExceeded,
    DomaticError,
    InvalidEpsilon,
    IsolatedVertex,
    NoFeasibleT,
    TooFewColors,
)
from .graph import Graph, verify_domatic_partition
from .lll import Categorical, EventSpec, RunReport, VariableSpace, moser_tardos
from .oracle import DomaticResult, two_partition_baseline

TRANSPARENT = 0
MAX_MISSING = 4
DEFAULT_CAP = 10**6
NO_COLOR = -1


@dataclass(frozen=True)
class SemirandomParams:
    k: int
    epsilon: float
    gamma: float
    t: int
    p: float
    q: float
    z: int

    @property
    def transparent_threshold(self) -> float:
        """Minimum transparent-neighbor count, ``k*gamma/(4(2+gamma))``, i.e. ``k*q/2``."""
        return self.k * self.gamma / (4 * (2 + self.gamma))


def compute_params(k: int, epsilon: float) -> SemirandomParams:
    if epsilon <= 0:
        raise InvalidEpsilon(f"epsilon must be positive, got {epsilon}")
    if k < 3:
        raise NoFeasibleT(f"k = {k} is below 3")
    lnk = math.log(k)
    lower = k / ((2 + epsilon) * lnk)
    upper = k / ((2 + epsilon / 2) * lnk)
    t = math.floor(upper)
    if t < 1 or t < lower:
        raise NoFeasibleT(f"no integer in [{lower:.4f}, {upper:.4f}] for k={k}, epsilon={epsilon}")
    gamma = k / (t * lnk) - 2
    p = (2 + gamma / 2) * lnk / k
    q = 1 - p * t
    z = math.ceil(12 / gamma)
    return SemirandomParams(k, epsilon, gamma, t, p, q, z)


@dataclass(frozen=True)
class Coloring:
    colors: tuple[int, ...]
    palette_size: int

    def classes(self) -> list[frozenset[int]]:
        """Color classes 1..t, in color order."""
        buckets: list[set[int]] = [set() for _ in range(self.palette_size)]
        for v, c in enumerate(self.colors):
            if c != TRANSPARENT:
                buckets[c - 1].add(v)
        return [frozenset(b) for b in buckets]


@dataclass(frozen=True)
class BadEvent:
    kind: str
    vertex: int
    color: int
    variables: tuple[int, ...]


@dataclass(frozen=True)
class MissingColorIndex:
    missing: tuple[frozenset[int], ...]     # F(v)
    candidates: tuple[frozenset[int], ...]  # S(v)


def derive_seed(seed: int, label: str) -> int:
    digest = hashlib.sha256(f"{seed}:{label}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


# ---- phase 1 ------------------------------------------------------------


def _phase1_distribution(params: SemirandomParams) -> Categorical:
    return Categorical(tuple(range(params.t + 1)), (params.q,) + (params.p,) * params.t)


def phase1_sample(g: Graph, params: SemirandomParams, seed: int) -> Coloring:
    rng = random.Random(seed)
    dist = _phase1_distribution(params)
    return Coloring(tuple(dist.draw(rng) for _ in range(g.vertex_count)), params.t)


def _missing(adj: tuple[int, ...], colors, t: int) -> set[int]:
    out = set(range(1, t + 1))
    out.difference_update(colors[u] for u in adj)
    return out


def _max_matching_at_least(left: list[set[int]], target: int) -> bool:
    """Kuhn augmenting paths; stops as soon as ``target`` pairs are matched."""
    owner: dict[int, int] = {}

    def augment(i: int, seen: set[int]) -> bool:
        for c in left[i]:
            if c in seen:
                continue
            seen.add(c)
            if c not in owner or augment(owner[c], seen):
                owner[c] = i
                return True
        return False

    size = 0
    for i in range(len(left)):
        if augment(i, set()):
            size += 1
            if size >= target:
                return True
    return False


def _make_phase1_predicates(g: Graph, params: SemirandomParams):
    adj = g.adjacency
    t, z = params.t, params.z
    threshold = params.transparent_threshold

    def few_transparent(v):
        nbrs = adj[v]
        return lambda a: sum(1 for u in nbrs if a[u] == TRANSPARENT) < threshold

    def many_missing(v):
        nbrs = adj[v]
        return lambda a: len(_missing(nbrs, a, t)) > MAX_MISSING

    def large_matching(v):
        nbrs = adj[v]

        def pred(a) -> bool:
            if t < z or len(nbrs) < z:
                return False
            sides = [m for m in (_missing(adj[u], a, t) for u in nbrs) if m]
            if len(sides) < z or len(set().union(*sides)) < z:
                return False
            return _max_matching_at_least(sides, z)

        return pred

    return few_transparent, many_missing, large_matching


def _phase1_events(g: Graph, params: SemirandomParams) -> list[EventSpec]:
    few_transparent, many_missing, large_matching = _make_phase1_predicates(g, params)
    events = []
    for v in range(g.vertex_count):
        nbrs = g.adjacency[v]
        second = tuple(sorted({w for u in nbrs for w in g.adjacency[u]}))
        events.append(EventSpec(("A", v, NO_COLOR), nbrs, few_transparent(v)))
        events.append(EventSpec(("B", v, NO_COLOR), nbrs, many_missing(v)))
        events.append(EventSpec(("C", v, NO_COLOR), second, large_matching(v)))
    return events


def phase1_violations(g: Graph, c: Coloring, params: SemirandomParams) -> list[BadEvent]:
    colors = list(c.colors)
    return [BadEvent(ev.id[0], ev.id[1], ev.id[2], ev.variable_set)
            for ev in sorted(_phase1_events(g, params), key=lambda e: e.id)
            if ev.predicate(colors)]


def _require_min_degree(g: Graph, k: int) -> None:
    if g.min_degree() != k:
        raise ValueError(f"graph has minimum degree {g.min_degree()}, params expect k={k}")


def run_phase1(g: Graph, params: SemirandomParams, seed: int,
               cap: int = DEFAULT_CAP) -> tuple[Coloring, RunReport]:
    _require_min_degree(g, params.k)
    space = VariableSpace.iid(g.vertex_count, _phase1_distribution(params))
    report = moser_tardos(space, _phase1_events(g, params), cap, seed)
    if not report.success:
        raise CapExceeded(f"phase 1 hit cap {cap}", report)
    return Coloring(tuple(report.final_assignment), params.t), report


# ---- phase 2 ------------------------------------------------------------


def missing_color_index(g: Graph, c: Coloring) -> MissingColorIndex:
    missing = tuple(frozenset(_missing(g.adjacency[v], c.colors, c.palette_size))
                    for v in range(g.vertex_count))
    candidates = tuple(frozenset().union(*(missing[u] for u in g.adjacency[v]))
                       for v in range(g.vertex_count))
    return MissingColorIndex(missing, candidates)


def run_phase2(g: Graph, c: Coloring, params: SemirandomParams, seed: int,
               cap: int = DEFAULT_CAP) -> tuple[Coloring, RunReport]:
    """Recolor transparent vertices so each color meets every open neighborhood.

    A transparent vertex draws uniformly from ``S(v)``, or takes color 1 when
    ``S(v)`` is empty. Non-transparent colors are never touched.
    """
    index = missing_color_index(g, c)
    transparent = [v for v, col in enumerate(c.colors) if col == TRANSPARENT]
    var_of = {v: i for i, v in enumerate(transparent)}
    dists = tuple(Categorical.uniform(sorted(index.candidates[v])) if index.candidates[v]
                  else Categorical((1,), (1.0,)) for v in transparent)

    events = []
    for v in range(g.vertex_count):
        scope = tuple(var_of[u] for u in g.adjacency[v] if u in var_of)
        for col in sorted(index.missing[v]):
            events.append(EventSpec(("Avc", v, col), scope,
                                    lambda a, s=scope, col=col: all(a[x] != col for x in s)))

    report = moser_tardos(VariableSpace(dists), events, cap, seed)
    if not report.success:
        raise CapExceeded(f"phase 2 hit cap {cap}", report)
    colors = list(c.colors)
    for v, value in zip(transparent, report.final_assignment):
        colors[v] = value
    return Coloring(tuple(colors), c.palette_size), report


# ---- naive solver -------------------------------------------------------


def naive_color_count(k: int) -> int:
    """``floor(k / (3 ln k))``, zero for ``k <= 1``."""
    if k <= 1:
        return 0
    return math.floor(k / (3 * math.log(k)))


def naive_domatic(g: Graph, seed: int, cap: int = DEFAULT_CAP) -> tuple[DomaticResult, RunReport]:
    """Uniform coloring with ``floor(k/(3 ln k))`` colors, resampled until each
    color meets every closed neighborhood."""
    k = g.min_degree()
    t = naive_color_count(k)
    if t < 2:
        raise TooFewColors(f"k = {k} gives t = {t} colors")
    space = VariableSpace.iid(g.vertex_count, Categorical.uniform(range(1, t + 1)))
    events = []
    for v in range(g.vertex_count):
        scope = g.closed_neighborhood(v)
        for i in range(1, t + 1):
            events.append(EventSpec(("Avi", v, i), scope,
                                    lambda a, s=scope, i=i: all(a[u] != i for u in s)))
    report = moser_tardos(space, events, cap, seed)
    if not report.success:
        raise CapExceeded(f"naive solver hit cap {cap}", report)
    classes = Coloring(tuple(report.final_assignment), t).classes()
    return DomaticResult(t, classes), report


# ---- fallback chain -----------------------------------------------------

STAGES = ("two_phase", "naive", "baseline")


@dataclass
class StageAttempt:
    stage: str
    outcome: str
    detail: str = ""
    resamples: dict[str, int] = field(default_factory=dict)


@dataclass
class SolveReport:
    seed: int
    stage: Optional[str] = None
    params: Optional[SemirandomParams] = None
    attempts: list[StageAttempt] = field(default_factory=list)


def _caps(caps: Optional[dict[str, int]]) -> dict[str, int]:
    out = {"phase1": DEFAULT_CAP, "phase2": DEFAULT_CAP, "naive": DEFAULT_CAP}
    out.update(caps or {})
    return out


def solve(g: Graph, epsilon: float, seed: int,
          caps: Optional[dict[str, int]] = None) -> tuple[DomaticResult, SolveReport]:
    """First verified partition from: two-phase coloring, naive coloring,
    two-class baseline. Stages yielding fewer than two classes are skipped."""
    for v in range(g.vertex_count):
        if not g.adjacency[v]:
            raise IsolatedVertex(f"vertex {v} is isolated")
    caps = _caps(caps)
    report = SolveReport(seed)

    def accept(stage: str, result: DomaticResult, resamples: dict[str, int]) -> bool:
        if result.value < 2:
            report.attempts.append(StageAttempt(stage, "TooFewColors", f"t = {result.value}"))
            return False
        verdict = verify_domatic_partition(g, result.certificate)
        if not verdict.valid:
            report.attempts.append(StageAttempt(stage, "VerificationFailed",
                                                f"{len(verdict.violations)} violations", resamples))
            return False
        report.attempts.append(StageAttempt(stage, "Success", "", resamples))
        report.stage = stage
        return True

    # stage 1
    try:
        params = compute_params(g.min_degree(), epsilon)
        report.params = params
        if params.t < 2:
            raise TooFewColors(f"t = {params.t}")
        c1, r1 = run_phase1(g, params, derive_seed(seed, "phase1"), caps["phase1"])
        c2, r2 = run_phase2(g, c1, params, derive_seed(seed, "phase2"), caps["phase2"])
        resamples = {f"phase1.{k}": n for k, n in r1.resamples_by_kind.items()}
        resamples.update({f"phase2.{k}": n for k, n in r2.resamples_by_kind.items()})
        result = DomaticResult(params.t, c2.classes())
        if accept("two_phase", result, resamples):
            return result, report
    except CapExceeded as exc:
        report.attempts.append(StageAttempt("two_phase", "CapExceeded", str(exc),
                                            exc.report.resamples_by_kind if exc.report else {}))
    except DomaticError as exc:
        report.attempts.append(StageAttempt("two_phase", type(exc).__name__, str(exc)))

    # stage 2
    try:
        result, r = naive_domatic(g, derive_seed(seed, "naive"), caps["naive"])
        if accept("naive", result, dict(r.resamples_by_kind)):
            return result, report
    except CapExceeded as exc:
        report.attempts.append(StageAttempt("naive", "CapExceeded", str(exc),
                                            exc.report.resamples_by_kind if exc.report else {}))
    except DomaticError as exc:
        report.attempts.append(StageAttempt("naive", type(exc).__name__, str(exc)))

    # stage 3
    result = DomaticResult(2, two_partition_baseline(g))
    if not accept("baseline", result, {}):
        raise AssertionError("baseline partition failed verification")
    return result, report

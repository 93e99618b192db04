"""Moser-Tardos resampling and the symmetric Local Lemma condition."""

from __future__ import annotations

import heapq
import math
import random
from bisect import bisect_right
from collections import Counter
from dataclasses import dataclass, field
from itertools import accumulate
from typing import Callable, Optional, Sequence

SUCCESS = "Success"
CAP_EXCEEDED = "CapExceeded"


def symmetric_lll_check(p: float, d: int) -> bool:
    """True iff ``e * p * (d + 1) <= 1``, evaluated in log space."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be a probability, got {p}")
    if d < 0:
        raise ValueError(f"d must be nonnegative, got {d}")
    if p == 0.0:
        return True
    return 1.0 + math.log(p) + math.log(d + 1) <= 0.0


def symmetric_lll_check_log(log_p: float, d: float) -> bool:
    """Same condition with the probability already given as a natural log."""
    if log_p == -math.inf:
        return True
    return 1.0 + log_p + math.log(d + 1) <= 0.0


@dataclass(frozen=True)
class Categorical:
    values: tuple[int, ...]
    probs: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.values) != len(self.probs) or not self.values:
            raise ValueError("values and probs must be nonempty and equal length")
        if abs(sum(self.probs) - 1.0) > 1e-9:
            raise ValueError(f"probabilities sum to {sum(self.probs)}, not 1")
        object.__setattr__(self, "_cum", tuple(accumulate(self.probs)))

    @classmethod
    def uniform(cls, values: Sequence[int]) -> Categorical:
        vals = tuple(values)
        return cls(vals, tuple(1.0 / len(vals) for _ in vals))

    def draw(self, rng: random.Random) -> int:
        if len(self.values) == 1:
            return self.values[0]
        i = bisect_right(self._cum, rng.random())  # type: ignore[attr-defined]
        return self.values[min(i, len(self.values) - 1)]


@dataclass(frozen=True)
class VariableSpace:
    distributions: tuple[Categorical, ...]

    @property
    def count(self) -> int:
        return len(self.distributions)

    @classmethod
    def iid(cls, count: int, dist: Categorical) -> VariableSpace:
        return cls((dist,) * count)


EventId = tuple  # (kind, primary vertex, color or -1)


@dataclass(frozen=True)
class EventSpec:
    id: EventId
    variable_set: tuple[int, ...]
    predicate: Callable[[list[int]], bool] = field(compare=False)

    @property
    def kind(self) -> str:
        return self.id[0]


@dataclass
class RunReport:
    seed: int
    resamples_by_kind: dict[str, int]
    total_resamples: int
    outcome: str
    final_assignment: list[int]

    @property
    def success(self) -> bool:
        return self.outcome == SUCCESS


def moser_tardos(space: VariableSpace, events: Sequence[EventSpec], cap: int, seed: int,
                 on_resample: Optional[Callable[[EventSpec, list[int], list[int]], None]] = None,
                 ) -> RunReport:
    """Sample every variable, then resample the smallest-id violated event
    until none is violated or ``cap`` resamples have been made.

    After a resample only the events sharing a variable with the resampled
    event are re-evaluated. ``on_resample(event, before, after)`` is called
    with assignment snapshots, for instrumentation.
    """
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    rng = random.Random(seed)
    dists = space.distributions
    assignment = [d.draw(rng) for d in dists]

    ordered = sorted(events, key=lambda e: e.id)
    touching: list[list[int]] = [[] for _ in range(space.count)]
    for idx, ev in enumerate(ordered):
        for x in ev.variable_set:
            touching[x].append(idx)

    violated = [ev.predicate(assignment) for ev in ordered]
    heap = [i for i, bad in enumerate(violated) if bad]
    heapq.heapify(heap)

    counts: Counter[str] = Counter()
    total = 0
    while True:
        while heap and not violated[heap[0]]:
            heapq.heappop(heap)
        if not heap:
            outcome = SUCCESS
            break
        if total >= cap:
            outcome = CAP_EXCEEDED
            break
        idx = heap[0]
        ev = ordered[idx]
        before = list(assignment) if on_resample else None
        for x in ev.variable_set:
            assignment[x] = dists[x].draw(rng)
        if on_resample:
            on_resample(ev, before, list(assignment))
        counts[ev.kind] += 1
        total += 1

        affected = {idx}
        for x in ev.variable_set:
            affected.update(touching[x])
        for j in affected:
            now = ordered[j].predicate(assignment)
            if now and not violated[j]:
                heapq.heappush(heap, j)
            violated[j] = now

    return RunReport(seed, dict(sorted(counts.items())), total, outcome, assignment)

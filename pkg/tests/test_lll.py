import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from domatic.graph import path_graph
from domatic.lll import (
    CAP_EXCEEDED,
    SUCCESS,
    Categorical,
    EventSpec,
    VariableSpace,
    moser_tardos,
    symmetric_lll_check,
)


class TestSymmetricCheck:
    def test_zero_probability(self):
        assert symmetric_lll_check(0.0, 10**9)

    def test_half(self):
        assert math.e * 0.5 * 2 > 1
        assert not symmetric_lll_check(0.5, 1)

    def test_small(self):
        assert math.e * 0.01 * 31 <= 1
        assert symmetric_lll_check(0.01, 30)

    def test_tiny_probability_huge_degree(self):
        assert symmetric_lll_check(1e-300, 10**200)
        assert not symmetric_lll_check(1e-300, 10**300)

    @given(st.floats(1e-12, 1.0), st.integers(0, 10**6))
    def test_matches_direct(self, p, d):
        direct = math.e * p * (d + 1)
        if abs(direct - 1) > 1e-9:
            assert symmetric_lll_check(p, d) == (direct <= 1)

    def test_rejects_bad_p(self):
        with pytest.raises(ValueError):
            symmetric_lll_check(1.5, 3)


class TestCategorical:
    def test_must_sum_to_one(self):
        with pytest.raises(ValueError):
            Categorical((0, 1), (0.5, 0.6))

    def test_frequencies(self):
        dist = Categorical((0, 1, 2), (0.2, 0.3, 0.5))
        rng = random.Random(3)
        n = 100_000
        draws = [dist.draw(rng) for _ in range(n)]
        for value, prob in zip(dist.values, dist.probs):
            sigma = math.sqrt(n * prob * (1 - prob))
            assert abs(draws.count(value) - n * prob) < 5 * sigma


def _monochromatic_edge_events(g):
    return [EventSpec(("E", u, v), (u, v), lambda a, u=u, v=v: a[u] == a[v])
            for u, v in g.edges()]


class TestMoserTardos:
    def test_no_events(self):
        space = VariableSpace.iid(5, Categorical.uniform([0, 1, 2]))
        report = moser_tardos(space, [], cap=10, seed=4)
        assert report.outcome == SUCCESS and report.total_resamples == 0
        rng = random.Random(4)
        assert report.final_assignment == [space.distributions[0].draw(rng) for _ in range(5)]

    def test_always_bad(self):
        space = VariableSpace.iid(3, Categorical.uniform([0, 1]))
        ev = EventSpec(("X", 0, -1), (0, 1), lambda a: True)
        report = moser_tardos(space, [ev], cap=100, seed=0)
        assert report.outcome == CAP_EXCEEDED
        assert report.total_resamples == 100
        assert report.resamples_by_kind == {"X": 100}

    def test_cap_zero(self):
        space = VariableSpace.iid(1, Categorical.uniform([0]))
        ev = EventSpec(("X", 0, -1), (0,), lambda a: a[0] == 0)
        report = moser_tardos(space, [ev], cap=0, seed=0)
        assert report.outcome == CAP_EXCEEDED and report.total_resamples == 0

    def test_path_two_coloring(self):
        g = path_graph(4)
        space = VariableSpace.iid(4, Categorical.uniform([0, 1]))
        report = moser_tardos(space, _monochromatic_edge_events(g), cap=10**5, seed=11)
        assert report.outcome == SUCCESS
        a = report.final_assignment
        assert all(a[u] != a[v] for u, v in g.edges())

    @given(st.integers(0, 10**9))
    def test_deterministic(self, seed):
        g = path_graph(6)
        space = VariableSpace.iid(6, Categorical.uniform([0, 1, 2]))
        events = _monochromatic_edge_events(g)
        assert moser_tardos(space, events, 1000, seed) == moser_tardos(space, events, 1000, seed)

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 10**9))
    def test_locality_and_selection(self, seed):
        g = path_graph(8)
        space = VariableSpace.iid(8, Categorical.uniform([0, 1, 2]))
        events = _monochromatic_edge_events(g)

        def check(ev, before, after):
            assert ev.predicate(before), "only violated events are resampled"
            violated = [e.id for e in events if e.predicate(before)]
            assert ev.id == min(violated)
            for x in range(len(before)):
                if x not in ev.variable_set:
                    assert before[x] == after[x]

        report = moser_tardos(space, events, 10**4, seed, on_resample=check)
        if report.outcome == SUCCESS:
            assert not any(e.predicate(report.final_assignment) for e in events)

    def test_event_scope_is_respected(self):
        # perturbing variables outside an event's scope leaves its predicate unchanged
        g = path_graph(5)
        events = _monochromatic_edge_events(g)
        rng = random.Random(0)
        for _ in range(200):
            a = [rng.randrange(3) for _ in range(5)]
            for ev in events:
                b = list(a)
                for x in range(5):
                    if x not in ev.variable_set:
                        b[x] = rng.randrange(3)
                assert ev.predicate(a) == ev.predicate(b)

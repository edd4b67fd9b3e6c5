from fractions import Fraction
from itertools import chain, combinations

import pytest
from hypothesis import given, settings, strategies as st

from hyperquery.construct import ConstructionConfig, las_vegas_construct
from hyperquery.decode import AMBIGUOUS, INCONSISTENT, UNIQUE, consistency_check, decode_exhaustive
from hyperquery.field import INFINITY, FieldSpec
from hyperquery.hypergraph import Hypergraph, random_hypergraph
from hyperquery.plan import QueryPlan, answer_plan
from hyperquery.verify import BudgetExceeded

from test_verify import all_graphs

F5 = FieldSpec(5)


def small_plan(n, F, m=1):
    subsets = [[]] + [[i] for i in range(1, n + 1)] + [list(c) for c in combinations(range(1, n + 1), 2)]
    return QueryPlan.from_subsets(subsets, n, 2, m, F)


def test_single_edge_unique():
    plan = small_plan(4, INFINITY)
    G = Hypergraph(4, 2, {(1, 2): 3})
    matches = [H for H in all_graphs(4, 2, 1, INFINITY, window=3) if consistency_check(H, plan, answer_plan(plan, G))]
    assert matches == [G]
    res = decode_exhaustive(plan, answer_plan(plan, G), window=3)
    assert res.outcome == UNIQUE and res.graph == G


def test_zero_answers_give_empty_graph():
    plan = small_plan(4, F5)
    res = decode_exhaustive(plan, [0] * len(plan))
    assert res.outcome == UNIQUE and res.graph.m == 0


def test_too_many_edges_is_inconsistent():
    n = 3
    plan = QueryPlan.from_subsets(
        [list(c) for c in chain.from_iterable(combinations(range(1, n + 1), k) for k in range(n + 1))], n, 2, 1, INFINITY
    )
    G = Hypergraph(n, 2, {(1, 2): 1, (2, 3): 2})
    answers = answer_plan(plan, G)
    assert not any(consistency_check(H, plan, answers) for H in all_graphs(n, 2, 1, INFINITY))
    assert decode_exhaustive(plan, answers).outcome == INCONSISTENT


def test_ambiguous_pair_is_consistent():
    plan = QueryPlan.from_subsets([[1, 2]], 2, 1, 1, F5)
    res = decode_exhaustive(plan, [1])
    assert res.outcome == AMBIGUOUS
    assert res.graph != res.other
    assert consistency_check(res.graph, plan, [1]) and consistency_check(res.other, plan, [1])


def test_errors_and_odd_answers():
    plan = small_plan(3, INFINITY)
    with pytest.raises(ValueError):
        decode_exhaustive(plan, [0])
    answers = [0] * len(plan)
    answers[1] = Fraction(1, 2)
    assert decode_exhaustive(plan, answers).outcome == INCONSISTENT
    answers[1] = 2**70
    assert decode_exhaustive(plan, answers).outcome == INCONSISTENT
    with pytest.raises(BudgetExceeded):
        decode_exhaustive(small_plan(6, F5, m=4), [0] * len(small_plan(6, F5)), budget=100)


@pytest.fixture(scope="module")
def search_plan():
    plan, _ = las_vegas_construct("search", 5, 2, 1, ConstructionConfig(), field=F5)
    plan.field = F5
    return plan


def test_round_trip_every_class_member(search_plan):
    for G in all_graphs(5, 2, 1, F5):
        res = decode_exhaustive(search_plan, answer_plan(search_plan, G))
        assert res.outcome == UNIQUE and res.graph == G


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_tampered_answers_never_decode_to_the_original(search_plan, seed):
    G = random_hypergraph(5, 2, 1, seed=seed, field=F5, mixed=True)
    answers = answer_plan(search_plan, G)
    i = 1 + seed % (len(answers) - 1)
    answers[i] = (answers[i] + 1) % 5
    res = decode_exhaustive(search_plan, answers)
    assert res.outcome != UNIQUE or res.graph != G

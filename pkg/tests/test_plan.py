import json

import numpy as np

from hyperquery.construct import ConstructionConfig, build_search_set, las_vegas_construct, zero_test_plan
from hyperquery.field import FieldSpec
from hyperquery.hypergraph import Hypergraph, additive_query
from hyperquery.plan import QueryPlan, answer_plan, hit_matrix, incidence_matrix, subsets_to_masks
from hyperquery.tensor import DisjointTuple


def test_search_plan_json_round_trip():
    plan = build_search_set(6, 2, 2, ConstructionConfig(), 4)
    text = plan.to_json()
    back = QueryPlan.from_json(text)
    assert back.to_json() == text
    assert back.queries == plan.queries and back.m_detect == 4 and back.primes == plan.primes
    assert json.loads(text)["kind"] == "search"


def test_zero_test_plan_keeps_tuples():
    zt, _ = las_vegas_construct("zero-test", 4, 2, 2, ConstructionConfig())
    plan = QueryPlan.from_json(zero_test_plan(zt).to_json())
    assert plan.tuples == zt.tuples


def test_masks_and_incidence():
    masks = subsets_to_masks([[1, 3], [], [2]], 3)
    M = incidence_matrix(masks, [(1,), (1, 3), (2, 3)], 3)
    assert M.tolist() == [[1, 1, 0], [0, 0, 0], [0, 0, 0]]


def test_hit_matrix_marks_permutation_labelings():
    t = DisjointTuple.from_supports([[1, 2], [3]], 3)
    H, cols = hit_matrix([t], 3, 2)
    got = dict(zip(cols, H[0].tolist()))
    assert got == {(1, 2): 0, (1, 3): 1, (2, 3): 1}


def test_answer_plan_and_empty_query():
    plan = QueryPlan.from_subsets([[], [1, 2], [1, 2, 3]], 3, 2, 1, FieldSpec(5))
    G = Hypergraph(3, 2, {(1, 2): 3, (2, 3): 4}, FieldSpec(5))
    calls = []

    def oracle(S):
        calls.append(S)
        return additive_query(G, S)

    assert answer_plan(plan, G, oracle=oracle) == [0, 3, 2]
    assert () not in calls
    assert answer_plan(plan, Hypergraph(3, 2, {}, FieldSpec(5))) == [0, 0, 0]


def test_without_drops_one_query():
    plan = QueryPlan.from_subsets([[1], [2], [1, 2]], 2, 2, 1, FieldSpec(5))
    short = plan.without(1)
    assert short.queries == [(1,), (1, 2)] and len(short.provenance) == 2
    assert np.array_equal(short.masks(), plan.masks()[[0, 2]])

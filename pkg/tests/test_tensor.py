from fractions import Fraction
from itertools import product
from math import factorial

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hyperquery.field import INFINITY, FieldSpec
from hyperquery.hypergraph import Hypergraph, additive_query, candidate_edges
from hyperquery.tensor import (
    DisjointTuple,
    SymTensor,
    adjacency_tensor,
    diag_values,
    eval_diag,
    evaluate,
    polarize,
    random_symmetric_tensor,
    surjection_count,
    wt,
    wt_r,
)

from conftest import dense_eval

F7, F13 = FieldSpec(7), FieldSpec(13)


def surjections_by_enumeration(d, ell):
    return sum(1 for seq in product(range(ell), repeat=d) if len(set(seq)) == ell)


def stirling2(d, ell):
    S = [[0] * (ell + 1) for _ in range(d + 1)]
    S[0][0] = 1
    for i in range(1, d + 1):
        for j in range(1, ell + 1):
            S[i][j] = j * S[i - 1][j] + S[i - 1][j - 1]
    return S[d][ell]


@pytest.mark.parametrize("d", range(1, 9))
def test_surjection_count_oracles(d):
    for ell in range(1, d + 1):
        got = surjection_count(d, ell)
        assert got == factorial(ell) * stirling2(d, ell)
        if d <= 6:
            assert got == surjections_by_enumeration(d, ell)
    assert surjection_count(d, d) == factorial(d)
    assert surjection_count(d, 1) == 1


def test_surjection_count_example_and_errors():
    assert surjection_count(3, 2) == 2**3 - 2
    with pytest.raises(ValueError):
        surjection_count(2, 3)


def dense_adjacency(G, d, F):
    """Full n**d map built straight from the definition: w(e)/N(d,|e|) on every sequence with value set e."""
    out = {}
    for idx in product(range(1, G.n + 1), repeat=d):
        e = tuple(sorted(set(idx)))
        if e in G.edges:
            out[idx] = F.reduce(Fraction(G.edges[e], surjections_by_enumeration(d, len(e))))
    return out


def test_adjacency_examples():
    A = adjacency_tensor(Hypergraph(3, 2, {(1, 2): 3}, F7))
    assert A[(1, 2)] == A[(2, 1)] == 5
    assert 3 * pow(2, -1, 7) % 7 == 5
    A = adjacency_tensor(Hypergraph(3, 2, {(1,): 4}, F7))
    assert A[(1, 1)] == 4
    assert adjacency_tensor(Hypergraph(3, 2, {}, F7)).is_zero()


def test_adjacency_errors():
    G = Hypergraph(4, 3, {(1, 2, 3): 1}, F7)
    with pytest.raises(ValueError):
        adjacency_tensor(G, d=2)
    with pytest.raises(ValueError):
        adjacency_tensor(Hypergraph(4, 3, {(1, 2, 3): 1}, FieldSpec(5)))


@settings(max_examples=40)
@given(st.integers(2, 4), st.integers(1, 3), st.data())
def test_adjacency_matches_dense_definition(n, d, data):
    F = FieldSpec(13) if d == 3 else F7
    pool = candidate_edges(n, d)
    chosen = data.draw(st.lists(st.sampled_from(pool), unique=True, max_size=5))
    G = Hypergraph(n, d, {e: data.draw(st.integers(1, F.modulus - 1)) for e in chosen}, F)
    A = adjacency_tensor(G)
    dense = dense_adjacency(G, d, F)
    for idx in product(range(1, n + 1), repeat=d):
        assert A[idx] == dense.get(idx, 0)


def test_evaluate_examples():
    A = adjacency_tensor(Hypergraph(2, 2, {(1, 2): 6}, F7))
    e1, e2 = np.array([1, 0]), np.array([0, 1])
    assert evaluate(A, [e1, e2]) == 3
    assert evaluate(A, [e1 + e2, e1 + e2]) == 6
    assert eval_diag(A, e1 + e2) == 6
    assert eval_diag(A, np.zeros(2)) == 0
    assert evaluate(SymTensor(2, 2, F7), [e1, e2]) == 0


@settings(max_examples=60)
@given(st.integers(1, 4), st.integers(1, 3), st.integers(0, 10**6), st.data())
def test_evaluate_matches_dense_oracle(n, d, seed, data):
    F = FieldSpec(13)
    A = random_symmetric_tensor(n, d, F, 4, seed=seed)
    xs = [np.array(data.draw(st.lists(st.booleans(), min_size=n, max_size=n))) for _ in range(d)]
    assert evaluate(A, xs) == dense_eval(A, xs)
    assert eval_diag(A, xs[0]) == dense_eval(A, [xs[0]] * d)


@settings(max_examples=60)
@given(st.integers(1, 5), st.integers(1, 3), st.data())
def test_eval_diag_is_additive_query(n, d, data):
    pool = candidate_edges(n, d)
    chosen = data.draw(st.lists(st.sampled_from(pool), unique=True, max_size=6))
    for F in (FieldSpec(13), INFINITY):
        G = Hypergraph(n, d, {e: data.draw(st.integers(1, 12)) for e in chosen}, F)
        S = data.draw(st.sets(st.integers(1, n)))
        x = np.isin(np.arange(1, n + 1), list(S))
        assert eval_diag(adjacency_tensor(G), x) == additive_query(G, S)


def test_polarize_example():
    A = adjacency_tensor(Hypergraph(2, 2, {(1, 2): 6}, F7))
    t = DisjointTuple.from_supports([[1], [2]], 2)
    B = diag_values(A, t)
    assert (B[frozenset()], B[frozenset({1})], B[frozenset({2})], B[frozenset({1, 2})]) == (0, 0, 0, 6)
    assert polarize(B, t, 2, F7) == 3 == evaluate(A, t)


def test_polarize_zero_tensor_and_errors():
    t = DisjointTuple.from_supports([[1], [2, 3]], 4)
    Z = SymTensor(4, 2, F7)
    assert polarize(diag_values(Z, t), t, 2, F7) == 0
    B = diag_values(Z, t)
    del B[frozenset({1})]
    with pytest.raises(ValueError):
        polarize(B, t, 2, F7)
    with pytest.raises(ValueError):
        polarize(diag_values(Z, t), t, 3, F7)
    with pytest.raises(ValueError):
        DisjointTuple(np.array([[1, 1, 0], [0, 1, 0]]))


@settings(max_examples=60)
@given(st.integers(0, 10**6), st.data())
def test_polarize_equals_evaluate(seed, data):
    for F in (F13, INFINITY):
        A = random_symmetric_tensor(5, 3, F, 8, seed=seed)
        labels = data.draw(st.lists(st.integers(0, 3), min_size=5, max_size=5))
        t = DisjointTuple.from_labels(labels, 3)
        assert polarize(diag_values(A, t), t, 3, F) == evaluate(A, t) == dense_eval(A, t.vectors)


def test_wt_examples():
    A = adjacency_tensor(Hypergraph(3, 2, {(1, 2): 3}, F7))
    assert (wt_r(A, 2), wt_r(A, 1)) == (2, 0)
    A = adjacency_tensor(Hypergraph(3, 2, {(1,): 5}, F7))
    assert (wt_r(A, 1), wt_r(A, 2)) == (1, 0)
    Z = SymTensor(3, 2, F7)
    assert wt(Z) == wt_r(Z, 1) == wt_r(Z, 2) == 0


@settings(max_examples=40)
@given(st.integers(1, 4), st.integers(1, 3), st.integers(0, 10**6))
def test_wt_counts_dense_points(n, d, seed):
    A = random_symmetric_tensor(n, d, F13, 5, seed=seed)
    points = [idx for idx in product(range(1, n + 1), repeat=d) if A[idx] != 0]
    for r in range(1, d + 1):
        assert wt_r(A, r) == sum(1 for idx in points if len(set(idx)) == r)
    assert wt(A) == len(points)


@settings(max_examples=60)
@given(st.integers(2, 5), st.integers(1, 3), st.data())
def test_rank_filtering(n, d, data):
    F = F13
    pool = candidate_edges(n, d)
    chosen = data.draw(st.lists(st.sampled_from(pool), unique=True, max_size=6))
    G = Hypergraph(n, d, {e: data.draw(st.integers(1, 12)) for e in chosen}, F)
    top = Hypergraph(n, d, {e: w for e, w in G.edges.items() if len(e) == d}, F)
    labels = data.draw(st.lists(st.integers(0, d), min_size=n, max_size=n))
    t = DisjointTuple.from_labels(labels, d)
    assert evaluate(adjacency_tensor(G), t) == evaluate(adjacency_tensor(top), t)
    if G.rank < d:
        assert evaluate(adjacency_tensor(G, d), t) == 0


def test_symtensor_rejects_disagreeing_permutations():
    with pytest.raises(ValueError):
        SymTensor(3, 2, F7, {(1, 2): 1, (2, 1): 2})
    assert SymTensor(3, 2, F7, {(2, 1): 8}).entries == {(1, 2): 1}

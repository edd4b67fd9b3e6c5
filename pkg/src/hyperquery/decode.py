"""Exhaustive reconstruction of a hidden hypergraph from a plan's answers."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .field import FieldSpec
from .hypergraph import SCHEMA_VERSION, Hypergraph, additive_query, candidate_edges, default_weight_domain
from .plan import QueryPlan, incidence_matrix
from .verify import DEFAULT_BUDGET, _check_budget, count_candidates

UNIQUE, AMBIGUOUS, INCONSISTENT = "unique", "ambiguous", "inconsistent"
_INT64_SAFE = 2**62


@dataclass
class DecodeResult:
    outcome: str
    graph: Hypergraph | None = None
    other: Hypergraph | None = None
    candidates_examined: int = 0

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "outcome": self.outcome,
            "graph": self.graph.to_dict() if self.graph is not None else None,
            "other": self.other.to_dict() if self.other is not None else None,
            "candidates_examined": self.candidates_examined,
        }


def _check_lengths(plan: QueryPlan, answers):
    if len(answers) != len(plan.queries):
        raise ValueError(f"{len(answers)} answers for {len(plan.queries)} queries")


def decode_exhaustive(
    plan: QueryPlan,
    answers,
    n: int | None = None,
    d: int | None = None,
    m: int | None = None,
    weight_domain=None,
    F: FieldSpec | None = None,
    window: int = 2,
    budget: int = DEFAULT_BUDGET,
) -> DecodeResult:
    """Scan every hypergraph with ``<= m`` edges in canonical order.

    Canonical order is edge count, then lexicographic edge supports, then
    lexicographic weights.  The scan stops at the second consistent candidate.
    """
    n = plan.n if n is None else n
    d = plan.d if d is None else d
    m = plan.m if m is None else m
    F = plan.field if F is None else F
    _check_lengths(plan, answers)
    weights = list(default_weight_domain(F, window) if weight_domain is None else weight_domain)
    edges = candidate_edges(n, d)
    _check_budget("decode", count_candidates(len(edges), 0, m, len(weights)), budget)

    target = []
    for a in answers:
        a = F.reduce(a)
        if isinstance(a, Fraction) or abs(a) >= _INT64_SAFE:
            # no candidate with integer window weights can produce this answer
            return DecodeResult(INCONSISTENT, candidates_examined=0)
        target.append(int(a))

    M = incidence_matrix(plan.masks(), edges, n)
    examined, hits = _kernels.scan_combinations(M, np.array(target, dtype=np.int64).reshape(-1), 0, m, weights, F.modulus or 0, 2)
    found = [Hypergraph(n, d, {edges[i]: w for i, w in zip(cols, ws)}, F) for cols, ws in hits]
    if not found:
        return DecodeResult(INCONSISTENT, candidates_examined=examined)
    if len(found) == 1:
        return DecodeResult(UNIQUE, found[0], candidates_examined=examined)
    return DecodeResult(AMBIGUOUS, found[0], found[1], candidates_examined=examined)


def consistency_check(G: Hypergraph, plan: QueryPlan, answers, F: FieldSpec | None = None) -> bool:
    _check_lengths(plan, answers)
    F = plan.field if F is None else F
    return all(F.reduce(additive_query(G, S, F) - a) == 0 for S, a in zip(plan.queries, answers))

"""Query plans and zero-test sets, plus their JSON formats."""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Callable, Sequence

import numpy as np

from .field import FieldSpec
from .hypergraph import SCHEMA_VERSION, Hypergraph, additive_query, candidate_edges, subset_to_mask
from .tensor import DisjointTuple

KINDS = ("zero-test", "detecting", "search")


def subsets_to_masks(subsets: Sequence[Sequence[int]], n: int) -> np.ndarray:
    masks = np.zeros((len(subsets), n), dtype=bool)
    for i, S in enumerate(subsets):
        masks[i] = subset_to_mask(S, n)
    return masks


def incidence_matrix(masks: np.ndarray, edges: Sequence[tuple[int, ...]], n: int) -> np.ndarray:
    """0/1 matrix with ``M[i, j] = 1`` iff edge ``j`` lies inside query ``i``."""
    E = subsets_to_masks(edges, n).astype(np.int64)
    sizes = E.sum(axis=1)
    return (masks.astype(np.int64) @ E.T == sizes[None, :]).astype(np.int64)


def hit_matrix(tuples: Sequence[DisjointTuple], n: int, d: int):
    """``H[t, j] = 1`` iff the ``d`` vertices of the j-th d-set sit in distinct vectors of tuple ``t``.

    For a symmetric tensor supported on full-dimension entries, ``A(tuple t)``
    equals ``sum_j H[t, j] * A[cols[j]]``; returns ``(H, cols)``.
    """
    cols = list(combinations(range(1, n + 1), d))
    if not tuples:
        return np.zeros((0, len(cols)), np.int64), cols
    L = np.stack([t.labels for t in tuples])
    idx = np.array(cols, dtype=np.int64).reshape(len(cols), d) - 1
    labs = np.sort(L[:, idx], axis=2)
    H = np.all(labs == np.arange(1, d + 1), axis=2).astype(np.int64)
    return H, cols


@dataclass
class ZeroTestSet:
    n: int
    d: int
    m: int
    field: FieldSpec
    seed: list[int]
    tuples: list[DisjointTuple]
    tags: list[str] = dc_field(default_factory=list)
    attempts: int = 1

    def __len__(self):
        return len(self.tuples)


@dataclass
class QueryPlan:
    """Ordered, deduplicated query subsets with provenance.

    ``m`` is the class size the plan targets; ``m_detect`` the size it was
    built to detect (``2m`` for search plans).  Zero-test plans also carry the
    underlying ``tuples``.
    """

    n: int
    d: int
    m: int
    kind: str
    field: FieldSpec
    seed: list[int]
    queries: list[tuple[int, ...]]
    provenance: list[list[dict]]
    m_detect: int | None = None
    attempts: int = 1
    primes: dict[int, int] = dc_field(default_factory=dict)
    tuples: list[DisjointTuple] | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown plan kind {self.kind!r}")
        if len(self.queries) != len(self.provenance):
            raise ValueError("provenance length differs from query count")
        if self.m_detect is None:
            self.m_detect = self.m

    def __len__(self):
        return len(self.queries)

    def masks(self) -> np.ndarray:
        return subsets_to_masks(self.queries, self.n)

    def incidence(self, d: int | None = None):
        """Query/edge incidence matrix over all candidate edges of size ``<= d``."""
        edges = candidate_edges(self.n, self.d if d is None else d)
        return incidence_matrix(self.masks(), edges, self.n), edges

    def without(self, index: int) -> QueryPlan:
        """Copy with one query removed."""
        keep = [i for i in range(len(self.queries)) if i != index]
        return QueryPlan(
            self.n, self.d, self.m, self.kind, self.field, list(self.seed),
            [self.queries[i] for i in keep], [self.provenance[i] for i in keep],
            self.m_detect, self.attempts, dict(self.primes), self.tuples,
        )

    def to_dict(self) -> dict:
        out = {
            "schema": SCHEMA_VERSION,
            "n": self.n,
            "d": self.d,
            "m": self.m,
            "m_detect": self.m_detect,
            "kind": self.kind,
            "field": self.field.to_json(),
            "seed": list(self.seed),
            "attempts": self.attempts,
            "primes": {str(k): v for k, v in sorted(self.primes.items())},
            "queries": [list(q) for q in self.queries],
            "provenance": self.provenance,
        }
        if self.tuples is not None:
            out["tuples"] = [[list(s) for s in t.supports()] for t in self.tuples]
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> QueryPlan:
        n = int(data["n"])
        tuples = None
        if data.get("tuples") is not None:
            tuples = [DisjointTuple.from_supports(t, n) for t in data["tuples"]]
        seed = data.get("seed", [])
        return cls(
            n=n,
            d=int(data["d"]),
            m=int(data["m"]),
            kind=data["kind"],
            field=FieldSpec.from_json(data["field"]),
            seed=list(seed) if isinstance(seed, list) else [seed],
            queries=[tuple(int(v) for v in q) for q in data["queries"]],
            provenance=data.get("provenance") or [[] for _ in data["queries"]],
            m_detect=data.get("m_detect"),
            attempts=int(data.get("attempts", 1)),
            primes={int(k): int(v) for k, v in data.get("primes", {}).items()},
            tuples=tuples,
        )

    @classmethod
    def from_json(cls, text: str) -> QueryPlan:
        return cls.from_dict(json.loads(text))

    @classmethod
    def from_subsets(cls, subsets, n: int, d: int, m: int, field: FieldSpec, kind: str = "detecting") -> QueryPlan:
        """Wrap a hand-written list of subsets (no dedup, empty provenance)."""
        queries = [tuple(sorted(S)) for S in subsets]
        return cls(n, d, m, kind, field, [], queries, [[] for _ in queries])


def answer_plan(
    plan: QueryPlan,
    G: Hypergraph,
    F: FieldSpec | None = None,
    oracle: Callable | None = None,
) -> list:
    """Oracle trace of ``G`` under ``plan``; the empty query is answered locally as 0."""
    F = plan.field if F is None else F
    oracle = oracle or (lambda S: additive_query(G, S, F))
    return [F.reduce(0) if not S else F.reduce(oracle(S)) for S in plan.queries]

"""Weighted hypergraphs on vertices 1..n and the additive-query oracle."""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Mapping

import numpy as np

from .field import INFINITY, Element, FieldSpec

SCHEMA_VERSION = 1


def candidate_edges(n: int, d: int) -> list[tuple[int, ...]]:
    """All vertex sets of size 1..d, sorted lexicographically by vertex list."""
    edges = [c for r in range(1, d + 1) for c in combinations(range(1, n + 1), r)]
    edges.sort()
    return edges


def subset_to_mask(S: Iterable[int], n: int) -> np.ndarray:
    x = np.zeros(n, dtype=bool)
    for v in S:
        if not 1 <= v <= n:
            raise ValueError(f"vertex {v} outside 1..{n}")
        x[v - 1] = True
    return x


def mask_to_subset(x) -> tuple[int, ...]:
    return tuple(int(i) + 1 for i in np.flatnonzero(np.asarray(x)))


def _weight_to_json(w):
    if isinstance(w, Fraction):
        return w.numerator if w.denominator == 1 else f"{w.numerator}/{w.denominator}"
    return int(w)


def _weight_from_json(w):
    return Fraction(w) if isinstance(w, str) else int(w)


@dataclass(frozen=True)
class Hypergraph:
    """Canonical weighted hypergraph.

    ``edges`` maps sorted vertex tuples to nonzero weights reduced in ``field``.
    Construction canonicalizes input and drops zero weights.
    """

    n: int
    d: int
    edges: Mapping[tuple[int, ...], Element] = dc_field(default_factory=dict)
    field: FieldSpec = INFINITY

    def __post_init__(self):
        canon = {}
        for verts, w in dict(self.edges).items():
            key = tuple(sorted(verts))
            if len(set(key)) != len(key):
                raise ValueError(f"repeated vertex in edge {verts}")
            if not 1 <= len(key) <= self.d:
                raise ValueError(f"edge {verts} has size outside 1..{self.d}")
            if key[0] < 1 or key[-1] > self.n:
                raise ValueError(f"edge {verts} has vertex outside 1..{self.n}")
            if key in canon:
                raise ValueError(f"duplicate edge {key}")
            w = self.field.reduce(w)
            if w != 0:
                canon[key] = w
        object.__setattr__(self, "edges", dict(sorted(canon.items())))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def rank(self) -> int:
        return max((len(e) for e in self.edges), default=0)

    def weight(self, e) -> Element:
        """Weight extended to all vertex sets, 0 off the edge set."""
        return self.edges.get(tuple(sorted(e)), 0)

    def layer(self, size: int) -> Hypergraph:
        """Sub-hypergraph of edges with exactly ``size`` vertices."""
        return Hypergraph(
            self.n, self.d, {e: w for e, w in self.edges.items() if len(e) == size}, self.field
        )

    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (self.n, self.d, self.field, list(self.edges.items())) == (
            other.n,
            other.d,
            other.field,
            list(other.edges.items()),
        )

    def __hash__(self):
        return hash((self.n, self.d, self.field, tuple(self.edges.items())))

    def __repr__(self):
        body = ", ".join(f"{list(e)}:{w}" for e, w in self.edges.items())
        return f"Hypergraph(n={self.n}, d={self.d}, {self.field}, {{{body}}})"

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "n": self.n,
            "d": self.d,
            "field": self.field.to_json(),
            "edges": [{"v": list(e), "w": _weight_to_json(w)} for e, w in self.edges.items()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> Hypergraph:
        edges = {}
        for item in data["edges"]:
            key = tuple(item["v"])
            if key in edges:
                raise ValueError(f"duplicate edge {key}")
            edges[key] = _weight_from_json(item["w"])
        return cls(int(data["n"]), int(data["d"]), edges, FieldSpec.from_json(data["field"]))

    @classmethod
    def from_json(cls, text: str) -> Hypergraph:
        return cls.from_dict(json.loads(text))


def additive_query(G: Hypergraph, S: Iterable[int], F: FieldSpec | None = None) -> Element:
    """Sum of weights of the edges fully contained in ``S``."""
    F = G.field if F is None else F
    S = set(S)
    total = sum((w for e, w in G.edges.items() if S.issuperset(e)), 0)
    return F.reduce(total)


def graph_diff(G1: Hypergraph, G2: Hypergraph) -> Hypergraph:
    if G1.n != G2.n:
        raise ValueError(f"vertex counts differ: {G1.n} != {G2.n}")
    if G1.field != G2.field:
        raise ValueError("hypergraphs live over different fields")
    F = G1.field
    edges = {}
    for e in set(G1.edges) | set(G2.edges):
        w = F.reduce(G1.weight(e) - G2.weight(e))
        if w != 0:
            edges[e] = w
    return Hypergraph(G1.n, max(G1.d, G2.d), edges, F)


def default_weight_domain(F: FieldSpec, window: int = 2) -> list[int]:
    if F.is_finite:
        return list(range(1, F.modulus))
    return [w for w in range(-window, window + 1) if w != 0]


def random_hypergraph(
    n: int,
    d: int,
    m: int,
    weight_domain=None,
    seed=None,
    field: FieldSpec = INFINITY,
    mixed: bool = False,
) -> Hypergraph:
    """``m`` distinct random edges with i.i.d. weights.

    Edges have exactly ``d`` vertices unless ``mixed`` is set, in which case
    they are drawn uniformly from all sets of size 1..d.
    """
    weights = list(default_weight_domain(field) if weight_domain is None else weight_domain)
    if any(field.reduce(w) == 0 for w in weights):
        raise ValueError("weight domain must exclude zero")
    total = sum(comb(n, r) for r in range(1, d + 1)) if mixed else comb(n, d)
    if not 0 <= m <= total:
        raise ValueError(f"cannot place {m} distinct edges; only {total} available")
    rng = np.random.default_rng(seed)
    pool = candidate_edges(n, d) if mixed else list(combinations(range(1, n + 1), d))
    picks = rng.choice(len(pool), size=m, replace=False) if m else []
    ws = rng.integers(0, len(weights), size=m) if m else []
    return Hypergraph(n, d, {pool[i]: weights[j] for i, j in zip(picks, ws)}, field)

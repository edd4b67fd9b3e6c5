"""Sparse symmetric d-dimensional matrices and the polarization identity.

A :class:`SymTensor` stores one value per sorted index multiset; that value
stands for every permutation of the multiset.  All evaluation routines expand
permutations on the fly, so cost scales with the stored support rather than
with ``n**d``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations_with_replacement, permutations
from typing import Mapping, Sequence

import numpy as np

from .field import INFINITY, Element, FieldSpec, field_inv
from .hypergraph import Hypergraph


def surjection_count(d: int, ell: int) -> int:
    """Number of length-``d`` sequences whose value set is a fixed ``ell``-set."""
    if not 1 <= ell <= d:
        raise ValueError(f"need 1 <= ell <= d, got ell={ell}, d={d}")
    return sum((-1) ** i * math.comb(ell, i) * (ell - i) ** d for i in range(ell + 1))


@lru_cache(maxsize=None)
def _distinct_perms(idx: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(set(permutations(idx))))


def _multiplicity(idx: tuple[int, ...]) -> int:
    count = math.factorial(len(idx))
    for v in set(idx):
        count //= math.factorial(idx.count(v))
    return count


@dataclass(frozen=True)
class SymTensor:
    n: int
    d: int
    field: FieldSpec = INFINITY
    entries: Mapping[tuple[int, ...], Element] = dc_field(default_factory=dict)

    def __post_init__(self):
        canon = {}
        for idx, v in dict(self.entries).items():
            key = tuple(sorted(idx))
            if len(key) != self.d or key[0] < 1 or key[-1] > self.n:
                raise ValueError(f"bad index {idx} for n={self.n}, d={self.d}")
            v = self.field.reduce(v)
            if canon.get(key, v) != v:
                raise ValueError(f"entries for permutations of {key} disagree")
            canon[key] = v
        canon = {k: v for k, v in canon.items() if v != 0}
        object.__setattr__(self, "entries", dict(sorted(canon.items())))

    def __getitem__(self, idx) -> Element:
        return self.entries.get(tuple(sorted(idx)), 0)

    def is_zero(self) -> bool:
        return not self.entries

    def top_part(self) -> SymTensor:
        """Keep only entries of full dimension ``d``."""
        return SymTensor(
            self.n, self.d, self.field, {k: v for k, v in self.entries.items() if len(set(k)) == self.d}
        )

    def in_class(self, m: int, nonzero: bool = False) -> bool:
        """Membership in the class ``wt_d <= m`` (with ``1 <= wt_d`` if ``nonzero``)."""
        w = wt_r(self, self.d)
        return w <= m and (w >= 1 or not nonzero)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "field": self.field.to_json(),
            "entries": [{"i": list(k), "a": int(v) if self.field.is_finite else str(v)} for k, v in self.entries.items()],
        }


@dataclass(frozen=True)
class DisjointTuple:
    """``d`` pairwise-disjoint 0/1 vectors of length ``n``, stored as a ``(d, n)`` bool array."""

    vectors: np.ndarray

    def __post_init__(self):
        vecs = np.array(self.vectors, dtype=bool, copy=True)
        if vecs.ndim != 2:
            raise ValueError("expected a (d, n) array")
        if np.any(vecs.sum(axis=0) > 1):
            raise ValueError("vectors are not pairwise disjoint")
        vecs.setflags(write=False)
        object.__setattr__(self, "vectors", vecs)

    @classmethod
    def from_labels(cls, labels, d: int) -> DisjointTuple:
        """``labels[i] = j`` puts index ``i`` in vector ``j`` (1-based); 0 leaves it free."""
        labels = np.asarray(labels)
        return cls(labels[None, :] == np.arange(1, d + 1)[:, None])

    @classmethod
    def from_supports(cls, supports: Sequence[Sequence[int]], n: int) -> DisjointTuple:
        vecs = np.zeros((len(supports), n), dtype=bool)
        for j, s in enumerate(supports):
            for v in s:
                vecs[j, v - 1] = True
        return cls(vecs)

    @property
    def d(self) -> int:
        return self.vectors.shape[0]

    @property
    def n(self) -> int:
        return self.vectors.shape[1]

    @property
    def labels(self) -> np.ndarray:
        return (self.vectors * np.arange(1, self.d + 1)[:, None]).sum(axis=0)

    def supports(self) -> list[tuple[int, ...]]:
        return [tuple(int(i) + 1 for i in np.flatnonzero(v)) for v in self.vectors]

    def subset_sum(self, I) -> np.ndarray:
        """0/1 vector ``sum_{j in I} x_j`` for a set of 1-based axes."""
        out = np.zeros(self.n, dtype=bool)
        for j in I:
            out |= self.vectors[j - 1]
        return out

    def __eq__(self, other):
        return isinstance(other, DisjointTuple) and np.array_equal(self.vectors, other.vectors)

    def __hash__(self):
        return hash((self.vectors.shape, self.vectors.tobytes()))


def adjacency_tensor(G: Hypergraph, d: int | None = None, F: FieldSpec | None = None) -> SymTensor:
    """Adjacency d-dimensional matrix: ``w(e) / N(d, |e|)`` on every tuple with support ``e``."""
    d = G.d if d is None else d
    F = G.field if F is None else F
    if d < G.rank:
        raise ValueError(f"d={d} is below the hypergraph rank {G.rank}")
    F.check_rank(d)
    entries = {}
    for e, w in G.edges.items():
        scale = field_inv(surjection_count(d, len(e)), F)
        val = F.reduce(w * scale)
        for idx in combinations_with_replacement(e, d):
            if len(set(idx)) == len(e):
                entries[idx] = val
    return SymTensor(G.n, d, F, entries)


def evaluate(A: SymTensor, xs: Sequence) -> Element:
    """Multilinear value ``A(x_1, ..., x_d)`` for 0/1 vectors."""
    if isinstance(xs, DisjointTuple):
        xs = xs.vectors
    xs = [np.asarray(x, dtype=bool) for x in xs]
    if len(xs) != A.d or any(x.shape != (A.n,) for x in xs):
        raise ValueError(f"expected {A.d} vectors of length {A.n}")
    total = 0
    for idx, v in A.entries.items():
        hits = sum(1 for perm in _distinct_perms(idx) if all(xs[j][i - 1] for j, i in enumerate(perm)))
        if hits:
            total += v * hits
    return A.field.reduce(total)


def eval_diag(A: SymTensor, x) -> Element:
    """``B(x) = A(x, x, ..., x)``."""
    x = np.asarray(x, dtype=bool)
    total = 0
    for idx, v in A.entries.items():
        if all(x[i - 1] for i in idx):
            total += v * _multiplicity(idx)
    return A.field.reduce(total)


def diag_values(A: SymTensor, t: DisjointTuple) -> dict[frozenset, Element]:
    """Every ``B(sum_{i in I} x_i)`` for ``I`` ranging over subsets of the axes."""
    axes = range(1, t.d + 1)
    out = {}
    for mask in range(1 << t.d):
        I = frozenset(j for j in axes if mask >> (j - 1) & 1)
        out[I] = eval_diag(A, t.subset_sum(I))
    return out


def polarize(B_values: Mapping[frozenset, Element], t, d: int, F: FieldSpec) -> Element:
    """Recover ``A(x_1..x_d)`` from the ``2**d`` diagonal values at subset sums of ``t``.

    ``B_values`` is keyed by frozensets of 1-based axis indices.
    """
    if not isinstance(t, DisjointTuple):
        t = DisjointTuple(t)
    if t.d != d:
        raise ValueError(f"tuple has {t.d} vectors, expected {d}")
    F.check_rank(d)
    total = 0
    for mask in range(1 << d):
        I = frozenset(j for j in range(1, d + 1) if mask >> (j - 1) & 1)
        if I not in B_values:
            raise ValueError(f"missing diagonal value for axes {sorted(I)}")
        sign = -1 if (d - len(I)) % 2 else 1
        total += sign * B_values[I]
    return F.reduce(total * field_inv(math.factorial(d), F))


def wt_r(A: SymTensor, r: int) -> int:
    """Number of index points of dimension ``r`` carrying a nonzero value."""
    if not 1 <= r <= A.d:
        raise ValueError(f"need 1 <= r <= {A.d}")
    return sum(_multiplicity(idx) for idx in A.entries if len(set(idx)) == r)


def wt(A: SymTensor) -> int:
    return sum(wt_r(A, r) for r in range(1, A.d + 1))


def random_symmetric_tensor(n: int, d: int, F: FieldSpec, n_entries: int, seed=None) -> SymTensor:
    """Random symmetric tensor with up to ``n_entries`` canonical entries of any dimension."""
    rng = np.random.default_rng(seed)
    entries = {}
    hi = F.modulus if F.is_finite else 5
    for _ in range(n_entries):
        idx = tuple(sorted(int(i) for i in rng.integers(1, n + 1, size=d)))
        entries.setdefault(idx, int(rng.integers(1, hi)))
    return SymTensor(n, d, F, entries)

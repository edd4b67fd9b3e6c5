"""Randomized construction of zero-test, detecting and search sets.

Every builder is a deterministic function of its parameters and a *seed
path*: an integer or tuple of integers fed to :class:`numpy.random.SeedSequence`.
Sub-builders extend the path with counters (attempt, rank, case, axis), so any
piece can be regenerated in isolation.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .field import FieldSpec, select_prime
from .plan import QueryPlan, ZeroTestSet
from .tensor import DisjointTuple

log = logging.getLogger(__name__)

CASE1, CASE2 = 1, 2


@dataclass(frozen=True)
class ConstructionConfig:
    """Knobs for the randomized builders.

    ``c1`` scales the Case 1 sample count and ``C2`` the Case 2 count; the
    underlying existence argument gives no values, so the defaults are
    empirical.  ``case2`` is ``"auto"`` (run only when the large-``m`` regime
    applies), ``"always"`` or ``"never"``.
    """

    c1: float = 4.0
    C2: float = 8.0
    retry_limit: int = 20
    seed: int = 0
    verify_mode: str = "exhaustive"
    case2: str = "auto"
    budget: int = 10**7

    def __post_init__(self):
        if self.c1 <= 0 or self.C2 <= 0:
            raise ValueError("c1 and C2 must be positive")
        if self.retry_limit < 1:
            raise ValueError("retry_limit must be at least 1")
        if self.verify_mode not in ("exhaustive", "skip"):
            raise ValueError(f"unknown verify_mode {self.verify_mode!r}")
        if self.case2 not in ("auto", "always", "never"):
            raise ValueError(f"unknown case2 mode {self.case2!r}")


class ConstructionFailure(RuntimeError):
    """Retry limit exhausted; ``report`` is the last failing verification."""

    def __init__(self, message, report=None, attempts=0):
        super().__init__(message)
        self.report = report
        self.attempts = attempts


def _path(seed) -> list[int]:
    if isinstance(seed, (list, tuple)):
        return [int(s) & (2**64 - 1) for s in seed]
    return [int(seed) & (2**64 - 1)]


def _rng(seed, *counters) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(_path(seed) + list(counters)))


def _log2_guarded(m: int) -> float:
    return math.log2(max(m, 2))


def case1_size(n: int, m: int, c1: float) -> int:
    return math.ceil(c1 * m * math.log2(n) / _log2_guarded(m))


def case2_size(n: int, m: int, C2: float) -> int:
    return math.ceil(C2 * m * math.log2(n) / math.log2(m))


def case2_margin(m: int, d: int) -> float:
    """Guaranteed count of light slices, ``(m/log m)^(1/d) - m^(1/(d+1))``."""
    return (m / _log2_guarded(m)) ** (1 / d) - m ** (1 / (d + 1))


def case2_enabled(m: int, d: int, cfg: ConstructionConfig) -> bool:
    if d < 2 or m < 2 or cfg.case2 == "never":
        return False
    return cfg.case2 == "always" or case2_margin(m, d) > 1


def _sample_labels(rng: np.random.Generator, k: int, n: int, d: int) -> np.ndarray:
    # w uniform on 1..d+1; d+1 marks a free index, stored as label 0
    w = rng.integers(1, d + 2, size=(k, n))
    return np.where(w == d + 1, 0, w)


def sample_disjoint(n: int, d: int, seed) -> DisjointTuple:
    """One draw from the uniform disjoint distribution on d-tuples of length-n 0/1 vectors."""
    if n < 1 or d < 1:
        raise ValueError("n and d must be positive")
    rng = seed if isinstance(seed, np.random.Generator) else _rng(seed)
    return DisjointTuple.from_labels(_sample_labels(rng, 1, n, d)[0], d)


def free_indices(t: DisjointTuple) -> set[int]:
    """1-based indices covered by none of the tuple's vectors."""
    return {int(i) + 1 for i in np.flatnonzero(~t.vectors.any(axis=0))}


def build_case1(n: int, d: int, m: int, cfg: ConstructionConfig, seed) -> list[DisjointTuple]:
    if m < 1:
        raise ValueError("m must be positive")
    k1 = case1_size(n, m, cfg.c1)
    labels = _sample_labels(_rng(seed, CASE1), k1, n, d)
    return [DisjointTuple.from_labels(row, d) for row in labels]


def build_case2(n: int, d: int, m: int, axis: int, cfg: ConstructionConfig, seed) -> list[DisjointTuple]:
    """Tuples whose ``axis`` vector is a random half of the free set of a (d-1)-tuple."""
    if d < 2:
        raise ValueError("Case 2 needs d >= 2")
    if m < 2:
        raise ValueError("Case 2 needs m >= 2")
    if not 1 <= axis <= d:
        raise ValueError(f"axis must lie in 1..{d}")
    k2 = case2_size(n, m, cfg.C2)
    rng = _rng(seed, CASE2, axis)
    z = _sample_labels(rng, k2, n, d - 1)
    coin = rng.integers(0, 2, size=(k2, n)).astype(bool)
    others = np.array([a for a in range(1, d + 1) if a != axis])
    labels = np.where(z > 0, others[np.maximum(z, 1) - 1], 0)
    labels = np.where((z == 0) & coin, axis, labels)
    return [DisjointTuple.from_labels(row, d) for row in labels]


def build_zero_test_set(n: int, d: int, m: int, p, cfg: ConstructionConfig, seed) -> ZeroTestSet:
    """Case 1 tuples, then Case 2 tuples for every axis when that regime is enabled."""
    F = p if isinstance(p, FieldSpec) else FieldSpec(int(p))
    tuples = build_case1(n, d, m, cfg, seed)
    tags = ["case1"] * len(tuples)
    if case2_enabled(m, d, cfg):
        for axis in range(1, d + 1):
            extra = build_case2(n, d, m, axis, cfg, seed)
            tuples += extra
            tags += [f"case2:{axis}"] * len(extra)
    return ZeroTestSet(n, d, m, F, _path(seed), tuples, tags)


def lift_to_queries(tuples: Sequence[DisjointTuple], ell: int) -> list[tuple[int, ...]]:
    """Subsets ``S(sum_{j in J} x_j)`` for every tuple and every ``J`` of its axes.

    Output order: tuple by tuple, ``J`` by increasing bitmask; no dedup.
    """
    return [S for _, _, S in _lift(tuples, ell)]


def _lift(tuples, ell):
    for i, t in enumerate(tuples):
        if not isinstance(t, DisjointTuple):
            t = DisjointTuple(t)
        if t.d != ell:
            raise ValueError(f"tuple {i} has {t.d} vectors, expected {ell}")
        supports = t.supports()
        for mask in range(1 << ell):
            J = [j + 1 for j in range(ell) if mask >> j & 1]
            S = tuple(sorted(v for j in J for v in supports[j - 1]))
            yield i, J, S


def _collect(zt, ell, queries, provenance, order):
    """Append lifted queries of ``zt``, merging duplicates into one entry with several origins."""
    for i, J, S in _lift(zt.tuples, ell):
        origin = {"rank": ell, "case": zt.tags[i] if zt.tags else "case1", "tuple": i, "J": J}
        pos = order.get(S)
        if pos is None:
            order[S] = len(queries)
            queries.append(S)
            provenance.append([origin])
        else:
            provenance[pos].append(origin)


def build_detecting_set(n: int, d: int, m: int, cfg: ConstructionConfig, seed, kind: str = "detecting") -> QueryPlan:
    """Union over ranks 1..d of lifted zero-test sets for ``l! * m`` full-dimension points."""
    if n < 1 or d < 1 or m < 1:
        raise ValueError("n, d and m must be positive")
    queries: list[tuple[int, ...]] = []
    provenance: list[list[dict]] = []
    order: dict[tuple[int, ...], int] = {}
    primes = {}
    for ell in range(1, d + 1):
        m_ell = math.factorial(ell) * m
        F_ell = select_prime(m_ell, ell)
        primes[ell] = F_ell.modulus
        zt = build_zero_test_set(n, ell, m_ell, F_ell, cfg, _path(seed) + [ell])
        _collect(zt, ell, queries, provenance, order)
    field = FieldSpec(primes[d])
    return QueryPlan(n, d, m, kind, field, _path(seed), queries, provenance, m_detect=m, primes=primes)


def build_search_set(n: int, d: int, m: int, cfg: ConstructionConfig, seed) -> QueryPlan:
    """Detecting set for ``2m`` edges, which separates any two hypergraphs with ``<= m`` edges."""
    plan = build_detecting_set(n, d, 2 * m, cfg, seed, kind="search")
    plan.m = m
    plan.m_detect = 2 * m
    return plan


def las_vegas_construct(kind: str, n: int, d: int, m: int, cfg: ConstructionConfig, field: FieldSpec | None = None):
    """Build, verify exhaustively, retry with the next attempt counter until verified.

    Returns ``(result, attempts)`` where ``result`` is a :class:`ZeroTestSet`
    for ``kind == "zero-test"`` and a :class:`QueryPlan` otherwise.
    ``field`` overrides the verification field of detecting/search plans.
    """
    from . import verify

    kind = kind.replace("_", "-")
    if kind not in ("zero-test", "detecting", "search"):
        raise ValueError(f"unknown kind {kind!r}")
    report = None
    for attempt in range(cfg.retry_limit):
        seed = [cfg.seed, attempt]
        if kind == "zero-test":
            F = field or select_prime(m, d)
            result = build_zero_test_set(n, d, m, F, cfg, seed)
        elif kind == "detecting":
            result = build_detecting_set(n, d, m, cfg, seed)
        else:
            result = build_search_set(n, d, m, cfg, seed)
        result.attempts = attempt + 1
        if cfg.verify_mode == "skip":
            return result, attempt + 1
        if kind == "zero-test":
            report = verify.verify_zero_test(result.tuples, n, d, m, result.field, budget=cfg.budget)
        elif kind == "detecting":
            report = verify.verify_detecting(result, n, d, m, field or result.field, budget=cfg.budget)
        else:
            report = verify.verify_search(result, n, d, m, field or result.field, route="dtos", budget=cfg.budget)
        log.info("attempt %d: %s (%d objects checked)", attempt + 1, "pass" if report.verdict else "fail", report.enumeration_size)
        if report.verdict:
            return result, attempt + 1
    raise ConstructionFailure(
        f"no verified {kind} set after {cfg.retry_limit} attempts", report=report, attempts=cfg.retry_limit
    )


def zero_test_plan(zt: ZeroTestSet) -> QueryPlan:
    """Serializable plan view of a zero-test set: its tuples plus their lifted queries."""
    queries, provenance = [], []
    _collect(zt, zt.d, queries, provenance, {})
    return QueryPlan(
        zt.n, zt.d, zt.m, "zero-test", zt.field, list(zt.seed), queries, provenance,
        attempts=zt.attempts, primes={zt.d: zt.field.modulus}, tuples=list(zt.tuples),
    )

"""Exhaustive and statistical checks of the properties the construction relies on.

Exhaustive checks refuse (raise :class:`BudgetExceeded`) rather than sample
when their enumeration would exceed the budget.  Every failing report carries
a counterexample that can be replayed through the oracle independently.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations, product
from typing import Any, Sequence

import numpy as np
from scipy.stats import binomtest

from . import _kernels
from .field import INFINITY, FieldSpec
from .hypergraph import Hypergraph, candidate_edges, default_weight_domain
from .linalg import null_vector, rank
from .plan import QueryPlan, ZeroTestSet, hit_matrix, incidence_matrix, subsets_to_masks
from .tensor import DisjointTuple, SymTensor, wt_r

DEFAULT_BUDGET = 10**7
BETA = 1 / (2 + math.log2(3))


class BudgetExceeded(RuntimeError):
    """The requested exhaustive check is larger than the enumeration budget."""

    def __init__(self, check: str, size: int, budget: int):
        super().__init__(f"{check}: {size} objects exceed budget {budget}")
        self.check = check
        self.size = size
        self.budget = budget


@dataclass
class VerifyReport:
    check: str
    verdict: bool
    counterexample: Any = None
    enumeration_size: int = 0
    elapsed: float = 0.0
    details: dict = dc_field(default_factory=dict)

    def __bool__(self):
        return self.verdict

    def to_dict(self) -> dict:
        cx = self.counterexample
        if isinstance(cx, (Hypergraph, SymTensor)):
            cx = cx.to_dict()
        elif isinstance(cx, tuple) and all(isinstance(g, Hypergraph) for g in cx):
            cx = [g.to_dict() for g in cx]
        return {
            "schema": 1,
            "check": self.check,
            "verdict": "pass" if self.verdict else "fail",
            "counterexample": cx,
            "enumeration_size": self.enumeration_size,
            "elapsed": round(self.elapsed, 6),
            "details": {k: _jsonable(v) for k, v in self.details.items()},
        }


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.floating,)):
        return float(v)
    return v


def _field(F) -> FieldSpec:
    if F is None:
        return INFINITY
    return F if isinstance(F, FieldSpec) else FieldSpec(int(F))


def _masks(plan, n: int) -> np.ndarray:
    if isinstance(plan, QueryPlan):
        if plan.n != n:
            raise ValueError(f"plan has n={plan.n}, expected {n}")
        return plan.masks()
    return subsets_to_masks([tuple(S) for S in plan], n)


def count_candidates(q: int, k_min: int, k_max: int, n_weights: int) -> int:
    """Number of (support, weight vector) pairs with support size in ``k_min..k_max``."""
    return sum(math.comb(q, k) * n_weights**k for k in range(k_min, min(k_max, q) + 1))


def _check_budget(check, size, budget):
    if size > budget:
        raise BudgetExceeded(check, size, budget)


# ---------------------------------------------------------------------------
# zero-test / detecting / search
# ---------------------------------------------------------------------------


def verify_zero_test(tuples, n: int, d: int, m: int, p, budget: int = DEFAULT_BUDGET) -> VerifyReport:
    """Every nonzero symmetric tensor with ``wt_d <= m`` is nonzero on some tuple.

    Only full-dimension entries are enumerated: lower-dimension entries vanish
    on disjoint tuples.  A symmetric tensor with ``k`` nonzero d-sets has
    ``wt_d = k * d!``, so supports of up to ``m // d!`` d-sets are scanned.
    """
    t0 = time.perf_counter()
    F = _field(p)
    if not F.is_finite:
        raise ValueError("zero-test verification needs a finite field")
    if isinstance(tuples, ZeroTestSet):
        tuples = tuples.tuples
    tuples = [t if isinstance(t, DisjointTuple) else DisjointTuple(t) for t in tuples]
    if any(t.d != d or t.n != n for t in tuples):
        raise ValueError(f"tuples must be {d} vectors of length {n}")
    K = m // math.factorial(d)
    H, cols = hit_matrix(tuples, n, d)
    weights = np.arange(1, F.modulus)
    size = count_candidates(len(cols), 1, K, len(weights))
    _check_budget("zero-test", size, budget)
    examined, hits = _kernels.scan_combinations(H, np.zeros(H.shape[0]), 1, K, weights, F.modulus, 1)
    cx = None
    if hits:
        idx, ws = hits[0]
        cx = SymTensor(n, d, F, {cols[i]: w for i, w in zip(idx, ws)})
    return VerifyReport(
        "zero-test", not hits, cx, examined, time.perf_counter() - t0,
        {"n": n, "d": d, "m": m, "p": F.modulus, "max_support": K, "tuples": len(tuples), "class_size": size},
    )


def verify_detecting(plan, n: int, d: int, m: int, F=None, window: int = 2, budget: int = DEFAULT_BUDGET) -> VerifyReport:
    """Every nonempty hypergraph with ``<= m`` edges of size ``<= d`` answers nonzero somewhere.

    Over Z_p the weights range over all nonzero residues; in exact mode over
    the integer window ``{-window..window} \\ {0}``.
    """
    t0 = time.perf_counter()
    F = _field(F if F is not None else getattr(plan, "field", None))
    edges = candidate_edges(n, d)
    M = incidence_matrix(_masks(plan, n), edges, n)
    weights = np.array(default_weight_domain(F, window))
    size = count_candidates(len(edges), 1, m, len(weights))
    _check_budget("detecting", size, budget)
    examined, hits = _kernels.scan_combinations(M, np.zeros(M.shape[0]), 1, m, weights, F.modulus or 0, 1)
    cx = None
    if hits:
        idx, ws = hits[0]
        cx = Hypergraph(n, d, {edges[i]: w for i, w in zip(idx, ws)}, F)
    return VerifyReport(
        "detecting", not hits, cx, examined, time.perf_counter() - t0,
        {"n": n, "d": d, "m": m, "field": F.to_json(), "queries": int(M.shape[0]), "class_size": size},
    )


def _signatures_direct(M, weights, m, p, edges, n, d, F, budget):
    """Scan the class for two hypergraphs with identical answer vectors."""
    q = len(edges)
    size = count_candidates(q, 0, m, len(weights))
    _check_budget("search-direct", size, budget)
    seen: dict[bytes, tuple] = {}
    rows = M.shape[0]
    examined = 0

    def graph(cols, ws):
        return Hypergraph(n, d, {edges[i]: w for i, w in zip(cols, ws)}, F)

    for k in range(0, min(m, q) + 1):
        grid = list(product(weights.tolist(), repeat=k))
        W = np.array(grid, dtype=np.int64).reshape(len(grid), k)
        step = max(1, 2_000_000 // max(1, W.shape[0] * max(rows, 1)))
        combos = combinations(range(q), k)
        while True:
            block = [c for _, c in zip(range(step), combos)]
            if not block:
                break
            chunk = np.array(block, dtype=np.int64).reshape(len(block), k)
            vals = np.einsum("rck,wk->cwr", M[:, chunk], W)
            if p:
                vals %= p
            vals = np.ascontiguousarray(vals)
            for ci in range(chunk.shape[0]):
                for wi in range(W.shape[0]):
                    examined += 1
                    key = vals[ci, wi].tobytes()
                    cand = (tuple(chunk[ci]), tuple(W[wi]))
                    prev = seen.setdefault(key, cand)
                    if prev is not cand:
                        return examined, (graph(*prev), graph(*cand))
    return examined, None


def verify_search(
    plan, n: int, d: int, m: int, F=None, route: str = "both", window: int = 2, budget: int = DEFAULT_BUDGET
) -> VerifyReport:
    """Any two distinct hypergraphs with ``<= m`` edges disagree on some query.

    ``route="dtos"`` checks detection of ``2m``-edge hypergraphs (differences of
    two class members); ``route="direct"`` hashes the answer vector of every
    class member; ``"both"`` runs both and insists they are consistent.
    In exact mode the difference route uses a window of ``2 * window``.
    """
    if route not in ("both", "dtos", "direct"):
        raise ValueError(f"unknown route {route!r}")
    t0 = time.perf_counter()
    F = _field(F if F is not None else getattr(plan, "field", None))
    details: dict = {"n": n, "d": d, "m": m, "field": F.to_json()}
    size = 0
    dtos = direct = None
    cx = None
    if route in ("both", "dtos"):
        rep = verify_detecting(plan, n, d, 2 * m, F, window if F.is_finite else 2 * window, budget)
        dtos = rep.verdict
        size += rep.enumeration_size
        details["dtos"] = dtos
        if not dtos:
            cx = rep.counterexample
    if route in ("both", "direct"):
        edges = candidate_edges(n, d)
        M = incidence_matrix(_masks(plan, n), edges, n)
        weights = np.array(default_weight_domain(F, window))
        examined, pair = _signatures_direct(M, weights, m, F.modulus or 0, edges, n, d, F, budget)
        direct = pair is None
        size += examined
        details["direct"] = direct
        if pair is not None:
            cx = pair
    if dtos is not None and direct is not None:
        if F.is_finite and dtos != direct:
            raise RuntimeError(f"search routes disagree over {F}: dtos={dtos}, direct={direct}")
        if dtos and not direct:
            raise RuntimeError("difference route passed but a colliding pair exists")
    verdict = direct if direct is not None else dtos
    return VerifyReport("search", verdict, cx, size, time.perf_counter() - t0, details)


# ---------------------------------------------------------------------------
# column independence of the query/edge incidence matrix
# ---------------------------------------------------------------------------


def check_column_independence(plan, n: int, d: int, m: int, F=None, budget: int = DEFAULT_BUDGET) -> VerifyReport:
    """Every ``m`` columns of the query/edge incidence matrix are independent.

    Checked by exact rank over the rationals and, when ``F`` is finite, over
    Z_p as well; a Z_p pass without a rational pass is reported as a
    violation of the 0/1 transfer argument.
    """
    t0 = time.perf_counter()
    F = _field(F if F is not None else getattr(plan, "field", None))
    edges = candidate_edges(n, d)
    M = incidence_matrix(_masks(plan, n), edges, n)
    M = np.unique(M, axis=0) if M.shape[0] else M
    M = M[M.any(axis=1)] if M.shape[0] else M
    q = len(edges)
    k = min(m, q)
    size = math.comb(q, k)
    _check_budget("column-independence", size, budget)
    rows = M.tolist()
    zp_ok = True if F.is_finite else None
    q_ok = True
    cx = None
    for cols in combinations(range(q), k):
        sub = [[r[c] for c in cols] for r in rows]
        if F.is_finite and zp_ok and rank(sub, k, F.modulus) < k:
            zp_ok = False
            vec = null_vector(sub, k, F.modulus)
            cx = Hypergraph(n, d, {edges[c]: v for c, v in zip(cols, vec) if v}, F)
        if q_ok and rank(sub, k, None) < k:
            q_ok = False
            vec = null_vector(sub, k, None)
            if cx is None:
                cx = Hypergraph(n, d, {edges[c]: v for c, v in zip(cols, vec) if v}, INFINITY)
        if not q_ok and not zp_ok:
            break
    transfer = (not zp_ok) or q_ok if F.is_finite else True
    details = {"zp": zp_ok, "rational": q_ok, "transfer_holds": transfer, "columns": q, "subset_size": k}
    verdict = q_ok and (zp_ok if F.is_finite else True)
    return VerifyReport("column-independence", verdict, cx, size, time.perf_counter() - t0, details)


# ---------------------------------------------------------------------------
# probability bounds
# ---------------------------------------------------------------------------


def _integer_entries(A: SymTensor):
    idx = np.array(list(A.entries), dtype=np.int64).reshape(-1, A.d) - 1
    vals = list(A.entries.values())
    if A.field.is_finite:
        return idx, np.array(vals, dtype=np.int64), A.field.modulus
    vals = [Fraction(v) for v in vals]
    scale = math.lcm(*(v.denominator for v in vals)) if vals else 1
    return idx, np.array([int(v * scale) for v in vals], dtype=np.int64), 0


def stat_check_eliminate(
    A: SymTensor, mode: str = "exhaustive", samples: int = 100_000, seed=0, budget: int = DEFAULT_BUDGET
) -> VerifyReport:
    """``Pr[A(x) = 0] <= 1 - (d+1)**-d`` for x from the uniform disjoint distribution."""
    if wt_r(A, A.d) < 1:
        raise ValueError("tensor has no nonzero full-dimension entry")
    t0 = time.perf_counter()
    n, d = A.n, A.d
    idx, vals, p = _integer_entries(A)
    base = (d + 1) ** d
    bound = Fraction(base - 1, base)
    if mode == "exhaustive":
        _check_budget("eliminate", (d + 1) ** n, budget)
        zeros, total = _kernels.count_zero_labelings(idx, vals, n, d, p)
        pr_zero = Fraction(zeros, total)
        verdict = pr_zero <= bound
        details = {"pr_zero": pr_zero, "pr_nonzero": 1 - pr_zero, "bound": bound}
    elif mode == "sampled":
        rng = np.random.default_rng(seed)
        w = rng.integers(1, d + 2, size=(samples, n))
        L = np.where(w == d + 1, 0, w)
        s = _kernels.eval_on_labelings(idx, vals, L, d, p)
        zeros, total = int(np.count_nonzero(s == 0)), samples
        ci = binomtest(zeros, total).proportion_ci(confidence_level=0.99, method="wilson")
        verdict = ci.low <= float(bound)
        details = {"pr_zero": zeros / total, "wilson_low": ci.low, "wilson_high": ci.high, "bound": float(bound)}
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return VerifyReport("eliminate", verdict, None if verdict else A, total, time.perf_counter() - t0, details)


def stat_check_prime_elim(a: Sequence[int], p: int, budget: int = DEFAULT_BUDGET) -> VerifyReport:
    """``Pr_x[a.x = 0 mod p] <= wt(a)**-beta`` over uniform ``x`` in ``{0,1}^n``."""
    t0 = time.perf_counter()
    a = np.asarray(a, dtype=np.int64) % p
    weight = int(np.count_nonzero(a))
    if weight == 0:
        raise ValueError("vector must be nonzero mod p")
    if p <= weight:
        raise ValueError(f"need p > wt(a); got p={p}, wt={weight}")
    n = a.shape[0]
    _check_budget("prime-elim", 2**n, budget)
    X = (np.arange(2**n)[:, None] >> np.arange(n)) & 1
    zeros = int(np.count_nonzero((X @ a) % p == 0))
    pr = Fraction(zeros, 2**n)
    bound = weight ** (-BETA)
    verdict = float(pr) <= bound
    details = {"pr_zero": pr, "wt": weight, "bound": bound, "beta": BETA}
    return VerifyReport("prime-elim", verdict, None if verdict else a.tolist(), 2**n, time.perf_counter() - t0, details)


def iota(i: int) -> int:
    return i if i > 0 else 1


def check_iota_inequality(m_list: Sequence[int], m: int) -> VerifyReport:
    """``prod iota(m_i) >= m ** floor((l - t) / (m - 1))`` with ``l = sum m_i``, ``t = len``."""
    t0 = time.perf_counter()
    if m < 2:
        raise ValueError("m must be at least 2")
    if any(not 0 <= x <= m for x in m_list):
        raise ValueError(f"entries must lie in 0..{m}")
    t = len(m_list)
    ell = sum(m_list)
    if ell < t:
        raise ValueError(f"need sum >= length; got {ell} < {t}")
    lhs = math.prod(iota(x) for x in m_list)
    rhs = m ** ((ell - t) // (m - 1))
    verdict = lhs >= rhs
    return VerifyReport(
        "iota-inequality", verdict, None if verdict else list(m_list), 1, time.perf_counter() - t0,
        {"lhs": lhs, "rhs": rhs, "l": ell, "t": t},
    )

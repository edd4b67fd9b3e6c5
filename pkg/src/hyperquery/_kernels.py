"""Enumeration kernels with a numba path and a pure-numpy fallback.

Set ``HYPERQUERY_PURE_NUMPY=1`` to force the numpy path (numba is also skipped
when it cannot be imported).  Both paths return identical results, including
the ``examined`` counters, so callers never need to know which one ran.
"""

from __future__ import annotations

import os
from itertools import combinations, product

import numpy as np

_CHUNK_CELLS = 4_000_000


def _numba_wanted() -> bool:
    return os.environ.get("HYPERQUERY_PURE_NUMPY", "").strip().lower() not in ("1", "true", "yes")


try:
    if not _numba_wanted():
        raise ImportError
    from numba import njit
except ImportError:
    njit = None

BACKEND = "numba" if njit is not None else "numpy"


# ---------------------------------------------------------------------------
# scan: find weighted column combinations hitting a target vector
# ---------------------------------------------------------------------------


def _scan_python_core(M, target, k_min, k_max, weights, p, limit):
    rows, q = M.shape
    nw = weights.shape[0]
    width = max(k_max, 1)
    found_k = np.full(limit, -1, np.int64)
    found_cols = np.full((limit, width), -1, np.int64)
    found_w = np.zeros((limit, width), np.int64)
    nfound = 0
    examined = 0
    for k in range(k_min, k_max + 1):
        if k > q:
            break
        if k == 0:
            examined += 1
            ok = True
            for r in range(rows):
                t = target[r] % p if p else target[r]
                if t != 0:
                    ok = False
                    break
            if ok:
                found_k[nfound] = 0
                nfound += 1
                if nfound == limit:
                    return examined, nfound, found_k, found_cols, found_w
            continue
        cols = np.arange(k)
        widx = np.zeros(k, np.int64)
        while True:
            for j in range(k):
                widx[j] = 0
            while True:
                examined += 1
                ok = True
                for r in range(rows):
                    s = -target[r]
                    for j in range(k):
                        s += weights[widx[j]] * M[r, cols[j]]
                    if p:
                        s %= p
                    if s != 0:
                        ok = False
                        break
                if ok:
                    found_k[nfound] = k
                    for j in range(k):
                        found_cols[nfound, j] = cols[j]
                        found_w[nfound, j] = weights[widx[j]]
                    nfound += 1
                    if nfound == limit:
                        return examined, nfound, found_k, found_cols, found_w
                j = k - 1
                while j >= 0:
                    widx[j] += 1
                    if widx[j] < nw:
                        break
                    widx[j] = 0
                    j -= 1
                if j < 0:
                    break
            i = k - 1
            while i >= 0 and cols[i] == q - k + i:
                i -= 1
            if i < 0:
                break
            cols[i] += 1
            for j in range(i + 1, k):
                cols[j] = cols[j - 1] + 1
    return examined, nfound, found_k, found_cols, found_w


_scan_numba = njit(cache=True, nogil=True)(_scan_python_core) if njit is not None else None


def _scan_numpy_core(M, target, k_min, k_max, weights, p, limit):
    rows, q = M.shape
    width = max(k_max, 1)
    found_k = np.full(limit, -1, np.int64)
    found_cols = np.full((limit, width), -1, np.int64)
    found_w = np.zeros((limit, width), np.int64)
    nfound = 0
    examined = 0

    def residual_zero(vals):
        vals = vals - target
        if p:
            vals %= p
        return ~np.any(vals != 0, axis=-1)

    for k in range(k_min, min(k_max, q) + 1):
        if k == 0:
            examined += 1
            if residual_zero(np.zeros(rows, np.int64)):
                found_k[nfound] = 0
                nfound += 1
                if nfound == limit:
                    break
            continue
        W = np.array(list(product(weights.tolist(), repeat=k)), dtype=np.int64)
        per_combo = W.shape[0]
        step = max(1, _CHUNK_CELLS // max(1, per_combo * rows))
        combos = combinations(range(q), k)
        while True:
            chunk = np.array([c for _, c in zip(range(step), combos)], dtype=np.int64)
            if chunk.size == 0:
                break
            sub = M[:, chunk]  # rows x c x k
            vals = np.einsum("rck,wk->cwr", sub, W)
            hits = np.flatnonzero(residual_zero(vals).ravel())
            take = hits[: limit - nfound]
            for flat in take:
                ci, wi = divmod(int(flat), per_combo)
                found_k[nfound] = k
                found_cols[nfound, :k] = chunk[ci]
                found_w[nfound, :k] = W[wi]
                nfound += 1
            if nfound == limit:
                examined += int(take[-1]) + 1
                return examined, nfound, found_k, found_cols, found_w
            examined += chunk.shape[0] * per_combo
    return examined, nfound, found_k, found_cols, found_w


def scan_combinations(M, target, k_min, k_max, weights, p, limit, backend=None):
    """Enumerate ``sum_j w_j * M[:, c_j]`` over column sets and weight vectors.

    Column sets of size ``k_min..k_max`` run in lexicographic order; for each,
    weight vectors over ``weights`` run in lexicographic order.  Returns the
    first ``limit`` candidates whose combination equals ``target`` (mod ``p``;
    ``p == 0`` means exact integers) as ``(examined, matches)`` where
    ``matches`` is a list of ``(cols, weights)`` tuples.
    """
    M = np.ascontiguousarray(M, dtype=np.int64)
    target = np.ascontiguousarray(target, dtype=np.int64)
    weights = np.ascontiguousarray(weights, dtype=np.int64)
    backend = backend or BACKEND
    if backend == "numba":
        if _scan_numba is None:
            raise RuntimeError("numba backend unavailable")
        core = _scan_numba
    elif backend == "numpy":
        core = _scan_numpy_core
    elif backend == "python":
        core = _scan_python_core
    else:
        raise ValueError(f"unknown backend {backend!r}")
    examined, nfound, fk, fc, fw = core(M, target, int(k_min), int(k_max), weights, int(p), int(limit))
    matches = [
        (tuple(int(c) for c in fc[i, : fk[i]]), tuple(int(w) for w in fw[i, : fk[i]]))
        for i in range(nfound)
    ]
    return int(examined), matches


# ---------------------------------------------------------------------------
# labelings: count zero evaluations over every disjoint tuple of length n
# ---------------------------------------------------------------------------


def _zero_labelings_python_core(idx, vals, n, d, p):
    n_entries = idx.shape[0]
    labels = np.zeros(n, np.int64)
    zeros = 0
    total = 0
    while True:
        total += 1
        s = 0
        for e in range(n_entries):
            seen = 0
            ok = True
            for j in range(d):
                lab = labels[idx[e, j]]
                bit = 1 << lab
                if lab == 0 or (seen & bit):
                    ok = False
                    break
                seen |= bit
            if ok:
                s += vals[e]
        if p:
            s %= p
        if s == 0:
            zeros += 1
        i = 0
        while i < n:
            labels[i] += 1
            if labels[i] <= d:
                break
            labels[i] = 0
            i += 1
        if i == n:
            break
    return zeros, total


_zero_labelings_numba = (
    njit(cache=True, nogil=True)(_zero_labelings_python_core) if njit is not None else None
)


def eval_on_labelings(idx, vals, L, d, p):
    """Tensor value on each labeling row of ``L`` (numpy only; used for sampling too)."""
    idx = np.asarray(idx, dtype=np.int64).reshape(-1, d)
    s = np.zeros(L.shape[0], np.int64)
    want = np.arange(1, d + 1)
    for e in range(idx.shape[0]):
        labs = np.sort(L[:, idx[e]], axis=1)
        s += int(vals[e]) * np.all(labs == want, axis=1)
    if p:
        s %= p
    return s


def _zero_labelings_numpy_core(idx, vals, n, d, p):
    L = np.stack(np.meshgrid(*([np.arange(d + 1)] * n), indexing="ij"), axis=-1).reshape(-1, n)
    s = eval_on_labelings(idx, vals, L, d, p)
    return int(np.count_nonzero(s == 0)), int(L.shape[0])


def count_zero_labelings(idx, vals, n, d, p, backend=None):
    """Count labelings in ``{0..d}**n`` (0 = free) where the tensor evaluates to zero.

    ``idx`` holds 0-based canonical entry indices (one row per entry), ``vals``
    the entry values.  Returns ``(zero_count, total)``.
    """
    idx = np.ascontiguousarray(idx, dtype=np.int64).reshape(-1, d)
    vals = np.ascontiguousarray(vals, dtype=np.int64)
    backend = backend or BACKEND
    if backend == "numba":
        if _zero_labelings_numba is None:
            raise RuntimeError("numba backend unavailable")
        z, t = _zero_labelings_numba(idx, vals, int(n), int(d), int(p))
    elif backend == "numpy":
        z, t = _zero_labelings_numpy_core(idx, vals, int(n), int(d), int(p))
    elif backend == "python":
        z, t = _zero_labelings_python_core(idx, vals, int(n), int(d), int(p))
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return int(z), int(t)

"""Plan-size benchmark against the information-theoretic query bounds."""

from __future__ import annotations

import csv
import io
import math
import time
from dataclasses import asdict, dataclass, replace
from typing import Iterable

from .construct import ConstructionConfig, las_vegas_construct

CSV_COLUMNS = ("n", "d", "m", "field", "k", "bound1", "bound2", "ratio", "attempts", "seconds")


def bound_unbounded(n: int, m: int) -> float:
    """``m log n / log m`` (real weights)."""
    return m * math.log2(n) / math.log2(max(m, 2))


def bound_bounded(n: int, m: int, d: int) -> float:
    """``m log(n^d / m) / log m`` (integer weights polynomial in ``n^d/m``)."""
    return m * math.log2(n**d / m) / math.log2(max(m, 2))


@dataclass
class BenchRecord:
    n: int
    d: int
    m: int
    field: int
    k: int
    bound1: float
    bound2: float
    ratio: float
    attempts: int
    seconds: float


def bench_point(n: int, d: int, m: int, cfg: ConstructionConfig, kind: str = "search") -> BenchRecord:
    t0 = time.perf_counter()
    plan, attempts = las_vegas_construct(kind, n, d, m, cfg)
    seconds = time.perf_counter() - t0
    b1 = bound_unbounded(n, m)
    return BenchRecord(n, d, m, plan.field.modulus, len(plan), b1, bound_bounded(n, m, d), len(plan) / b1, attempts, seconds)


def run_grid(ns: Iterable[int], ms: Iterable[int], d: int, cfg: ConstructionConfig, kind: str = "search") -> list[BenchRecord]:
    """One record per ``(n, m)``; verification is skipped so large points stay cheap."""
    cfg = replace(cfg, verify_mode="skip")
    ms = list(ms)
    return [bench_point(n, d, m, cfg, kind) for n in ns for m in ms]


def max_ratio(records: Iterable[BenchRecord]) -> float:
    return max(r.ratio for r in records)


def to_csv(records: Iterable[BenchRecord]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in records:
        row = asdict(r)
        for key in ("bound1", "bound2", "ratio"):
            row[key] = f"{row[key]:.6f}"
        row["seconds"] = f"{row['seconds']:.4f}"
        w.writerow(row)
    return buf.getvalue()


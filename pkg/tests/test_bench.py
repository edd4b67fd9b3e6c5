import csv
import io
import math

import pytest

from hyperquery import bench
from hyperquery.construct import ConstructionConfig, case1_size


def test_bound_formulas():
    assert bench.bound_unbounded(256, 16) == 16 * 8 / 4
    assert bench.bound_unbounded(16, 1) == 4.0
    assert bench.bound_bounded(16, 4, 2) == pytest.approx(4 * math.log2(64) / 2)


def test_plan_size_matches_counting_bound():
    rec = bench.bench_point(16, 2, 4, ConstructionConfig(verify_mode="skip"))
    # search at m uses detecting at 2m: rank l draws case1_size(n, l! * 2m) tuples, each lifting to 2**l subsets
    ceiling = sum(2**ell * case1_size(16, math.factorial(ell) * 8, 4.0) for ell in (1, 2))
    assert rec.k <= ceiling
    assert rec.ratio == rec.k / rec.bound1
    assert rec.field == 17


def test_csv_shape():
    records = bench.run_grid([16, 32], [4, 8], 2, ConstructionConfig())
    rows = list(csv.DictReader(io.StringIO(bench.to_csv(records))))
    assert len(rows) == 4 and tuple(rows[0]) == bench.CSV_COLUMNS
    assert all(float(r["ratio"]) > 0 and float(r["bound1"]) > 0 for r in rows)
    assert bench.max_ratio(records) == max(r.ratio for r in records)

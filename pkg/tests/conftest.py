from __future__ import annotations

from itertools import product

import numpy as np
import pytest

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def dense_eval(A, xs):
    """A(x_1..x_d) by summing over all n**d index tuples; independent of the sparse expansion."""
    total = 0
    for idx in product(range(1, A.n + 1), repeat=A.d):
        v = A[idx]
        if v and all(xs[j][i - 1] for j, i in enumerate(idx)):
            total += v
    return A.field.reduce(total)


def trial_division_is_prime(k: int) -> bool:
    if k < 2:
        return False
    return all(k % f for f in range(2, int(k**0.5) + 1))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def acceptance_log():
    def record(number: int, ok: bool, message: str):
        ACCEPTANCE[number] = (ok, message)

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, message = ACCEPTANCE[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {message}")

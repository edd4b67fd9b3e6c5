from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from hyperquery.field import INFINITY, FieldSpec, field_inv, select_prime

from conftest import trial_division_is_prime


def scan_prime(m, d):
    k = max(m, factorial(d)) + 1
    while not trial_division_is_prime(k):
        k += 1
    return k


@pytest.mark.parametrize("m, d, p", [(10, 2, 11), (1, 3, 7), (4, 2, 5)])
def test_select_prime_examples(m, d, p):
    assert scan_prime(m, d) == p
    assert select_prime(m, d) == FieldSpec(p)


@given(st.integers(1, 3000), st.integers(1, 5))
def test_select_prime_matches_scan(m, d):
    p = select_prime(m, d).modulus
    assert p == scan_prime(m, d)
    lo = max(m, factorial(d))
    if lo > 1:
        assert p < 2 * lo


def test_select_prime_rejects_nonpositive():
    with pytest.raises(ValueError):
        select_prime(0, 2)


@pytest.mark.parametrize("a, p, inv", [(2, 7, 4), (1, 5, 1), (6, 7, 6)])
def test_field_inv_examples(a, p, inv):
    assert field_inv(a, FieldSpec(p)) == inv
    assert a * inv % p == 1


def test_field_inv_zero():
    with pytest.raises(ValueError):
        field_inv(0, FieldSpec(7))
    with pytest.raises(ValueError):
        field_inv(7, FieldSpec(7))
    with pytest.raises(ValueError):
        field_inv(0, INFINITY)


def test_exact_mode_is_rational():
    assert field_inv(3, INFINITY) == Fraction(1, 3)
    assert INFINITY.reduce(Fraction(6, 3)) == 2 and isinstance(INFINITY.reduce(Fraction(6, 3)), int)


def test_composite_modulus_rejected():
    with pytest.raises(ValueError):
        FieldSpec(9)


def test_rank_condition():
    FieldSpec(7).check_rank(3)
    with pytest.raises(ValueError):
        FieldSpec(5).check_rank(3)


def test_fraction_reduces_mod_p():
    assert FieldSpec(7).reduce(Fraction(1, 2)) == 4

from math import comb

import pytest
from hypothesis import given, strategies as st

from sigmadim import monoid
from sigmadim.errors import InputError


def test_enumerate_small():
    assert monoid.enumerate_shifts(2, 1) == [(0, 0), (1, 0), (0, 1)]
    assert len(monoid.enumerate_shifts(2, 4)) == 15
    assert monoid.enumerate_shifts(1, 3, monoid.EXACTLY) == [(3,)]


def test_counts():
    assert monoid.count_shifts(2, 4) == 15
    assert monoid.count_shifts(2, 5, monoid.EXACTLY) == 6
    assert monoid.count_shifts(3, 0) == 1


def test_arithmetic():
    assert monoid.shift_multiply((1, 0), (0, 1)) == (1, 1)
    assert monoid.shift_divide((2, 1), (0, 1)) == (2, 0)
    assert monoid.shift_divide((1, 0), (0, 1)) is None


def test_n_zero_rejected():
    with pytest.raises(InputError):
        monoid.enumerate_shifts(0, 2)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_filtration_is_disjoint_union(n):
    for i in range(13):
        up = monoid.enumerate_shifts(n, i)
        assert len(up) == len(set(up)) == monoid.count_shifts(n, i) == comb(i + n, n)
        if i:
            prev = set(monoid.enumerate_shifts(n, i - 1))
            exact = set(monoid.enumerate_shifts(n, i, monoid.EXACTLY))
            assert prev.isdisjoint(exact) and prev | exact == set(up)
            assert monoid.count_shifts(n, i) - monoid.count_shifts(n, i - 1) == monoid.count_shifts(n, i, monoid.EXACTLY)


def test_order_is_graded_and_stable():
    shifts = monoid.enumerate_shifts(3, 4)
    assert [monoid.order(m) for m in shifts] == sorted(monoid.order(m) for m in shifts)
    assert shifts == monoid.enumerate_shifts(3, 4)


def test_large_counts_exact():
    assert monoid.count_shifts(4, 1000) == comb(1004, 4)


shift2 = st.tuples(st.integers(0, 5), st.integers(0, 5))


@given(shift2, shift2)
def test_divide_inverts_multiply(a, b):
    assert monoid.shift_divide(monoid.shift_multiply(a, b), b) == a
    assert monoid.divides(b, monoid.shift_multiply(a, b))
    lcm = monoid.shift_lcm(a, b)
    assert monoid.divides(a, lcm) and monoid.divides(b, lcm)

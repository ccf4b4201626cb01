"""Shift monomials: exponent vectors of the free commutative monoid on n shifts.

A shift monomial is a plain tuple of non-negative ints ``(a1, ..., an)``
standing for ``s1^a1 ... sn^an``.  Tuples are hashable, immutable and cheap,
which is all the rest of the package needs.
"""

from functools import lru_cache
from math import comb

from .errors import DimensionMismatch, InputError

UP_TO = "up_to"
EXACTLY = "exactly"

ShiftMonomial = tuple


def order(m):
    return sum(m)


def identity(n):
    return (0,) * n


def unit(n, j):
    """The generator ``s_j`` (0-based j) as a shift monomial."""
    return tuple(1 if k == j else 0 for k in range(n))


def shift_key(m):
    """Sort key: graded, then reverse-lexicographic within a grade.

    Ascending keys list ``(0,0), (1,0), (0,1), (2,0), ...``.  Within one
    grade this is descending grevlex, so ``max(..., key=...)`` is *not* the
    grevlex leading monomial; use :func:`grevlex_key` for term comparisons.
    """
    return (sum(m),) + tuple(reversed(m))


def grevlex_key(m):
    """Key whose natural ordering is degree-compatible grevlex (bigger = larger)."""
    return (sum(m),) + tuple(-a for a in reversed(m))


def _check_n(n):
    if not isinstance(n, int) or n < 1:
        raise InputError(f"invalid dimension n={n!r}: need at least one shift")


@lru_cache(maxsize=None)
def _exact(n, i):
    if n == 1:
        return ((i,),)
    out = []
    for last in range(i + 1):
        for head in _exact(n - 1, i - last):
            out.append(head + (last,))
    return tuple(sorted(out, key=shift_key))


def enumerate_shifts(n, i, mode=UP_TO):
    """List ``T[i]`` (mode ``up_to``) or ``T(i)`` (mode ``exactly``) in canonical order."""
    _check_n(n)
    if i < 0:
        return []
    if mode == EXACTLY:
        return list(_exact(n, i))
    if mode != UP_TO:
        raise InputError(f"unknown enumeration mode {mode!r}")
    out = []
    for k in range(i + 1):
        out.extend(_exact(n, k))
    return out


def count_shifts(n, i, mode=UP_TO):
    _check_n(n)
    if i < 0:
        return 0
    if mode == EXACTLY:
        return comb(i + n - 1, n - 1)
    if mode != UP_TO:
        raise InputError(f"unknown enumeration mode {mode!r}")
    return comb(i + n, n)


def shift_multiply(m1, m2):
    if len(m1) != len(m2):
        raise DimensionMismatch(f"shift monomials over {len(m1)} and {len(m2)} shifts")
    return tuple(a + b for a, b in zip(m1, m2))


def shift_divide(m1, m2):
    """Return ``m1 / m2``, or None when ``m2`` does not divide ``m1``."""
    if len(m1) != len(m2):
        raise DimensionMismatch(f"shift monomials over {len(m1)} and {len(m2)} shifts")
    out = tuple(a - b for a, b in zip(m1, m2))
    if any(a < 0 for a in out):
        return None
    return out


def divides(m1, m2):
    return all(a <= b for a, b in zip(m1, m2))


def shift_lcm(m1, m2):
    return tuple(max(a, b) for a, b in zip(m1, m2))

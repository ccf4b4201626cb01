"""Exact linear algebra over the rationals on spans of slice vectors.

Rows are kept in reduced row-echelon form whose pivots are leading terms in
the degree-compatible module term order.  Because the pivot of a row is its
highest-order term, the rows of order <= i already span the order-<=i part
of the space; this is what makes truncation a filter instead of a solve.
"""

from dataclasses import dataclass, field

from .diffterm import SliceVector, term_key
from .errors import DimensionMismatch, InputError


@dataclass(frozen=True)
class SliceBasis:
    """Reduced echelon basis; rows sorted by pivot, largest first."""

    rows: tuple
    ambient_level: int
    n: int
    _pivots: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self._pivots is None:
            object.__setattr__(self, "_pivots", {r.leading_term: r for r in self.rows})

    @property
    def dim(self):
        return len(self.rows)

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    @property
    def pivots(self):
        return self._pivots

    def reduce(self, v):
        """Normal form of ``v`` against the basis (zero iff ``v`` is in the span)."""
        return _reduce(v, self._pivots)

    def orders(self):
        return [r.order for r in self.rows]


def _reduce(v, pivots):
    if not pivots or not v:
        return v
    data = dict(v.items())
    # pivots are eliminated from every other row, so one pass per pivot suffices
    for p, row in pivots.items():
        c = data.get(p)
        if c:
            for t, rc in row.items():
                s = data.get(t, 0) - c * rc
                if s:
                    data[t] = s
                else:
                    data.pop(t, None)
    return SliceVector._raw(data, v.n)


def _common_n(vs, n=None):
    for v in vs:
        if n is None:
            n = v.n
        elif v.n != n:
            raise DimensionMismatch(f"slice vectors over {n} and {v.n} shifts")
    return n


def _insert(pivots, v):
    """Add ``v`` to a reduced echelon system in place; return True if the rank grew."""
    r = _reduce(v, pivots)
    if not r:
        return False
    lt = r.leading_term
    inv = 1 / r[lt]
    r = r.scale(inv)
    for p, row in list(pivots.items()):
        c = row[lt]
        if c:
            pivots[p] = row - r.scale(c)
    pivots[lt] = r
    return True


def _make(pivots, level, n):
    rows = tuple(pivots[p] for p in sorted(pivots, key=term_key, reverse=True))
    return SliceBasis(rows, level, n, dict(pivots))


def echelonize(vs, ambient_level=None, n=None):
    """Reduced row-echelon basis of the span of ``vs``."""
    vs = list(vs)
    n = _common_n(vs, n)
    if n is None:
        raise InputError("cannot infer the number of shifts of an empty list")
    pivots = {}
    for v in sorted(vs, key=lambda v: (len(v), term_key(v.leading_term) if v else ())):
        _insert(pivots, v)
    if ambient_level is None:
        ambient_level = max((v.order for v in vs), default=0)
        ambient_level = max(ambient_level, 0)
    return _make(pivots, ambient_level, n)


def empty_basis(n, level=0):
    return SliceBasis((), level, n, {})


def subspace_dim(b):
    return len(b.rows)


def subspace_contains(b, v):
    if v.n != b.n:
        raise DimensionMismatch(f"vector over {v.n} shifts, basis over {b.n}")
    return not b.reduce(v)


def subspace_le(b1, b2):
    """True when span(b1) is contained in span(b2)."""
    if b1.n != b2.n:
        raise DimensionMismatch(f"bases over {b1.n} and {b2.n} shifts")
    return all(not b2.reduce(r) for r in b1.rows)


def subspace_equal(b1, b2):
    return b1.dim == b2.dim and subspace_le(b1, b2)


def subspace_sum(b1, b2):
    if b1.n != b2.n:
        raise DimensionMismatch(f"bases over {b1.n} and {b2.n} shifts")
    pivots = dict(b1.pivots)
    for r in b2.rows:
        _insert(pivots, r)
    return _make(pivots, max(b1.ambient_level, b2.ambient_level), b1.n)


def extend_basis(b, vs):
    pivots = dict(b.pivots)
    level = b.ambient_level
    for v in vs:
        _insert(pivots, v)
        level = max(level, v.order)
    return _make(pivots, level, b.n)


def restrict_to_order(b, i):
    """Basis of the vectors in span(b) of order <= i.

    Pivots are highest-order terms, so eliminating high-order coordinates
    first leaves exactly the rows whose order is <= i.
    """
    if i > b.ambient_level:
        raise InputError(f"level {i} above the ambient level {b.ambient_level}")
    rows = tuple(r for r in b.rows if r.order <= i)
    return SliceBasis(rows, i, b.n)


def with_level(b, level):
    return SliceBasis(b.rows, level, b.n, b.pivots)


# fraction-free path -----------------------------------------------------


def bareiss_rank(matrix):
    """Rank of an integer matrix by one-step fraction-free (Bareiss) elimination."""
    a = [list(row) for row in matrix]
    for row in a:
        for x in row:
            if not isinstance(x, int) or isinstance(x, bool):
                raise InputError(f"non-integer entry {x!r}")
    if not a:
        return 0
    ncols = max(len(r) for r in a)
    for row in a:
        row.extend([0] * (ncols - len(row)))
    rank = 0
    prev = 1
    nrows = len(a)
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if a[r][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        for r in range(rank + 1, nrows):
            f = a[r][col]
            row_r, row_p = a[r], a[rank]
            for c in range(col, ncols):
                # exact division is guaranteed by Sylvester's identity
                row_r[c] = (p * row_r[c] - f * row_p[c]) // prev
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def fraction_free_rank(vs):
    """Rank of integer-valued slice vectors without rational arithmetic."""
    vs = list(vs)
    if not vs:
        return 0
    _common_n(vs)
    cols = sorted({t for v in vs for t in v.support()}, key=term_key, reverse=True)
    index = {t: k for k, t in enumerate(cols)}
    matrix = []
    for v in vs:
        row = [0] * len(cols)
        for t, c in v.items():
            if c.denominator != 1:
                raise InputError(f"non-integer coefficient {c}")
            row[index[t]] = int(c)
        matrix.append(row)
    return bareiss_rank(matrix)


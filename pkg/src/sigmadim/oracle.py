"""Brute-force slice ranks by plain elimination, with no Gröbner machinery.

The rank of the order-<=i slice is found by spanning every shift x^b g of
order <= B, eliminating high-order terms first and counting the surviving
rows of order <= i.  B grows until the counts stop changing.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import monoid, numpoly
from .diffterm import GroupDescriptor, SliceVector, term_key
from .errors import InputError, OracleInconclusive


@dataclass(frozen=True)
class OracleConfig:
    shift_bound_start: int = None  # None: start at the level being queried
    window: int = 2

    def __post_init__(self):
        if self.window < 2:
            raise InputError(f"oracle window must be at least 2, got {self.window}")
        if self.shift_bound_start is not None and self.shift_bound_start < 0:
            raise InputError("shift_bound_start must be non-negative")


class _Echelon:
    """Rows over integers kept in (non-reduced) echelon form, keyed by pivot."""

    def __init__(self):
        self.rows = {}

    def add(self, vec):
        v = dict(vec)
        while v:
            p = max(v, key=term_key)
            row = self.rows.get(p)
            if row is None:
                self.rows[p] = v
                return True
            a, b = row[p], v[p]
            out = {}
            for t in v.keys() | row.keys():
                c = a * v.get(t, 0) - b * row.get(t, 0)
                if c:
                    out[t] = c
            v = out
        return False

    def count_upto(self, i):
        return sum(1 for (_, m) in self.rows if sum(m) <= i)


def _integral(g):
    den = lcm(*(Fraction(c).denominator for _, c in g.items()))
    return {t: int(c * den) for t, c in g.items()}


def escalate(generators, max_i, cfg=None, n=None, history=None):
    """Slice ranks for levels 0..max_i.

    ``history`` (a list) receives the rank vector observed at every bound B.
    """
    cfg = cfg or OracleConfig()
    if max_i < 0:
        raise InputError("level must be non-negative")
    gens = [g for g in generators if g]
    if not gens:
        return [0] * (max_i + 1)
    n = n or gens[0].n
    ints = [(_integral(g), g.order) for g in gens]
    maxord = max(o for _, o in ints)
    ceiling = max_i + 3 * maxord + 10
    start = max_i if cfg.shift_bound_start is None else cfg.shift_bound_start
    ech = _Echelon()
    B = -1
    last, stable = None, 0
    while True:
        B += 1
        if B > ceiling:
            raise OracleInconclusive(f"oracle inconclusive: ranks still changing at shift bound {B - 1}")
        for g, o in ints:
            if B >= o:
                for b in monoid.enumerate_shifts(n, B - o, monoid.EXACTLY):
                    ech.add({(j, tuple(x + y for x, y in zip(m, b))): c for (j, m), c in g.items()})
        if B < start:
            continue
        ranks = [ech.count_upto(i) for i in range(max_i + 1)]
        if history is not None:
            history.append(ranks)
        if ranks == last:
            stable += 1
            if stable >= cfg.window:
                return ranks
        else:
            last, stable = ranks, 0


def brute_slice_rank(generators, i, cfg=None, n=None):
    """Dimension of the order-<=i slice of the module spanned by all shifts."""
    return escalate(generators, i, cfg, n=n)[i]


def brute_slice_ranks(generators, max_i, cfg=None, n=None):
    return escalate(generators, max_i, cfg, n=n)


def brute_dims(desc, max_i, cfg=None):
    ranks = escalate(desc.generators, max_i, cfg, n=desc.n)
    return [desc.s * monoid.count_shifts(desc.n, i) - r for i, r in enumerate(ranks)]


def brute_dim_poly(desc, window_range, cfg=None):
    """Fit a numerical polynomial of degree <= n to brute dims on ``window_range`` (inclusive)."""
    lo, hi = window_range
    if lo < 0 or hi - lo + 1 < desc.n + 2:
        raise InputError(f"window {lo}..{hi} must hold at least n+2 = {desc.n + 2} levels")
    dims = brute_dims(desc, hi, cfg)
    return numpoly.fit(dims[lo:], desc.n, start=lo)


def random_descriptor(rng, max_n=3, max_s=2, min_gens=1, max_gens=3, max_order=4, coeff_range=3, family="additive"):
    """Random additive descriptor for self-tests; ``rng`` is a ``random.Random``."""
    n = rng.randint(1, max_n)
    s = rng.randint(1, max_s)
    variables = [f"x{k + 1}" for k in range(s)] if s > 1 else ["x"]
    gens = []
    for _ in range(rng.randint(min_gens, max_gens)):
        coeffs = {}
        for _ in range(rng.randint(1, 4)):
            order = rng.randint(0, max_order)
            shift = _random_shift(rng, n, order)
            c = rng.randint(-coeff_range, coeff_range)
            if c:
                coeffs[(rng.randrange(s), shift)] = c
        v = SliceVector(coeffs, n=n)
        if v:
            gens.append(v)
    return GroupDescriptor(family, n, variables, gens, "random")


def _random_shift(rng, n, order):
    # stars and bars: choose n-1 cut points in order + n - 1 slots
    cuts = sorted(rng.sample(range(order + n - 1), n - 1))
    parts, prev = [], -1
    for c in cuts + [order + n - 1]:
        parts.append(c - prev - 1)
        prev = c
    return tuple(parts)

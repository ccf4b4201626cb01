"""Zariski closures, chains of truncations and the constructions built on them.

Everything here works on *slices*: for a level i, the slice L_i is the
subspace of defining vectors of order <= i (a :class:`SliceBasis`).  For the
additive family the vectors are linear difference polynomials; for the
multiplicative family they are exponent vectors of binomials f - 1.  Group
dimensions are ``s * C(i+n, n) - dim L_i`` in both cases.
"""

import warnings
from dataclasses import dataclass, field
from functools import lru_cache

from . import monoid, numpoly
from .diffterm import GroupDescriptor, family_check, twist_slice
from .errors import AxiomViolation, FamilyViolation, InputError, InvariantFailure, IndicatorUnresolved
from .exactla import (
    echelonize,
    empty_basis,
    extend_basis,
    restrict_to_order,
    subspace_equal,
    subspace_le,
    with_level,
)
from .groebner import buchberger, hilbert_function, hilbert_polynomial, slice_bases


# schedules ---------------------------------------------------------------


@dataclass(frozen=True)
class Zariski:
    kind = "zariski"


@dataclass(frozen=True)
class Delay:
    d: int
    kind = "delay"

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 0:
            raise InputError(f"delay must be a non-negative integer, got {self.d!r}")


@dataclass(frozen=True)
class Explicit:
    """Levels 0..tail_from given as (generator index, shift) pairs; generated tail after."""

    levels: tuple
    tail_from: int
    kind = "explicit"

    def __post_init__(self):
        levels = tuple(tuple((int(k), tuple(m)) for k, m in level) for level in self.levels)
        object.__setattr__(self, "levels", levels)
        if self.tail_from != len(levels) - 1:
            raise InputError(f"tail_from={self.tail_from} must equal the last explicit level {len(levels) - 1}")


@dataclass
class GeneralizedGroupSpec:
    base: GroupDescriptor
    schedule: object = field(default_factory=Zariski)

    @property
    def n(self):
        return self.base.n

    @property
    def s(self):
        return self.base.s


def default_max_level(desc):
    return 2 * desc.max_generator_order + desc.n + 4


def ambient_dim(n, s, i):
    return s * monoid.count_shifts(n, i) if i >= 0 else 0


def _require_family(desc):
    check = family_check(desc)
    if not check:
        where = f"generator {check.index}: " if check.index >= 0 else ""
        raise FamilyViolation(where + check.reason)


def _key(desc):
    return (desc.family, desc.n, tuple(desc.variables), tuple(desc.generators))


@lru_cache(maxsize=256)
def _groebner_cached(key):
    _, n, _, generators = key
    return buchberger(generators, n=n)


def groebner_basis(desc):
    _require_family(desc)
    return _groebner_cached(_key(desc))


_SLICE_CACHE = {}


def zariski_slices(desc, max_level):
    """Slices I(G) ∩ k[G[i]] for i = 0..max_level."""
    gb = groebner_basis(desc)
    key = _key(desc)
    cached = _SLICE_CACHE.get(key)
    if cached is None or len(cached) <= max_level:
        if gb.elements:
            cached = slice_bases(gb, max_level)
        else:
            cached = [empty_basis(desc.n, i) for i in range(max_level + 1)]
        if len(_SLICE_CACHE) > 256:
            _SLICE_CACHE.clear()
        _SLICE_CACHE[key] = cached
    return cached[: max_level + 1]


# Zariski closures --------------------------------------------------------


def zariski_dims(desc, max_level):
    """dim G_i = s C(i+n, n) - HF(i) for i = 0..max_level."""
    if max_level < 0:
        raise InputError("max_level must be non-negative")
    gb = groebner_basis(desc)
    return [ambient_dim(desc.n, desc.s, i) - hilbert_function(gb.staircase, desc.n, desc.s, i) for i in range(max_level + 1)]


def _least_threshold(poly, dims, bound):
    # walk down from the proven bound while the polynomial still matches
    t = bound
    while t > 0 and numpoly.evaluate(poly, t - 1) == dims[t - 1]:
        t -= 1
    return t


def dimension_polynomial(desc):
    """(polynomial, threshold): dim G_i equals the polynomial for every i >= threshold."""
    gb = groebner_basis(desc)
    hf_poly, bound = hilbert_polynomial(gb.staircase, desc.n, desc.s)
    poly = numpoly.binomial_basis(desc.n).scale(desc.s) - hf_poly
    dims = zariski_dims(desc, bound)
    return poly, _least_threshold(poly, dims, bound)


def group_invariants(desc):
    poly, _ = dimension_polynomial(desc)
    return numpoly.invariants(poly, desc.n)


# ideal generation ----------------------------------------------------------


def generated_next(b):
    """Slice (L, s_1 L, ..., s_n L) at level ambient_level + 1."""
    new = [r.shift(monoid.unit(b.n, j)) for r in b.rows for j in range(b.n)]
    return with_level(extend_basis(b, new), b.ambient_level + 1)


@dataclass(frozen=True)
class StabilizationRow:
    level: int
    dim_next: int
    dim_generated: int

    @property
    def holds(self):
        return self.dim_next == self.dim_generated


@dataclass(frozen=True)
class Stabilization:
    m: int
    bound: int
    table: tuple

    @property
    def verified(self):
        return all(row.holds for row in self.table if row.level >= self.m)


def _stabilization(slices, bound, extra=0):
    if len(slices) < bound + extra + 2:
        raise InputError("not enough slices for the stabilization check")
    rows = []
    for i in range(bound + extra + 1):
        gen = generated_next(slices[i])
        if not subspace_le(gen, slices[i + 1]):
            raise InvariantFailure(f"chain axiom broken between levels {i} and {i + 1}")
        rows.append(StabilizationRow(i, slices[i + 1].dim, gen.dim))
    m = 0
    for row in rows[: bound + 1]:
        if not row.holds:
            m = row.level + 1
    m = min(m, bound)
    return Stabilization(m, bound, tuple(rows))


def stabilization_index(desc, extra=3):
    """Least m with L_{i+1} = (L_i, s_1 L_i, ..., s_n L_i) for all i >= m.

    Levels past D, the largest order in the reduced Gröbner basis, hold by
    construction: a product x^b g of order i + 1 > D has b != 0, so it is a
    shift of a product of order i.  Levels up to D are checked exactly and
    ``extra`` further levels are tabulated as a sanity margin.
    """
    gb = groebner_basis(desc)
    bound = gb.max_elem_order
    return _stabilization(zariski_slices(desc, bound + extra + 1), bound, extra)


@dataclass(frozen=True)
class Certificate:
    level: int
    generators: tuple
    verified_through: int


def span_of_shifts(vectors, n, i):
    """Span of all shifts of ``vectors`` with order <= i."""
    products = []
    for v in vectors:
        for b in monoid.enumerate_shifts(n, i - v.order):
            products.append(v.shift(b))
    if not products:
        return empty_basis(n, i)
    return echelonize(products, ambient_level=i, n=n)


def finite_generation_certificate(desc, horizon=None):
    """A basis of the order-<=m slice whose shifts regenerate every slice."""
    stab = stabilization_index(desc)
    m = stab.m
    if horizon is None:
        horizon = stab.bound + 3
    horizon = max(horizon, m)
    slices = zariski_slices(desc, horizon)
    gens = slices[m].rows
    for i in range(m, horizon + 1):
        if not subspace_equal(span_of_shifts(gens, desc.n, i), slices[i]):
            raise InvariantFailure(f"certificate does not regenerate the slice at level {i}")
    return Certificate(m, tuple(gens), horizon)


def extend_ideal_slice(b, to_level):
    if to_level < b.ambient_level:
        raise InputError(f"cannot extend from level {b.ambient_level} down to {to_level}")
    return with_level(b, to_level)


# generalized groups --------------------------------------------------------


@dataclass(frozen=True)
class AxiomRow:
    level: int
    contains_previous: bool
    shifts_contained: tuple

    @property
    def ok(self):
        return self.contains_previous and all(self.shifts_contained)


@dataclass(frozen=True)
class AxiomReport:
    rows: tuple

    @property
    def ok(self):
        return all(r.ok for r in self.rows)

    def first_failure(self):
        return next((r for r in self.rows if not r.ok), None)


def check_axioms(slices):
    rows = []
    for i in range(1, len(slices)):
        prev, cur = slices[i - 1], slices[i]
        contains = subspace_le(prev, cur)
        shifts = tuple(
            all(not cur.reduce(r.shift(monoid.unit(prev.n, j))) for r in prev.rows) for j in range(prev.n)
        )
        rows.append(AxiomRow(i, contains, shifts))
    return AxiomReport(tuple(rows))


def _explicit_level(base, pairs, i):
    vs = []
    for k, m in pairs:
        if not 0 <= k < len(base.generators):
            raise InputError(f"level {i}: generator index {k} out of range")
        if len(m) != base.n:
            raise InputError(f"level {i}: shift {m} is not over {base.n} shifts")
        v = base.generators[k].shift(m)
        if v.order > i:
            raise AxiomViolation(f"level {i}: element of order {v.order} exceeds the level", level=i, containment="order")
        vs.append(v)
    if not vs:
        return empty_basis(base.n, i)
    return echelonize(vs, ambient_level=i, n=base.n)


def chain_slices(spec, max_level, validate=True):
    """Slices L_0..L_max_level of a generalized group; explicit schedules are validated."""
    base = spec.base
    _require_family(base)
    sched = spec.schedule
    if isinstance(sched, Zariski):
        return zariski_slices(base, max_level)
    if isinstance(sched, Delay):
        z = zariski_slices(base, max(max_level - sched.d, 0))
        return [
            with_level(z[i - sched.d], i) if i >= sched.d else empty_basis(base.n, i) for i in range(max_level + 1)
        ]
    if isinstance(sched, Explicit):
        out = []
        for i in range(max_level + 1):
            if i <= sched.tail_from:
                out.append(_explicit_level(base, sched.levels[i], i))
            else:
                out.append(generated_next(out[-1]))
        if validate:
            bad = check_axioms(out[: sched.tail_from + 2]).first_failure()
            if bad is not None:
                what = "previous level" if not bad.contains_previous else f"shift s{bad.shifts_contained.index(False) + 1}"
                raise AxiomViolation(
                    f"level {bad.level} does not contain the {what} image of level {bad.level - 1}",
                    level=bad.level,
                    containment=what,
                )
        return out
    raise InputError(f"unknown schedule {sched!r}")


def generalized_dims(spec, max_level):
    slices = chain_slices(spec, max_level)
    report = check_axioms(slices)
    if not report.ok:
        bad = report.first_failure()
        raise AxiomViolation(f"chain axioms fail at level {bad.level}", level=bad.level)
    dims = [ambient_dim(spec.n, spec.s, i) - b.dim for i, b in enumerate(slices)]
    return dims, report


def closure_descriptor(spec):
    """Descriptor of the difference subgroup cut out by the union of the chain."""
    sched = spec.schedule
    if isinstance(sched, Explicit):
        top = chain_slices(spec, sched.tail_from)[sched.tail_from]
        return GroupDescriptor(spec.base.family, spec.n, list(spec.base.variables), list(top.rows), spec.base.label)
    return spec.base


def stabilization_bound(spec):
    """Level past which the chain is generated by construction."""
    sched = spec.schedule
    if isinstance(sched, Explicit):
        return sched.tail_from
    D = groebner_basis(spec.base).max_elem_order
    return D + (sched.d if isinstance(sched, Delay) else 0)


def generalized_stabilization(spec, extra=3):
    bound = stabilization_bound(spec)
    return _stabilization(chain_slices(spec, bound + extra + 1), bound, extra)


def generalized_polynomial(spec, max_level=None):
    """Dimension polynomial of the chain and the first level where it is exact."""
    sched = spec.schedule
    base = spec.base
    if isinstance(sched, Zariski):
        return dimension_polynomial(base)
    if isinstance(sched, Delay):
        gb = groebner_basis(base)
        hf_poly, bound = hilbert_polynomial(gb.staircase, base.n, base.s)
        poly = numpoly.binomial_basis(base.n).scale(base.s) - numpoly.shift_argument(hf_poly, sched.d)
        bound += sched.d
        dims, _ = generalized_dims(spec, bound)
        return poly, _least_threshold(poly, dims, bound)
    # explicit: fit just past the generated tail and certify on extra levels
    start = sched.tail_from + 1
    top = start + 3 * (base.n + 2) if max_level is None else max(max_level, start + base.n + 2)
    dims, _ = generalized_dims(spec, top)
    poly = numpoly.fit(dims[start:], base.n, start=start)
    return poly, _least_threshold(poly, dims, start)


def _first_containing(target, slices, start):
    for j in range(start, len(slices)):
        if subspace_le(target, slices[j]):
            return j
    return None


def _indicators(zar, slices, max_level, strict):
    out = []
    for i in range(max_level + 1):
        j = _first_containing(zar[i], slices, i)
        if j is None:
            msg = f"indicator at level {i} unresolved below horizon {len(slices) - 1}"
            if strict:
                raise IndicatorUnresolved(msg)
            warnings.warn(msg, stacklevel=3)
        out.append(j)
    return out


def default_horizon(spec, max_level):
    sched = spec.schedule
    if isinstance(sched, Zariski):
        return max_level
    if isinstance(sched, Delay):
        return max_level + sched.d
    D = groebner_basis(closure_descriptor(spec)).max_elem_order
    return max_level + max(sched.tail_from, D) + spec.n + 2


def zariski_indicators(spec, max_level, horizon=None, strict=False):
    """j_i = max(i, least j with I(G_i) contained in I(G[j])), for i = 0..max_level."""
    if horizon is None:
        horizon = default_horizon(spec, max_level)
    if horizon < max_level:
        raise InputError("horizon must be at least max_level")
    zar = zariski_slices(closure_descriptor(spec), max_level)
    return _indicators(zar, chain_slices(spec, horizon), max_level, strict)


def spec_from_slices(base, slices, label):
    """Explicit generalized spec reproducing the given slices exactly."""
    generators = []
    index = {}
    levels = []
    for b in slices:
        level = []
        for r in b.rows:
            if r not in index:
                index[r] = len(generators)
                generators.append(r)
            level.append((index[r], monoid.identity(base.n)))
        levels.append(tuple(level))
    desc = GroupDescriptor(base.family, base.n, list(base.variables), generators, label)
    return GeneralizedGroupSpec(desc, Explicit(tuple(levels), len(levels) - 1))


@dataclass(frozen=True)
class ProjectionResult:
    spec: GeneralizedGroupSpec
    slices: tuple
    indicators: tuple
    base_indicators: tuple
    lemma_holds: tuple

    @property
    def lemma_ok(self):
        return all(self.lemma_holds)


def projections(spec, max_level, horizon=None, strict=False):
    """F[i] = pi(G[i+1]): I(F[i]) = I(G[i+1]) ∩ k[G[i]].

    Also checks, level by level, that f_i <= j_i - 1 whenever j_i > i.
    """
    if horizon is None:
        horizon = default_horizon(spec, max_level)
    g_slices = chain_slices(spec, horizon + 1)
    f_slices = [restrict_to_order(g_slices[i + 1], i) for i in range(horizon + 1)]
    zar = zariski_slices(closure_descriptor(spec), max_level)
    f_ind = _indicators(zar, f_slices, max_level, strict)
    j_ind = _indicators(zar, g_slices[: horizon + 1], max_level, strict)
    holds = []
    for i, (f, j) in enumerate(zip(f_ind, j_ind)):
        if j is None or f is None or j <= i:
            holds.append(True)
        else:
            holds.append(f <= j - 1)
    label = f"projections of {spec.base.label}".strip()
    fspec = spec_from_slices(spec.base, f_slices[: max_level + 1], label)
    return ProjectionResult(fspec, tuple(f_slices[: max_level + 1]), tuple(f_ind), tuple(j_ind), tuple(holds))


@dataclass(frozen=True)
class KernelResult:
    dims: tuple
    top_slices: tuple


def top_slice(b, i):
    """Image of the level-i slice in the exact-order-i quotient.

    Rows with pivot of order i project to independent vectors; the rest vanish.
    """
    return tuple(r.top_part(i) for r in b.rows if r.order == i)


def kernels(spec, max_level):
    """dim H[i] = s C(i+n, n) - dim(L_i + all terms of order <= i - 1)."""
    slices = chain_slices(spec, max_level)
    dims = []
    tops = []
    for i, b in enumerate(slices):
        top = top_slice(b, i)
        dims.append(ambient_dim(spec.n, spec.s, i) - ambient_dim(spec.n, spec.s, i - 1) - len(top))
        tops.append(top)
    return KernelResult(tuple(dims), tuple(tops))


@dataclass(frozen=True)
class TwistedResult:
    spec: GeneralizedGroupSpec
    dims: tuple
    kernel_dims: tuple
    axioms: AxiomReport
    polynomial: object
    window_start: int


def twisted_kernels(spec, max_level):
    """Twisted kernels: top slices re-coordinatized over n - 1 shifts."""
    if spec.n < 2:
        raise InputError("twisted kernels need at least two shifts")
    ker = kernels(spec, max_level)
    n1 = spec.n - 1
    slices = []
    for i, top in enumerate(ker.top_slices):
        rows = [twist_slice(v, i) for v in top]
        slices.append(echelonize(rows, ambient_level=i, n=n1) if rows else empty_basis(n1, i))
    axioms = check_axioms(slices)
    if not axioms.ok:
        raise InvariantFailure(f"twisted kernels break the chain axioms at level {axioms.first_failure().level}")
    dims = tuple(ambient_dim(n1, spec.s, i) - b.dim for i, b in enumerate(slices))
    if dims != ker.dims:
        raise InvariantFailure("twisted kernel dimensions differ from kernel dimensions")
    label = f"twisted kernels of {spec.base.label}".strip()
    tspec = spec_from_slices(
        GroupDescriptor(spec.base.family, n1, list(spec.base.variables), [], label), slices, label
    )
    poly, start = None, None
    window = n1 + 2
    if len(dims) >= window + 1:
        start = len(dims) - window
        poly = numpoly.fit(dims[start:], n1, start=start)
    return TwistedResult(tspec, dims, ker.dims, axioms, poly, start)


# reports -----------------------------------------------------------------


@dataclass(frozen=True)
class ClosureReport:
    dims: tuple
    stabilization_index: int
    guaranteed_bound: int
    dimension_polynomial: numpoly.NumericalPolynomial
    poly_threshold: int
    invariants: tuple


def closure_report(desc, max_level=None):
    if max_level is None:
        max_level = default_max_level(desc)
    dims = zariski_dims(desc, max_level)
    poly, threshold = dimension_polynomial(desc)
    for i in range(threshold, max_level + 1):
        if numpoly.evaluate(poly, i) != dims[i]:
            raise InvariantFailure(f"dimension polynomial disagrees with dim G_{i}")
    stab = stabilization_index(desc)
    return ClosureReport(
        tuple(dims), stab.m, stab.bound, poly, threshold, numpoly.invariants(poly, desc.n)
    )


def kernel_polynomial(desc):
    """Closed form of dim H_i = Φ(i) - Φ(i-1) and the level from which it holds."""
    poly, threshold = dimension_polynomial(desc)
    diff = numpoly.from_function(lambda t: numpoly.evaluate(poly, t) - numpoly.evaluate(poly, t - 1), max(desc.n - 1, 0))
    return diff, threshold + 1


__all__ = [
    "Zariski",
    "Delay",
    "Explicit",
    "GeneralizedGroupSpec",
    "ClosureReport",
    "zariski_dims",
    "zariski_slices",
    "dimension_polynomial",
    "group_invariants",
    "stabilization_index",
    "finite_generation_certificate",
    "extend_ideal_slice",
    "generalized_dims",
    "generalized_stabilization",
    "generalized_polynomial",
    "zariski_indicators",
    "projections",
    "kernels",
    "twisted_kernels",
    "closure_report",
]

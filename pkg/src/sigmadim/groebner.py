"""Gröbner bases of submodules of Q[x1..xn]^s and Hilbert functions of their staircases.

With trivial action on coefficients, applying the shift ``s^b`` to a linear
(or exponent) vector is multiplication by the monomial ``x^b``, so the
difference ideal generated by a set of slice vectors is the submodule they
generate.  The module order is position-last grevlex (term over position),
which is degree compatible: every element's leading term has its order.
"""

import heapq
from dataclasses import dataclass
from functools import cached_property

from . import monoid
from .diffterm import SliceVector, term_key
from .errors import ComputationGuard, DimensionMismatch, InvariantFailure
from .exactla import echelonize, empty_basis, extend_basis, with_level
from .numpoly import ZERO, count_binom, from_function, gbinom

DEFAULT_SUBSET_GUARD = 20


@dataclass(frozen=True)
class GroebnerBasis:
    elements: tuple
    n: int

    @cached_property
    def staircase(self):
        return tuple(g.leading_term for g in self.elements)

    @property
    def max_elem_order(self):
        """D: the largest order of a basis element (0 for the empty basis)."""
        return max((g.order for g in self.elements), default=0)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def _monic(v):
    lc = v.leading_coeff
    return v if lc == 1 else v.scale(1 / lc)


def _reducer(t, elements):
    j, m = t
    for g in elements:
        gj, gm = g.leading_term
        if gj == j:
            q = monoid.shift_divide(m, gm)
            if q is not None:
                return g, q
    return None


def normal_form(v, gb):
    """Fully reduce ``v`` so that no remaining term lies in the staircase cone."""
    elements = gb.elements if isinstance(gb, GroebnerBasis) else tuple(gb)
    if not v or not elements:
        return v
    for g in elements:
        if g.n != v.n:
            raise DimensionMismatch(f"vector over {v.n} shifts, basis over {g.n}")
    p = dict(v.items())
    rem = {}
    while p:
        t = max(p, key=term_key)
        c = p[t]
        hit = _reducer(t, elements)
        if hit is None:
            rem[t] = p.pop(t)
            continue
        g, q = hit
        f = c / g.leading_coeff
        for (gj, gm), gc in g.items():
            key = (gj, tuple(a + b for a, b in zip(gm, q)))
            s = p.get(key, 0) - f * gc
            if s:
                p[key] = s
            else:
                p.pop(key, None)
    return SliceVector._raw(rem, v.n)


def _spair(f, g):
    (_, mf), (_, mg) = f.leading_term, g.leading_term
    lcm = monoid.shift_lcm(mf, mg)
    a = f.shift(monoid.shift_divide(lcm, mf)).scale(1 / f.leading_coeff)
    b = g.shift(monoid.shift_divide(lcm, mg)).scale(1 / g.leading_coeff)
    return a - b


def _interreduce(elements):
    elements = [_monic(g) for g in elements if g]
    # drop elements whose leading term is divisible by another's
    keep = []
    for k, g in enumerate(elements):
        j, m = g.leading_term
        redundant = False
        for l, h in enumerate(elements):
            if l == k:
                continue
            hj, hm = h.leading_term
            if hj == j and monoid.divides(hm, m) and (hm != m or l < k):
                redundant = True
                break
        if not redundant:
            keep.append(g)
    out = []
    for k, g in enumerate(keep):
        others = keep[:k] + keep[k + 1:]
        tail = normal_form(g - SliceVector.term(*g.leading_term), others)
        out.append(_monic(tail + SliceVector.term(*g.leading_term)))
    out.sort(key=lambda g: term_key(g.leading_term))
    return out


def buchberger(generators, n=None):
    """Reduced Gröbner basis of the module generated by ``generators``."""
    gens = [g for g in generators if g]
    for g in gens:
        if n is None:
            n = g.n
        elif g.n != n:
            raise DimensionMismatch(f"generators over {n} and {g.n} shifts")
    if not gens:
        return GroebnerBasis((), n or 0)
    single_component = len({j for g in gens for j in g.variables_used()}) == 1
    basis = []
    for g in gens:
        g = _monic(g)
        if g not in basis:
            basis.append(g)
    heap = []
    counter = 0

    def push(k, l):
        nonlocal counter
        (jk, mk), (jl, ml) = basis[k].leading_term, basis[l].leading_term
        if jk != jl:
            return
        if single_component and all(a == 0 or b == 0 for a, b in zip(mk, ml)):
            return  # coprime leading monomials: the S-vector reduces to zero
        lcm = monoid.shift_lcm(mk, ml)
        heapq.heappush(heap, (sum(lcm), monoid.grevlex_key(lcm), jk, counter, k, l))
        counter += 1

    for l in range(len(basis)):
        for k in range(l):
            push(k, l)
    while heap:
        *_, k, l = heapq.heappop(heap)
        r = normal_form(_spair(basis[k], basis[l]), basis)
        if r:
            basis.append(_monic(r))
            new = len(basis) - 1
            for k2 in range(new):
                push(k2, new)
    result = GroebnerBasis(tuple(_interreduce(basis)), n)
    for g in result.elements:
        if g.order != sum(g.leading_term[1]):
            raise InvariantFailure("module order is not degree compatible")
    return result


# Hilbert functions -----------------------------------------------------


def _by_component(staircase):
    comps = {}
    for j, m in staircase:
        comps.setdefault(j, []).append(m)
    out = {}
    for j, ms in comps.items():
        minimal = []
        for m in sorted(set(ms), key=monoid.shift_key):
            if not any(monoid.divides(g, m) for g in minimal):
                minimal.append(m)
        out[j] = minimal
    return out


def hilbert_function(staircase, n, s, i):
    """Number of difference terms of order <= i lying in the staircase cone."""
    if i < 0:
        return 0
    total = 0
    for ms in _by_component(staircase).values():
        for m in monoid.enumerate_shifts(n, i):
            if any(monoid.divides(g, m) for g in ms):
                total += 1
    return total


def _lcm_weights(ms):
    # signed inclusion-exclusion weights, merged by lcm as generators arrive
    weights = {}
    for g in ms:
        update = {g: 1}
        for m, w in weights.items():
            l = monoid.shift_lcm(m, g)
            update[l] = update.get(l, 0) - w
        for m, w in update.items():
            weights[m] = weights.get(m, 0) + w
        weights = {m: w for m, w in weights.items() if w}
    return weights


def hilbert_polynomial(staircase, n, s, guard=DEFAULT_SUBSET_GUARD):
    """Exact Hilbert polynomial of the staircase and the level from which it is exact.

    HF(i) = sum over nonempty subsets S of (-1)^(|S|+1) C(i - deg lcm S + n, n),
    per component.  As a polynomial C(k, n) vanishes at k = 0..n-1, so it
    matches the clamped count from i = max deg lcm - n on.
    """
    degree_weights = {}
    for j, ms in _by_component(staircase).items():
        if len(ms) > guard:
            raise ComputationGuard(
                f"staircase has {len(ms)} generators in component {j}; inclusion-exclusion guard is {guard}"
            )
        for m, w in _lcm_weights(ms).items():
            d = sum(m)
            degree_weights[d] = degree_weights.get(d, 0) + w
    degree_weights = {d: w for d, w in degree_weights.items() if w}
    if not degree_weights:
        return ZERO, 0

    def value(t):
        return sum(w * gbinom(t - d + n, n) for d, w in degree_weights.items())

    poly = from_function(value, n)
    threshold = max(0, max(degree_weights) - n)
    return poly, threshold


def hilbert_function_ie(staircase, n, s, i, guard=DEFAULT_SUBSET_GUARD):
    """HF(i) by inclusion-exclusion with the clamped binomial (valid for every i)."""
    total = 0
    for ms in _by_component(staircase).values():
        if len(ms) > guard:
            raise ComputationGuard(f"staircase has {len(ms)} generators in one component")
        for m, w in _lcm_weights(ms).items():
            total += w * count_binom(i - sum(m) + n, n)
    return total


# slices ----------------------------------------------------------------


def _products_of_order(gb, i):
    for g in gb.elements:
        k = i - g.order
        if k >= 0:
            for b in monoid.enumerate_shifts(gb.n, k, monoid.EXACTLY):
                yield g.shift(b)


def slice_basis(gb, i):
    """Basis of the module's order-<=i slice: spans of x^b g with order <= i."""
    return slice_bases(gb, i)[i]


def slice_bases(gb, max_level):
    """Slice bases for levels 0..max_level, built incrementally."""
    out = []
    current = empty_basis(gb.n, 0)
    for i in range(max_level + 1):
        new = list(_products_of_order(gb, i))
        current = with_level(extend_basis(current, new) if new else current, i)
        out.append(current)
    return out


def slice_basis_direct(gb, i):
    vs = [v for k in range(i + 1) for v in _products_of_order(gb, k)]
    if not vs:
        return empty_basis(gb.n, i)
    return echelonize(vs, ambient_level=i, n=gb.n)

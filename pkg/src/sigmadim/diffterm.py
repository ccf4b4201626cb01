"""Difference terms, slice vectors and group descriptors.

A difference term ``(j, m)`` stands for ``m(y_j)``: variable index ``j``
(0-based internally) shifted by the shift monomial ``m``.  A
:class:`SliceVector` is a finite rational combination of difference terms.
Read additively it is a homogeneous linear difference polynomial; read
multiplicatively it is the (integer) exponent vector of a monomial ``f`` in
the binomial ``f - 1``.  Both readings share all the linear algebra.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from . import monoid
from .errors import DimensionMismatch, InputError

ADDITIVE = "additive"
MULTIPLICATIVE = "multiplicative"
FAMILIES = (ADDITIVE, MULTIPLICATIVE)


def term_order(t):
    """Order of a difference term."""
    return sum(t[1])


def term_key(t):
    """Module term order: grevlex on shifts, then lower variable index is larger.

    Degree compatible, so the maximal term of a vector has maximal order.
    """
    return monoid.grevlex_key(t[1]) + (-t[0],)


def _as_fraction(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, float):
        raise TypeError("floating point coefficients are not allowed")
    return Fraction(c)


class SliceVector:
    """Immutable sparse rational vector indexed by difference terms."""

    __slots__ = ("n", "_coeffs", "_hash", "_lt")

    def __init__(self, coeffs=None, n=None):
        if n is None:
            raise InputError("SliceVector needs the number of shifts n")
        self.n = n
        data = {}
        for (j, m), c in (coeffs or {}).items():
            m = tuple(m)
            if len(m) != n:
                raise DimensionMismatch(f"term {m} is not over {n} shifts")
            c = _as_fraction(c)
            if c:
                data[(j, m)] = c
        self._coeffs = data
        self._hash = None
        self._lt = None

    @classmethod
    def _raw(cls, data, n):
        # trusted constructor: keys canonical, values nonzero Fractions
        v = cls.__new__(cls)
        v.n = n
        v._coeffs = data
        v._hash = None
        v._lt = None
        return v

    @classmethod
    def term(cls, var, shift, coeff=1):
        shift = tuple(shift)
        return cls({(var, shift): coeff}, n=len(shift))

    @classmethod
    def zero(cls, n):
        return cls._raw({}, n)

    # mapping protocol -------------------------------------------------
    def __getitem__(self, t):
        return self._coeffs.get(t, Fraction(0))

    def __contains__(self, t):
        return t in self._coeffs

    def __len__(self):
        return len(self._coeffs)

    def __bool__(self):
        return bool(self._coeffs)

    def items(self):
        return self._coeffs.items()

    def support(self):
        return self._coeffs.keys()

    def terms(self, descending=True):
        return sorted(self._coeffs, key=term_key, reverse=descending)

    @property
    def order(self):
        if not self._coeffs:
            return -1
        return max(sum(m) for _, m in self._coeffs)

    @property
    def leading_term(self):
        if self._lt is None and self._coeffs:
            self._lt = max(self._coeffs, key=term_key)
        return self._lt

    @property
    def leading_coeff(self):
        return self._coeffs[self.leading_term]

    def variables_used(self):
        return {j for j, _ in self._coeffs}

    def is_integral(self):
        return all(c.denominator == 1 for c in self._coeffs.values())

    # arithmetic -------------------------------------------------------
    def _check(self, other):
        if self.n != other.n:
            raise DimensionMismatch(f"slice vectors over {self.n} and {other.n} shifts")

    def __add__(self, other):
        self._check(other)
        out = dict(self._coeffs)
        for t, c in other._coeffs.items():
            s = out.get(t, 0) + c
            if s:
                out[t] = s
            else:
                out.pop(t, None)
        return SliceVector._raw(out, self.n)

    def __neg__(self):
        return SliceVector._raw({t: -c for t, c in self._coeffs.items()}, self.n)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = _as_fraction(c)
        if not c:
            return SliceVector.zero(self.n)
        return SliceVector._raw({t: c * v for t, v in self._coeffs.items()}, self.n)

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def shift(self, m):
        """Apply the shift monomial ``m`` to every term."""
        m = tuple(m)
        if len(m) != self.n:
            raise DimensionMismatch(f"shift {m} is not over {self.n} shifts")
        if not any(m):
            return self
        return SliceVector._raw(
            {(j, tuple(a + b for a, b in zip(s, m))): c for (j, s), c in self._coeffs.items()},
            self.n,
        )

    def top_part(self, i):
        """Keep only the terms of order exactly ``i``."""
        return SliceVector._raw({t: c for t, c in self._coeffs.items() if sum(t[1]) == i}, self.n)

    # identity ---------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, SliceVector):
            return NotImplemented
        return self.n == other.n and self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._coeffs.items())))
        return self._hash

    def __repr__(self):
        names = [f"y{j + 1}" for j in range(1 + max(self.variables_used(), default=0))]
        return f"SliceVector({format_additive(self, names)!r}, n={self.n})"

    def to_text(self, variables, family=ADDITIVE):
        if family == MULTIPLICATIVE:
            return format_multiplicative(self, variables)
        return format_additive(self, variables)


def apply_shift(v, m):
    return v.shift(m)


def format_shift(m):
    parts = []
    for j, a in enumerate(m):
        if a == 1:
            parts.append(f"s{j + 1}")
        elif a > 1:
            parts.append(f"s{j + 1}^{a}")
    return " ".join(parts)


def format_term(t, variables):
    j, m = t
    sh = format_shift(m)
    return f"{sh}({variables[j]})" if sh else variables[j]


def format_rational(c):
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_additive(v, variables):
    if not v:
        return "0"
    out = []
    for t in v.terms(descending=False):
        c = v[t]
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = format_term(t, variables)
        if mag != 1:
            body = f"{format_rational(mag)} {body}"
        if not out:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f"{sign} {body}")
    return " ".join(out)


def format_multiplicative(v, variables):
    if not v:
        return "1 - 1"
    factors = []
    for t in v.terms(descending=False):
        c = v[t]
        body = format_term(t, variables)
        if c != 1:
            body = f"{body}^{format_rational(c)}"
        factors.append(body)
    return " * ".join(factors) + " - 1"


def twist_slice(v, i):
    """Re-coordinatize an exact-order-``i`` vector onto the first ``n - 1`` shifts.

    A term ``(a1, ..., an)`` of order ``i`` maps to ``(a1, ..., a_{n-1})``;
    the last exponent is recovered from the order, so the map is injective.
    """
    if v.n < 2:
        raise InputError("twisting needs at least two shifts")
    out = {}
    for (j, m), c in v.items():
        if sum(m) != i:
            raise InputError(f"term {m} has order {sum(m)}, expected exactly {i}")
        out[(j, m[:-1])] = c
    return SliceVector._raw(out, v.n - 1)


def untwist_slice(v, i):
    """Inverse of :func:`twist_slice` at level ``i``."""
    out = {}
    for (j, m), c in v.items():
        last = i - sum(m)
        if last < 0:
            raise InputError(f"term {m} has order above {i}")
        out[(j, m + (last,))] = c
    return SliceVector._raw(out, v.n + 1)


@dataclass
class GroupDescriptor:
    """A difference closed subgroup of G_a^s or G_m^s given by generators."""

    family: str
    n: int
    variables: list
    generators: list = field(default_factory=list)
    label: str = ""

    @property
    def s(self):
        return len(self.variables)

    @property
    def max_generator_order(self):
        return max((g.order for g in self.generators), default=0)

    def generator_texts(self):
        return [g.to_text(self.variables, self.family) for g in self.generators]


@dataclass(frozen=True)
class FamilyCheck:
    ok: bool
    index: int = -1
    reason: str = ""

    def __bool__(self):
        return self.ok


def family_check(desc):
    """Check that every generator has the structural shape of its family.

    Homogeneous linear generators (additive) and integer exponent vectors
    (multiplicative) always generate a difference Hopf ideal.
    """
    if desc.family not in FAMILIES:
        return FamilyCheck(False, -1, f"unknown family {desc.family!r}")
    if not isinstance(desc.n, int) or desc.n < 1:
        return FamilyCheck(False, -1, f"invalid number of shifts {desc.n!r}")
    if not desc.variables:
        return FamilyCheck(False, -1, "no variables")
    for k, g in enumerate(desc.generators):
        if g.n != desc.n:
            return FamilyCheck(False, k, f"generator is over {g.n} shifts, expected {desc.n}")
        bad = [j for j in g.variables_used() if not 0 <= j < desc.s]
        if bad:
            return FamilyCheck(False, k, f"variable index {bad[0]} out of range")
        if desc.family == ADDITIVE and not g:
            return FamilyCheck(False, k, "zero generator")
        if desc.family == MULTIPLICATIVE and not g.is_integral():
            return FamilyCheck(False, k, "non-integer exponent in a monomial generator")
    return FamilyCheck(True)

"""Numerical polynomials written in the basis C(t+j, j), j = 0..d."""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import FitError, InputError


def gbinom(x, k):
    """Generalized binomial ``x (x-1) ... (x-k+1) / k!``; integer for integer ``x``."""
    if k < 0:
        return 0
    num = 1
    for r in range(k):
        num *= x - r
    if isinstance(num, int):
        return num // factorial(k)
    return Fraction(num) / factorial(k)


def count_binom(k, n):
    """C(k, n) with C(k, n) = 0 for every k < n (including negative k)."""
    if k < n:
        return 0
    return gbinom(k, n)


@dataclass(frozen=True)
class NumericalPolynomial:
    coeffs: tuple = ()

    def __post_init__(self):
        cs = list(self.coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        for c in cs:
            if Fraction(c).denominator != 1:
                raise InputError(f"binomial-basis coefficient {c} is not an integer")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in cs))

    @property
    def degree(self):
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def leading_coeff(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __call__(self, t):
        return evaluate(self, t)

    def __add__(self, other):
        m = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (m - len(self.coeffs))
        b = other.coeffs + (0,) * (m - len(other.coeffs))
        return NumericalPolynomial(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self):
        return NumericalPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        return NumericalPolynomial(tuple(k * c for c in self.coeffs))

    def power_coeffs(self):
        """Coefficients in the monomial basis 1, t, t^2, ... as Fractions."""
        out = [Fraction(0)] * max(len(self.coeffs), 1)
        for j, c in enumerate(self.coeffs):
            # C(t+j, j) = prod_{k=1..j} (t + k) / k
            poly = [Fraction(1)]
            for k in range(1, j + 1):
                nxt = [Fraction(0)] * (len(poly) + 1)
                for e, a in enumerate(poly):
                    nxt[e] += a * k
                    nxt[e + 1] += a
                poly = [a / k for a in nxt]
            for e, a in enumerate(poly):
                out[e] += c * a
        return out

    def to_binomial_text(self):
        if not self.coeffs:
            return "0"
        parts = []
        for j in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[j]
            if not c:
                continue
            basis = f"C(t+{j},{j})" if j else "C(t,0)"
            mag = abs(c)
            body = basis if mag == 1 else f"{mag}*{basis}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def to_text(self):
        """Expanded form such as ``4t - 2``."""
        pc = self.power_coeffs()
        parts = []
        for e in range(len(pc) - 1, -1, -1):
            c = pc[e]
            if not c:
                continue
            mag = abs(c)
            if mag.denominator == 1:
                coef = "" if (mag == 1 and e) else str(mag.numerator)
            else:
                coef = f"({mag.numerator}/{mag.denominator})"
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            body = coef + mono
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts) if parts else "0"

    def __str__(self):
        return self.to_text()


ZERO = NumericalPolynomial(())


def binomial_basis(j):
    """The basis element C(t+j, j)."""
    return NumericalPolynomial((0,) * j + (1,))


def evaluate(p, t):
    return sum(c * gbinom(t + j, j) for j, c in enumerate(p.coeffs))


def from_function(f, degree):
    """Recover the binomial-basis form of a polynomial function of known degree bound.

    Uses the values at t = -1, ..., -(degree+1), where C(t+j, j) is
    triangular: it vanishes for j >= -t.
    """
    cs = []
    for k in range(1, degree + 2):
        acc = Fraction(f(-k))
        for j, c in enumerate(cs):
            acc -= c * gbinom(j - k, j)
        c = acc / gbinom(-1, k - 1)
        if c.denominator != 1:
            raise FitError(f"non-integer basis coefficient {c}")
        cs.append(int(c))
    return NumericalPolynomial(tuple(cs))


def fit(values, max_degree, start=0):
    """Fit a numerical polynomial to ``values`` observed at ``start, start+1, ...``.

    At least ``max_degree + 2`` points are required so that one difference
    beyond ``max_degree`` can be checked.
    """
    values = [Fraction(v) for v in values]
    if max_degree < 0:
        raise InputError("max_degree must be non-negative")
    if len(values) < max_degree + 2:
        raise InputError(f"need at least {max_degree + 2} values to fit degree {max_degree}, got {len(values)}")
    table = [values]
    while len(table[-1]) > 1:
        row = table[-1]
        table.append([b - a for a, b in zip(row, row[1:])])
    for order in range(max_degree + 1, len(table)):
        if any(table[order]):
            raise FitError(f"not eventually polynomial at this window (difference of order {order} is nonzero)")
    newton = [table[j][0] for j in range(max_degree + 1)]

    def newton_value(t):
        return sum(c * gbinom(t - start, j) for j, c in enumerate(newton))

    return from_function(newton_value, max_degree)


def sum_transform(p, m=0):
    """Polynomial q with q(i) = p(m) + p(m+1) + ... + p(i) for i >= m."""
    if p.is_zero:
        return ZERO
    # sum_{t=0}^{i} C(t+j, j) = C(i+j+1, j+1): the prefix sum shifts the basis index
    prefix = NumericalPolynomial((0,) + p.coeffs)
    return prefix - NumericalPolynomial((evaluate(prefix, m - 1),))


def shift_argument(p, d):
    """Polynomial t -> p(t - d)."""
    return from_function(lambda t: evaluate(p, t - d), max(p.degree, 0))


def invariants(p, n):
    """(difference type, typical difference dimension, difference dimension).

    The zero polynomial gets (0, 0, 0) by convention.
    """
    if p.is_zero:
        return (0, 0, 0)
    d = p.degree
    if d > n:
        raise InputError(f"dimension polynomial of degree {d} exceeds n={n}")
    lead = p.leading_coeff
    return (d, lead, lead if d == n else 0)

"""Parser for generator expressions.

Additive:        ``s1^2 s2(x) + 2 s2^3(x)``, ``y1 - 3/2 s1(y2)``
Multiplicative:  ``s1^2 s2(x) * s2^4(x) - 1``, ``s1(x)^-1 * x``

Shift indices are 1-based; ``s1^2 s2(x)`` is the term with shift (2, 1).
A bare variable name is the unshifted variable.
"""

import re
from fractions import Fraction

from .diffterm import ADDITIVE, MULTIPLICATIVE, SliceVector
from .errors import InputError, ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")
_SHIFT = re.compile(r"s(\d+)$")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        num, ident, sym = m.groups()
        start = m.start(m.lastindex) if m.lastindex else pos
        if num is not None:
            tokens.append(("int", int(num), start))
        elif ident is not None:
            kind = "shift" if _SHIFT.match(ident) else "ident"
            tokens.append((kind, ident, start))
        elif sym is not None:
            if sym not in "()^*+-/":
                raise ParseError(f"unexpected character {sym!r}", text, start)
            tokens.append((sym, sym, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, n, variables):
        self.text = text
        self.n = n
        self.variables = list(variables)
        self.tokens = _tokenize(text)
        self.k = 0

    @property
    def tok(self):
        return self.tokens[self.k]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ParseError(msg, self.text, tok[2])

    def take(self, kind):
        tok = self.tok
        if tok[0] != kind:
            shown = "end of input" if tok[0] == "end" else repr(tok[1])
            raise self.error(f"expected {kind!r}, found {shown}")
        self.k += 1
        return tok

    def signed_int(self):
        sign = 1
        if self.tok[0] == "-":
            self.k += 1
            sign = -1
        elif self.tok[0] == "(" and self.tokens[self.k + 1][0] == "-":
            self.k += 2
            value = -self.take("int")[1]
            self.take(")")
            return value
        return sign * self.take("int")[1]

    def expr(self):
        """Return a list of (sign, coeff, factors) with factors = [(term, exponent, has_exp, pos)]."""
        terms = []
        sign = 1
        if self.tok[0] in "+-":
            sign = -1 if self.tok[0] == "-" else 1
            self.k += 1
        terms.append((sign,) + self.term())
        while self.tok[0] in ("+", "-"):
            sign = -1 if self.tok[0] == "-" else 1
            self.k += 1
            terms.append((sign,) + self.term())
        if self.tok[0] != "end":
            raise self.error(f"unexpected {self.tok[1]!r}")
        return terms

    def term(self):
        coeff = Fraction(1)
        factors = []
        if self.tok[0] == "int":
            coeff *= self.number()
            if self.tok[0] == "*":
                self.k += 1
            elif self.tok[0] in ("+", "-", "end"):
                return coeff, factors
        while True:
            if self.tok[0] == "int":
                coeff *= self.number()
            else:
                factors.append(self.factor())
            if self.tok[0] != "*":
                break
            self.k += 1
        return coeff, factors

    def number(self):
        num = self.take("int")[1]
        if self.tok[0] == "/":
            self.k += 1
            den_tok = self.tok
            den = self.take("int")[1]
            if den == 0:
                raise self.error("division by zero", den_tok)
            return Fraction(num, den)
        return Fraction(num)

    def factor(self):
        start = self.tok
        shift = [0] * self.n
        while self.tok[0] == "shift":
            tok = self.take("shift")
            idx = int(_SHIFT.match(tok[1]).group(1))
            if not 1 <= idx <= self.n:
                raise self.error(f"shift index {idx} outside 1..{self.n}", tok)
            power = 1
            if self.tok[0] == "^":
                self.k += 1
                power = self.take("int")[1]
            shift[idx - 1] += power
        had_shift = start is not self.tok
        if self.tok[0] == "(":
            self.k += 1
            name_tok = self.take("ident")
            self.take(")")
        elif self.tok[0] == "ident" and not had_shift:
            name_tok = self.take("ident")
        else:
            raise self.error("expected a shifted variable")
        name = name_tok[1]
        if name not in self.variables:
            raise self.error(f"unknown variable {name!r}", name_tok)
        exponent, has_exp = 1, False
        if self.tok[0] == "^":
            self.k += 1
            exponent, has_exp = self.signed_int(), True
        term = (self.variables.index(name), tuple(shift))
        return term, exponent, has_exp, start[2]


def parse_generator(text, family, n, variables):
    """Parse one generator expression into a :class:`SliceVector`."""
    if family not in (ADDITIVE, MULTIPLICATIVE):
        raise InputError(f"unknown family {family!r}")
    if not isinstance(n, int) or n < 1:
        raise InputError(f"invalid number of shifts {n!r}")
    parser = _Parser(text, n, variables)
    terms = parser.expr()
    if family == ADDITIVE:
        return _additive(terms, n, text)
    return _multiplicative(terms, n, text)


def _additive(terms, n, text):
    acc = {}
    for sign, coeff, factors in terms:
        if not factors:
            if coeff:
                raise ParseError("constant term in a homogeneous linear expression", text, None)
            continue
        if len(factors) > 1:
            raise ParseError("nonlinear term in an additive expression", text, factors[1][3])
        t, _, has_exp, pos = factors[0]
        if has_exp:
            raise ParseError("exponent in an additive expression", text, pos)
        acc[t] = acc.get(t, 0) + sign * coeff
    return SliceVector(acc, n=n)


def _multiplicative(terms, n, text):
    if len(terms) == 2:
        sign, coeff, factors = terms[1]
        if sign != -1 or factors or coeff != 1:
            raise ParseError("multiplicative expression must be a monomial, optionally minus 1", text, None)
        terms = terms[:1]
    if len(terms) != 1:
        raise ParseError("multiplicative expression must be a single monomial", text, None)
    sign, coeff, factors = terms[0]
    if sign != 1 or coeff != 1:
        raise ParseError("monomial must have coefficient 1", text, None)
    acc = {}
    for t, e, _, _ in factors:
        acc[t] = acc.get(t, 0) + e
    return SliceVector(acc, n=n)

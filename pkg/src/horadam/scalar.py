"""Exact scalars: multivariate integer polynomials and their fraction field.

A polynomial is a sparse map from monomials to nonzero integer coefficients.
A monomial is a tuple of (name, exponent) pairs, sorted by name, with every
exponent positive; the empty tuple is the constant monomial. Monomials are
ordered graded-lexicographically: total degree first, ties broken variable by
variable in alphabetical order, larger exponent first.

A Scalar is a quotient num/den of two polynomials kept in canonical form:

* den is never zero; a zero value is stored as 0/1,
* gcd(num, den) = 1, including integer content,
* the leading coefficient of den is positive.

Canonical form makes structural equality (==) semantic equality. Reduction
first tries exact division (the common case for binomial ratios, which are
polynomials) and falls back to a content/primitive-part gcd.

All values are immutable after construction.
"""
from __future__ import annotations

import functools
import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import DenominatorVanishes, DivisionByZero, NotDivisible, ParseError

Mono = tuple  # tuple[tuple[str, int], ...]

_CONST_MONO: Mono = ()


def _mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        na, ea = a[i]
        nb, eb = b[j]
        if na == nb:
            out.append((na, ea + eb))
            i += 1
            j += 1
        elif na < nb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def _mono_multiple_of(m: Mono, d: Mono) -> bool:
    """True when d divides m."""
    got = dict(m)
    return all(got.get(name, 0) >= e for name, e in d)


def _mono_div(m: Mono, d: Mono) -> Mono:
    got = dict(m)
    for name, e in d:
        got[name] -= e
    return tuple(sorted((n, e) for n, e in got.items() if e))


def _mono_deg(m: Mono) -> int:
    return sum(e for _, e in m)


def _mono_cmp(a: Mono, b: Mono) -> int:
    da, db = _mono_deg(a), _mono_deg(b)
    if da != db:
        return -1 if da < db else 1
    i = j = 0
    while i < len(a) or j < len(b):
        na = a[i][0] if i < len(a) else None
        nb = b[j][0] if j < len(b) else None
        if nb is None or (na is not None and na < nb):
            return 1  # a carries the alphabetically earlier variable
        if na is None or nb < na:
            return -1
        ea, eb = a[i][1], b[j][1]
        if ea != eb:
            return 1 if ea > eb else -1
        i += 1
        j += 1
    return 0


_MONO_KEY = functools.cmp_to_key(_mono_cmp)


class Poly:
    """Sparse multivariate polynomial over the integers."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Mono, int] | None = None):
        clean: dict[Mono, int] = {}
        if terms:
            for mono, coeff in terms.items():
                if coeff:
                    clean[mono] = coeff
        self._terms = clean
        self._hash = None

    @classmethod
    def const(cls, n: int) -> "Poly":
        return cls({_CONST_MONO: int(n)})

    @classmethod
    def var(cls, name: str) -> "Poly":
        if not name or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
            raise ValueError(f"bad variable name {name!r}")
        return cls({((name, 1),): 1})

    # -- inspection ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {_CONST_MONO}

    def constant_value(self) -> int:
        if not self._terms:
            return 0
        if not self.is_constant:
            raise ValueError(f"not a constant: {self}")
        return self._terms[_CONST_MONO]

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(_mono_deg(m) for m in self._terms)

    def leading(self) -> tuple[Mono, int]:
        """Graded-lex leading (monomial, coefficient) of a nonzero poly."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self._terms, key=_MONO_KEY)
        return m, self._terms[m]

    def content(self) -> int:
        """Nonnegative gcd of the coefficients (0 for the zero poly)."""
        g = 0
        for c in self._terms.values():
            g = math.gcd(g, c)
        return g

    def variables(self) -> list[str]:
        names = {name for mono in self._terms for name, _ in mono}
        return sorted(names)

    def coefficient(self, mono: Mono) -> int:
        return self._terms.get(tuple(sorted(mono)), 0)

    def sorted_terms(self) -> list[tuple[Mono, int]]:
        return sorted(self._terms.items(), key=lambda kv: _MONO_KEY(kv[0]), reverse=True)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = _as_poly_or_none(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for mono, coeff in other._terms.items():
            nc = out.get(mono, 0) + coeff
            if nc:
                out[mono] = nc
            else:
                out.pop(mono, None)
        return Poly(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_poly_or_none(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly_or_none(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __neg__(self):
        return Poly({m: -c for m, c in self._terms.items()})

    def __mul__(self, other):
        other = _as_poly_or_none(other)
        if other is None:
            return NotImplemented
        out: dict[Mono, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = _mono_mul(m1, m2)
                nc = out.get(mono, 0) + c1 * c2
                if nc:
                    out[mono] = nc
                else:
                    out.pop(mono, None)
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("polynomial powers need a nonnegative integer exponent")
        result = Poly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def _int_div(self, g: int) -> "Poly":
        """Divide every coefficient by g exactly (g may be negative)."""
        return Poly({m: c // g for m, c in self._terms.items()})

    # -- equality --------------------------------------------------------

    def __eq__(self, other):
        other = _as_poly_or_none(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __str__(self):
        return _format_poly(self)

    def __repr__(self):
        return f"Poly({self})"


def _as_poly_or_none(x) -> Poly | None:
    if isinstance(x, Poly):
        return x
    if isinstance(x, int):
        return Poly.const(x)
    return None


def _as_poly(x) -> Poly:
    p = _as_poly_or_none(x)
    if p is None:
        raise TypeError(f"cannot use {type(x).__name__} as a polynomial")
    return p


def _format_poly(p: Poly) -> str:
    if p.is_zero:
        return "0"
    parts: list[str] = []
    for mono, coeff in p.sorted_terms():
        if mono == _CONST_MONO:
            body = str(abs(coeff))
        else:
            factors = [name if e == 1 else f"{name}^{e}" for name, e in mono]
            if abs(coeff) != 1:
                factors.insert(0, str(abs(coeff)))
            body = "*".join(factors)
        if not parts:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f" + {body}" if coeff > 0 else f" - {body}")
    return "".join(parts)


# -- division and gcd ----------------------------------------------------


def poly_divmod(n: Poly, d: Poly) -> tuple[Poly, Poly]:
    """Single-divisor division in graded-lex order: n = q*d + r.

    No term of r is divisible by the leading term of d (monomial and
    coefficient both), so r == 0 exactly when d divides n over the integers.
    """
    n, d = _as_poly(n), _as_poly(d)
    if d.is_zero:
        raise DivisionByZero("polynomial division by zero")
    dm, dc = d.leading()
    q: dict[Mono, int] = {}
    r: dict[Mono, int] = {}
    work = dict(n._terms)
    while work:
        m = max(work, key=_MONO_KEY)
        c = work[m]
        if _mono_multiple_of(m, dm) and c % dc == 0:
            qm = _mono_div(m, dm)
            qc = c // dc
            q[qm] = q.get(qm, 0) + qc
            for m2, c2 in d._terms.items():
                mm = _mono_mul(qm, m2)
                nc = work.get(mm, 0) - qc * c2
                if nc:
                    work[mm] = nc
                else:
                    work.pop(mm, None)
        else:
            r[m] = c
            del work[m]
    return Poly(q), Poly(r)


def exact_divide(n: Poly, d: Poly) -> Poly:
    """Quotient n/d when the division is exact; NotDivisible otherwise."""
    q, r = poly_divmod(n, d)
    if not r.is_zero:
        raise NotDivisible(r)
    return q


def _normalize_sign(p: Poly) -> Poly:
    if p.is_zero:
        return p
    return p if p.leading()[1] > 0 else -p


def _to_univar(p: Poly, v: str) -> dict[int, Poly]:
    out: dict[int, dict[Mono, int]] = {}
    for mono, coeff in p._terms.items():
        e = 0
        rest = []
        for name, exp in mono:
            if name == v:
                e = exp
            else:
                rest.append((name, exp))
        out.setdefault(e, {})[tuple(rest)] = coeff
    return {e: Poly(terms) for e, terms in out.items()}


def _from_univar(u: dict[int, Poly], v: str) -> Poly:
    acc = Poly()
    x = Poly.var(v)
    for e, c in u.items():
        acc = acc + c * x**e
    return acc


def _coeff_gcd(u: dict[int, Poly]) -> Poly:
    g = Poly()
    for c in u.values():
        g = poly_gcd(g, c)
    return g


def _primitive_univar(u: dict[int, Poly]) -> dict[int, Poly]:
    u = {e: c for e, c in u.items() if not c.is_zero}
    if not u:
        return u
    g = _coeff_gcd(u)
    if g.is_constant and abs(g.constant_value()) == 1:
        return u
    return {e: exact_divide(c, g) for e, c in u.items()}


def _pseudo_rem(a: dict[int, Poly], b: dict[int, Poly], _v: str) -> dict[int, Poly]:
    db = max(b)
    lcb = b[db]
    r = dict(a)
    while r and max(r) >= db:
        dr = max(r)
        lcr = r[dr]
        new: dict[int, Poly] = {e: c * lcb for e, c in r.items()}
        for e, c in b.items():
            ee = e + dr - db
            new[ee] = new.get(ee, Poly()) - c * lcr
        r = {e: c for e, c in new.items() if not c.is_zero}
    return r


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Multivariate gcd by content extraction and a primitive remainder
    sequence in the alphabetically first variable. Result has positive
    leading coefficient (graded-lex)."""
    f, g = _as_poly(f), _as_poly(g)
    if f.is_zero:
        return _normalize_sign(g)
    if g.is_zero:
        return _normalize_sign(f)
    if f.is_constant or g.is_constant:
        return Poly.const(math.gcd(f.content(), g.content()))
    v = min(set(f.variables()) | set(g.variables()))
    fu = _to_univar(f, v)
    gu = _to_univar(g, v)
    cf = _coeff_gcd(fu)
    cg = _coeff_gcd(gu)
    a = {e: exact_divide(c, cf) for e, c in fu.items()}
    b = {e: exact_divide(c, cg) for e, c in gu.items()}
    if max(a) < max(b):
        a, b = b, a
    while b:
        r = _pseudo_rem(a, b, v)
        a, b = b, _primitive_univar(r)
    cont = poly_gcd(cf, cg)
    return _normalize_sign(cont * _from_univar(_primitive_univar(a), v))


# -- the fraction field --------------------------------------------------


ScalarLike = Union["Scalar", Poly, int]


class Scalar:
    """Element of the fraction field of the integer polynomial ring."""

    __slots__ = ("num", "den")

    def __init__(self, num: ScalarLike = 0, den: Poly | int | None = None):
        if isinstance(num, Scalar):
            if den is not None:
                raise TypeError("cannot give a denominator with a Scalar numerator")
            self.num, self.den = num.num, num.den
            return
        n = _as_poly(num)
        d = Poly.const(1) if den is None else _as_poly(den)
        self.num, self.den = _reduce(n, d)

    @classmethod
    def const(cls, n: int) -> "Scalar":
        return cls(Poly.const(n))

    @classmethod
    def var(cls, name: str) -> "Scalar":
        return cls(Poly.var(name))

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> "Scalar":
        """Internal: wrap an already-canonical pair without re-reducing."""
        obj = object.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    # -- inspection ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_one(self) -> bool:
        return self.den.is_constant and self.den.constant_value() == 1 \
            and self.num.is_constant and self.num.constant_value() == 1

    @property
    def is_integer(self) -> bool:
        return self.num.is_constant and self.den.is_constant \
            and self.den.constant_value() == 1

    def as_integer(self) -> int:
        if not self.is_integer:
            raise ValueError(f"not an integer: {self}")
        return self.num.constant_value()

    @property
    def is_rational(self) -> bool:
        return self.num.is_constant and self.den.is_constant

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"not a rational number: {self}")
        return Fraction(self.num.constant_value(), self.den.constant_value())

    @property
    def is_polynomial(self) -> bool:
        return self.den.is_constant and self.den.constant_value() == 1

    def as_poly(self) -> Poly:
        if not self.is_polynomial:
            raise ValueError(f"not a polynomial: {self}")
        return self.num

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        o = _as_scalar_or_none(other)
        if o is None:
            return NotImplemented
        return Scalar(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = _as_scalar_or_none(other)
        if o is None:
            return NotImplemented
        return Scalar(self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, other):
        o = _as_scalar_or_none(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Scalar._raw(-self.num, self.den)

    def __mul__(self, other):
        o = _as_scalar_or_none(other)
        if o is None:
            return NotImplemented
        return Scalar(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _as_scalar_or_none(other)
        if o is None:
            return NotImplemented
        if o.is_zero:
            raise DivisionByZero(f"division of {self} by zero")
        return Scalar(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = _as_scalar_or_none(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            raise ValueError("scalar powers need an integer exponent")
        if e < 0:
            return self.invert() ** (-e)
        result = Scalar.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def invert(self) -> "Scalar":
        if self.is_zero:
            raise DivisionByZero("cannot invert zero")
        return Scalar(self.den, self.num)

    # -- substitution ----------------------------------------------------

    def substitute(self, assignment: Mapping[str, ScalarLike]) -> "Scalar":
        amap = {name: as_scalar(v) for name, v in assignment.items()}
        num_v = _eval_poly(self.num, amap)
        den_v = _eval_poly(self.den, amap)
        if den_v.is_zero:
            raise DenominatorVanishes(
                f"denominator {self.den} vanishes under the assignment")
        return num_v / den_v

    # -- equality and rendering -----------------------------------------

    def __eq__(self, other):
        o = _as_scalar_or_none(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        num_s = _format_poly(self.num)
        if self.den.is_constant and self.den.constant_value() == 1:
            return num_s
        if len(self.num._terms) > 1:
            num_s = f"({num_s})"
        den_s = _format_poly(self.den)
        if not _is_bare_den(self.den):
            den_s = f"({den_s})"
        return f"{num_s}/{den_s}"

    def __repr__(self):
        return f"Scalar({self})"


def _is_bare_den(den: Poly) -> bool:
    """Denominators that can be rendered without parentheses: a positive
    integer, or a single power of one variable with coefficient 1."""
    if len(den._terms) != 1:
        return False
    mono, coeff = next(iter(den._terms.items()))
    if mono == _CONST_MONO:
        return True
    return coeff == 1 and len(mono) == 1


def _reduce(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if den.is_zero:
        raise DivisionByZero("zero denominator")
    if num.is_zero:
        return Poly(), Poly.const(1)
    if den.is_constant:
        dc = den.constant_value()
        g = math.gcd(num.content(), abs(dc))
        if dc < 0:
            g = -g
        return num._int_div(g), Poly.const(dc // g)
    try:
        return exact_divide(num, den), Poly.const(1)
    except NotDivisible:
        pass
    g = poly_gcd(num, den)
    if not (g.is_constant and g.constant_value() == 1):
        num = exact_divide(num, g)
        den = exact_divide(den, g)
    if den.is_constant:
        return _reduce(num, den)
    if den.leading()[1] < 0:
        num, den = -num, -den
    return num, den


def _as_scalar_or_none(x) -> Scalar | None:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (Poly, int)):
        return Scalar(x)
    return None


def as_scalar(x: ScalarLike) -> Scalar:
    s = _as_scalar_or_none(x)
    if s is None:
        raise TypeError(f"cannot use {type(x).__name__} as a scalar")
    return s


def _eval_poly(p: Poly, amap: Mapping[str, Scalar]) -> Scalar:
    acc = Scalar.const(0)
    for mono, coeff in p._terms.items():
        term = Scalar.const(coeff)
        for name, e in mono:
            base = amap.get(name)
            if base is None:
                base = Scalar.var(name)
            term = term * base**e
        acc = acc + term
    return acc


# -- the operation surface used by the CLI and tests ---------------------


ZERO = Scalar.const(0)
ONE = Scalar.const(1)


def integer(n: int) -> Scalar:
    return Scalar.const(n)


def variable(name: str) -> Scalar:
    return Scalar.var(name)


def arith(op: str, x: ScalarLike, y: ScalarLike | None = None) -> Scalar:
    """Field arithmetic dispatch: add, sub, mul, div (binary) and neg (unary)."""
    a = as_scalar(x)
    if op == "neg":
        if y is not None:
            raise TypeError("neg takes one operand")
        return -a
    if y is None:
        raise TypeError(f"{op} takes two operands")
    b = as_scalar(y)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def substitute(x: ScalarLike, assignment: Mapping[str, ScalarLike]) -> Scalar:
    return as_scalar(x).substitute(assignment)


def is_equal(x: ScalarLike, y: ScalarLike) -> bool:
    a, b = as_scalar(x), as_scalar(y)
    return a.num * b.den == b.num * a.den


def render(x: ScalarLike) -> str:
    return str(as_scalar(x))


# -- parsing -------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens: list[tuple[str, str]] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            tail = text[pos:].lstrip()
            if not tail:
                break
            raise ParseError(f"unexpected character {tail[0]!r} at position {pos}")
        if m.lastgroup == "int":
            tokens.append(("int", m.group("int")))
        elif m.lastgroup == "name":
            tokens.append(("name", m.group("name")))
        else:
            op = m.group("op")
            tokens.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, str]]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> tuple[str, str] | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self) -> tuple[str, str]:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of expression")
        self.i += 1
        return tok

    def expect_op(self, op: str) -> None:
        tok = self.take()
        if tok != ("op", op):
            raise ParseError(f"expected {op!r}, found {tok[1]!r}")

    def expr(self) -> Scalar:
        value = self.term()
        while (tok := self.peek()) in (("op", "+"), ("op", "-")):
            self.take()
            rhs = self.term()
            value = value + rhs if tok[1] == "+" else value - rhs
        return value

    def term(self) -> Scalar:
        value = self.unary()
        while (tok := self.peek()) in (("op", "*"), ("op", "/")):
            self.take()
            rhs = self.unary()
            if tok[1] == "*":
                value = value * rhs
            else:
                if rhs.is_zero:
                    raise DivisionByZero("division by zero in expression")
                value = value / rhs
        return value

    def unary(self) -> Scalar:
        tok = self.peek()
        if tok == ("op", "-"):
            self.take()
            return -self.unary()
        if tok == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Scalar:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            tok = self.take()
            if tok[0] != "int":
                raise ParseError(f"exponent must be an integer literal, found {tok[1]!r}")
            return base ** int(tok[1])
        return base

    def atom(self) -> Scalar:
        tok = self.take()
        if tok[0] == "int":
            return Scalar.const(int(tok[1]))
        if tok[0] == "name":
            return Scalar.var(tok[1])
        if tok == ("op", "("):
            value = self.expr()
            self.expect_op(")")
            return value
        raise ParseError(f"unexpected token {tok[1]!r}")


def parse_scalar(text: str) -> Scalar:
    """Parse the canonical rendering grammar back into a Scalar.

    Grammar: integers, variable names, + - * / ^ (or **) and parentheses;
    exponents are unsigned integer literals.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty expression")
    parser = _Parser(tokens)
    value = parser.expr()
    if parser.peek() is not None:
        raise ParseError(f"trailing input from {parser.peek()[1]!r}")
    return value

"""Horadam (Lucas-type) sequences and their companions.

The central object is the second-order linear recurrence

    H_0 = a,  H_1 = b,  H_{n+2} = s*H_{n+1} + t*H_n

over exact scalars, optionally tagged with the characteristic roots p, q
(p + q = s, p*q = -t). The fundamental sequence U has (a, b) = (0, 1) and
the primordial sequence V has (a, b) = (2, s); in the root basis
U_n = (p^n - q^n)/(p - q) and V_n = p^n + q^n.

Also here: the Binet coefficients A, B with H_n = A*p^n + B*q^n, an explicit
(non-recursive) term formula, ordinary-generating-function expansion, the
n*alpha^(n-1) counting sequence, and q-integers.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Callable, Sequence as Seq

from .errors import EqualRoots, ZeroCoefficient
from .scalar import Poly, Scalar, ScalarLike, as_scalar, is_equal


@dataclass(frozen=True)
class HoradamSpec:
    """Initial values and recurrence coefficients, with optional roots."""

    a: Scalar
    b: Scalar
    s: Scalar
    t: Scalar
    p: Scalar | None = None
    q: Scalar | None = None

    def __post_init__(self):
        for field in ("a", "b", "s", "t"):
            object.__setattr__(self, field, as_scalar(getattr(self, field)))
        if (self.p is None) != (self.q is None):
            raise ValueError("give both roots or neither")
        if self.p is not None:
            object.__setattr__(self, "p", as_scalar(self.p))
            object.__setattr__(self, "q", as_scalar(self.q))
            if not is_equal(self.p + self.q, self.s):
                raise ValueError("roots do not satisfy p + q = s")
            if not is_equal(self.p * self.q, -self.t):
                raise ValueError("roots do not satisfy p*q = -t")

    @classmethod
    def from_roots(cls, a: ScalarLike, b: ScalarLike,
                   p: ScalarLike, q: ScalarLike) -> "HoradamSpec":
        p, q = as_scalar(p), as_scalar(q)
        return cls(as_scalar(a), as_scalar(b), p + q, -(p * q), p, q)

    @property
    def has_roots(self) -> bool:
        return self.p is not None

    @property
    def discriminant(self) -> Scalar:
        """(p - q)^2, expressed in the coefficients as s^2 + 4t."""
        return self.s * self.s + 4 * self.t


@dataclass(frozen=True)
class BinetCoeffs:
    A: Scalar
    B: Scalar


class Sequence:
    """A lazily memoised sequence of scalars, indexed from 0."""

    def __init__(self, name: str):
        self.name = name
        self._memo: list[Scalar] = []
        self._lock = threading.Lock()

    def _extend_to(self, n: int) -> None:
        raise NotImplementedError

    def term(self, n: int) -> Scalar:
        if n < 0:
            raise ValueError(f"negative index {n}")
        if n >= len(self._memo):
            with self._lock:
                self._extend_to(n)
        return self._memo[n]

    def terms(self, count: int) -> list[Scalar]:
        return [self.term(i) for i in range(count)]

    def __repr__(self):
        return f"<sequence {self.name}>"


class HoradamSequence(Sequence):
    """Terms of a HoradamSpec by direct recurrence, the primary code path."""

    def __init__(self, spec: HoradamSpec, name: str | None = None):
        super().__init__(name or f"horadam({spec.a},{spec.b};{spec.s},{spec.t})")
        self.spec = spec
        self._memo = [spec.a, spec.b]

    def _extend_to(self, n: int) -> None:
        memo = self._memo
        s, t = self.spec.s, self.spec.t
        while len(memo) <= n:
            memo.append(s * memo[-1] + t * memo[-2])


class FormulaSequence(Sequence):
    """Terms given by an explicit function of the index."""

    def __init__(self, name: str, fn: Callable[[int], ScalarLike]):
        super().__init__(name)
        self._fn = fn

    def _extend_to(self, n: int) -> None:
        memo = self._memo
        while len(memo) <= n:
            memo.append(as_scalar(self._fn(len(memo))))


class CustomSequence(Sequence):
    """A finite, explicitly listed sequence."""

    def __init__(self, values: Seq[ScalarLike], name: str = "custom"):
        super().__init__(name)
        self._memo = [as_scalar(v) for v in values]

    def _extend_to(self, n: int) -> None:
        if n >= len(self._memo):
            raise ValueError(
                f"{self.name} has only {len(self._memo)} terms, index {n} requested")


# -- constructors --------------------------------------------------------


def fundamental(s: ScalarLike, t: ScalarLike, name: str | None = None) -> HoradamSequence:
    """U: 0, 1, s, s^2 + t, ..."""
    s, t = as_scalar(s), as_scalar(t)
    return HoradamSequence(HoradamSpec(Scalar.const(0), Scalar.const(1), s, t),
                           name or f"U({s},{t})")


def primordial(s: ScalarLike, t: ScalarLike, name: str | None = None) -> HoradamSequence:
    """V: 2, s, s^2 + 2t, ..."""
    s, t = as_scalar(s), as_scalar(t)
    return HoradamSequence(HoradamSpec(Scalar.const(2), s, s, t),
                           name or f"V({s},{t})")


def fibonacci() -> HoradamSequence:
    return fundamental(1, 1, name="fibonacci")


def lucas_numbers() -> HoradamSequence:
    return primordial(1, 1, name="lucas")


def pell() -> HoradamSequence:
    return fundamental(2, 1, name="pell")


def fibonacci_polynomials() -> HoradamSequence:
    """F_0 = 0, F_1 = 1, F_{n+2} = x*F_{n+1} + F_n."""
    return fundamental(Scalar.var("x"), 1, name="fibpoly")


def natural_numbers() -> FormulaSequence:
    return FormulaSequence("naturals", lambda n: n)


def q_integers() -> FormulaSequence:
    """0, 1, 1+q, 1+q+q^2, ... as polynomials in q."""
    return FormulaSequence("gauss", lambda n: Scalar(q_integer(n)))


def q_integers_at(value: ScalarLike) -> FormulaSequence:
    value = as_scalar(value)
    return FormulaSequence(f"gauss({value})",
                           lambda n: Scalar(q_integer(n)).substitute({"q": value}))


def n_alpha_sequence(alpha: int) -> FormulaSequence:
    return FormulaSequence(f"N({alpha})", lambda n: n_alpha_term(alpha, n))


def custom_sequence(values: Seq[ScalarLike], name: str = "custom") -> CustomSequence:
    return CustomSequence(values, name)


# -- operations ----------------------------------------------------------


def horadam_term(spec: HoradamSpec, n: int) -> Scalar:
    return HoradamSequence(spec).term(n)


def lucas_U(n: int, s: ScalarLike, t: ScalarLike) -> Scalar:
    """Fundamental sequence in the coefficient basis."""
    return fundamental(s, t).term(n)


def lucas_V(n: int, s: ScalarLike, t: ScalarLike) -> Scalar:
    """Primordial sequence in the coefficient basis."""
    return primordial(s, t).term(n)


def lucas_U_roots(n: int, p: ScalarLike, q: ScalarLike) -> Scalar:
    """Power sum p^(n-1) + p^(n-2)q + ... + q^(n-1); empty for n = 0."""
    if n < 0:
        raise ValueError(f"negative index {n}")
    p, q = as_scalar(p), as_scalar(q)
    acc = Scalar.const(0)
    for j in range(n):
        acc = acc + p ** (n - 1 - j) * q**j
    return acc


def lucas_V_roots(n: int, p: ScalarLike, q: ScalarLike) -> Scalar:
    """p^n + q^n."""
    if n < 0:
        raise ValueError(f"negative index {n}")
    p, q = as_scalar(p), as_scalar(q)
    return p**n + q**n


def binet_coeffs(spec: HoradamSpec) -> BinetCoeffs:
    """A, B with H_n = A*p^n + B*q^n. Needs distinct roots on the spec."""
    if not spec.has_roots:
        raise ValueError("spec carries no roots; use from_roots or pass p, q")
    if is_equal(spec.p, spec.q):
        raise EqualRoots(f"p = q = {spec.p}")
    d = spec.p - spec.q
    A = (spec.b - spec.q * spec.a) / d
    B = -(spec.b - spec.p * spec.a) / d
    return BinetCoeffs(A, B)


def horadam_explicit_term(spec: HoradamSpec, n: int) -> Scalar:
    """Non-recursive term formula built from weighted ordinary binomials:

        H_n = a * sum_{k<=n//2} C(n-k, k) s^(n-2k) t^k
            + (b/s - a) * sum_{k<=(n-1)//2} C(n-k-1, k) s^(n-2k) t^k

    Requires s != 0 (the formula divides by s).
    """
    if n < 0:
        raise ValueError(f"negative index {n}")
    if spec.s.is_zero:
        raise ZeroCoefficient("the explicit term formula requires s != 0")
    s, t = spec.s, spec.t
    first = Scalar.const(0)
    for k in range(0, n // 2 + 1):
        first = first + math.comb(n - k, k) * s ** (n - 2 * k) * t**k
    second = Scalar.const(0)
    for k in range(0, (n - 1) // 2 + 1):
        second = second + math.comb(n - k - 1, k) * s ** (n - 2 * k) * t**k
    return spec.a * first + (spec.b / s - spec.a) * second


def series_quotient(num: list[Scalar], den: list[Scalar], count: int) -> list[Scalar]:
    """First `count` coefficients of the power series num(x)/den(x).

    den[0] must be invertible (nonzero).
    """
    if not den or den[0].is_zero:
        raise ValueError("series division needs an invertible constant term")
    out: list[Scalar] = []
    d0 = den[0]
    for k in range(count):
        acc = num[k] if k < len(num) else Scalar.const(0)
        for j in range(1, min(k, len(den) - 1) + 1):
            acc = acc - den[j] * out[k - j]
        out.append(acc / d0)
    return out


def ogf_coefficients(spec: HoradamSpec, count: int) -> list[Scalar]:
    """Expand (a + (b - a*s)x) / (1 - s*x - t*x^2) as a power series."""
    num = [spec.a, spec.b - spec.a * spec.s]
    den = [Scalar.const(1), -spec.s, -spec.t]
    return series_quotient(num, den, count)


def n_alpha_term(alpha: int, n: int) -> int:
    """n * alpha^(n-1), with the n = 0 value 0."""
    if alpha < 1:
        raise ValueError(f"alpha must be at least 1, got {alpha}")
    if n < 0:
        raise ValueError(f"negative index {n}")
    if n == 0:
        return 0
    return n * alpha ** (n - 1)


def q_integer(n: int) -> Poly:
    """1 + q + ... + q^(n-1) as a polynomial; 0 for n = 0."""
    if n < 0:
        raise ValueError(f"negative index {n}")
    acc = Poly()
    qv = Poly.var("q")
    for j in range(n):
        acc = acc + qv**j
    return acc


# -- CLI presets ---------------------------------------------------------


def preset(spec_text: str) -> Sequence:
    """Build a sequence from a preset string.

    Accepted forms: fibonacci, lucas, pell, naturals, fibpoly, gauss,
    gauss:EXPR, nalpha:INT, horadam:a,b,s,t and U:s,t / V:s,t with
    scalar expressions for the parameters.
    """
    from .scalar import parse_scalar

    head, _, rest = spec_text.partition(":")
    head = head.strip().lower()
    if head == "fibonacci":
        return fibonacci()
    if head == "lucas":
        return lucas_numbers()
    if head == "pell":
        return pell()
    if head == "naturals":
        return natural_numbers()
    if head == "fibpoly":
        return fibonacci_polynomials()
    if head == "gauss":
        return q_integers_at(parse_scalar(rest)) if rest else q_integers()
    if head == "nalpha":
        return n_alpha_sequence(int(rest))
    if head == "horadam":
        parts = [parse_scalar(x) for x in rest.split(",")]
        if len(parts) != 4:
            raise ValueError("horadam preset needs a,b,s,t")
        return HoradamSequence(HoradamSpec(*parts), name=f"horadam:{rest}")
    if head in ("u", "v"):
        parts = [parse_scalar(x) for x in rest.split(",")]
        if len(parts) != 2:
            raise ValueError(f"{head} preset needs s,t")
        maker = fundamental if head == "u" else primordial
        return maker(*parts)
    raise ValueError(f"unknown sequence preset {spec_text!r}")

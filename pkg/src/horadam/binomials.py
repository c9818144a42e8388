"""Generalized binomials, multinomials, and their two-term recurrences.

For a sequence F with F_1, ..., F_n nonzero define the F-factorial
n!_F = F_n * ... * F_1 (empty product for n = 0) and the F-binomial

    C_F(n, k) = n!_F / (k!_F * (n-k)!_F),   0 for k < 0 or k > n.

The F-multinomial generalizes this to a composition of n. The mixed
binomial combines the primordial and fundamental sequences of one (s, t)
pair: mixed(r, s) = V-factorial(r+s) / (V-factorial(r) * U-factorial(s)).

A RecurrenceScheme packages coefficient functions (h1, h2) and a left-hand
multiplier m such that

    m * Seq_{r+s} = h1(r, s) * Seq_r + h2(r, s) * Seq_s

for the scheme's sequence, which is exactly what makes the two-term table
recurrence

    m * entry(n, k) = h1 * entry(n-1, k-1) + h2 * entry(n-1, k)

(with r = k, s = n - k) reproduce the factorial definition. Tables are
filled purely by the recurrence, never by consulting factorials, so
verify_scheme is a genuine two-route comparison.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence as Seq

from .errors import DenominatorVanishes, EqualIndices, ZeroTerm
from .scalar import ONE, ZERO, Scalar, ScalarLike, as_scalar, is_equal
from .sequences import (
    FormulaSequence,
    HoradamSequence,
    HoradamSpec,
    Sequence,
    binet_coeffs,
    fundamental,
    lucas_U_roots,
    primordial,
)

SCHEME_NAMES = (
    "generic",
    "binet-ratio",
    "binet-cross",
    "fontene-a",
    "fontene-b",
    "corcino-a",
    "corcino-b",
    "husun",
    "hoggatt-a",
    "hoggatt-b",
    "lucas-doubled",
    "mixed",
    "mixed-doubled",
)


# -- factorials and coefficients ----------------------------------------


def f_factorial(seq: Sequence, n: int) -> Scalar:
    """Product of terms 1..n; ZeroTerm if any factor vanishes."""
    if n < 0:
        raise ValueError(f"negative index {n}")
    acc = ONE
    for i in range(1, n + 1):
        term = seq.term(i)
        if term.is_zero:
            raise ZeroTerm(i, seq.name)
        acc = acc * term
    return acc


def _factorial_list(seq: Sequence, upto: int) -> list[Scalar]:
    out = [ONE]
    for i in range(1, upto + 1):
        term = seq.term(i)
        if term.is_zero:
            raise ZeroTerm(i, seq.name)
        out.append(out[-1] * term)
    return out


def f_binomial(seq: Sequence, n: int, k: int) -> Scalar:
    if n < 0:
        raise ValueError(f"negative index {n}")
    if k < 0 or k > n:
        return ZERO
    return f_factorial(seq, n) / (f_factorial(seq, k) * f_factorial(seq, n - k))


def f_multinomial(seq: Sequence, n: int, parts: Seq[int]) -> Scalar:
    if n < 0:
        raise ValueError(f"negative index {n}")
    if any(p < 0 for p in parts):
        raise ValueError(f"negative part in {tuple(parts)}")
    if sum(parts) != n:
        return ZERO
    acc = f_factorial(seq, n)
    for p in parts:
        acc = acc / f_factorial(seq, p)
    return acc


def multinomial_factorization_check(seq: Sequence, n: int, k: int,
                                    parts: Seq[int]) -> bool:
    """Two factorization identities for the multinomial with parts
    (k, parts...): peeling off the first part as a binomial, and the full
    chained-binomial product."""
    parts = tuple(parts)
    if sum(parts) != n - k:
        raise ValueError("parts must sum to n - k")
    whole = f_multinomial(seq, n, (k,) + parts)
    peeled = f_binomial(seq, n, k) * f_multinomial(seq, n - k, parts)
    chained = ONE
    remaining = n
    for part in (k,) + parts:
        chained = chained * f_binomial(seq, remaining, part)
        remaining -= part
    return is_equal(whole, peeled) and is_equal(whole, chained)


def mixed_binomial(r: int, s: int, s_param: ScalarLike, t_param: ScalarLike) -> Scalar:
    """V-factorial(r+s) / (V-factorial(r) * U-factorial(s)) for one (s, t)."""
    if r < 0 or s < 0:
        raise ValueError(f"negative indices ({r}, {s})")
    u = fundamental(s_param, t_param)
    v = primordial(s_param, t_param)
    return f_factorial(v, r + s) / (f_factorial(v, r) * f_factorial(u, s))


# -- recurrence schemes --------------------------------------------------


class SchemeCoefficients(NamedTuple):
    h1: Scalar
    h2: Scalar
    multiplier: Scalar


@dataclass(frozen=True)
class RecurrenceScheme:
    """A named two-term recurrence with its definition-side sequence."""

    name: str
    kind: str  # "binomial" or "mixed"
    sequence: Sequence | None
    coefficients: Callable[[int, int], SchemeCoefficients]
    mixed_st: tuple[Scalar, Scalar] | None = None

    def __repr__(self):
        return f"<scheme {self.name}>"


def scheme_coefficients(scheme: RecurrenceScheme, r: int, s: int) -> SchemeCoefficients:
    if r < 1 or s < 1:
        raise ValueError(f"coefficient indices must be positive, got ({r}, {s})")
    return scheme.coefficients(r, s)


def theorem_scheme(sequence: Sequence, coeff_fn: Callable,
                   name: str = "generic") -> RecurrenceScheme:
    """A scheme from a user-supplied coefficient function returning
    (h1, h2) or (h1, h2, multiplier)."""

    def coefficients(r: int, s: int) -> SchemeCoefficients:
        out = coeff_fn(r, s)
        if len(out) == 2:
            h1, h2 = out
            m: ScalarLike = 1
        else:
            h1, h2, m = out
        return SchemeCoefficients(as_scalar(h1), as_scalar(h2), as_scalar(m))

    return RecurrenceScheme(name, "binomial", sequence, coefficients)


def binet_ratio_scheme(spec: HoradamSpec) -> RecurrenceScheme:
    """h1 = A p^(r+s)/H_r, h2 = B q^(r+s)/H_s. A vanishing H_r or H_s is a
    DenominatorVanishes error, surfaced, never patched."""
    bc = binet_coeffs(spec)
    p, q = spec.p, spec.q

    def coefficients(r: int, s: int) -> SchemeCoefficients:
        h_r = bc.A * p**r + bc.B * q**r
        h_s = bc.A * p**s + bc.B * q**s
        if h_r.is_zero or h_s.is_zero:
            raise DenominatorVanishes(
                f"sequence value vanishes at index {r if h_r.is_zero else s}")
        return SchemeCoefficients(bc.A * p**(r + s) / h_r,
                                  bc.B * q**(r + s) / h_s, ONE)

    return RecurrenceScheme("binet-ratio", "binomial",
                            HoradamSequence(spec), coefficients)


def binet_cross_scheme(spec: HoradamSpec) -> RecurrenceScheme:
    """Coefficients from cross products of root powers; defined for r != s
    (use the ratio scheme on the diagonal)."""
    if not spec.has_roots:
        raise ValueError("scheme needs a spec with roots")
    p, q = spec.p, spec.q

    def coefficients(r: int, s: int) -> SchemeCoefficients:
        if r == s:
            raise EqualIndices(f"r = s = {r}")
        d = p**r * q**s - q**r * p**s
        if d.is_zero:
            raise DenominatorVanishes(f"root cross-term vanishes at ({r}, {s})")
        h1 = (p**(r + s) * q**s - q**(r + s) * p**s) / d
        h2 = (p**(r + s) * q**r - q**(r + s) * p**r) / (-d)
        return SchemeCoefficients(h1, h2, ONE)

    return RecurrenceScheme("binet-cross", "binomial",
                            HoradamSequence(spec), coefficients)


def fontene_scheme(sequence: Sequence, variant: str = "a") -> RecurrenceScheme:
    """One coefficient pinned to 1, the other a difference ratio of terms.
    Works for any sequence with nonzero terms from index 1 on."""
    if variant not in ("a", "b"):
        raise ValueError(f"variant must be 'a' or 'b', got {variant!r}")

    def coefficients(r: int, s: int) -> SchemeCoefficients:
        a_r, a_s = sequence.term(r), sequence.term(s)
        a_rs = sequence.term(r + s)
        if variant == "a":
            if a_s.is_zero:
                raise DenominatorVanishes(f"term {s} of {sequence.name} is zero")
            return SchemeCoefficients(ONE, (a_rs - a_r) / a_s, ONE)
        if a_r.is_zero:
            raise DenominatorVanishes(f"term {r} of {sequence.name} is zero")
        return SchemeCoefficients((a_rs - a_s) / a_r, ONE, ONE)

    return RecurrenceScheme(f"fontene-{variant}", "binomial", sequence, coefficients)


def corcino_scheme(p: ScalarLike, q: ScalarLike, variant: str = "a") -> RecurrenceScheme:
    """Root-power coefficients (p^s, q^r) or (q^s, p^r) for the fundamental
    sequence in the root basis."""
    if variant not in ("a", "b"):
        raise ValueError(f"variant must be 'a' or 'b', got {variant!r}")
    p, q = as_scalar(p), as_scalar(q)
    seq = FormulaSequence(f"U[{p},{q}]", lambda n: lucas_U_roots(n, p, q))

    def coefficients(r: int, s: int) -> SchemeCoefficients:
        if variant == "a":
            return SchemeCoefficients(p**s, q**r, ONE)
        return SchemeCoefficients(q**s, p**r, ONE)

    return RecurrenceScheme(f"corcino-{variant}", "binomial", seq, coefficients)


def husun_scheme(s: ScalarLike, t: ScalarLike) -> RecurrenceScheme:
    """(U_{s+1}, t*U_{r-1}) for the fundamental sequence."""
    t = as_scalar(t)
    u = fundamental(s, t)

    def coefficients(r: int, si: int) -> SchemeCoefficients:
        return SchemeCoefficients(u.term(si + 1), t * u.term(r - 1), ONE)

    return RecurrenceScheme("husun", "binomial", u, coefficients)


def hoggatt_scheme(s: ScalarLike, t: ScalarLike, variant: str = "a") -> RecurrenceScheme:
    """The two classical fundamental-sequence coefficient pairs:
    variant a is (t*U_{s-1}, U_{r+1}), variant b is (U_{s+1}, t*U_{r-1})."""
    if variant not in ("a", "b"):
        raise ValueError(f"variant must be 'a' or 'b', got {variant!r}")
    t = as_scalar(t)
    u = fundamental(s, t)

    def coefficients(r: int, si: int) -> SchemeCoefficients:
        if variant == "a":
            return SchemeCoefficients(t * u.term(si - 1), u.term(r + 1), ONE)
        return SchemeCoefficients(u.term(si + 1), t * u.term(r - 1), ONE)

    return RecurrenceScheme(f"hoggatt-{variant}", "binomial", u, coefficients)


def lucas_doubled_scheme(s: ScalarLike, t: ScalarLike) -> RecurrenceScheme:
    """Doubled form: 2*U_{r+s} = V_s*U_r + V_r*U_s, so the table recurrence
    halves at every interior step."""
    u = fundamental(s, t)
    v = primordial(s, t)
    two = Scalar.const(2)

    def coefficients(r: int, si: int) -> SchemeCoefficients:
        return SchemeCoefficients(v.term(si), v.term(r), two)

    return RecurrenceScheme("lucas-doubled", "binomial", u, coefficients)


def mixed_scheme(s: ScalarLike, t: ScalarLike) -> RecurrenceScheme:
    """(U_{s+1}, t*V_{r-1}) acting on the V/U pair:
    V_{r+s} = U_{s+1}*V_r + t*V_{r-1}*U_s."""
    s, t = as_scalar(s), as_scalar(t)
    u = fundamental(s, t)
    v = primordial(s, t)

    def coefficients(r: int, si: int) -> SchemeCoefficients:
        return SchemeCoefficients(u.term(si + 1), t * v.term(r - 1), ONE)

    return RecurrenceScheme("mixed", "mixed", None, coefficients, (s, t))


def mixed_doubled_scheme(s: ScalarLike, t: ScalarLike) -> RecurrenceScheme:
    """Doubled mixed form with the discriminant:
    2*V_{r+s} = V_s*V_r + (s^2 + 4t)*U_r*U_s."""
    s, t = as_scalar(s), as_scalar(t)
    u = fundamental(s, t)
    v = primordial(s, t)
    delta = s * s + 4 * t
    two = Scalar.const(2)

    def coefficients(r: int, si: int) -> SchemeCoefficients:
        return SchemeCoefficients(v.term(si), delta * u.term(r), two)

    return RecurrenceScheme("mixed-doubled", "mixed", None, coefficients, (s, t))


def make_scheme(name: str, *, sequence: Sequence | None = None,
                s: ScalarLike | None = None, t: ScalarLike | None = None,
                spec: HoradamSpec | None = None,
                p: ScalarLike | None = None, q: ScalarLike | None = None,
                coeff_fn: Callable | None = None) -> RecurrenceScheme:
    """Uniform scheme construction, used by the CLI.

    Parameter sources, in order of preference: explicit (s, t); the spec of a
    HoradamSequence passed as `sequence`; explicit roots (p, q) for the
    root-basis schemes; a full `spec` for the Binet schemes.
    """
    name = name.lower()
    if name not in SCHEME_NAMES:
        raise ValueError(f"unknown scheme {name!r} (choose from {', '.join(SCHEME_NAMES)})")
    if s is None and t is None and isinstance(sequence, HoradamSequence):
        s, t = sequence.spec.s, sequence.spec.t
    if name == "generic":
        if sequence is None or coeff_fn is None:
            raise ValueError("generic scheme needs a sequence and a coefficient function")
        return theorem_scheme(sequence, coeff_fn)
    if name == "binet-ratio":
        if spec is None:
            raise ValueError("binet-ratio needs a spec with roots")
        return binet_ratio_scheme(spec)
    if name == "binet-cross":
        if spec is None:
            raise ValueError("binet-cross needs a spec with roots")
        return binet_cross_scheme(spec)
    if name in ("fontene-a", "fontene-b"):
        if sequence is None:
            raise ValueError("fontene needs a sequence")
        return fontene_scheme(sequence, name[-1])
    if name in ("corcino-a", "corcino-b"):
        if p is None or q is None:
            raise ValueError("corcino needs roots p, q")
        return corcino_scheme(p, q, name[-1])
    if s is None or t is None:
        raise ValueError(f"{name} needs coefficients s, t")
    if name == "husun":
        return husun_scheme(s, t)
    if name in ("hoggatt-a", "hoggatt-b"):
        return hoggatt_scheme(s, t, name[-1])
    if name == "lucas-doubled":
        return lucas_doubled_scheme(s, t)
    if name == "mixed":
        return mixed_scheme(s, t)
    return mixed_doubled_scheme(s, t)


# -- tables --------------------------------------------------------------


@dataclass
class GBTable:
    """A triangular table entry(n, k), 0 <= k <= n <= size."""

    source: str
    sequence_name: str
    size: int
    kind: str
    entries: dict[tuple[int, int], Scalar]

    def entry(self, n: int, k: int) -> Scalar:
        if n < 0 or n > self.size:
            raise ValueError(f"row {n} outside table of size {self.size}")
        if k < 0 or k > n:
            return ZERO
        return self.entries[(n, k)]

    def rows(self) -> list[list[Scalar]]:
        return [[self.entries[(n, k)] for k in range(n + 1)]
                for n in range(self.size + 1)]

    def integer_rows(self) -> list[list[int]]:
        """Rows as plain integers; ValueError if any entry is not one."""
        return [[v.as_integer() for v in row] for row in self.rows()]

    def all_integer(self) -> bool:
        return all(v.is_integer for row in self.rows() for v in row)


def definition_table(seq: Sequence, N: int) -> GBTable:
    """Table filled straight from the factorial definition."""
    facts = _factorial_list(seq, N)
    entries = {}
    for n in range(N + 1):
        for k in range(n + 1):
            entries[(n, k)] = facts[n] / (facts[k] * facts[n - k])
    return GBTable("definition", seq.name, N, "binomial", entries)


def mixed_definition_table(s: ScalarLike, t: ScalarLike, N: int) -> GBTable:
    """Mixed table from the factorial definition: entry(n, k) has r = n - k,
    s = k."""
    u = fundamental(s, t)
    v = primordial(s, t)
    uf = _factorial_list(u, N)
    vf = _factorial_list(v, N)
    entries = {}
    for n in range(N + 1):
        for k in range(n + 1):
            entries[(n, k)] = vf[n] / (vf[n - k] * uf[k])
    return GBTable("definition", f"mixed({u.name},{v.name})", N, "mixed", entries)


def recurrence_fill(scheme: RecurrenceScheme, N: int) -> GBTable:
    """Fill a table of size N purely by the scheme's two-term recurrence."""
    if N < 0:
        raise ValueError(f"negative table size {N}")
    entries: dict[tuple[int, int], Scalar] = {}
    if scheme.kind == "binomial":
        for n in range(N + 1):
            entries[(n, 0)] = ONE
            entries[(n, n)] = ONE
            for k in range(1, n):
                c = scheme.coefficients(k, n - k)
                val = c.h1 * entries[(n - 1, k - 1)] + c.h2 * entries[(n - 1, k)]
                if not c.multiplier.is_one:
                    val = val / c.multiplier
                entries[(n, k)] = val
        name = scheme.sequence.name if scheme.sequence is not None else "?"
        return GBTable(scheme.name, name, N, "binomial", entries)
    # Mixed tables: entry(n, k) is mixed(r = n-k, s = k). The k = 0 edge is 1;
    # the k = n edge is mixed(0, n) = V_n!/U_n!, forced by the definition and
    # seeded by the one-step ratio mixed(0, n) = (V_n/U_n) * mixed(0, n-1).
    u = fundamental(*scheme.mixed_st)
    v = primordial(*scheme.mixed_st)
    entries[(0, 0)] = ONE
    for n in range(1, N + 1):
        entries[(n, 0)] = ONE
        un = u.term(n)
        if un.is_zero:
            raise ZeroTerm(n, u.name)
        entries[(n, n)] = entries[(n - 1, n - 1)] * v.term(n) / un
        for k in range(1, n):
            c = scheme.coefficients(n - k, k)
            val = c.h1 * entries[(n - 1, k)] + c.h2 * entries[(n - 1, k - 1)]
            if not c.multiplier.is_one:
                val = val / c.multiplier
            entries[(n, k)] = val
    return GBTable(scheme.name, f"mixed({u.name},{v.name})", N, "mixed", entries)


# -- verification --------------------------------------------------------


@dataclass
class CellCheck:
    n: int
    k: int
    recurrence: Scalar
    definition: Scalar
    equal: bool


@dataclass
class SchemeReport:
    scheme: str
    sequence: str
    size: int
    cells: list[CellCheck]

    @property
    def failures(self) -> list[CellCheck]:
        return [c for c in self.cells if not c.equal]

    @property
    def all_pass(self) -> bool:
        return not self.failures


def verify_scheme(scheme: RecurrenceScheme, N: int) -> SchemeReport:
    """Compare the recurrence fill against the factorial definition cell by
    cell. Disagreements are data in the report, not errors."""
    filled = recurrence_fill(scheme, N)
    if scheme.kind == "binomial":
        reference = definition_table(scheme.sequence, N)
    else:
        reference = mixed_definition_table(*scheme.mixed_st, N)
    cells = []
    for n in range(N + 1):
        for k in range(n + 1):
            rec = filled.entry(n, k)
            ref = reference.entry(n, k)
            cells.append(CellCheck(n, k, rec, ref, is_equal(rec, ref)))
    return SchemeReport(scheme.name, filled.sequence_name, N, cells)

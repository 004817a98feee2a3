"""Real biquadratic fields K = Q(sqrt m, sqrt s) and exact element arithmetic.

A field is stored with its three quadratic radicands m < s < t, where
t = m*s/gcd(m, s)**2.  Elements are kept as integer numerators over a common
denominator: ``(a + b*sqrt(m) + c*sqrt(s) + d*sqrt(t)) / den`` with ``den``
a multiple of 4.  Algebraic integers always have ``den == 4``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterator

from . import _backend as kern
from .errors import DegenerateField, FieldMismatch, NotSquarefree


def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    if n % 4 == 0:
        return False
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1 if k == 2 else 2
    return True


def squarefree_upto(limit: int) -> list[int]:
    """Square-free integers 2..limit, by sieve."""
    flags = [True] * (limit + 1)
    k = 2
    while k * k <= limit:
        for j in range(k * k, limit + 1, k * k):
            flags[j] = False
        k += 1
    return [n for n in range(2, limit + 1) if flags[n]]


class BasisClass(str, enum.Enum):
    B1 = "B1"
    B2 = "B2"
    B3 = "B3"
    B4a = "B4a"
    B4b = "B4b"

    @property
    def code(self) -> int:
        return _CLASS_CODES[self]


_CLASS_CODES = {
    BasisClass.B1: kern._py.B1,
    BasisClass.B2: kern._py.B2,
    BasisClass.B3: kern._py.B3,
    BasisClass.B4a: kern._py.B4A,
    BasisClass.B4b: kern._py.B4B,
}

# embedding id -> signs of (sqrt p, sqrt q, sqrt r)
PQR_SIGNS = {1: (1, 1, 1), 2: (-1, 1, -1), 3: (1, -1, -1), 4: (-1, -1, 1)}
EMBEDDINGS = (1, 2, 3, 4)


@dataclass(frozen=True)
class FieldSpec:
    m: int
    s: int
    t: int
    p: int
    q: int
    r: int
    basis_class: BasisClass

    @property
    def radicands(self) -> tuple[int, int, int]:
        return (self.m, self.s, self.t)

    @property
    def g(self) -> int:
        """gcd(m, s); also written t0."""
        return gcd(self.m, self.s)

    @property
    def m0(self) -> int:
        return gcd(self.s, self.t)

    @property
    def s0(self) -> int:
        return gcd(self.m, self.t)

    @property
    def t0(self) -> int:
        return gcd(self.m, self.s)

    @property
    def q_index(self) -> int:
        return self.radicands.index(self.q) + 1

    def embedding_signs(self, e: int) -> tuple[int, int, int]:
        """Signs of (sqrt m, sqrt s, sqrt t) under embedding ``e``."""
        return _embedding_table(self)[e]

    def contains_sqrt(self, n: int) -> bool:
        return n in self.radicands

    def index_of(self, n: int) -> int:
        """Coordinate index (1, 2, 3) of sqrt(n)."""
        try:
            return self.radicands.index(n) + 1
        except ValueError:
            raise FieldMismatch(f"sqrt({n}) is not in {self}") from None

    def others(self, n: int) -> tuple[int, int]:
        """The two radicands other than ``n``."""
        i = self.index_of(n) - 1
        rest = [x for j, x in enumerate(self.radicands) if j != i]
        return rest[0], rest[1]

    def __str__(self) -> str:
        return f"Q(sqrt({self.m}), sqrt({self.s}))"

    @property
    def key(self) -> tuple[int, int]:
        return (self.m, self.s)

    def integral_basis(self) -> tuple[AlgebraicNumber, ...]:
        """A Z-basis of the ring of integers, in the shape fixed by the basis class."""
        p, q, r = f"sqrt({self.p})", f"sqrt({self.q})", f"sqrt({self.r})"
        cls = self.basis_class
        if cls is BasisClass.B1:
            texts = ["1", p, q, f"({p} + {r})/2"]
        elif cls in (BasisClass.B2, BasisClass.B3):
            texts = ["1", p, f"(1 + {q})/2", f"({p} + {r})/2"]
        elif cls is BasisClass.B4a:
            texts = ["1", f"(1 + {p})/2", f"(1 + {q})/2", f"(1 + {p} + {q} + {r})/4"]
        else:
            texts = ["1", f"(1 + {p})/2", f"(1 + {q})/2", f"(1 - {p} + {q} + {r})/4"]
        return tuple(self.parse(x) for x in texts)

    @property
    def discriminant(self) -> int:
        factor = {BasisClass.B1: 64, BasisClass.B2: 16, BasisClass.B3: 16}.get(self.basis_class, 1)
        return factor * self.p * self.q * self.r

    # construction helpers

    def element(self, a: int = 0, b: int = 0, c: int = 0, d: int = 0, den: int = 4) -> AlgebraicNumber:
        return AlgebraicNumber(self, a, b, c, d, den)

    def from_int(self, n: int) -> AlgebraicNumber:
        return AlgebraicNumber(self, 4 * n, 0, 0, 0, 4)

    def from_rational(self, x: Fraction | int) -> AlgebraicNumber:
        x = Fraction(x)
        return AlgebraicNumber(self, 4 * x.numerator, 0, 0, 0, 4 * x.denominator)

    def from_coords(self, x0, x1=0, x2=0, x3=0) -> AlgebraicNumber:
        """Element x0 + x1*sqrt(m) + x2*sqrt(s) + x3*sqrt(t) with rational xi."""
        xs = [Fraction(v) for v in (x0, x1, x2, x3)]
        den = 4
        for v in xs:
            den = den * v.denominator // gcd(den, v.denominator)
        nums = [int(v * den) for v in xs]
        return AlgebraicNumber(self, *nums, den)

    def sqrt(self, n: int) -> AlgebraicNumber:
        coords = [0, 0, 0, 0]
        coords[self.index_of(n)] = 4
        return AlgebraicNumber(self, *coords, 4)

    def zero(self) -> AlgebraicNumber:
        return AlgebraicNumber(self, 0, 0, 0, 0, 4)

    def one(self) -> AlgebraicNumber:
        return AlgebraicNumber(self, 4, 0, 0, 0, 4)

    def parse(self, text: str) -> AlgebraicNumber:
        return parse_element(self, text)


@lru_cache(maxsize=None)
def _embedding_table(f: FieldSpec) -> dict[int, tuple[int, int, int]]:
    roles = {f.p: 0, f.q: 1, f.r: 2}
    table = {}
    for e, signs in PQR_SIGNS.items():
        table[e] = tuple(signs[roles[n]] for n in f.radicands)
    return table


def _check_radicand(n: int) -> None:
    if not isinstance(n, int) or n < 2:
        raise DegenerateField(f"radicand must be an integer >= 2, got {n!r}")
    if not is_squarefree(n):
        raise NotSquarefree(f"{n} is not square-free")


@lru_cache(maxsize=4096)
def classify_field(n1: int, n2: int) -> FieldSpec:
    """Sort the radicands and find the integral-basis class of Q(sqrt n1, sqrt n2)."""
    _check_radicand(n1)
    _check_radicand(n2)
    if n1 == n2:
        raise DegenerateField(f"Q(sqrt({n1}), sqrt({n2})) is quadratic")
    g = gcd(n1, n2)
    t3 = n1 * n2 // (g * g)
    m, s, t = sorted((n1, n2, t3))
    res = {n: n % 4 for n in (m, s, t)}
    counts: dict[int, list[int]] = {}
    for n in (m, s, t):
        counts.setdefault(res[n], []).append(n)
    if res[m] == res[s] == res[t] == 1:
        p, q, r = m, s, t
        cls = BasisClass.B4a if gcd(p, q) % 4 == 1 else BasisClass.B4b
    else:
        # exactly one radicand sits alone in its residue class: that is q
        (q,) = [n for n in (m, s, t) if len(counts[res[n]]) == 1]
        p, r = [n for n in (m, s, t) if n != q]
        if p % 4 == 2 and q % 4 == 3:
            cls = BasisClass.B1
        elif p % 4 == 2 and q % 4 == 1:
            cls = BasisClass.B2
        elif p % 4 == 3 and q % 4 == 1:
            cls = BasisClass.B3
        else:  # pragma: no cover - residues of a biquadratic triple exclude this
            raise AssertionError((m, s, t))
    return FieldSpec(m, s, t, p, q, r, cls)


def field_from_text(text: str) -> FieldSpec:
    """Accept "m,s", "(m,s)" or "Q(sqrt(m),sqrt(s))"."""
    nums = [int(x) for x in re.findall(r"\d+", text)]
    if len(nums) != 2:
        raise ValueError(f"cannot read a field from {text!r}")
    return classify_field(nums[0], nums[1])


def all_fields(tmax: int) -> list[FieldSpec]:
    """Every biquadratic field with largest radicand t <= tmax, sorted by (m, s)."""
    sf = squarefree_upto(tmax)
    seen = {}
    for i, n1 in enumerate(sf):
        for n2 in sf[i + 1:]:
            g = gcd(n1, n2)
            if n1 * n2 // (g * g) > tmax:
                continue
            f = classify_field(n1, n2)
            seen[f.key] = f
    return [seen[k] for k in sorted(seen)]


class AlgebraicNumber:
    """(a + b*sqrt(m) + c*sqrt(s) + d*sqrt(t)) / den in a fixed field."""

    __slots__ = ("field", "a", "b", "c", "d", "den")

    def __init__(self, field: FieldSpec, a: int, b: int = 0, c: int = 0, d: int = 0, den: int = 4):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            a, b, c, d, den = -a, -b, -c, -d, -den
        if den % 4:
            k = 4 // gcd(den, 4)
            a, b, c, d, den = a * k, b * k, c * k, d * k, den * k
        if den != 4:
            h = gcd(gcd(gcd(a, b), gcd(c, d)), den // 4)
            if h > 1:
                a, b, c, d, den = a // h, b // h, c // h, d // h, den // h
        self.field = field
        self.a = a
        self.b = b
        self.c = c
        self.d = d
        self.den = den

    # basic protocol

    @property
    def coords(self) -> tuple[int, int, int, int]:
        """Numerators over ``den``."""
        return (self.a, self.b, self.c, self.d)

    @property
    def rational_coords(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return tuple(Fraction(x, self.den) for x in self.coords)  # type: ignore[return-value]

    def sort_key(self) -> tuple:
        return (self.den, self.a, self.b, self.c, self.d)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.den == 4 and self.b == 0 and self.c == 0 and self.d == 0 and self.a == 4 * other
        if not isinstance(other, AlgebraicNumber):
            return NotImplemented
        return self.field == other.field and self.den == other.den and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((self.field.key, self.den, self.coords))

    def __repr__(self) -> str:
        return f"AlgebraicNumber({self.field.m}, {self.field.s}: {self})"

    def __str__(self) -> str:
        return format_element(self)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0 and self.d == 0

    def is_rational(self) -> bool:
        return self.b == 0 and self.c == 0 and self.d == 0

    def in_subfield(self, n: int) -> bool:
        """Does the element lie in Q(sqrt n)?"""
        i = self.field.index_of(n)
        return all(x == 0 for j, x in enumerate(self.coords[1:], start=1) if j != i)

    # arithmetic

    def _coerce(self, other) -> AlgebraicNumber:
        if isinstance(other, AlgebraicNumber):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return AlgebraicNumber(self.field, self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d, self.den)
        return AlgebraicNumber(
            self.field,
            self.a * o.den + o.a * self.den,
            self.b * o.den + o.b * self.den,
            self.c * o.den + o.c * self.den,
            self.d * o.den + o.d * self.den,
            self.den * o.den,
        )

    __radd__ = __add__

    def __neg__(self) -> AlgebraicNumber:
        return AlgebraicNumber(self.field, -self.a, -self.b, -self.c, -self.d, self.den)

    def __pos__(self) -> AlgebraicNumber:
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        f = self.field
        prod = kern.mul4(self.coords, o.coords, f.m, f.s, f.t, f.g)
        return AlgebraicNumber(f, *prod, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            x = Fraction(other)
            if x == 0:
                raise ZeroDivisionError("division by zero")
            return AlgebraicNumber(
                self.field,
                self.a * x.denominator,
                self.b * x.denominator,
                self.c * x.denominator,
                self.d * x.denominator,
                self.den * x.numerator,
            )
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __pow__(self, k: int) -> AlgebraicNumber:
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> AlgebraicNumber:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        others = self.conjugate(2) * self.conjugate(3) * self.conjugate(4)
        return others / self.norm()

    # embeddings and invariants

    def conjugate(self, e: int) -> AlgebraicNumber:
        e1, e2, e3 = self.field.embedding_signs(e)
        return AlgebraicNumber(self.field, self.a, e1 * self.b, e2 * self.c, e3 * self.d, self.den)

    def trace(self) -> Fraction:
        return Fraction(4 * self.a, self.den)

    def norm(self) -> Fraction:
        x = self.conjugate(1) * self.conjugate(2) * self.conjugate(3) * self.conjugate(4)
        return Fraction(x.a, x.den)

    def sign_at(self, e: int) -> int:
        e1, e2, e3 = self.field.embedding_signs(e)
        f = self.field
        return kern.sign4(self.a, e1 * self.b, e2 * self.c, e3 * self.d, f.m, f.s, f.t)

    def is_totally_positive(self) -> bool:
        f = self.field
        return kern.is_tp4(self.a, self.b, self.c, self.d, f.m, f.s, f.t)

    def is_totally_nonnegative(self) -> bool:
        """alpha >= 0 in the totally-positive order (zero allowed)."""
        return self.is_zero() or self.is_totally_positive()

    def succeq(self, other) -> bool:
        """self - other is totally positive or zero."""
        return (self - other).is_totally_nonnegative()

    def is_integral(self) -> bool:
        if self.den != 4:
            return False
        f = self.field
        return kern.integral4(self.a, self.b, self.c, self.d, f.q_index, f.basis_class.code)

    def approx(self, e: int = 1) -> float:
        """Floating-point value at embedding ``e``; for display only."""
        e1, e2, e3 = self.field.embedding_signs(e)
        m, s, t = self.field.radicands
        return (self.a + e1 * self.b * m ** 0.5 + e2 * self.c * s ** 0.5 + e3 * self.d * t ** 0.5) / self.den

    def to_json(self) -> str:
        return format_element(self)


# module-level forms of the element operations


def is_integral(x: AlgebraicNumber) -> bool:
    return x.is_integral()


def apply_embedding(x: AlgebraicNumber, e: int) -> AlgebraicNumber:
    return x.conjugate(e)


def trace(x: AlgebraicNumber) -> Fraction:
    return x.trace()


def norm(x: AlgebraicNumber) -> Fraction:
    return x.norm()


def sign_at(x: AlgebraicNumber, e: int) -> int:
    return x.sign_at(e)


def is_totally_positive(x: AlgebraicNumber) -> bool:
    return x.is_totally_positive()


def galois_orbit(x: AlgebraicNumber) -> list[AlgebraicNumber]:
    return [x.conjugate(e) for e in EMBEDDINGS]


# text form


def format_element(x: AlgebraicNumber) -> str:
    m, s, t = x.field.radicands
    parts = [str(x.a)]
    for coef, n in ((x.b, m), (x.c, s), (x.d, t)):
        sign = "-" if coef < 0 else "+"
        parts.append(f"{sign} {abs(coef)}*sqrt({n})")
    return f"({' '.join(parts)})/{x.den}"


def pretty(x: AlgebraicNumber) -> str:
    """Short human-readable form, e.g. ``5/2 + 1/2*sqrt(21)``."""
    out = []
    for coef, n in zip(x.rational_coords, (1,) + x.field.radicands):
        if coef == 0:
            continue
        mag = abs(coef)
        if n == 1:
            term = str(mag)
        elif mag == 1:
            term = f"sqrt({n})"
        else:
            term = f"{mag}*sqrt({n})"
        if not out:
            out.append(term if coef > 0 else "-" + term)
        else:
            out.append(("+ " if coef > 0 else "- ") + term)
    return " ".join(out) if out else "0"


_TOKEN = re.compile(r"\s*(?:(\d+)|(sqrt|√)|(.))")


def _tokenize(text: str) -> list[str]:
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None:
            break
        pos = mt.end()
        tok = mt.group(1) or mt.group(2) or mt.group(3)
        if tok is None or tok.isspace():
            continue
        out.append("sqrt" if tok == "√" else tok)
    return out


class _Parser:
    def __init__(self, field: FieldSpec, text: str):
        self.field = field
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def error(self, msg: str) -> ValueError:
        return ValueError(f"cannot parse {self.text!r}: {msg}")

    def peek(self) -> str | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, tok: str | None = None) -> str:
        cur = self.peek()
        if cur is None or (tok is not None and cur != tok):
            raise self.error(f"expected {tok or 'token'}")
        self.i += 1
        return cur

    def parse(self) -> AlgebraicNumber:
        val = self.expr()
        if self.peek() is not None:
            raise self.error(f"unexpected {self.peek()!r}")
        return val

    def expr(self) -> AlgebraicNumber:
        val = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self) -> AlgebraicNumber:
        val = self.factor()
        while True:
            nxt = self.peek()
            if nxt in ("*", "/"):
                op = self.take()
                rhs = self.factor()
                if op == "*":
                    val = val * rhs
                else:
                    if not rhs.is_rational() or rhs.is_zero():
                        raise self.error("division only by nonzero rationals")
                    val = val / Fraction(rhs.a, rhs.den)
            elif nxt == "sqrt" or nxt == "(":
                val = val * self.factor()  # implicit product, e.g. 3sqrt(5)
            else:
                return val

    def factor(self) -> AlgebraicNumber:
        tok = self.peek()
        if tok == "-":
            self.take()
            return -self.factor()
        if tok == "+":
            self.take()
            return self.factor()
        if tok == "(":
            self.take()
            val = self.expr()
            self.take(")")
            return val
        if tok == "sqrt":
            self.take()
            if self.peek() != "(":  # bare form such as √10
                return self.root(int(self.take()))
            self.take("(")
            n = int(self.take())
            self.take(")")
            return self.root(n)
        if tok is not None and tok.isdigit():
            self.take()
            return self.field.from_int(int(tok))
        raise self.error(f"unexpected {tok!r}")

    def root(self, k: int) -> AlgebraicNumber:
        r = isqrt(k)
        if r * r == k:
            return self.field.from_int(r)
        for n in self.field.radicands:
            if k % n == 0:
                j = isqrt(k // n)
                if j * j * n == k:
                    return self.field.sqrt(n) * j
        raise FieldMismatch(f"sqrt({k}) is not in {self.field}")


def parse_element(field: FieldSpec, text: str) -> AlgebraicNumber:
    """Read an element such as ``(5 + 1*sqrt(21))/2`` or ``2 + sqrt(2)``."""
    return _Parser(field, text).parse()


def iter_integers(field: FieldSpec, trace_sq_bound: Fraction | int, within: int | None = None,
                  canonical_sign: bool = False) -> Iterator[AlgebraicNumber]:
    """All algebraic integers x with trace(x*x) <= trace_sq_bound.

    trace(x*x) = (a^2 + b^2 m + c^2 s + d^2 t)/4 for x = (a, b, c, d)/4.
    ``within`` restricts to the quadratic subfield Q(sqrt within).  With
    ``canonical_sign`` only one of x, -x is produced.
    """
    m, s, t = field.radicands
    bound = int(Fraction(trace_sq_bound) * 4)
    if bound < 0:
        return
    allow = (True, True, True)
    if within is not None:
        i = field.index_of(within)
        allow = tuple(j == i for j in (1, 2, 3))
    qi, cls = field.q_index, field.basis_class.code
    amax = isqrt(bound)
    for a in range(-amax, amax + 1):
        ra = bound - a * a
        bm = isqrt(ra // m) if allow[0] else 0
        for b in range(-bm, bm + 1):
            rb = ra - b * b * m
            cm = isqrt(rb // s) if allow[1] else 0
            for c in range(-cm, cm + 1):
                rc = rb - c * c * s
                dm = isqrt(rc // t) if allow[2] else 0
                for d in range(-dm, dm + 1):
                    if canonical_sign:
                        lead = next((v for v in (a, b, c, d) if v), 0)
                        if lead < 0:
                            continue
                    if kern.integral4(a, b, c, d, qi, cls):
                        yield AlgebraicNumber(field, a, b, c, d, 4)

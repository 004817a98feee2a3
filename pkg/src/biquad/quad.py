"""Quadratic subfields Q(sqrt n): continued fractions, units and indecomposables."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .errors import FieldMismatch, NotSquarefree, VariantUndefined
from .field import AlgebraicNumber, FieldSpec, is_squarefree


class QuadraticNumber:
    """(a + b*sqrt(n)) / 2."""

    __slots__ = ("n", "a", "b")

    def __init__(self, n: int, a: int, b: int):
        self.n = n
        self.a = a
        self.b = b

    @classmethod
    def from_parts(cls, n: int, x: Fraction | int, y: Fraction | int) -> QuadraticNumber:
        """x + y*sqrt(n) with half-integral x, y."""
        a, b = Fraction(x) * 2, Fraction(y) * 2
        if a.denominator != 1 or b.denominator != 1:
            raise ValueError("coefficients must be half-integers")
        return cls(n, int(a), int(b))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QuadraticNumber):
            return NotImplemented
        return (self.n, self.a, self.b) == (other.n, other.a, other.b)

    def __hash__(self) -> int:
        return hash((self.n, self.a, self.b))

    def __add__(self, other: QuadraticNumber) -> QuadraticNumber:
        return QuadraticNumber(self.n, self.a + other.a, self.b + other.b)

    def __sub__(self, other: QuadraticNumber) -> QuadraticNumber:
        return QuadraticNumber(self.n, self.a - other.a, self.b - other.b)

    def __mul__(self, other):
        if isinstance(other, int):
            return QuadraticNumber(self.n, self.a * other, self.b * other)
        a = self.a * other.a + self.n * self.b * other.b
        b = self.a * other.b + self.b * other.a
        # (a + b sqrt n)/4 -> halve
        if a % 2 or b % 2:
            raise ValueError("product leaves the half-integers")
        return QuadraticNumber(self.n, a // 2, b // 2)

    __rmul__ = __mul__

    def conjugate(self) -> QuadraticNumber:
        return QuadraticNumber(self.n, self.a, -self.b)

    def trace(self) -> int:
        return self.a

    def norm(self) -> Fraction:
        return Fraction(self.a * self.a - self.n * self.b * self.b, 4)

    def is_integral(self) -> bool:
        if self.n % 4 == 1:
            return (self.a - self.b) % 2 == 0
        return self.a % 2 == 0 and self.b % 2 == 0

    def is_totally_positive(self) -> bool:
        # a > |b| sqrt(n)
        return self.a > 0 and self.a * self.a > self.n * self.b * self.b

    def sort_key(self) -> tuple[int, int]:
        return (self.a, self.b)

    def to_field(self, f: FieldSpec) -> AlgebraicNumber:
        coords = [2 * self.a, 0, 0, 0]
        if self.b:
            coords[f.index_of(self.n)] = 2 * self.b
        return AlgebraicNumber(f, *coords, 4)

    def __str__(self) -> str:
        x, y = Fraction(self.a, 2), Fraction(self.b, 2)
        if y == 0:
            return str(x)
        sign = "+" if y > 0 else "-"
        mag = abs(y)
        root = f"sqrt({self.n})" if mag == 1 else f"{mag}*sqrt({self.n})"
        return f"{x} {sign} {root}" if x else (root if y > 0 else "-" + root)

    __repr__ = __str__


def omega(n: int) -> QuadraticNumber:
    """Generator of the ring of integers: sqrt(n), or (1 + sqrt(n))/2 when n = 1 mod 4."""
    if n % 4 == 1:
        return QuadraticNumber(n, 1, 1)
    return QuadraticNumber(n, 0, 2)


def _floor_surd(P: int, Q: int, D: int) -> int:
    """floor((P + sqrt(D)) / Q) for non-square D."""
    r = isqrt(D)
    if Q > 0:
        return (P + r) // Q
    return -((P + r) // (-Q)) - 1


def periodic_cf(P: int, Q: int, D: int) -> tuple[list[int], list[int]]:
    """Continued fraction of (P + sqrt(D))/Q as (preperiod, period).

    Needs Q | D - P*P.  The expansion is periodic because the surd is quadratic;
    the period is found when a state (P, Q) repeats.
    """
    if (D - P * P) % Q:
        raise ValueError("Q must divide D - P^2")
    seen: dict[tuple[int, int], int] = {}
    terms: list[int] = []
    while (P, Q) not in seen:
        seen[(P, Q)] = len(terms)
        u = _floor_surd(P, Q, D)
        terms.append(u)
        P = u * Q - P
        Q = (D - P * P) // Q
    start = seen[(P, Q)]
    return terms[:start], terms[start:]


@dataclass(frozen=True)
class Semiconvergent:
    i: int
    k: int
    element: QuadraticNumber


@dataclass(frozen=True)
class QuadData:
    n: int
    omega: QuadraticNumber
    preperiod: tuple[int, ...]
    period: tuple[int, ...]
    fundamental_unit: QuadraticNumber
    unit_norm: int
    Mk: int

    def u(self, i: int) -> int:
        """i-th partial quotient of the expansion of -conj(omega)."""
        if i < len(self.preperiod):
            return self.preperiod[i]
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    def convergent(self, i: int) -> QuadraticNumber:
        p, q = _pq(self, i)
        return _alpha(self.n, p, q)

    def convergents(self, count: int) -> list[QuadraticNumber]:
        """alpha_{-1}, alpha_0, ..., alpha_{count-2}."""
        out = []
        p0, q0, p1, q1 = 1, 0, self.u(0), 1
        out.append(_alpha(self.n, p0, q0))
        i = 0
        while len(out) < count:
            out.append(_alpha(self.n, p1, q1))
            i += 1
            p0, q0, p1, q1 = p1, q1, p0 + self.u(i) * p1, q0 + self.u(i) * q1
        return out

    def semiconvergent(self, i: int, k: int) -> QuadraticNumber:
        """alpha_{i,k} = alpha_i + k * alpha_{i+1}."""
        return self.convergent(i) + self.convergent(i + 1) * k

    def semiconvergents(self, trace_bound: int) -> list[Semiconvergent]:
        """alpha_{i,k} for odd i >= -1 and 0 <= k <= u_{i+2}, up to the trace bound."""
        out = []
        i = -1
        while True:
            base = self.convergent(i)
            if base.trace() > trace_bound:
                return out
            nxt = self.convergent(i + 1)
            for k in range(self.u(i + 2) + 1):
                x = base + nxt * k
                if x.trace() > trace_bound:
                    break
                out.append(Semiconvergent(i, k, x))
            i += 2


def _pq(data: QuadData, i: int) -> tuple[int, int]:
    if i == -1:
        return 1, 0
    p0, q0, p1, q1 = 1, 0, data.u(0), 1
    for j in range(1, i + 1):
        p0, q0, p1, q1 = p1, q1, p0 + data.u(j) * p1, q0 + data.u(j) * q1
    return p1, q1


def _alpha(n: int, p: int, q: int) -> QuadraticNumber:
    # p + q*omega
    if n % 4 == 1:
        return QuadraticNumber(n, 2 * p + q, q)
    return QuadraticNumber(n, 2 * p, 2 * q)


def _check_n(n: int) -> None:
    if n < 2 or not is_squarefree(n):
        raise NotSquarefree(f"{n} is not a square-free integer >= 2")


@lru_cache(maxsize=None)
def quad_data(n: int) -> QuadData:
    """Continued fraction of -conj(omega_n), fundamental unit and M_n."""
    _check_n(n)
    if n % 4 == 1:
        pre, per = periodic_cf(-1, 2, n)  # (sqrt(n) - 1)/2
    else:
        pre, per = periodic_cf(0, 1, n)  # sqrt(n)
    partial = QuadData(n, omega(n), tuple(pre), tuple(per), QuadraticNumber(n, 2, 0), 1, 0)
    # first convergent of norm +-1 is the fundamental unit
    p0, q0, p1, q1 = 1, 0, partial.u(0), 1
    i = 0
    while True:
        unit = _alpha(n, p1, q1)
        nm = unit.norm()
        if nm in (1, -1):
            break
        i += 1
        p0, q0, p1, q1 = p1, q1, p0 + partial.u(i) * p1, q0 + partial.u(i) * q1
    # max over odd indices of the infinite sequence: two periods cover both parities
    span = len(pre) + 2 * len(per) + 1
    Mk = max(partial.u(j) for j in range(1, span) if j % 2 == 1)
    return QuadData(n, omega(n), tuple(pre), tuple(per), unit, int(nm), Mk)


def fundamental_unit(n: int) -> QuadraticNumber:
    return quad_data(n).fundamental_unit


def quadratic_indecomposables(n: int, trace_bound: int) -> list[QuadraticNumber]:
    """Indecomposable totally positive integers of Q(sqrt n) with trace <= bound.

    These are the semiconvergents alpha_{i,k} (i odd) and their conjugates.
    """
    data = quad_data(n)
    found = set()
    for sc in data.semiconvergents(trace_bound):
        found.add(sc.element)
        found.add(sc.element.conjugate())
    return sorted(found, key=QuadraticNumber.sort_key)


def _nagell_search(n: int, c: int) -> bool:
    """Does x^2 - n y^2 = c have an integer solution?  Direct search over the
    classical bounds for fundamental solutions."""
    eps = quad_data(n).fundamental_unit
    # smallest unit of norm +1 in Z[sqrt n], as x1 + y1 sqrt(n)
    u = eps
    while True:
        if u.norm() == 1 and u.a % 2 == 0 and u.b % 2 == 0:
            break
        u = u * eps
    x1, y1 = u.a // 2, u.b // 2
    if c > 0:
        ymax = isqrt(-(-(c * y1 * y1) // (2 * (x1 + 1)))) + 1
        ymin = 0
    else:
        ymax = isqrt(-(-(-c * y1 * y1) // (2 * (x1 - 1)))) + 1
        ymin = isqrt(-c // n)
    for y in range(ymin, ymax + 1):
        v = c + n * y * y
        if v >= 0:
            x = isqrt(v)
            if x * x == v:
                return True
    return False


def pell_solvable(n: int, rhs: int) -> bool:
    """Is x^2 - n*y^2 = rhs solvable in integers, for rhs in {-1, 2, -2}?

    For |rhs| < sqrt(n) every primitive solution shows up as a convergent of
    sqrt(n), and one full period of convergents suffices.
    """
    if rhs not in (-1, 2, -2):
        raise ValueError("rhs must be -1, 2 or -2")
    _check_n(n)
    if rhs * rhs >= n:
        return _nagell_search(n, rhs)
    pre, per = periodic_cf(0, 1, n)
    if rhs == -1:
        return len(per) % 2 == 1
    terms = list(pre) + list(per) * 2
    p0, q0, p1, q1 = 1, 0, terms[0], 1
    for u in terms[1:]:
        if p1 * p1 - n * q1 * q1 == rhs:
            return True
        p0, q0, p1, q1 = p1, q1, p0 + u * p1, q0 + u * q1
    return p1 * p1 - n * q1 * q1 == rhs


# distinguished elements


def ceil_sqrt(u: int) -> int:
    """Smallest integer above sqrt(u) (u not a square)."""
    return isqrt(u) + 1


def ceil_sqrt_odd(u: int) -> int:
    """Smallest odd integer above sqrt(u)."""
    c = isqrt(u) + 1
    return c if c % 2 else c + 1


def element_U(f: FieldSpec, u: int, variant: str | None = None) -> AlgebraicNumber:
    """The small totally positive element attached to sqrt(u).

    ``variant=None`` picks ceil(sqrt u) + sqrt u for u = 2, 3 mod 4 and
    (odd ceiling + sqrt u)/2 for u = 1 mod 4.  ``"1"`` forces the first
    form and ``"half"`` the second.
    """
    if u not in f.radicands:
        raise FieldMismatch(f"sqrt({u}) is not in {f}")
    if variant is None:
        variant = "half" if u % 4 == 1 else "1"
    if variant == "half":
        if u % 4 != 1:
            raise VariantUndefined(f"the half variant needs {u} = 1 mod 4")
        return (f.from_int(ceil_sqrt_odd(u)) + f.sqrt(u)) / 2
    if variant == "1":
        return f.from_int(ceil_sqrt(u)) + f.sqrt(u)
    raise ValueError(f"unknown variant {variant!r}")


def element_M(f: FieldSpec) -> AlgebraicNumber:
    return element_U(f, f.m)


def element_S(f: FieldSpec) -> AlgebraicNumber:
    return element_U(f, f.s)


def element_T(f: FieldSpec) -> AlgebraicNumber:
    return element_U(f, f.t)


def element_M1(f: FieldSpec) -> AlgebraicNumber:
    return element_U(f, f.m, "1")


def element_Mhalf(f: FieldSpec) -> AlgebraicNumber:
    return element_U(f, f.m, "half")


def _is_convergent(data: QuadData, x: QuadraticNumber) -> bool:
    target = {x, x.conjugate()}
    i = -1
    while True:
        c = data.convergent(i)
        if c in target:
            return True
        if c.trace() > abs(x.trace()):
            return False
        i += 1


def theorem22_criterion(f: FieldSpec, which: str, elem: QuadraticNumber) -> bool:
    """Sufficient test that an indecomposable of Q(sqrt p), Q(sqrt q) or
    Q(sqrt r) stays indecomposable in K.

    ``which`` is "p", "q" or "r".  A False answer means "not certified",
    not "decomposes".
    """
    p, q, r = f.p, f.q, f.r
    n = {"p": p, "q": q, "r": r}[which]
    if elem.n != n:
        raise FieldMismatch(f"element lives in Q(sqrt({elem.n})), expected Q(sqrt({n}))")
    data = quad_data(n)
    M = data.Mk
    if which == "p":
        return (r > p and _is_convergent(data, elem)) or r > M * M * p
    if which == "q":
        if f.basis_class.value in ("B1", "B2", "B3"):
            return True
        return (r > q and _is_convergent(data, elem)) or r > M * M * q
    return (p > r and _is_convergent(data, elem)) or p > M * M * r

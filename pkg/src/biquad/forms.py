"""Quadratic forms over the ring of integers and the escalation search."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product
from math import isqrt

from . import _backend as kern
from ._data import load
from .decompose import square_roots_under
from .errors import BudgetExceeded, FieldMismatch, NoRecipe
from .field import EMBEDDINGS, AlgebraicNumber, FieldSpec, iter_integers
from .quad import element_M, element_M1, element_S
from .units import CASE_I, CASE_II, unit_report

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class FormMatrix:
    """Symmetric Gram matrix; the form is Q(v) = v^T G v."""

    entries: tuple[tuple[AlgebraicNumber, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        for i in range(n):
            if len(self.entries[i]) != n:
                raise ValueError("Gram matrix must be square")
            for j in range(i):
                if self.entries[i][j] != self.entries[j][i]:
                    raise ValueError("Gram matrix must be symmetric")

    @classmethod
    def from_rows(cls, rows) -> FormMatrix:
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def diagonal(cls, diag) -> FormMatrix:
        diag = list(diag)
        zero = diag[0].field.zero()
        return cls(tuple(tuple(diag[i] if i == j else zero for j in range(len(diag)))
                         for i in range(len(diag))))

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def field(self) -> FieldSpec:
        return self.entries[0][0].field

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def minor(self, k: int) -> FormMatrix:
        """Leading k x k block."""
        return FormMatrix(tuple(row[:k] for row in self.entries[:k]))

    def det(self) -> AlgebraicNumber:
        return _det([list(r) for r in self.entries])

    def is_classical(self) -> bool:
        return all(x.is_integral() for row in self.entries for x in row)

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.entries]


def _det(rows: list[list[AlgebraicNumber]]) -> AlgebraicNumber:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = rows[0][0].field.zero()
    for j in range(n):
        if rows[0][j].is_zero():
            continue
        sub = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _det(sub)
        total = total + term if j % 2 == 0 else total - term
    return total


def det(Q: FormMatrix) -> AlgebraicNumber:
    return Q.det()


def evaluate(Q: FormMatrix, v) -> AlgebraicNumber:
    v = list(v)
    if len(v) != Q.n:
        raise ValueError("vector length does not match the form")
    f = Q.field
    total = f.zero()
    for i in range(Q.n):
        if v[i].is_zero():
            continue
        row = f.zero()
        for j in range(Q.n):
            row = row + Q.entries[i][j] * v[j]
        total = total + v[i] * row
    return total


def is_tp_definite(Q: FormMatrix) -> bool:
    """Positive definite at every real embedding (all leading minors totally positive)."""
    return all(Q.minor(k).det().is_totally_positive() for k in range(1, Q.n + 1))


# representation search


def _interval(x: AlgebraicNumber, e: int, bits: int = 64) -> tuple[Fraction, Fraction]:
    """Rational enclosure of sigma_e(x)."""
    e1, e2, e3 = x.field.embedding_signs(e)
    lo = hi = Fraction(x.a)
    for coef, n in ((e1 * x.b, x.field.m), (e2 * x.c, x.field.s), (e3 * x.d, x.field.t)):
        if coef:
            r = isqrt(n << (2 * bits))
            a, b = Fraction(coef * r, 1 << bits), Fraction(coef * (r + 1), 1 << bits)
            lo += min(a, b)
            hi += max(a, b)
    return lo / x.den, hi / x.den


def _lambda_min_lower(Q: FormMatrix, e: int) -> Fraction:
    """Lower bound for the smallest eigenvalue of sigma_e(Q): det / trace^(n-1)."""
    d_lo, _ = _interval(Q.det(), e)
    tr_hi = sum((_interval(Q.entries[i][i], e)[1] for i in range(Q.n)), Fraction(0))
    if d_lo <= 0 or tr_hi <= 0:
        raise ValueError("form is not totally positive definite")
    return d_lo / tr_hi ** (Q.n - 1)


def representation_bound(Q: FormMatrix, target: AlgebraicNumber) -> Fraction:
    """Upper bound for sum_i trace(v_i^2) over vectors with Q(v) = target."""
    total = Fraction(0)
    for e in EMBEDDINGS:
        _, t_hi = _interval(target, e)
        total += max(t_hi, Fraction(0)) / _lambda_min_lower(Q, e)
    return total


def representations(Q: FormMatrix, target: AlgebraicNumber, within: int | None = None,
                    budget: int = 10**7) -> list[tuple[AlgebraicNumber, ...]]:
    """Every integral vector v with Q(v) = target.

    ``within`` restricts the coordinates to the quadratic subfield
    Q(sqrt within), which answers the question over that subfield's ring.
    """
    if target.field != Q.field:
        raise FieldMismatch("target and form live in different fields")
    if not is_tp_definite(Q):
        raise ValueError("form is not totally positive definite")
    if not target.is_totally_nonnegative():
        return []
    bound = representation_bound(Q, target)
    pool = [(x, (x * x).trace()) for x in iter_integers(Q.field, bound, within)]
    pool.sort(key=lambda p: p[1])
    found = []
    examined = 0

    def rec(prefix: list[AlgebraicNumber], used: Fraction) -> None:
        nonlocal examined
        if len(prefix) == Q.n:
            examined += 1
            if examined > budget:
                raise BudgetExceeded("representation search exceeded its budget", examined)
            if evaluate(Q, prefix) == target:
                found.append(tuple(prefix))
            return
        for x, tr in pool:
            if used + tr > bound:
                break
            prefix.append(x)
            rec(prefix, used + tr)
            prefix.pop()

    rec([], Fraction(0))
    found.sort(key=lambda v: tuple(x.sort_key() for x in v))
    return found


def represents(Q: FormMatrix, target: AlgebraicNumber, within: int | None = None,
               budget: int = 10**7) -> tuple[AlgebraicNumber, ...] | None:
    """A vector v with Q(v) = target, or None when the bounded region has none."""
    reps = representations(Q, target, within, budget)
    return reps[0] if reps else None


# escalation


def rho_candidates(li: AlgebraicNumber, lj: AlgebraicNumber) -> list[AlgebraicNumber]:
    """All integers rho with rho^2 <= li*lj, sorted."""
    return square_roots_under(li * lj)


@dataclass(frozen=True)
class NoSingularMatrix:
    kind: str = "NoSingularMatrix"


@dataclass(frozen=True)
class SingularWitness:
    matrix: FormMatrix
    kind: str = "SingularWitness"


@dataclass(frozen=True)
class BudgetStop:
    examined: int
    kind: str = "BudgetExceeded"


Verdict = NoSingularMatrix | SingularWitness | BudgetStop

PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


@dataclass(frozen=True)
class EscalationRun:
    field: FieldSpec
    diagonal: tuple[AlgebraicNumber, ...]
    rho_sets: dict[tuple[int, int], list[AlgebraicNumber]]
    candidates_examined: int
    verdict: Verdict
    total_candidates: int = 0
    notes: list[str] = dc_field(default_factory=list)


def escalate_quadruple(f: FieldSpec, diag, budget: int = DEFAULT_BUDGET) -> EscalationRun:
    """Check every symmetric 4x4 integral matrix with diagonal ``diag`` whose
    off-diagonal entries satisfy rho_ij^2 <= l_i l_j, looking for det = 0."""
    diag = tuple(diag)
    if len(diag) != 4:
        raise ValueError("need four diagonal entries")
    for x in diag:
        if x.field != f:
            raise FieldMismatch(f"{x} is not in {f}")
        if not x.is_integral() or not x.is_totally_positive():
            raise ValueError(f"diagonal entry {x} must be a totally positive integer")
    rho_sets = {}
    for i, j in PAIRS:
        rho_sets[(i + 1, j + 1)] = rho_candidates(diag[i], diag[j])
    lists = [rho_sets[(i + 1, j + 1)] for i, j in PAIRS]
    total = 1
    for lst in lists:
        total *= len(lst)
    examined, witness, exhausted = kern.escalate_core(
        [x.coords for x in diag], [[x.coords for x in lst] for lst in lists],
        f.m, f.s, f.t, budget)
    if witness is not None:
        entries = [[None] * 4 for _ in range(4)]
        for k in range(4):
            entries[k][k] = diag[k]
        for (i, j), idx, lst in zip(PAIRS, witness, lists):
            entries[i][j] = entries[j][i] = lst[idx]
        mat = FormMatrix.from_rows(entries)
        assert mat.det().is_zero()
        verdict: Verdict = SingularWitness(mat)
    elif not exhausted:
        verdict = BudgetStop(examined)
    else:
        verdict = NoSingularMatrix()
    return EscalationRun(f, diag, rho_sets, examined, verdict, total)


def escalate_naive(f: FieldSpec, diag, rho_sets=None) -> tuple[int, FormMatrix | None]:
    """Reference escalation by full cofactor determinants (small inputs only)."""
    diag = tuple(diag)
    if rho_sets is None:
        rho_sets = {(i + 1, j + 1): rho_candidates(diag[i], diag[j]) for i, j in PAIRS}
    lists = [rho_sets[(i + 1, j + 1)] for i, j in PAIRS]
    count = 0
    for choice in product(*lists):
        count += 1
        entries = [[None] * 4 for _ in range(4)]
        for k in range(4):
            entries[k][k] = diag[k]
        for (i, j), rho in zip(PAIRS, choice):
            entries[i][j] = entries[j][i] = rho
        mat = FormMatrix.from_rows(entries)
        if mat.det().is_zero():
            return count, mat
    return count, None


# choice of diagonal


def _table1() -> dict[tuple[int, int], tuple[str, ...]]:
    rows = load("table1")["rows"]
    return {tuple(r["field"]): tuple(r["diagonal"]) for r in rows}


TABLE1 = _table1()


def table1_diagonal(f: FieldSpec) -> tuple[AlgebraicNumber, ...]:
    return tuple(f.parse(x) for x in TABLE1[f.key])


# branch tags
TAG_TABLE = "table"
TAG_M2 = "m2-family"
TAG_M5 = "m5-family"
TAG_CASE_I = "case-i"
TAG_CASE_II_NONSQ = "case-ii-2eps-nonsquare"
TAG_CASE_II_SQ = "case-ii-2eps-square"
TAG_M65 = "case-iii-m65"
TAG_M85 = "case-iii-m85"
TAG_GENERIC = "case-iii-generic"

# branches whose diagonal must pass the escalation search
ESCALATION_TAGS = {TAG_TABLE, TAG_M2, TAG_M5, TAG_M65, TAG_M85, TAG_GENERIC}
# escalation here only supports the argument; a singular matrix is inconclusive
INCONCLUSIVE_TAGS = {TAG_M65, TAG_M85, TAG_GENERIC}

_M5_UNIT_FIELDS = {6, 21, 33}
_UNIT_ONLY_M = {3, 6, 7, 21, 33}


def element_A65(f: FieldSpec) -> AlgebraicNumber:
    return f.parse("(25 + 3*sqrt(65))/2")


def witness_quadruple(f: FieldSpec) -> tuple[tuple[AlgebraicNumber, ...], str]:
    """Four totally positive integers whose diagonal form certifies that K has
    no universal classical form, with a tag naming the branch used."""
    if f.key in TABLE1:
        return table1_diagonal(f), TAG_TABLE
    one = f.one()
    if f.m == 2:
        return (one, f.parse("2 + sqrt(2)"), f.from_int(3), element_S(f)), TAG_M2
    if f.m == 5 and f.s not in _M5_UNIT_FIELDS:
        return (one, f.from_int(2), f.parse("6 + sqrt(5)"), element_S(f)), TAG_M5
    rep = unit_report(f)
    if rep.case == CASE_I:
        u, v = rep.witness_units
        eu, ev = rep.products[u], rep.products[v]
        return (one, eu, ev, eu * ev), TAG_CASE_I
    if rep.case == CASE_II:
        eps = rep.products[rep.witness_units[0]]
        if not rep.two_eps_is_square:
            return (one, eps, f.from_int(2), eps * 2), TAG_CASE_II_NONSQ
        z = element_S(f) if f.m in (3, 5) else element_M(f)
        return (one, eps, z, eps * z), TAG_CASE_II_SQ
    if f.m in _UNIT_ONLY_M or f.m == 5:
        raise NoRecipe(f"no totally positive nonsquare unit found for {f}")
    two, five = f.from_int(2), f.from_int(5)
    if f.m == 65:
        return (one, two, five, element_A65(f)), TAG_M65
    if f.m == 85:
        return (one, two, five, element_M1(f)), TAG_M85
    return (one, two, five, element_M(f)), TAG_GENERIC

from decimal import Decimal, getcontext
from math import isqrt

import pytest

from biquad import classify_field
from biquad.decompose import is_indecomposable
from biquad.errors import FieldMismatch, NotSquarefree, VariantUndefined
from biquad.field import squarefree_upto
from biquad.quad import (QuadraticNumber, element_M, element_M1, element_Mhalf, element_S, element_T,
                         element_U, fundamental_unit, omega, pell_solvable, periodic_cf, quad_data,
                         quadratic_indecomposables, theorem22_criterion)

from oracles import pell_oracle, smallest_unit

SQF = squarefree_upto(200)


def _cf_decimal(x: Decimal, count: int) -> list[int]:
    out = []
    for _ in range(count):
        u = int(x)
        out.append(u)
        x = 1 / (x - u)
    return out


@pytest.mark.parametrize("n", [2, 3, 5, 7, 13, 19, 21, 46, 61, 94, 109, 199])
def test_expansion_against_high_precision(n):
    getcontext().prec = 120
    r = Decimal(n).sqrt()
    x = (r - 1) / 2 if n % 4 == 1 else r  # -conj(omega)
    data = quad_data(n)
    want = _cf_decimal(x, 25)
    assert [data.u(i) for i in range(25)] == want


def test_known_expansions():
    assert periodic_cf(0, 1, 7) == ([2], [1, 1, 1, 4])
    assert periodic_cf(0, 1, 13) == ([3], [1, 1, 1, 1, 6])
    with pytest.raises(ValueError):
        periodic_cf(1, 4, 7)


def test_units_named_in_text():
    assert fundamental_unit(2) == QuadraticNumber.from_parts(2, 1, 1)
    assert fundamental_unit(13) == QuadraticNumber(13, 3, 1)
    assert fundamental_unit(94) == QuadraticNumber.from_parts(94, 2143295, 221064)
    assert quad_data(94).unit_norm == 1


@pytest.mark.parametrize("n", [n for n in SQF if n <= 150])
def test_fundamental_unit_by_search(n):
    found = smallest_unit(n, 10**6)
    if found is None:
        pytest.skip("unit too large for the linear search")
    x, y, nm = found
    eps = fundamental_unit(n)
    assert (eps.a, eps.b) == (x, y)
    assert quad_data(n).unit_norm == nm == eps.norm()


@pytest.mark.parametrize("n", SQF)
def test_pell_against_search(n):
    for c in (-1, 2, -2):
        want = pell_oracle(n, c, 2 * 10**5)
        if want is None:
            continue
        assert pell_solvable(n, c) == want, (n, c)


def test_pell_rejects_other_rhs():
    with pytest.raises(ValueError):
        pell_solvable(7, 3)
    with pytest.raises(NotSquarefree):
        pell_solvable(8, -1)


@pytest.mark.parametrize("n", [2, 3, 5, 6, 7, 10, 13, 14, 17, 21, 23, 29, 31, 33, 46])
def test_mk_is_max_over_odd_indices(n):
    data = quad_data(n)
    long = max(data.u(i) for i in range(1, 400, 2))
    assert data.Mk == long


def _tp_integers(n: int, bound: int):
    """Totally positive integers of Q(sqrt n) with trace <= bound."""
    out = []
    for a in range(1, bound + 1):
        for b in range(-isqrt(a * a // n) - 1, isqrt(a * a // n) + 2):
            x = QuadraticNumber(n, a, b)
            if x.is_integral() and x.is_totally_positive():
                out.append(x)
    return out


@pytest.mark.parametrize("n", [2, 3, 5, 6, 7, 10, 11, 13, 15, 17, 19, 21])
def test_quadratic_indecomposables_by_brute_force(n):
    bound = 30
    tp = _tp_integers(n, bound)
    tp_set = set(tp)
    brute = []
    for x in tp:
        if not any((x - y) in tp_set for y in tp if y.a < x.a):
            brute.append(x)
    got = quadratic_indecomposables(n, bound)
    assert sorted(brute, key=QuadraticNumber.sort_key) == got


def test_indecomposables_of_sqrt10():
    got = {str(x) for x in quadratic_indecomposables(10, 20)}
    assert got == {"1", "4 + sqrt(10)", "4 - sqrt(10)", "7 + 2*sqrt(10)", "7 - 2*sqrt(10)",
                   "10 + 3*sqrt(10)", "10 - 3*sqrt(10)"}


def test_convergents_and_semiconvergents():
    data = quad_data(10)
    assert data.convergent(-1) == QuadraticNumber(10, 2, 0)
    # alpha_{i+1} = u_{i+1} alpha_i + alpha_{i-1}
    for i in range(0, 8):
        assert data.convergent(i + 1) == data.convergent(i) * data.u(i + 1) + data.convergent(i - 1)
    assert data.convergents(5) == [data.convergent(i) for i in range(-1, 4)]
    sc = data.semiconvergents(60)
    assert all(s.element.is_totally_positive() for s in sc)


def test_omega():
    assert omega(5) == QuadraticNumber(5, 1, 1)
    assert omega(6) == QuadraticNumber(6, 0, 2)


def test_distinguished_elements():
    f = classify_field(2, 3)
    assert element_M(f) == f.parse("2 + sqrt(2)")
    assert element_S(f) == f.parse("2 + sqrt(3)")
    assert element_T(f) == f.parse("3 + sqrt(6)")
    g = classify_field(5, 13)
    assert element_M(g) == g.parse("(3 + sqrt(5))/2")
    assert element_S(g) == g.parse("(5 + sqrt(13))/2")
    assert element_T(g) == g.parse("(9 + sqrt(65))/2")
    assert element_M1(g) == g.parse("3 + sqrt(5)")
    assert element_Mhalf(g) == element_M(g)
    with pytest.raises(VariantUndefined):
        element_Mhalf(f)
    with pytest.raises(FieldMismatch):
        element_U(f, 5)
    for x in (element_M(g), element_S(g), element_T(g), element_M1(g)):
        assert x.is_integral() and x.is_totally_positive()


@pytest.mark.parametrize("key", [(2, 3), (2, 5), (3, 7), (5, 13), (6, 7), (7, 11), (10, 13), (5, 21)])
def test_criterion_is_sound(key):
    # whenever the criterion certifies an indecomposable, it really is one in K
    f = classify_field(key[0], key[1])
    for which, n in (("p", f.p), ("q", f.q), ("r", f.r)):
        for x in quadratic_indecomposables(n, 24):
            if theorem22_criterion(f, which, x):
                assert is_indecomposable(x.to_field(f)), (f, which, x)


def test_criterion_checks_subfield():
    f = classify_field(2, 3)
    with pytest.raises(FieldMismatch):
        theorem22_criterion(f, "p", QuadraticNumber(7, 2, 0))

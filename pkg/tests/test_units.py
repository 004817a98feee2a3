import random

import pytest

from biquad import classify_field
from biquad.decompose import sqrt_by_trace_search, sqrt_in_ring
from biquad.field import all_fields
from biquad.quad import pell_solvable, quad_data
from biquad.units import (CASE_I, CASE_II, CASE_III, PRODUCT_CLASSES, fundamental_units,
                          quadratic_unit_square_filter, two_eps_square, unit_report)


def test_cases_named_in_text():
    assert unit_report(classify_field(3, 910)).case == CASE_I
    assert unit_report(classify_field(21, 55)).case == CASE_I


def test_eps3_square_only_with_sqrt2():
    f = classify_field(2, 3)
    rep = unit_report(f)
    assert rep.eps["eps_s"] == f.parse("2 + sqrt(3)")
    assert rep.square_in_K["eps_s"]
    g = classify_field(3, 7)
    rep = unit_report(g)
    assert rep.totally_positive["eps_m"] and not rep.square_in_K["eps_m"]
    assert rep.case in (CASE_I, CASE_II)


def test_two_eps3_is_square():
    for s in (7, 11, 13, 2):
        f = classify_field(3, s)
        eps3 = f.parse("2 + sqrt(3)")
        assert two_eps_square(f, eps3)
        assert sqrt_in_ring(eps3 * 2) in (f.parse("1 + sqrt(3)"), f.parse("-1 - sqrt(3)"))


def test_two_eps_preconditions():
    f = classify_field(2, 3)
    with pytest.raises(ValueError):
        two_eps_square(f, f.parse("1 + sqrt(2)"))  # norm -1, mixed signs
    with pytest.raises(ValueError):
        two_eps_square(f, f.parse("3 + sqrt(2)"))  # not a unit
    with pytest.raises(ValueError):
        two_eps_square(f, classify_field(2, 5).parse("1"))


def _fields(seed, count, tmax=400):
    rng = random.Random(seed)
    return rng.sample(all_fields(tmax), count)


@pytest.mark.parametrize("f", _fields(1, 40), ids=lambda f: f"{f.m}-{f.s}")
def test_report_invariants(f):
    rep = unit_report(f)
    vec = dict(PRODUCT_CLASSES)
    for name, u in rep.products.items():
        assert abs(u.norm()) == 1 and u.is_integral()
        assert rep.totally_positive[name] == all(u.sign_at(e) > 0 for e in (1, 2, 3, 4))
    # squares and totally positive classes are closed under products mod 2
    for a in vec:
        for b in vec:
            if a == b:
                continue
            c = next((n for n, v in vec.items() if v == tuple((x + y) % 2 for x, y in zip(vec[a], vec[b]))), None)
            if rep.square_in_K[a] and rep.square_in_K[b]:
                assert rep.square_in_K[c]
            if rep.totally_positive[a] and rep.totally_positive[b]:
                assert rep.totally_positive[c]
    nonsq = [n for n in vec if rep.totally_positive[n] and not rep.square_in_K[n]]
    if rep.case == CASE_I:
        u, v = rep.witness_units
        w = next(n for n, x in vec.items() if x == tuple((p + q) % 2 for p, q in zip(vec[u], vec[v])))
        assert {u, v, w} <= set(nonsq)
    elif rep.case == CASE_II:
        assert rep.witness_units[0] in nonsq
        assert rep.two_eps_is_square == (sqrt_in_ring(rep.unit(rep.witness_units[0]) * 2) is not None)
    else:
        assert not nonsq


@pytest.mark.parametrize("key", [(2, 3), (2, 5), (3, 5), (2, 7), (3, 7), (5, 13), (6, 7), (2, 11), (5, 6)])
def test_square_flags_against_trace_search(key):
    f = classify_field(*key)
    rep = unit_report(f)
    for name, u in rep.products.items():
        if not rep.totally_positive[name] or u.trace() > 2000:
            continue
        assert rep.square_in_K[name] == (sqrt_by_trace_search(u) is not None), name


def test_unit_norms_follow_pell():
    for n in (2, 3, 5, 7, 10, 13, 29, 34, 41, 94):
        assert (quad_data(n).unit_norm == -1) == pell_solvable(n, -1)


@pytest.mark.parametrize("f", _fields(2, 60, tmax=300), ids=lambda f: f"{f.m}-{f.s}")
def test_square_filter_is_sound(f):
    units = fundamental_units(f)
    for label, n in zip(("eps_m", "eps_s", "eps_t"), f.radicands):
        if not quadratic_unit_square_filter(f, n):
            assert sqrt_in_ring(units[label]) is None


def test_square_filter_examples():
    f = classify_field(2, 21)  # t = 42
    assert not quadratic_unit_square_filter(f, 2)  # gcd(21, 42) = 21
    assert quadratic_unit_square_filter(f, 42)  # gcd(2, 21) = 1
    g = classify_field(6, 10)
    assert not quadratic_unit_square_filter(g, 10)  # gcd(6, 15) = 3
    assert quadratic_unit_square_filter(g, 15)  # gcd(6, 10) = 2


def test_case_stable_under_relabelling():
    for n1, n2 in [(3, 7), (6, 10), (5, 13), (2, 3)]:
        f = classify_field(n1, n2)
        a = unit_report(f).case
        assert unit_report(classify_field(f.m, f.t)).case == a
        assert unit_report(classify_field(f.t, f.s)).case == a


def test_case_three_candidate_exists():
    assert unit_report(classify_field(10, 13)).case == CASE_III

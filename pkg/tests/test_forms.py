import random
from itertools import product

import numpy as np
import pytest

from biquad import AlgebraicNumber, classify_field
from biquad.decompose import sqrt_in_ring
from biquad.errors import BudgetExceeded, FieldMismatch, NoRecipe
from biquad.forms import (PAIRS, TABLE1, FormMatrix, escalate_naive, escalate_quadruple, evaluate,
                          is_tp_definite, representations, represents, rho_candidates, table1_diagonal,
                          witness_quadruple)
from biquad.quad import element_S

from oracles import random_field, random_tp_integer, roots_under_oracle


def _sigma_matrix(Q: FormMatrix, e: int) -> np.ndarray:
    return np.array([[x.approx(e) for x in row] for row in Q.entries])


def _random_matrix(f, rng, n, size=3):
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            x = AlgebraicNumber(f, *(4 * rng.randint(-size, size) for _ in range(4)), 4)
            rows[i][j] = rows[j][i] = x
    return FormMatrix.from_rows(rows)


@pytest.mark.parametrize("seed", range(8))
def test_det_matches_floats(seed):
    rng = random.Random(seed)
    f = classify_field(*random_field(rng, 60))
    Q = _random_matrix(f, rng, 4)
    d = Q.det()
    for e in (1, 2, 3, 4):
        want = np.linalg.det(_sigma_matrix(Q, e))
        assert abs(d.approx(e) - want) < 1e-6 * (1 + abs(want))


@pytest.mark.parametrize("seed", range(8))
def test_definiteness_matches_eigenvalues(seed):
    rng = random.Random(100 + seed)
    f = classify_field(*random_field(rng, 60))
    Q = _random_matrix(f, rng, 3, size=2)
    want = all(np.linalg.eigvalsh(_sigma_matrix(Q, e)).min() > 1e-9 for e in (1, 2, 3, 4))
    assert is_tp_definite(Q) == want


def test_matrix_validation():
    f = classify_field(2, 3)
    one, two = f.one(), f.from_int(2)
    with pytest.raises(ValueError):
        FormMatrix.from_rows([[one, two], [one, one]])
    with pytest.raises(ValueError):
        evaluate(FormMatrix.diagonal([one, one]), [one])
    Q = FormMatrix.from_rows([[one, f.parse("1/2")], [f.parse("1/2"), one]])
    assert not Q.is_classical()


def _brute_representations(Q, target, box):
    found = []
    for v in product(box, repeat=Q.n):
        if evaluate(Q, v) == target:
            found.append(tuple(v))
    return set(found)


def test_representations_against_box():
    f = classify_field(2, 5)
    one = f.one()
    Q = FormMatrix.from_rows([[one * 2, one], [one, f.parse("3 + sqrt(2)")]])
    box = [f.from_coords(a, b) for a in range(-2, 3) for b in range(-2, 3)]
    box = [x for x in box if x.is_integral()]
    for target in (f.from_int(2), f.parse("3 + sqrt(2)"), f.parse("5 + sqrt(2)"), f.from_int(7)):
        got = set(representations(Q, target))
        brute = _brute_representations(Q, target, box)
        # everything in the small box must be found, and nothing false
        assert brute <= got
        assert all(evaluate(Q, v) == target for v in got)


def test_represents_is_galois_equivariant():
    f = classify_field(2, 3)
    Q = FormMatrix.diagonal([f.one(), f.parse("2 + sqrt(2)")])
    target = f.parse("3 + sqrt(2)")
    reps = representations(Q, target)
    assert reps
    for e in (2, 3, 4):
        Qe = FormMatrix.from_rows([[x.conjugate(e) for x in row] for row in Q.entries])
        got = set(representations(Qe, target.conjugate(e)))
        assert got == {tuple(x.conjugate(e) for x in v) for v in reps}


def test_representation_errors():
    f = classify_field(2, 3)
    Q = FormMatrix.diagonal([f.one(), f.from_int(-1)])
    with pytest.raises(ValueError):
        representations(Q, f.one())
    g = classify_field(2, 5)
    with pytest.raises(FieldMismatch):
        representations(FormMatrix.diagonal([f.one()]), g.one())
    big = FormMatrix.diagonal([f.one()] * 3)
    with pytest.raises(BudgetExceeded):
        representations(big, f.from_int(9), budget=5)
    # 7 = 2^2 + sqrt(3)^2 over K, but x^2 + y^2 = 7 has no solution in Z[sqrt 2]
    assert represents(FormMatrix.diagonal([f.one()] * 2), f.from_int(7))
    assert represents(FormMatrix.diagonal([f.one()] * 2), f.from_int(7), within=2) is None
    assert represents(FormMatrix.diagonal([f.one()]), f.from_int(5)) is None


# escalation


def _instances(seed, count):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        f = classify_field(*random_field(rng, 120))
        diag = [f.one()] + [random_tp_integer(f, rng, 12) for _ in range(3)]
        out.append((f, diag))
    return out


@pytest.mark.parametrize("f,diag", _instances(7, 12), ids=lambda x: str(x) if not isinstance(x, list) else "")
def test_escalation_matches_naive_with_oracle_rhos(f, diag):
    rho_sets = {}
    for i, j in PAIRS:
        oracle = roots_under_oracle(diag[i] * diag[j])
        assert set(rho_candidates(diag[i], diag[j])) == oracle
        rho_sets[(i + 1, j + 1)] = sorted(oracle, key=AlgebraicNumber.sort_key)
    total = 1
    for v in rho_sets.values():
        total *= len(v)
    if total > 20000:
        pytest.skip("too many matrices for the cofactor oracle")
    run = escalate_quadruple(f, diag)
    count, witness = escalate_naive(f, diag, rho_sets)
    assert (run.verdict.kind == "SingularWitness") == (witness is not None)
    if witness is None:
        assert run.candidates_examined == count == run.total_candidates
    else:
        assert run.verdict.matrix.det().is_zero()


def test_escalation_candidates_satisfy_pair_condition():
    f = classify_field(2, 23)
    diag = [f.one(), f.parse("2 + sqrt(2)"), f.from_int(3), element_S(f)]
    run = escalate_quadruple(f, diag)
    assert run.verdict.kind == "NoSingularMatrix"
    for (i, j), rhos in run.rho_sets.items():
        for rho in rhos:
            assert (diag[i - 1] * diag[j - 1] - rho * rho).is_totally_nonnegative()


@pytest.mark.parametrize("s", [23, 31, 37, 41, 43])
def test_leading_minor_never_vanishes_in_m2_family(s):
    # det G = Delta * S + (element of Q(sqrt 2)); Delta != 0 for every candidate
    f = classify_field(2, s)
    diag = [f.one(), f.parse("2 + sqrt(2)"), f.from_int(3), element_S(f)]
    run = escalate_quadruple(f, diag)
    lists = [run.rho_sets[(i + 1, j + 1)] for i, j in PAIRS]
    for r12, r13, r23 in product(lists[0], lists[1], lists[3]):
        top = FormMatrix.from_rows([[diag[0], r12, r13], [r12, diag[1], r23], [r13, r23, diag[2]]])
        assert not top.det().is_zero()
        assert top.det().in_subfield(2) or top.det().is_rational()


def test_budget_stop():
    f = classify_field(2, 23)
    diag = [f.one(), f.parse("2 + sqrt(2)"), f.from_int(3), element_S(f)]
    run = escalate_quadruple(f, diag, budget=3)
    assert run.verdict.kind == "BudgetExceeded"
    assert run.candidates_examined == 3


def test_escalation_input_checks():
    f = classify_field(2, 3)
    with pytest.raises(ValueError):
        escalate_quadruple(f, [f.one()] * 3)
    with pytest.raises(ValueError):
        escalate_quadruple(f, [f.one(), f.one(), f.one(), f.parse("1 - sqrt(2)")])
    with pytest.raises(FieldMismatch):
        escalate_quadruple(f, [classify_field(2, 5).one()] * 4)


@pytest.mark.parametrize("key", sorted(TABLE1))
def test_table_rows_have_no_singular_matrix(key):
    f = classify_field(*key)
    diag = table1_diagonal(f)
    assert all(x.is_integral() and x.is_totally_positive() for x in diag)
    run = escalate_quadruple(f, diag)
    assert run.verdict.kind == "NoSingularMatrix"


def test_singular_witness_found():
    f = classify_field(2, 3)
    diag = [f.one()] * 4  # the identity has singular neighbours, e.g. rho_12 = 1
    run = escalate_quadruple(f, diag)
    assert run.verdict.kind == "SingularWitness"
    assert run.verdict.matrix.det().is_zero()


def test_m2_diagonal_fails_at_s15():
    # 3*S is a square there, which gives a singular positive semidefinite block
    f = classify_field(2, 15)
    diag, tag = witness_quadruple(f)
    assert tag == "m2-family"
    assert sqrt_in_ring(diag[2] * diag[3]) == f.parse("(3*sqrt(2) + sqrt(30))/2")
    run = escalate_quadruple(f, diag)
    assert run.verdict.kind == "SingularWitness"
    G = run.verdict.matrix
    for e in (1, 2, 3, 4):
        assert np.linalg.eigvalsh(_sigma_matrix(G, e)).min() > -1e-9


# witness recipes


def test_witness_branches():
    f = classify_field(2, 7)
    diag, tag = witness_quadruple(f)
    assert tag == "m2-family"
    assert diag == (f.one(), f.parse("2 + sqrt(2)"), f.from_int(3), f.parse("3 + sqrt(7)"))
    g = classify_field(21, 55)
    diag, tag = witness_quadruple(g)
    assert tag == "case-i"
    assert diag[3] == diag[1] * diag[2]
    assert witness_quadruple(classify_field(2, 3))[1] == "table"
    assert witness_quadruple(classify_field(5, 11))[1] == "m5-family"
    assert witness_quadruple(classify_field(10, 13))[1] == "case-iii-generic"


def test_case_two_recipes():
    seen = set()
    for f in [classify_field(n1, n2) for n1, n2 in [(3, 7), (7, 11), (6, 11), (11, 14), (3, 11), (3, 13)]]:
        try:
            diag, tag = witness_quadruple(f)
        except NoRecipe:
            continue
        seen.add(tag)
        if tag.startswith("case-ii"):
            eps = diag[1]
            assert eps.is_totally_positive() and abs(eps.norm()) == 1
            assert diag[3] == eps * diag[2]
    assert seen & {"case-i", "case-ii-2eps-nonsquare", "case-ii-2eps-square"}


def test_no_form_represents_all_table_elements():
    # random ternary classical forms never represent the whole tabulated quadruple
    f = classify_field(2, 3)
    diag = table1_diagonal(f)
    rng = random.Random(4)
    tried = 0
    while tried < 8:
        rows = [[None] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(i, 3):
                x = AlgebraicNumber(f, *(4 * rng.randint(-1, 1) for _ in range(4)), 4)
                if i == j:
                    x = x + rng.randint(2, 4)
                rows[i][j] = rows[j][i] = x
        Q = FormMatrix.from_rows(rows)
        if not is_tp_definite(Q) or any(abs(x.trace()) > 20 for row in rows for x in row):
            continue
        tried += 1
        try:
            hits = [represents(Q, lam, budget=2 * 10**4) is not None for lam in diag]
        except BudgetExceeded:
            continue
        assert not all(hits)

"""The compiled kernels must agree with the pure-Python ones everywhere."""

import random

import pytest

from biquad import _backend, classify_field
from biquad.forms import PAIRS, rho_candidates, table1_diagonal, witness_quadruple
from biquad.quad import element_S

from oracles import random_field, random_tp_integer

py = _backend.kernels("python")
try:
    cy = _backend.kernels("cython")
except ImportError:
    cy = None

needs_cython = pytest.mark.skipif(cy is None, reason="compiled kernels not built")


def _params(f):
    return f.m, f.s, f.t, f.q_index, f.basis_class.code


def _fields(seed, count, tmax=300):
    rng = random.Random(seed)
    return [classify_field(*random_field(rng, tmax)) for _ in range(count)]


@needs_cython
@pytest.mark.parametrize("f", _fields(1, 10), ids=str)
def test_sign_and_integrality(f):
    rng = random.Random(f.t)
    m, s, t, qi, cls = _params(f)
    for _ in range(400):
        v = [rng.randint(-60, 60) for _ in range(4)]
        assert cy.sign4(*v, m, s, t) == py.sign4(*v, m, s, t)
        assert cy.is_tp4(*v, m, s, t) == py.is_tp4(*v, m, s, t)
        assert cy.integral4(*v, qi, cls) == py.integral4(*v, qi, cls)


@needs_cython
def test_sign_near_cancellation():
    # Pell-type near-zeros stress the interval refinement
    f = classify_field(2, 3)
    for a, b in [(665857, -470832), (665857, -470833), (-665857, 470832), (97, -56)]:
        assert cy.sign4(a, b, 0, 0, 2, 3, 6) == py.sign4(a, b, 0, 0, 2, 3, 6)
        assert cy.sign4(2 * a, 0, 0, b, 2, 3, 6) == py.sign4(2 * a, 0, 0, b, 2, 3, 6)
    assert f.parse("665857 - 470832*sqrt(2)").is_totally_positive()


def test_guard_falls_back_on_big_integers():
    big = 10**40
    want = py.sign4(big, -big, 1, 0, 2, 3, 6)
    assert _backend.sign4(big, -big, 1, 0, 2, 3, 6) == want
    if cy is not None:
        with pytest.raises(OverflowError):
            cy.sign4(big, -big, 1, 0, 2, 3, 6)


@needs_cython
@pytest.mark.parametrize("f", _fields(2, 12, tmax=150), ids=str)
def test_scans_agree(f):
    rng = random.Random(f.t + 1)
    m, s, t, qi, cls = _params(f)
    for _ in range(4):
        x = random_tp_integer(f, rng, 36)
        A, B, C, D = x.coords
        for proper, first in ((False, False), (True, False), (True, True)):
            assert (cy.scan_dominated(A, B, C, D, m, s, t, qi, cls, proper, first)
                    == py.scan_dominated(A, B, C, D, m, s, t, qi, cls, proper, first))
        for mask in (1, 2, 4, 7):
            assert (cy.scan_roots(A, B, C, D, m, s, t, qi, cls, mask)
                    == py.scan_roots(A, B, C, D, m, s, t, qi, cls, mask))


def _core_args(f, diag):
    lists = [rho_candidates(diag[i], diag[j]) for i, j in PAIRS]
    return [x.coords for x in diag], [[x.coords for x in lst] for lst in lists], f.m, f.s, f.t


@needs_cython
@pytest.mark.parametrize("key", [(2, 3), (2, 5), (3, 5), (2, 7), (2, 15), (2, 23), (5, 11), (21, 55), (3, 7)])
def test_escalation_agrees(key):
    f = classify_field(*key)
    try:
        diag, _ = witness_quadruple(f)
    except Exception:
        diag = table1_diagonal(f)
    args = _core_args(f, diag)
    for budget in (1, 50, 10**7):
        assert cy.escalate_core(*args, budget) == py.escalate_core(*args, budget)


@needs_cython
@pytest.mark.parametrize("seed", range(6))
def test_escalation_agrees_on_random_diagonals(seed):
    rng = random.Random(seed)
    f = classify_field(*random_field(rng, 80))
    diag = [f.one()] + [random_tp_integer(f, rng, 10) for _ in range(3)]
    args = _core_args(f, diag)
    assert cy.escalate_core(*args, 10**6) == py.escalate_core(*args, 10**6)


def test_backend_selection():
    assert _backend.backend in ("python", "cython")
    with pytest.raises(ValueError):
        _backend.kernels("fortran")


def test_m2_family_core_uses_both_backends():
    f = classify_field(2, 23)
    diag = [f.one(), f.parse("2 + sqrt(2)"), f.from_int(3), element_S(f)]
    args = _core_args(f, diag)
    examined, witness, exhausted = py.escalate_core(*args, 10**7)
    assert witness is None and exhausted
    assert _backend.escalate_core(*args, 10**7) == (examined, witness, exhausted)

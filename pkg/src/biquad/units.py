"""Totally positive units modulo squares, from the quadratic fundamental units.

Only the subgroup generated by eps_m, eps_s and eps_t is examined, so the
reported case is a lower bound for |U+ / U^2| in the full unit group.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import gcd

from .decompose import sqrt_in_ring
from .field import AlgebraicNumber, FieldSpec
from .quad import quad_data

CASE_I = "CaseI"
CASE_II = "CaseII"
CASE_III = "CaseIII_candidate"

# exponent vectors over (eps_m, eps_s, eps_t) in report order
PRODUCT_CLASSES = (
    ("eps_m", (1, 0, 0)),
    ("eps_s", (0, 1, 0)),
    ("eps_t", (0, 0, 1)),
    ("eps_m*eps_s", (1, 1, 0)),
    ("eps_m*eps_t", (1, 0, 1)),
    ("eps_s*eps_t", (0, 1, 1)),
    ("eps_m*eps_s*eps_t", (1, 1, 1)),
)


@dataclass(frozen=True)
class UnitReport:
    field: FieldSpec
    eps: dict[str, AlgebraicNumber]
    eps_norm: dict[str, int]
    products: dict[str, AlgebraicNumber]
    totally_positive: dict[str, bool]
    square_in_K: dict[str, bool]
    case: str
    witness_units: tuple[str, ...]
    two_eps_is_square: bool | None = None
    notes: list[str] = dc_field(default_factory=list)

    def unit(self, name: str) -> AlgebraicNumber:
        return self.products[name]


def fundamental_units(f: FieldSpec) -> dict[str, AlgebraicNumber]:
    out = {}
    for label, n in zip(("eps_m", "eps_s", "eps_t"), f.radicands):
        out[label] = quad_data(n).fundamental_unit.to_field(f)
    return out


def unit_report(f: FieldSpec) -> UnitReport:
    eps = fundamental_units(f)
    norms = {label: quad_data(n).unit_norm for label, n in zip(("eps_m", "eps_s", "eps_t"), f.radicands)}
    base = (eps["eps_m"], eps["eps_s"], eps["eps_t"])
    products: dict[str, AlgebraicNumber] = {}
    tp: dict[str, bool] = {}
    sq: dict[str, bool] = {}
    for name, vec in PRODUCT_CLASSES:
        u = f.one()
        for x, k in zip(base, vec):
            if k:
                u = u * x
        products[name] = u
        tp[name] = u.is_totally_positive()
        sq[name] = tp[name] and sqrt_in_ring(u) is not None
    vecs = dict(PRODUCT_CLASSES)
    tp_group = [vecs[n] for n in vecs if tp[n]]
    sq_group = [vecs[n] for n in vecs if sq[n]]
    # both sets (with the identity) are subgroups of F_2^3
    size_tp = len(tp_group) + 1
    size_sq = len(sq_group) + 1
    quotient = size_tp // size_sq
    nonsq = [n for n, _ in PRODUCT_CLASSES if tp[n] and not sq[n]]
    notes = []
    if quotient >= 4:
        case = CASE_I
        witness = ()
        for i, u in enumerate(nonsq):
            for v in nonsq[i + 1:]:
                w = _name_of(_xor(vecs[u], vecs[v]))
                if w in nonsq:
                    witness = (u, v)
                    break
            if witness:
                break
        two_sq = None
    elif quotient == 2:
        case = CASE_II
        witness = (nonsq[0],)
        two_sq = sqrt_in_ring(products[nonsq[0]] * 2) is not None
    else:
        case = CASE_III
        witness = ()
        two_sq = None
        notes.append("every totally positive unit in <eps_m, eps_s, eps_t> is a square in K")
    return UnitReport(f, eps, norms, products, tp, sq, case, witness, two_sq, notes)


def _xor(u: tuple[int, int, int], v: tuple[int, int, int]) -> tuple[int, int, int]:
    return tuple((x + y) % 2 for x, y in zip(u, v))  # type: ignore[return-value]


def _name_of(vec: tuple[int, int, int]) -> str | None:
    for name, v in PRODUCT_CLASSES:
        if v == vec:
            return name
    return None


def two_eps_square(f: FieldSpec, eps: AlgebraicNumber) -> bool:
    """Is 2*eps a square in K?  ``eps`` must be a totally positive unit."""
    if eps.field != f:
        raise ValueError("unit from another field")
    if abs(eps.norm()) != 1 or not eps.is_integral():
        raise ValueError(f"{eps} is not a unit")
    if not eps.is_totally_positive():
        raise ValueError(f"{eps} is not totally positive")
    return sqrt_in_ring(eps * 2) is not None


def quadratic_unit_square_filter(f: FieldSpec, which: int) -> bool:
    """False when eps_which is certainly not a square in K.

    That happens whenever the other two radicands share a factor >= 3.
    True only means the test is silent.
    """
    n2, n3 = f.others(which)
    return gcd(n2, n3) < 3

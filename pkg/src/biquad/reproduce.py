"""Recompute the bundled expected values and compare.

Every ``reproduce_*`` function returns a :class:`Reproduction` holding one
:class:`Check` per compared quantity.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable

from ._data import load
from .decompose import decompositions, is_indecomposable, orbit_key, sqrt_in_ring, square_parts, square_roots_under
from .errors import FieldMismatch, MismatchFound
from .field import AlgebraicNumber, FieldSpec, all_fields, classify_field, pretty
from .forms import FormMatrix, escalate_quadruple, evaluate, representations, table1_diagonal, TABLE1
from .quad import element_M, element_S


@dataclass
class Check:
    name: str
    ok: bool
    expected: object = None
    computed: object = None


@dataclass
class Reproduction:
    lemma: str
    checks: list[Check] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, ok: bool, expected=None, computed=None) -> None:
        self.checks.append(Check(name, bool(ok), expected, computed))

    def to_json(self) -> dict:
        return {
            "lemma": self.lemma,
            "ok": self.ok,
            "checks": [
                {"name": c.name, "ok": c.ok, "expected": _jsonable(c.expected), "computed": _jsonable(c.computed)}
                for c in self.checks
            ],
        }


def _jsonable(x):
    if isinstance(x, AlgebraicNumber):
        return pretty(x)
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in x]
        return sorted(items, key=str) if isinstance(x, (set, frozenset)) else items
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


def _try_parse(f: FieldSpec, text: str) -> AlgebraicNumber | None:
    try:
        return f.parse(text)
    except FieldMismatch:
        return None


def _names(xs) -> list[str]:
    return sorted(pretty(x) for x in xs)


# decompositions of 2, 3, 5


def _pair_names(pairs) -> list[str]:
    return sorted(f"{pretty(a)} | {pretty(b)}" for a, b in pairs)


def reproduce_trivdecomp(n: int, fields=None) -> Reproduction:
    data = load("trivdecomp")
    entries = data["targets"][str(n)]["nontrivial"]
    fields = fields or [tuple(x) for x in data["fields"]]
    rep = Reproduction(f"trivdecomp-{n}")
    for key in fields:
        f = classify_field(*key)
        expected = {}
        for left, right in entries:
            a, b = _try_parse(f, left), _try_parse(f, right)
            if a is not None and b is not None:
                expected[orbit_key((a, b))] = (a, b)
        for k in range(n // 2 + 1):
            a, b = f.from_int(k), f.from_int(n - k)
            expected[orbit_key((a, b))] = (a, b)
        dec = decompositions(f.from_int(n), include_zero=True)
        computed = {orbit_key(p): p for p in dec.canonical_orbits}
        rep.add(f"{f}: decompositions of {n}", set(expected) == set(computed),
                _pair_names(expected.values()), _pair_names(computed.values()))
    return rep


# squares below 8 and 10


def expected_squares_10_8(f: FieldSpec, n: int) -> set[AlgebraicNumber]:
    spec = load("squares_10_8")["targets"][str(n)]
    out = {f.parse(x) for x in spec["always"]}
    for root, values in spec["if_sqrt"].items():
        if f.contains_sqrt(int(root)):
            out.update(f.parse(x) for x in values)
    return out


def reproduce_10and8(fields=None) -> Reproduction:
    data = load("squares_10_8")
    fields = fields or [tuple(x) for x in data["fields"]]
    rep = Reproduction("10and8")
    for key in fields:
        f = classify_field(*key)
        if any(f.contains_sqrt(n) for n in data["hypothesis_excludes"]):
            raise ValueError(f"{f} contains one of sqrt{tuple(data['hypothesis_excludes'])}")
        for n in (8, 10):
            exp = expected_squares_10_8(f, n)
            got = set(square_parts(f.from_int(n)))
            rep.add(f"{f}: squares below {n}", exp == got, _names(exp), _names(got))
    return rep


# omega-sets in the m = 2 and m = 5 families


def _coeff_field(family: str, s: int) -> FieldSpec:
    m = load("coeff_sets")[family]["m"]
    f = classify_field(m, s)
    if f.m != m or f.s != s:
        raise ValueError(f"{family} needs Q(sqrt {m}, sqrt s) with {m} < s < t; got {f}")
    return f


def coeff_sets(family: str, s: int, with_omitted: bool = False):
    """(alpha text, listed omegas, computed omegas) for every part.

    With ``with_omitted`` the listed sets are enlarged by the recorded
    omissions.
    """
    spec = load("coeff_sets")[family]
    f = _coeff_field(family, s)
    S_text = str(element_S(f))
    out = []
    for part in spec["parts"]:
        alpha = f.parse(part["alpha"].replace("S", S_text))
        listed = [*part["omegas"], *(part.get("omitted", []) if with_omitted else [])]
        exp = {f.parse(x) for x in listed}
        got = set(square_roots_under(alpha))
        out.append((part["alpha"], exp, got))
    return out


def reproduce_coeff(family: str, s: int, with_omitted: bool = False) -> Reproduction:
    """Each part says: omega^2 <= alpha forces omega into the listed set.

    For admissible s every computed set must lie inside its listed set.
    For exceptional s at least one computed set must leave its listed set,
    which is what makes the exception necessary.
    """
    spec = load("coeff_sets")[family]
    exceptional = s in spec["exceptions"]
    label = f"{family} s={s}" + (" (with omissions)" if with_omitted else "")
    rep = Reproduction(label)
    grew = False
    for text, exp, got in coeff_sets(family, s, with_omitted):
        if exceptional:
            grew = grew or not got <= exp
            rep.add(f"omega^2 <= {text} (exceptional s, informative)", True, _names(exp), _names(got))
        else:
            rep.add(f"omega^2 <= {text}", got <= exp, _names(exp), _names(got))
    if exceptional:
        rep.add("exceptional s: some set leaves its list", grew, True, grew)
    return rep


def admissible_s(family: str, smax: int) -> list[int]:
    from .field import is_squarefree

    spec = load("coeff_sets")[family]
    m = spec["m"]
    out = []
    for s in range(m + 1, smax + 1):
        if not is_squarefree(s) or s in spec["exceptions"] or s % m == 0:
            continue
        f = classify_field(m, s)
        if f.m == m and f.s == s:
            out.append(s)
    return out


# diagonal quadruples for seven small fields


def reproduce_table1(keys=None) -> Reproduction:
    rep = Reproduction("table1")
    for key in keys or TABLE1:
        f = classify_field(*key)
        diag = table1_diagonal(f)
        run = escalate_quadruple(f, diag)
        rep.add(f"{f}: escalation", run.verdict.kind == "NoSingularMatrix",
                "NoSingularMatrix", f"{run.verdict.kind} after {run.candidates_examined} matrices")
    return rep


# the binary form over Q(sqrt 10)


def reproduce_appendix_a() -> Reproduction:
    data = load("appendix_a")
    f = classify_field(*data["host_field"])
    sub = data["subfield"]
    rep = Reproduction("appendixA")
    Q = FormMatrix.from_rows([[f.parse(x) for x in row] for row in data["form"]])
    d = Q.det()
    rep.add("det Q0", d == f.parse(data["det"]), data["det"], pretty(d))
    e = [f.parse(x) for x in data["e"]]
    val = evaluate(Q, e)
    rep.add("Q0(e)", val == f.parse(data["value_at_e"]), data["value_at_e"], pretty(val))
    reps = representations(Q, f.parse(data["value_at_e"]), within=sub)
    exp_reps = {tuple(f.parse(x) for x in v) for v in data["representations_of_2"]}
    rep.add("vectors representing 2", set(reps) == exp_reps and len(reps) == len(exp_reps),
            sorted([pretty(x) for x in v] for v in exp_reps), sorted([pretty(x) for x in v] for v in reps))
    unit = FormMatrix.diagonal([f.one(), f.one()])
    miss = f.parse(data["sum_of_two_squares_misses"])
    hit = representations(unit, miss, within=sub)
    rep.add("<1,1> represents 7", not hit, [], [[pretty(x) for x in v] for v in hit])
    gamma, beta = f.parse(data["gamma"]), f.parse(data["beta"])
    val = gamma * 2 - beta * beta
    rep.add("2 gamma - beta^2", val == f.parse(data["two_gamma_minus_beta_sq"]),
            data["two_gamma_minus_beta_sq"], pretty(val))
    g = classify_field(*data["norm_field"])
    M = element_M(g)
    n1 = (M * 2 - 1).norm()
    rep.add("N(2M - 1)", n1 == data["norm_2M_minus_1"], data["norm_2M_minus_1"], int(n1))
    n2 = g.from_int(14).norm()
    rep.add("N(14)", n2 == data["norm_14"], data["norm_14"], int(n2))
    return rep


# squareness of multiples of M and S


def nonsquare_elements(f: FieldSpec) -> dict[str, AlgebraicNumber]:
    M, S = element_M(f), element_S(f)
    return {"M": M, "4M": M * 4, "2M": M * 2, "3M": M * 3, "5M": M * 5,
            "S": S, "2S": S * 2, "2M-1": M * 2 - 1}


def square_fields(tmax: int, names) -> dict[str, list[tuple[int, int]]]:
    """For each element name, the fields (m, s) with t <= tmax where it is a square."""
    out: dict[str, list[tuple[int, int]]] = {n: [] for n in names}
    for f in all_fields(tmax):
        elems = nonsquare_elements(f)
        for n in names:
            if sqrt_in_ring(elems[n]) is not None:
                out[n].append(f.key)
    return out


def reproduce_nonsquare(which: str, tmax: int | None = None) -> Reproduction:
    data = load("nonsquare")
    tmax = tmax or data["tmax"]
    names = [n for n in data["elements"] if n.endswith(which) or (which == "M" and n == "2M-1")]
    found = square_fields(tmax, names)
    fields = all_fields(tmax)
    rep = Reproduction(f"nonsquare{which} t<={tmax}")
    for n in names:
        spec = data["elements"][n]
        allowed = {tuple(x) for x in spec["fields"]}
        exp = [f.key for f in fields if f.m in spec["m"] or f.key in allowed]
        rep.add(f"{n} is a square exactly in", found[n] == exp, exp, found[n])
    return rep


def reproduce_indecomposable_ms(tmax: int = 300) -> Reproduction:
    rep = Reproduction(f"indecomposable M and S, t<={tmax}")
    bad = []
    for f in all_fields(tmax):
        for name, x in (("M", element_M(f)), ("S", element_S(f))):
            if not is_indecomposable(x):
                bad.append((f.key, name))
    rep.add("M and S indecomposable in every field", not bad, [], bad)
    f = classify_field(2, 21)
    x = f.parse("7 + sqrt(42)")
    rep.add("7 + sqrt(42) decomposes in Q(sqrt 2, sqrt 21)", not is_indecomposable(x), False, is_indecomposable(x))
    return rep


LEMMAS: dict[str, Callable[..., Reproduction]] = {
    "trivdecomp-2": lambda **kw: reproduce_trivdecomp(2, kw.get("fields")),
    "trivdecomp-3": lambda **kw: reproduce_trivdecomp(3, kw.get("fields")),
    "trivdecomp-5": lambda **kw: reproduce_trivdecomp(5, kw.get("fields")),
    "10and8": lambda **kw: reproduce_10and8(kw.get("fields")),
    "2coeff": lambda **kw: reproduce_coeff("2coeff", kw.get("s") or 23, kw.get("with_omitted", False)),
    "5coeff": lambda **kw: reproduce_coeff("5coeff", kw.get("s") or 11, kw.get("with_omitted", False)),
    "table1": lambda **kw: reproduce_table1(),
    "appendixA": lambda **kw: reproduce_appendix_a(),
    "nonsquareM": lambda **kw: reproduce_nonsquare("M", kw.get("tmax")),
    "nonsquareS": lambda **kw: reproduce_nonsquare("S", kw.get("tmax")),
    "indecomposableMS": lambda **kw: reproduce_indecomposable_ms(kw.get("tmax") or 300),
}


def cmd_reproduce(lemma_id: str, strict: bool = False, **params) -> Reproduction:
    if lemma_id not in LEMMAS:
        raise ValueError(f"unknown lemma id {lemma_id!r}; choose from {', '.join(LEMMAS)}")
    rep = LEMMAS[lemma_id](**params)
    if strict and not rep.ok:
        bad = [c.name for c in rep.checks if not c.ok]
        raise MismatchFound(f"{lemma_id}: mismatch in {', '.join(bad)}")
    return rep

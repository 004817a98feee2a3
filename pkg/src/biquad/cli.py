"""Command-line front end.

Every report-style command prints JSON carrying the package version and a
hash of the options that determine its content, so two runs with the same
hash can be compared byte for byte.  Wall-clock timing is only included with
``--timing``.

Exit codes: 0 when every requested verification passed, 1 when one failed,
2 for bad input.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor, as_completed

from . import __version__
from .decompose import decompositions, is_indecomposable, sqrt_in_ring, square_parts
from .errors import BiquadError, BudgetExceeded, MismatchFound, NoRecipe
from .field import AlgebraicNumber, FieldSpec, all_fields, classify_field, field_from_text, pretty
from .forms import (DEFAULT_BUDGET, INCONCLUSIVE_TAGS, TABLE1, EscalationRun, SingularWitness,
                    escalate_quadruple, table1_diagonal, witness_quadruple)
from .quad import element_M, element_S, element_T, pell_solvable, quad_data
from .reproduce import LEMMAS, cmd_reproduce, coeff_sets
from .units import CASE_I, CASE_II, UnitReport, unit_report

WORKERS_ENV = "BIQUAD_WORKERS"
CSV_SCHEMA = 1
CSV_COLUMNS = ("m", "s", "t", "basis_class", "unit_case", "branch", "diagonal",
               "verdict", "examined", "status")

# status of a field report
CERTIFIED = "certified"          # escalation found no singular matrix
UNIT_ARGUMENT = "unit-argument"  # units alone settle it, nothing to escalate
INCONCLUSIVE = "inconclusive"
FAILED = "failed"
BUDGET = "budget-exceeded"


def config_hash(config: dict) -> str:
    blob = json.dumps({"version": __version__, **config}, sort_keys=True, default=str)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def envelope(command: str, config: dict, result, seconds: float | None = None) -> dict:
    out = {"version": __version__, "command": command, "config": config,
           "config_hash": config_hash({"command": command, **config}), "result": result}
    if seconds is not None:
        out["seconds"] = round(seconds, 3)
    return out


def dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


# record builders


def field_json(f: FieldSpec) -> dict:
    return {
        "m": f.m, "s": f.s, "t": f.t,
        "pqr": [f.p, f.q, f.r],
        "basis_class": f.basis_class.value,
        "integral_basis": [pretty(x) for x in f.integral_basis()],
        "discriminant": f.discriminant,
    }


def units_json(rep: UnitReport) -> dict:
    return {
        "field": [rep.field.m, rep.field.s],
        "eps": {k: pretty(v) for k, v in rep.eps.items()},
        "eps_norm": rep.eps_norm,
        "totally_positive": rep.totally_positive,
        "square_in_K": rep.square_in_K,
        "case": rep.case,
        "witness_units": list(rep.witness_units),
        "two_eps_is_square": rep.two_eps_is_square,
        "notes": rep.notes,
    }


def escalation_json(run: EscalationRun) -> dict:
    out = {
        "field": [run.field.m, run.field.s],
        "diagonal": [pretty(x) for x in run.diagonal],
        "rho_sets": {f"{i}{j}": [pretty(x) for x in v] for (i, j), v in sorted(run.rho_sets.items())},
        "total_candidates": run.total_candidates,
        "candidates_examined": run.candidates_examined,
        "verdict": run.verdict.kind,
    }
    if isinstance(run.verdict, SingularWitness):
        out["witness_matrix"] = run.verdict.matrix.to_json()
    return out


def cmd_field_report(f: FieldSpec, budget: int = DEFAULT_BUDGET, escalate: bool = True) -> dict:
    """Everything known about one field, ending in a status for the
    non-universality argument."""
    rec = {"field": field_json(f)}
    rec["elements"] = {"M": pretty(element_M(f)), "S": pretty(element_S(f)), "T": pretty(element_T(f))}
    units = unit_report(f)
    rec["units"] = units_json(units)
    try:
        diag, branch = witness_quadruple(f)
    except NoRecipe as exc:
        rec["witness"] = None
        rec["escalation"] = None
        rec["status"] = INCONCLUSIVE
        rec["reason"] = str(exc)
        return rec
    rec["witness"] = {"diagonal": [pretty(x) for x in diag], "branch": branch}
    if branch not in {"table", "m2-family", "m5-family"} | INCONCLUSIVE_TAGS:
        rec["escalation"] = None
        rec["status"] = UNIT_ARGUMENT
        return rec
    if not escalate:
        rec["escalation"] = None
        rec["status"] = "not-run"
        return rec
    run = escalate_quadruple(f, diag, budget)
    rec["escalation"] = {k: v for k, v in escalation_json(run).items() if k != "rho_sets"}
    kind = run.verdict.kind
    if kind == "NoSingularMatrix":
        rec["status"] = CERTIFIED
    elif kind == "BudgetExceeded":
        rec["status"] = BUDGET
    elif branch in INCONCLUSIVE_TAGS:
        # the generic recipe is only a heuristic outside the explicit branches
        rec["status"] = INCONCLUSIVE
        rec["reason"] = "singular matrix for a diagonal that is not certified to work"
    elif units.case in (CASE_I, CASE_II):
        # the family diagonal does not work here, but a nonsquare totally
        # positive unit settles the field anyway
        rec["status"] = UNIT_ARGUMENT
        rec["reason"] = f"{branch} diagonal admits a singular matrix; {units.case} unit argument used"
    else:
        rec["status"] = FAILED
    return rec


def quad_json(n: int) -> dict:
    data = quad_data(n)
    return {
        "n": n,
        "omega": str(data.omega),
        "cf_preperiod": list(data.preperiod),
        "cf_period": list(data.period),
        "fundamental_unit": str(data.fundamental_unit),
        "fu_norm": data.unit_norm,
        "Mk": data.Mk,
        "pell": {str(c): pell_solvable(n, c) for c in (-1, 2, -2)},
    }


# sweep


def _sweep_record(key: tuple[int, int], budget: int, escalate: bool) -> dict:
    t0 = time.perf_counter()
    rec = cmd_field_report(classify_field(*key), budget, escalate)
    rec["_seconds"] = time.perf_counter() - t0
    return rec


def _csv_row(rec: dict) -> list:
    f = rec["field"]
    w = rec["witness"] or {}
    esc = rec["escalation"] or {}
    return [f["m"], f["s"], f["t"], f["basis_class"], rec["units"]["case"], w.get("branch", ""),
            ";".join(w.get("diagonal", [])), esc.get("verdict", ""), esc.get("candidates_examined", ""),
            rec["status"]]


def _load_checkpoint(path: str | None) -> dict[tuple[int, int], dict]:
    """Records already in the checkpoint.  A partial last line from an
    interrupted run is cut off so that new records start on a fresh line."""
    done = {}
    if not path or not os.path.exists(path):
        return done
    good = 0
    with open(path, "rb") as fh:
        for raw in fh:
            try:
                rec = json.loads(raw) if raw.strip() else None
            except json.JSONDecodeError:
                break
            if rec is not None and not raw.endswith(b"\n"):
                break
            good += len(raw)
            if rec is not None:
                done[(rec["field"]["m"], rec["field"]["s"])] = rec
    if good < os.path.getsize(path):
        with open(path, "r+b") as fh:
            fh.truncate(good)
    return done


def run_sweep(keys, budget: int, escalate: bool, workers: int, checkpoint: str | None,
              progress=None) -> list[dict]:
    """Field reports for ``keys``; finished fields are appended to the
    checkpoint and skipped when it is reused."""
    done = _load_checkpoint(checkpoint)
    todo = [k for k in keys if k not in done]
    sink = open(checkpoint, "a", encoding="utf-8") if checkpoint else None

    def keep(rec):
        done[(rec["field"]["m"], rec["field"]["s"])] = rec
        if sink:
            sink.write(json.dumps(rec, sort_keys=True) + "\n")
            sink.flush()
        if progress:
            progress(len(done), len(keys))

    try:
        if workers > 1 and len(todo) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                futs = [pool.submit(_sweep_record, k, budget, escalate) for k in todo]
                for fut in as_completed(futs):
                    keep(fut.result())
        else:
            for k in todo:
                keep(_sweep_record(k, budget, escalate))
    finally:
        if sink:
            sink.close()
    return [done[k] for k in keys]


def sweep_csv(records: list[dict], timing: bool = False) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([*CSV_COLUMNS, *(["seconds"] if timing else [])])
    for rec in records:
        w.writerow([*_csv_row(rec), *([f"{rec.get('_seconds', 0):.3f}"] if timing else [])])
    return buf.getvalue()


# argument handling


def positive_int(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _field(text: str) -> FieldSpec:
    try:
        return field_from_text(text)
    except (ValueError, BiquadError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _element(f: FieldSpec, text: str) -> AlgebraicNumber:
    x = f.parse(text)
    if not x.is_integral():
        raise ValueError(f"{text} is not an algebraic integer of {f}")
    return x


def _workers(arg: int | None) -> int:
    if arg is not None:
        return arg
    env = os.environ.get(WORKERS_ENV)
    return max(1, int(env)) if env else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="biquad", description="Exact computations in real biquadratic fields.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def with_field(name, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("field", type=_field, help='"(m,s)" or "m,s"')
        return sp

    sp = with_field("field-report", "basis, distinguished elements, units, witness and escalation")
    sp.add_argument("--budget", type=positive_int, default=DEFAULT_BUDGET)
    sp.add_argument("--no-escalate", action="store_true")
    sp.add_argument("--timing", action="store_true")

    sp = sub.add_parser("quad", help="continued fraction, unit and Pell data of Q(sqrt n)")
    sp.add_argument("n", type=int)

    sp = with_field("units", "totally positive units modulo squares")
    sp.add_argument("--tmax", type=positive_int, help="batch mode: every field with t <= TMAX")
    sp.add_argument("--csv", action="store_true", help="batch output as CSV")

    for name, help in (("decompose", "all decompositions into two totally nonnegative integers"),
                       ("indecomposable", "is the element indecomposable?"),
                       ("is-square", "square root in the ring of integers, if any"),
                       ("square-parts", "squares below the element")):
        sp = with_field(name, help)
        sp.add_argument("element")
        if name == "decompose":
            sp.add_argument("--orbits", action="store_true", help="one pair per Galois orbit")

    sp = with_field("escalate", "search for singular matrices with a fixed diagonal")
    sp.add_argument("--diag", required=True, help='"l1;l2;l3;l4"')
    sp.add_argument("--budget", type=positive_int, default=DEFAULT_BUDGET)
    sp.add_argument("--json", metavar="PATH", help="also write the report here")
    sp.add_argument("--timing", action="store_true")

    with_field("witness", "diagonal quadruple that rules out universal ternary forms")

    sp = sub.add_parser("verify-table1", help="escalate all seven tabulated diagonals")
    sp.add_argument("--budget", type=positive_int, default=DEFAULT_BUDGET)
    sp.add_argument("--timing", action="store_true")

    for name in ("verify-lemma", "reproduce"):
        sp = sub.add_parser(name, help="recompute a bundled list and compare")
        sp.add_argument("lemma", choices=sorted(LEMMAS))
        sp.add_argument("--s", type=positive_int, help="radicand s for 2coeff / 5coeff")
        sp.add_argument("--tmax", type=positive_int, help="field range for nonsquare* / indecomposableMS")
        sp.add_argument("--with-omitted", action="store_true",
                        help="add the recorded omissions to the listed sets")
        sp.add_argument("--json", action="store_true", help="JSON instead of text")
        sp.add_argument("--timing", action="store_true")

    sp = sub.add_parser("sweep", help="field reports for every field with t <= TMAX")
    sp.add_argument("--tmax", type=positive_int, required=True)
    sp.add_argument("--tmin", type=positive_int, default=1)
    sp.add_argument("--budget", type=positive_int, default=DEFAULT_BUDGET)
    sp.add_argument("--workers", type=positive_int, help=f"default: ${WORKERS_ENV} or 1")
    sp.add_argument("--checkpoint", metavar="PATH", help="JSONL file; reused to resume")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--out", metavar="PATH")
    sp.add_argument("--no-escalate", action="store_true")
    sp.add_argument("--timing", action="store_true")
    return p


def _emit(text: str, path: str | None = None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _key(f: FieldSpec) -> list[int]:
    return [f.m, f.s]


def _lemma_text(lemma: str, rep, args) -> str:
    lines = [f"{rep.lemma}: {'ok' if rep.ok else 'MISMATCH'}"]
    if lemma in ("2coeff", "5coeff"):
        s = args.s or (23 if lemma == "2coeff" else 11)
        for text, exp, got in coeff_sets(lemma, s, args.with_omitted):
            lines.append(f"  omega^2 <= {text}")
            lines.append(f"    listed:   {{{', '.join(sorted(pretty(x) for x in exp))}}}")
            lines.append(f"    computed: {{{', '.join(sorted(pretty(x) for x in got))}}}")
    for c in rep.checks:
        lines.append(f"  [{'ok' if c.ok else 'FAIL'}] {c.name}")
        if not c.ok:
            lines.append(f"    expected: {c.expected}")
            lines.append(f"    computed: {c.computed}")
    return "\n".join(lines)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except MismatchFound as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return 1
    except BudgetExceeded as exc:
        print(f"budget exceeded after {exc.examined} candidates: {exc}", file=sys.stderr)
        return 1
    except (ValueError, BiquadError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _dispatch(args) -> int:
    cmd = args.command
    clock = time.perf_counter()
    elapsed = lambda: time.perf_counter() - clock if getattr(args, "timing", False) else None  # noqa: E731

    if cmd == "quad":
        print(dump(quad_json(args.n)))
        return 0

    if cmd == "field-report":
        f = args.field
        rec = cmd_field_report(f, args.budget, not args.no_escalate)
        cfg = {"field": _key(f), "budget": args.budget, "escalate": not args.no_escalate}
        print(dump(envelope(cmd, cfg, rec, elapsed())))
        return 1 if rec["status"] in (FAILED, BUDGET) else 0

    if cmd == "units":
        if args.tmax:
            reps = [unit_report(f) for f in all_fields(args.tmax)]
            if args.csv:
                buf = io.StringIO()
                w = csv.writer(buf, lineterminator="\n")
                w.writerow(["m", "s", "t", "eps_m_norm", "eps_s_norm", "eps_t_norm", "case", "witness_units",
                            "two_eps_is_square"])
                for r in reps:
                    n = r.eps_norm
                    w.writerow([r.field.m, r.field.s, r.field.t, n["eps_m"], n["eps_s"], n["eps_t"], r.case,
                                " ".join(r.witness_units), "" if r.two_eps_is_square is None else r.two_eps_is_square])
                sys.stdout.write(buf.getvalue())
            else:
                print(dump(envelope(cmd, {"tmax": args.tmax}, [units_json(r) for r in reps])))
            return 0
        print(dump(envelope(cmd, {"field": _key(args.field)}, units_json(unit_report(args.field)))))
        return 0

    if cmd in ("decompose", "indecomposable", "is-square", "square-parts"):
        f = args.field
        x = _element(f, args.element)
        if cmd == "decompose":
            dec = decompositions(x)
            pairs = dec.canonical_orbits if args.orbits else dec.pairs
            out = {"element": pretty(x), "orbits": args.orbits, "orbit_group": dec.orbit_group,
                   "pairs": [[pretty(a), pretty(b)] for a, b in pairs]}
        elif cmd == "indecomposable":
            out = {"element": pretty(x), "indecomposable": is_indecomposable(x)}
        elif cmd == "is-square":
            root = sqrt_in_ring(x)
            out = {"element": pretty(x), "square": root is not None, "root": None if root is None else pretty(root)}
        else:
            out = [pretty(w) for w in square_parts(x)]
        print(dump(out))
        return 0

    if cmd == "escalate":
        f = args.field
        diag = [f.parse(part) for part in args.diag.split(";")]
        run = escalate_quadruple(f, diag, args.budget)
        cfg = {"field": _key(f), "diagonal": [pretty(x) for x in diag], "budget": args.budget}
        text = dump(envelope(cmd, cfg, escalation_json(run), elapsed()))
        print(text)
        if args.json:
            _emit(text, args.json)
        return 0 if run.verdict.kind == "NoSingularMatrix" else 1

    if cmd == "witness":
        f = args.field
        try:
            diag, branch = witness_quadruple(f)
            res = {"diagonal": [pretty(x) for x in diag], "branch": branch,
                   "needs_escalation": branch in {"table", "m2-family", "m5-family"} | INCONCLUSIVE_TAGS,
                   "certified_branch": branch not in INCONCLUSIVE_TAGS}
        except NoRecipe as exc:
            res = {"diagonal": None, "branch": None, "status": INCONCLUSIVE, "reason": str(exc)}
        print(dump(envelope(cmd, {"field": _key(f)}, res)))
        return 0

    if cmd == "verify-table1":
        rows = []
        ok = True
        for key in TABLE1:
            f = classify_field(*key)
            run = escalate_quadruple(f, table1_diagonal(f), args.budget)
            good = run.verdict.kind == "NoSingularMatrix"
            ok &= good
            row = escalation_json(run)
            row.pop("rho_sets")
            row["ok"] = good
            rows.append(row)
        print(dump(envelope(cmd, {"budget": args.budget}, {"ok": ok, "rows": rows}, elapsed())))
        return 0 if ok else 1

    if cmd in ("verify-lemma", "reproduce"):
        params = {"s": args.s, "tmax": args.tmax, "with_omitted": args.with_omitted}
        rep = cmd_reproduce(args.lemma, **params)
        if args.json:
            cfg = {"lemma": args.lemma, **{k: v for k, v in params.items() if v}}
            print(dump(envelope("verify-lemma", cfg, rep.to_json(), elapsed())))
        else:
            print(_lemma_text(args.lemma, rep, args))
        return 0 if rep.ok else 1

    if cmd == "sweep":
        keys = [f.key for f in all_fields(args.tmax) if f.t >= args.tmin]
        workers = _workers(args.workers)
        progress = None
        if sys.stderr.isatty():
            progress = lambda k, n: print(f"\r{k}/{n} fields", end="", file=sys.stderr)  # noqa: E731
        records = run_sweep(keys, args.budget, not args.no_escalate, workers, args.checkpoint, progress)
        if progress:
            print(file=sys.stderr)
        if args.format == "csv":
            text = sweep_csv(records, args.timing)
        else:
            clean = [{k: v for k, v in r.items() if args.timing or k != "_seconds"} for r in records]
            cfg = {"tmin": args.tmin, "tmax": args.tmax, "budget": args.budget,
                   "escalate": not args.no_escalate, "csv_schema": CSV_SCHEMA}
            text = dump(envelope(cmd, cfg, clean, elapsed()))
        _emit(text.rstrip("\n"), args.out)
        return 1 if any(r["status"] in (FAILED, BUDGET) for r in records) else 0

    raise AssertionError(cmd)  # pragma: no cover


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

"""Compare the compiled kernels with the pure-Python ones.

    python benchmarks/bench_kernels.py [--repeat N]

Each row times one workload on both backends, checks that the results are
identical, and prints the speed-up.
"""

from __future__ import annotations

import argparse
import random
import timeit

from biquad import _backend, classify_field
from biquad.forms import PAIRS, rho_candidates, table1_diagonal, TABLE1
from biquad.quad import element_S


def _params(f):
    return f.m, f.s, f.t, f.q_index, f.basis_class.code


def sign_workload():
    rng = random.Random(1)
    f = classify_field(7, 11)
    vecs = [[rng.randint(-10**6, 10**6) for _ in range(4)] for _ in range(5000)]
    return lambda k: [k.sign4(*v, f.m, f.s, f.t) for v in vecs]


def dominated_workload():
    f = classify_field(5, 13)
    x = f.parse("30 + 4*sqrt(5) + 3*sqrt(13)")
    args = (*x.coords, *_params(f), False, False)
    return lambda k: k.scan_dominated(*args)


def roots_workload():
    f = classify_field(2, 23)
    x = f.parse("3*(4 + sqrt(23))") * f.parse("2 + sqrt(2)") * 6
    args = (*x.coords, *_params(f), 7)
    return lambda k: k.scan_roots(*args)


def _escalation_args(f, diag):
    lists = [rho_candidates(diag[i], diag[j]) for i, j in PAIRS]
    return ([x.coords for x in diag], [[x.coords for x in lst] for lst in lists], f.m, f.s, f.t, 10**8)


def escalation_workload():
    f = classify_field(2, 23)
    args = _escalation_args(f, [f.one(), f.parse("2 + sqrt(2)"), f.from_int(3), element_S(f)])
    return lambda k: [k.escalate_core(*args) for _ in range(200)]


def table_workload():
    runs = []
    for key in TABLE1:
        f = classify_field(*key)
        runs.append(_escalation_args(f, table1_diagonal(f)))
    return lambda k: [k.escalate_core(*a) for _ in range(200) for a in runs]


WORKLOADS = {
    "sign4 x5000": sign_workload,
    "scan_dominated": dominated_workload,
    "scan_roots": roots_workload,
    "escalate (2,23) x200": escalation_workload,
    "escalate table x200": table_workload,
}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    py = _backend.kernels("python")
    try:
        cy = _backend.kernels("cython")
    except ImportError:
        print("compiled kernels are not built; nothing to compare")
        return 1
    print(f"{'workload':<24}{'python s':>12}{'cython s':>12}{'speed-up':>10}")
    for name, make in WORKLOADS.items():
        job = make()
        assert job(py) == job(cy), name
        tp = min(timeit.repeat(lambda: job(py), number=1, repeat=args.repeat))
        tc = min(timeit.repeat(lambda: job(cy), number=1, repeat=args.repeat))
        print(f"{name:<24}{tp:>12.4f}{tc:>12.4f}{tp / tc:>9.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

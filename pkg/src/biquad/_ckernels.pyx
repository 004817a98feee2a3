# cython: language_level=3, boundscheck=False, wraparound=False, overflowcheck=True
"""Compiled twin of ``_pykernels``.

Same functions, same results.  Arithmetic runs on C long long with
overflow checking; an OverflowError tells the caller to rerun the
pure-Python version.  Signs are first tried at a fixed dyadic precision
and handed to the exact routine when that is not enough.
"""

from libc.stdlib cimport malloc, free
from math import isqrt

from ._pykernels import sign4 as _exact_sign4

cdef enum:
    KBITS = 24
cdef long long KSCALE = 1 << KBITS

cdef struct Ctx:
    long long m, s, t, g, rm, rs, rt


cdef int _ctx(Ctx* x, long long m, long long s, long long t) except -1:
    x.m = m
    x.s = s
    x.t = t
    a, b = m, s
    while b:
        a, b = b, a % b
    x.g = a
    x.rm = isqrt((<object>m) << (2 * KBITS))
    x.rs = isqrt((<object>s) << (2 * KBITS))
    x.rt = isqrt((<object>t) << (2 * KBITS))
    return 0


cdef inline int _acc(long long coef, long long r, long long* lo, long long* hi) except -1:
    if coef > 0:
        lo[0] += coef * r
        hi[0] += coef * (r + 1)
    elif coef < 0:
        lo[0] += coef * (r + 1)
        hi[0] += coef * r
    return 0


cdef int csign(long long a, long long b, long long c, long long d, Ctx* x) except -2:
    cdef long long lo, hi
    if b == 0 and c == 0 and d == 0:
        return (a > 0) - (a < 0)
    lo = a * KSCALE
    hi = lo
    _acc(b, x.rm, &lo, &hi)
    _acc(c, x.rs, &lo, &hi)
    _acc(d, x.rt, &lo, &hi)
    if lo >= 0:
        return 1
    if hi <= 0:
        return -1
    return _exact_sign4(a, b, c, d, x.m, x.s, x.t)


cdef int ctp(long long a, long long b, long long c, long long d, Ctx* x) except -1:
    if csign(a, b, c, d, x) <= 0:
        return 0
    if csign(a, -b, c, -d, x) <= 0:
        return 0
    if csign(a, b, -c, -d, x) <= 0:
        return 0
    if csign(a, -b, -c, d, x) <= 0:
        return 0
    return 1


cdef int cintegral(long long a, long long b, long long c, long long d, int qidx, int cls):
    cdef long long q, u, v, total, parity
    if qidx == 1:
        q = b; u = c; v = d
    elif qidx == 2:
        q = c; u = b; v = d
    else:
        q = d; u = b; v = c
    if cls == 1:
        return (a % 4 == 0 and q % 4 == 0 and u % 2 == 0 and v % 2 == 0
                and (u - v) % 4 == 0)
    if cls == 2 or cls == 3:
        return (a % 2 == 0 and q % 2 == 0 and u % 2 == 0 and v % 2 == 0
                and (a - q) % 4 == 0 and (u - v) % 4 == 0)
    parity = a & 1
    if (q & 1) != parity or (u & 1) != parity or (v & 1) != parity:
        return 0
    total = a + q + u + v
    if parity == 0:
        return total % 4 == 0
    if cls == 4:
        return total % 4 == 0
    return total % 4 == 2


cdef inline int cmul(long long* x, long long* y, long long* out, Ctx* k) except -1:
    cdef long long a = x[0], b = x[1], c = x[2], d = x[3]
    cdef long long e = y[0], f = y[1], h = y[2], q = y[3]
    out[0] = a * e + b * f * k.m + c * h * k.s + d * q * k.t
    out[1] = a * f + b * e + (c * q + d * h) * (k.s // k.g)
    out[2] = a * h + c * e + (b * q + d * f) * (k.m // k.g)
    out[3] = a * q + d * e + (b * h + c * f) * k.g
    return 0


cdef long long _isqrt_ll(long long n):
    return isqrt(n)


def sign4(a, b, c, d, m, s, t):
    cdef Ctx x
    _ctx(&x, m, s, t)
    return csign(a, b, c, d, &x)


def is_tp4(a, b, c, d, m, s, t):
    cdef Ctx x
    _ctx(&x, m, s, t)
    return bool(ctp(a, b, c, d, &x))


def integral4(a, b, c, d, int qidx, int cls):
    return bool(cintegral(a, b, c, d, qidx, cls))


def scan_dominated(long long A, long long B, long long C, long long D,
                   long long m, long long s, long long t, int qidx, int cls,
                   bint proper_only, bint first_only):
    cdef Ctx x
    cdef long long a, b, c, d, sa, sr, r1, r2
    cdef long long blo, bhi, clo, chi, dlo, dhi
    cdef bint zero, full
    _ctx(&x, m, s, t)
    out = []
    for a in range(0, A + 1):
        sa = a * a
        sr = (A - a) * (A - a)
        r1 = _isqrt_ll(sa // m)
        r2 = _isqrt_ll(sr // m)
        blo = max(-r1, B - r2)
        bhi = min(r1, B + r2)
        if blo > bhi:
            continue
        r1 = _isqrt_ll(sa // s)
        r2 = _isqrt_ll(sr // s)
        clo = max(-r1, C - r2)
        chi = min(r1, C + r2)
        if clo > chi:
            continue
        r1 = _isqrt_ll(sa // t)
        r2 = _isqrt_ll(sr // t)
        dlo = max(-r1, D - r2)
        dhi = min(r1, D + r2)
        if dlo > dhi:
            continue
        for b in range(blo, bhi + 1):
            for c in range(clo, chi + 1):
                for d in range(dlo, dhi + 1):
                    if not cintegral(a, b, c, d, qidx, cls):
                        continue
                    zero = a == 0 and b == 0 and c == 0 and d == 0
                    full = a == A and b == B and c == C and d == D
                    if proper_only and (zero or full):
                        continue
                    if not zero and not ctp(a, b, c, d, &x):
                        continue
                    if not full and not ctp(A - a, B - b, C - c, D - d, &x):
                        continue
                    out.append((a, b, c, d))
                    if first_only:
                        return out
    return out


def scan_roots(long long A, long long B, long long C, long long D,
               long long m, long long s, long long t, int qidx, int cls, int mask):
    cdef Ctx x
    cdef long long a, b, c, d, bound, amax, ra, rb, rc, bm, cm, dm
    cdef long long w[4]
    cdef long long sq[4]
    cdef long long e0, e1, e2, e3
    _ctx(&x, m, s, t)
    out = []
    bound = 4 * A
    if bound < 0:
        return out
    amax = _isqrt_ll(bound)
    for a in range(0, amax + 1):
        ra = bound - a * a
        bm = _isqrt_ll(ra // m) if mask & 1 else 0
        for b in range(-bm, bm + 1):
            if a == 0 and b < 0:
                continue
            rb = ra - b * b * m
            cm = _isqrt_ll(rb // s) if mask & 2 else 0
            for c in range(-cm, cm + 1):
                if a == 0 and b == 0 and c < 0:
                    continue
                rc = rb - c * c * s
                dm = _isqrt_ll(rc // t) if mask & 4 else 0
                for d in range(-dm, dm + 1):
                    if a == 0 and b == 0 and c == 0 and d < 0:
                        continue
                    if not cintegral(a, b, c, d, qidx, cls):
                        continue
                    w[0] = a; w[1] = b; w[2] = c; w[3] = d
                    cmul(w, w, sq, &x)
                    e0 = 4 * A - sq[0]
                    e1 = 4 * B - sq[1]
                    e2 = 4 * C - sq[2]
                    e3 = 4 * D - sq[3]
                    if (e0 == 0 and e1 == 0 and e2 == 0 and e3 == 0) or ctp(e0, e1, e2, e3, &x):
                        out.append((a, b, c, d))
    return out


cdef long long* _pack(list items) except NULL:
    cdef Py_ssize_t n = len(items), i
    cdef long long* buf = <long long*> malloc((4 * n + 4) * sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    for i in range(n):
        v = items[i]
        buf[4 * i] = v[0]
        buf[4 * i + 1] = v[1]
        buf[4 * i + 2] = v[2]
        buf[4 * i + 3] = v[3]
    return buf


cdef inline int csub(long long* x, long long* y, long long* out) except -1:
    out[0] = x[0] - y[0]
    out[1] = x[1] - y[1]
    out[2] = x[2] - y[2]
    out[3] = x[3] - y[3]
    return 0


def escalate_core(lams, rhos, long long m, long long s, long long t, long long budget):
    cdef Ctx x
    cdef Py_ssize_t n12, n13, n14, n23, n24, n34, i12, i13, i14, i23, i24, i34, j
    cdef long long examined = 0, block
    cdef long long *L, *R12, *R13, *R14, *R23, *R24, *R34
    cdef long long *S14, *S24, *S34, *Q33, *P1424, *P1434, *P2434, *Q13, *Q23
    cdef long long l2l3[4], l1l3[4], l1l2[4], c11[4], c22[4], c33[4]
    cdef long long c12[4], c13[4], c23[4], r1213[4], tmp[4], tmp2[4]
    cdef long long delta[4], base[4], x1[4], x2[4]
    cdef long long *u, *v, *w
    _ctx(&x, m, s, t)
    lst = [list(r) for r in rhos]
    n12, n13, n14, n23, n24, n34 = [len(r) for r in lst]
    if n12 == 0 or n13 == 0 or n14 == 0 or n23 == 0 or n24 == 0 or n34 == 0:
        return 0, None, True
    L = _pack(list(lams))
    R12 = _pack(lst[0]); R13 = _pack(lst[1]); R14 = _pack(lst[2])
    R23 = _pack(lst[3]); R24 = _pack(lst[4]); R34 = _pack(lst[5])
    S14 = <long long*> malloc(4 * n14 * sizeof(long long))
    S24 = <long long*> malloc(4 * n24 * sizeof(long long))
    Q33 = <long long*> malloc(4 * n34 * sizeof(long long))
    P1424 = <long long*> malloc(4 * n14 * n24 * sizeof(long long))
    P1434 = <long long*> malloc(4 * n14 * n34 * sizeof(long long))
    P2434 = <long long*> malloc(4 * n24 * n34 * sizeof(long long))
    Q13 = <long long*> malloc(4 * n14 * n34 * sizeof(long long))
    Q23 = <long long*> malloc(4 * n24 * n34 * sizeof(long long))
    S34 = <long long*> malloc(4 * n34 * sizeof(long long))
    try:
        if (S14 == NULL or S24 == NULL or S34 == NULL or Q33 == NULL or P1424 == NULL
                or P1434 == NULL or P2434 == NULL or Q13 == NULL or Q23 == NULL):
            raise MemoryError()
        for i14 in range(n14):
            cmul(&R14[4 * i14], &R14[4 * i14], &S14[4 * i14], &x)
        for i24 in range(n24):
            cmul(&R24[4 * i24], &R24[4 * i24], &S24[4 * i24], &x)
        for i34 in range(n34):
            cmul(&R34[4 * i34], &R34[4 * i34], &S34[4 * i34], &x)
        for i14 in range(n14):
            for i24 in range(n24):
                u = &P1424[4 * (i14 * n24 + i24)]
                cmul(&R14[4 * i14], &R24[4 * i24], u, &x)
                for j in range(4):
                    u[j] = 2 * u[j]
            for i34 in range(n34):
                u = &P1434[4 * (i14 * n34 + i34)]
                cmul(&R14[4 * i14], &R34[4 * i34], u, &x)
                for j in range(4):
                    u[j] = 2 * u[j]
        for i24 in range(n24):
            for i34 in range(n34):
                u = &P2434[4 * (i24 * n34 + i34)]
                cmul(&R24[4 * i24], &R34[4 * i34], u, &x)
                for j in range(4):
                    u[j] = 2 * u[j]
        cmul(&L[4], &L[8], l2l3, &x)
        cmul(&L[0], &L[8], l1l3, &x)
        cmul(&L[0], &L[4], l1l2, &x)
        block = n14 * n24 * n34
        for i12 in range(n12):
            cmul(&R12[4 * i12], &R12[4 * i12], tmp, &x)
            csub(l1l2, tmp, c33)
            for i34 in range(n34):
                cmul(c33, &S34[4 * i34], &Q33[4 * i34], &x)
            for i13 in range(n13):
                cmul(&R13[4 * i13], &R13[4 * i13], tmp, &x)
                csub(l1l3, tmp, c22)
                cmul(&R12[4 * i12], &R13[4 * i13], r1213, &x)
                for i23 in range(n23):
                    if examined + block > budget:
                        return examined, None, False
                    cmul(&R23[4 * i23], &R23[4 * i23], tmp, &x)
                    csub(l2l3, tmp, c11)
                    cmul(&R13[4 * i13], &R23[4 * i23], tmp, &x)
                    cmul(&R12[4 * i12], &L[8], tmp2, &x)
                    csub(tmp, tmp2, c12)
                    cmul(&R12[4 * i12], &R23[4 * i23], tmp, &x)
                    cmul(&L[4], &R13[4 * i13], tmp2, &x)
                    csub(tmp, tmp2, c13)
                    cmul(&L[0], &R23[4 * i23], tmp, &x)
                    csub(r1213, tmp, c23)
                    cmul(&L[0], c11, delta, &x)
                    cmul(&R12[4 * i12], c12, tmp, &x)
                    cmul(&R13[4 * i13], c13, tmp2, &x)
                    for j in range(4):
                        delta[j] = delta[j] + tmp[j] + tmp2[j]
                    cmul(&L[12], delta, base, &x)
                    for j in range(n14 * n34):
                        cmul(c13, &P1434[4 * j], &Q13[4 * j], &x)
                    for j in range(n24 * n34):
                        cmul(c23, &P2434[4 * j], &Q23[4 * j], &x)
                    for i14 in range(n14):
                        cmul(c11, &S14[4 * i14], tmp, &x)
                        csub(base, tmp, x1)
                        for i24 in range(n24):
                            cmul(c12, &P1424[4 * (i14 * n24 + i24)], tmp, &x)
                            cmul(c22, &S24[4 * i24], tmp2, &x)
                            for j in range(4):
                                x2[j] = x1[j] - tmp[j] - tmp2[j]
                            for i34 in range(n34):
                                u = &Q33[4 * i34]
                                v = &Q13[4 * (i14 * n34 + i34)]
                                w = &Q23[4 * (i24 * n34 + i34)]
                                if (x2[0] == u[0] + v[0] + w[0] and x2[1] == u[1] + v[1] + w[1]
                                        and x2[2] == u[2] + v[2] + w[2]
                                        and x2[3] == u[3] + v[3] + w[3]):
                                    examined += i14 * n24 * n34 + i24 * n34 + i34 + 1
                                    return examined, (i12, i13, i14, i23, i24, i34), True
                    examined += block
        return examined, None, True
    finally:
        free(L); free(R12); free(R13); free(R14); free(R23); free(R24); free(R34)
        free(S14); free(S24); free(S34); free(Q33); free(P1424); free(P1434)
        free(P2434); free(Q13); free(Q23)

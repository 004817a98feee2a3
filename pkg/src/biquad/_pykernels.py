"""Pure-Python hot loops.

Elements are passed as integer numerators ``(a, b, c, d)`` of
``a + b*sqrt(m) + c*sqrt(s) + d*sqrt(t)`` with the common denominator left
implicit; every routine here is invariant under positive scaling.  The
compiled module ``_ckernels`` exposes the same functions with the same
signatures and must return identical results.
"""

from __future__ import annotations

from math import isqrt

# signs of (sqrt m, sqrt s, sqrt t) under the four real embeddings
EMBEDDING_SIGNS = ((1, 1, 1), (-1, 1, -1), (1, -1, -1), (-1, -1, 1))

# integrality class codes
B1, B2, B3, B4A, B4B = 1, 2, 3, 4, 5

_ROOT_CACHE: dict[tuple[int, int], int] = {}


def _root(n: int, k: int) -> int:
    """floor(sqrt(n) * 2**k)."""
    key = (n, k)
    r = _ROOT_CACHE.get(key)
    if r is None:
        r = isqrt(n << (2 * k))
        if len(_ROOT_CACHE) < 65536:
            _ROOT_CACHE[key] = r
    return r


def sign4(a: int, b: int, c: int, d: int, m: int, s: int, t: int) -> int:
    """Exact sign of a + b*sqrt(m) + c*sqrt(s) + d*sqrt(t).

    The irrational parts are enclosed in dyadic intervals of width 2**-k;
    k doubles until the interval around the value excludes zero.  The
    radicands are non-squares, so each enclosure is open and a lower end
    of exactly zero already proves positivity.
    """
    if b == 0 and c == 0 and d == 0:
        return (a > 0) - (a < 0)
    k = 32
    while True:
        lo = hi = a << k
        for coef, n in ((b, m), (c, s), (d, t)):
            if coef:
                r = _root(n, k)
                if coef > 0:
                    lo += coef * r
                    hi += coef * (r + 1)
                else:
                    lo += coef * (r + 1)
                    hi += coef * r
        if lo >= 0:
            return 1
        if hi <= 0:
            return -1
        k *= 2


def is_tp4(a: int, b: int, c: int, d: int, m: int, s: int, t: int) -> bool:
    for e1, e2, e3 in EMBEDDING_SIGNS:
        if sign4(a, e1 * b, e2 * c, e3 * d, m, s, t) <= 0:
            return False
    return True


def is_nonneg4(a: int, b: int, c: int, d: int, m: int, s: int, t: int) -> bool:
    """Totally positive or zero."""
    if a == 0 and b == 0 and c == 0 and d == 0:
        return True
    return is_tp4(a, b, c, d, m, s, t)


def integral4(a: int, b: int, c: int, d: int, qidx: int, cls: int) -> bool:
    """Is (a + b*sqrt(m) + c*sqrt(s) + d*sqrt(t))/4 an algebraic integer?

    ``qidx`` (1, 2 or 3) says which of the three radicands plays the role
    of q in the integral basis; the conditions are symmetric in the other two.
    """
    if qidx == 1:
        q, x, y = b, c, d
    elif qidx == 2:
        q, x, y = c, b, d
    else:
        q, x, y = d, b, c
    if cls == B1:
        return (a % 4 == 0 and q % 4 == 0 and x % 2 == 0 and y % 2 == 0
                and (x - y) % 4 == 0)
    if cls == B2 or cls == B3:
        return (a % 2 == 0 and q % 2 == 0 and x % 2 == 0 and y % 2 == 0
                and (a - q) % 4 == 0 and (x - y) % 4 == 0)
    parity = a & 1
    if (q & 1) != parity or (x & 1) != parity or (y & 1) != parity:
        return False
    total = a + q + x + y
    if parity == 0:
        return total % 4 == 0
    if cls == B4A:
        return total % 4 == 0
    return total % 4 == 2


def mul4(x, y, m: int, s: int, t: int, g: int):
    """Product of two numerator vectors; g = gcd(m, s)."""
    a, b, c, d = x
    e, f, h, k = y
    return (
        a * e + b * f * m + c * h * s + d * k * t,
        a * f + b * e + (c * k + d * h) * (s // g),
        a * h + c * e + (b * k + d * f) * (m // g),
        a * k + d * e + (b * h + c * f) * g,
    )


def _span(centre: int, radius_sq: int, own_sq: int, n: int) -> tuple[int, int]:
    """Integer range for a coefficient z with z*z*n <= own_sq and
    (centre - z)**2 * n <= radius_sq."""
    r1 = isqrt(own_sq // n)
    r2 = isqrt(radius_sq // n)
    return max(-r1, centre - r2), min(r1, centre + r2)


def scan_dominated(A: int, B: int, C: int, D: int, m: int, s: int, t: int,
                   qidx: int, cls: int, proper_only: bool, first_only: bool):
    """Integral beta = (a, b, c, d)/4 with beta >= 0 and alpha - beta >= 0.

    alpha = (A, B, C, D)/4.  Results come out in lexicographic order.
    With ``proper_only`` the endpoints 0 and alpha are skipped; with
    ``first_only`` the scan stops at the first hit.
    """
    out = []
    for a in range(0, A + 1):
        sa = a * a
        sr = (A - a) * (A - a)
        blo, bhi = _span(B, sr, sa, m)
        if blo > bhi:
            continue
        clo, chi = _span(C, sr, sa, s)
        if clo > chi:
            continue
        dlo, dhi = _span(D, sr, sa, t)
        if dlo > dhi:
            continue
        for b in range(blo, bhi + 1):
            for c in range(clo, chi + 1):
                for d in range(dlo, dhi + 1):
                    if not integral4(a, b, c, d, qidx, cls):
                        continue
                    zero = a == 0 and b == 0 and c == 0 and d == 0
                    full = a == A and b == B and c == C and d == D
                    if proper_only and (zero or full):
                        continue
                    if not zero and not is_tp4(a, b, c, d, m, s, t):
                        continue
                    if not full and not is_tp4(A - a, B - b, C - c, D - d, m, s, t):
                        continue
                    out.append((a, b, c, d))
                    if first_only:
                        return out
    return out


def scan_roots(A: int, B: int, C: int, D: int, m: int, s: int, t: int,
               qidx: int, cls: int, mask: int):
    """Integral omega = (a, b, c, d)/4, first nonzero coordinate positive,
    with alpha - omega**2 >= 0 for alpha = (A, B, C, D)/4.

    trace(omega**2) <= trace(alpha) gives a*a + b*b*m + c*c*s + d*d*t <= 4*A.
    ``mask`` has bit i set when coordinate i (of b, c, d) may be nonzero.
    """
    g = _gcd(m, s)
    bound = 4 * A
    out = []
    if bound < 0:
        return out
    A16, B16, C16, D16 = 4 * A, 4 * B, 4 * C, 4 * D
    amax = isqrt(bound)
    for a in range(0, amax + 1):
        ra = bound - a * a
        bm = isqrt(ra // m) if mask & 1 else 0
        for b in range(-bm, bm + 1):
            if a == 0 and b < 0:
                continue
            rb = ra - b * b * m
            cm = isqrt(rb // s) if mask & 2 else 0
            for c in range(-cm, cm + 1):
                if a == 0 and b == 0 and c < 0:
                    continue
                rc = rb - c * c * s
                dm = isqrt(rc // t) if mask & 4 else 0
                for d in range(-dm, dm + 1):
                    if a == 0 and b == 0 and c == 0 and d < 0:
                        continue
                    if not integral4(a, b, c, d, qidx, cls):
                        continue
                    w = (a, b, c, d)
                    sq = mul4(w, w, m, s, t, g)
                    if is_nonneg4(A16 - sq[0], B16 - sq[1], C16 - sq[2], D16 - sq[3], m, s, t):
                        out.append(w)
    return out


def _gcd(x: int, y: int) -> int:
    while y:
        x, y = y, x % y
    return x


def _sub(x, y):
    return (x[0] - y[0], x[1] - y[1], x[2] - y[2], x[3] - y[3])


def _dbl(x):
    return (2 * x[0], 2 * x[1], 2 * x[2], 2 * x[3])


def escalate_core(lams, rhos, m: int, s: int, t: int, budget: int):
    """Look for a singular symmetric matrix with the given diagonal.

    ``lams`` holds the four diagonal numerator vectors and ``rhos`` the
    candidate lists for positions 12, 13, 14, 23, 24, 34.  The determinant
    is expanded along the last row and column:
    det G = l4 * Delta - v^T adj(A) v, with A the leading 3x3 block and
    v = (r14, r24, r34).

    Returns ``(examined, witness, exhausted)`` where ``witness`` is a tuple
    of six indices into the candidate lists or None, and ``exhausted`` is
    False when the budget stopped the scan early.
    """
    g = _gcd(m, s)

    def mul(x, y):
        return mul4(x, y, m, s, t, g)

    l1, l2, l3, l4 = lams
    R12, R13, R14, R23, R24, R34 = rhos
    if not all(rhos):
        return 0, None, True
    S14 = [mul(v, v) for v in R14]
    S24 = [mul(v, v) for v in R24]
    S34 = [mul(v, v) for v in R34]
    P1424 = [[_dbl(mul(x, y)) for y in R24] for x in R14]
    P1434 = [[_dbl(mul(x, y)) for y in R34] for x in R14]
    P2434 = [[_dbl(mul(x, y)) for y in R34] for x in R24]
    l2l3 = mul(l2, l3)
    l1l3 = mul(l1, l3)
    l1l2 = mul(l1, l2)
    n14, n24, n34 = len(R14), len(R24), len(R34)
    block = n14 * n24 * n34
    examined = 0
    for i12, r12 in enumerate(R12):
        c33 = _sub(l1l2, mul(r12, r12))
        Q33 = [mul(c33, x) for x in S34]
        for i13, r13 in enumerate(R13):
            c22 = _sub(l1l3, mul(r13, r13))
            c13_part = mul(r12, r13)  # r12*r13, reused below
            for i23, r23 in enumerate(R23):
                if examined + block > budget:
                    return examined, None, False
                c11 = _sub(l2l3, mul(r23, r23))
                c12 = _sub(mul(r13, r23), mul(r12, l3))
                c13 = _sub(mul(r12, r23), mul(l2, r13))
                c23 = _sub(c13_part, mul(l1, r23))
                delta = mul(l1, c11)
                t2 = mul(r12, c12)
                t3 = mul(r13, c13)
                delta = (delta[0] + t2[0] + t3[0], delta[1] + t2[1] + t3[1],
                         delta[2] + t2[2] + t3[2], delta[3] + t2[3] + t3[3])
                base = mul(l4, delta)
                Q13 = [[mul(c13, x) for x in row] for row in P1434]
                Q23 = [[mul(c23, x) for x in row] for row in P2434]
                for i14 in range(n14):
                    x1 = _sub(base, mul(c11, S14[i14]))
                    q13 = Q13[i14]
                    p12 = P1424[i14]
                    for i24 in range(n24):
                        y = mul(c12, p12[i24])
                        z = mul(c22, S24[i24])
                        x2 = (x1[0] - y[0] - z[0], x1[1] - y[1] - z[1],
                              x1[2] - y[2] - z[2], x1[3] - y[3] - z[3])
                        q23 = Q23[i24]
                        for i34 in range(n34):
                            u = Q33[i34]
                            v = q13[i34]
                            w = q23[i34]
                            if (x2[0] == u[0] + v[0] + w[0] and x2[1] == u[1] + v[1] + w[1]
                                    and x2[2] == u[2] + v[2] + w[2]
                                    and x2[3] == u[3] + v[3] + w[3]):
                                examined += i14 * n24 * n34 + i24 * n34 + i34 + 1
                                return examined, (i12, i13, i14, i23, i24, i34), True
                examined += block
    return examined, None, True

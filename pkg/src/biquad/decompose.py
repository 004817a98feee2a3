"""Bounded searches in the totally positive order: decompositions and squares."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from . import _backend as kern
from .errors import FieldMismatch
from .field import EMBEDDINGS, AlgebraicNumber, FieldSpec


def _need_integral(alpha: AlgebraicNumber, what: str) -> None:
    if not alpha.is_integral():
        raise ValueError(f"{what} needs an algebraic integer, got {alpha}")


def _params(f: FieldSpec):
    return f.m, f.s, f.t, f.q_index, f.basis_class.code


def dominated_by(alpha: AlgebraicNumber) -> list[AlgebraicNumber]:
    """All integers beta with 0 <= beta <= alpha, in lexicographic order.

    Both endpoints 0 and alpha are included.
    """
    _need_integral(alpha, "dominated_by")
    f = alpha.field
    if not alpha.is_totally_nonnegative():
        return []
    m, s, t, qi, cls = _params(f)
    hits = kern.scan_dominated(alpha.a, alpha.b, alpha.c, alpha.d, m, s, t, qi, cls, False, False)
    return [AlgebraicNumber(f, *h, 4) for h in hits]


def orbit_key(pair: tuple[AlgebraicNumber, AlgebraicNumber]) -> tuple:
    """Smallest (lexicographic) image of an unordered pair under the Galois group."""
    best = None
    for e in EMBEDDINGS:
        x, y = pair[0].conjugate(e), pair[1].conjugate(e)
        kx, ky = x.sort_key(), y.sort_key()
        key = (kx, ky) if kx <= ky else (ky, kx)
        if best is None or key < best:
            best = key
    return best


def orbit_representative(pair: tuple[AlgebraicNumber, AlgebraicNumber]) -> tuple[AlgebraicNumber, AlgebraicNumber]:
    f = pair[0].field
    (d0, *c0), (d1, *c1) = orbit_key(pair)
    return AlgebraicNumber(f, *c0, d0), AlgebraicNumber(f, *c1, d1)


@dataclass(frozen=True)
class DecompositionSet:
    target: AlgebraicNumber
    pairs: tuple[tuple[AlgebraicNumber, AlgebraicNumber], ...]
    canonical_orbits: tuple[tuple[AlgebraicNumber, AlgebraicNumber], ...]
    orbit_group: str = "galois"  # orbits are taken under all four embeddings

    def nontrivial_orbits(self) -> tuple[tuple[AlgebraicNumber, AlgebraicNumber], ...]:
        """Orbits whose parts are not both rational."""
        return tuple(p for p in self.canonical_orbits
                     if not (p[0].is_rational() and p[1].is_rational()))


def decompositions(alpha: AlgebraicNumber, include_zero: bool = False) -> DecompositionSet:
    """Unordered pairs {beta, alpha - beta} of totally nonnegative integers.

    Each pair is listed once, smaller member (lexicographically) first.
    Without ``include_zero`` the pair {0, alpha} is dropped.
    """
    betas = dominated_by(alpha)
    pairs = []
    for beta in betas:
        gamma = alpha - beta
        if beta.sort_key() > gamma.sort_key():
            continue
        if not include_zero and (beta.is_zero() or gamma.is_zero()):
            continue
        pairs.append((beta, gamma))
    orbits = {}
    for pair in pairs:
        key = orbit_key(pair)
        if key not in orbits:
            orbits[key] = orbit_representative(pair)
    canon = tuple(orbits[k] for k in sorted(orbits))
    return DecompositionSet(alpha, tuple(pairs), canon)


def is_indecomposable(alpha: AlgebraicNumber) -> bool:
    """Totally positive and not a sum of two totally positive integers."""
    _need_integral(alpha, "is_indecomposable")
    if not alpha.is_totally_positive():
        return False
    m, s, t, qi, cls = _params(alpha.field)
    hit = kern.scan_dominated(alpha.a, alpha.b, alpha.c, alpha.d, m, s, t, qi, cls, True, True)
    return not hit


def _canonical_sign(x: AlgebraicNumber) -> AlgebraicNumber:
    lead = next((v for v in x.coords if v), 0)
    return -x if lead < 0 else x


def sqrt_in_ring(alpha: AlgebraicNumber) -> AlgebraicNumber | None:
    """An integer omega with omega**2 == alpha, or None.

    The root is located from its embeddings: each sigma(omega) is
    +-sqrt(sigma(alpha)), and the coordinates of omega are fixed linear
    combinations of the four embedded values.  The embedded roots are
    computed in fixed point with enough bits that rounding recovers an
    existing root; every candidate is then checked exactly.  The returned
    root has its first nonzero coordinate positive.
    """
    f = alpha.field
    if alpha.is_zero():
        return f.zero()
    if not alpha.is_totally_positive():
        return None
    m, s, t = f.radicands
    den = alpha.den
    size = max(abs(v) for v in alpha.coords).bit_length() + max(m, s, t).bit_length()
    k = 2 * size + 128
    roots_fx = {n: isqrt(n << (2 * k)) for n in (m, s, t)}
    emb_roots = []
    for e in EMBEDDINGS:
        e1, e2, e3 = f.embedding_signs(e)
        # sigma_e(alpha) * 2^k, rounded down
        val = (alpha.a << k) + e1 * alpha.b * roots_fx[m] + e2 * alpha.c * roots_fx[s] + e3 * alpha.d * roots_fx[t]
        val //= den
        if val < 0:
            val = 0
        emb_roots.append(isqrt(val << k))  # sqrt(sigma_e(alpha)) * 2^k
    signs_table = [f.embedding_signs(e) for e in EMBEDDINGS]
    one = 1 << k
    for mask in range(8):
        eps = (1,) + tuple(-1 if mask >> j & 1 else 1 for j in range(3))
        vals = [eps[j] * emb_roots[j] for j in range(4)]
        # 4*omega's coordinates: a = sum sigma(omega); b*sqrt(m) = sum e1 sigma(omega), ...
        a = _round_div(sum(vals), one)
        coords = [a]
        for idx, n in enumerate((m, s, t)):
            acc = sum(signs_table[j][idx] * vals[j] for j in range(4))
            coords.append(_round_div(acc, roots_fx[n]))
        cand = AlgebraicNumber(f, *coords, 4)
        if cand.is_integral() and cand * cand == alpha:
            return _canonical_sign(cand)
    return None


def _round_div(x: int, y: int) -> int:
    return (2 * x + y) // (2 * y)


def sqrt_by_trace_search(alpha: AlgebraicNumber) -> AlgebraicNumber | None:
    """Reference square-root search over all omega with trace(omega^2) = trace(alpha)."""
    f = alpha.field
    if alpha.is_zero():
        return f.zero()
    if not alpha.is_totally_positive():
        return None
    m, s, t = f.radicands
    A4 = alpha.trace() * 4
    if A4.denominator != 1:
        return None
    bound = int(A4)
    for d in range(0, isqrt(bound // t) + 1):
        rd = bound - d * d * t
        for c in range(-isqrt(rd // s), isqrt(rd // s) + 1):
            rc = rd - c * c * s
            for b in range(-isqrt(rc // m), isqrt(rc // m) + 1):
                ra = rc - b * b * m
                a = isqrt(ra)
                if a * a != ra:
                    continue
                for aa in {a, -a}:
                    cand = AlgebraicNumber(f, aa, b, c, d, 4)
                    if cand.is_integral() and cand * cand == alpha:
                        return _canonical_sign(cand)
    return None


def _square_roots_under(alpha: AlgebraicNumber, within: int | None = None) -> list[AlgebraicNumber]:
    """omega (one of each +-pair) with alpha - omega^2 >= 0."""
    _need_integral(alpha, "square search")
    f = alpha.field
    if not alpha.is_totally_nonnegative():
        return []
    m, s, t, qi, cls = _params(f)
    mask = 7
    if within is not None:
        mask = 1 << (f.index_of(within) - 1)
    hits = kern.scan_roots(alpha.a, alpha.b, alpha.c, alpha.d, m, s, t, qi, cls, mask)
    return [AlgebraicNumber(f, *h, 4) for h in hits]


def square_parts(alpha: AlgebraicNumber) -> list[AlgebraicNumber]:
    """Distinct squares omega^2 of integers with omega^2 <= alpha, sorted."""
    roots = _square_roots_under(alpha)
    squares = {w * w for w in roots}
    return sorted(squares, key=AlgebraicNumber.sort_key)


def square_roots_under(alpha: AlgebraicNumber, within: int | None = None) -> list[AlgebraicNumber]:
    """All omega (both signs) with omega^2 <= alpha, sorted."""
    roots = _square_roots_under(alpha, within)
    out = set(roots)
    out.update(-w for w in roots)
    return sorted(out, key=AlgebraicNumber.sort_key)


def _subfield_of(alpha: AlgebraicNumber) -> int | None:
    f = alpha.field
    nz = [n for n, v in zip(f.radicands, alpha.coords[1:]) if v]
    if len(nz) == 1:
        return nz[0]
    return None


def divides(p: int, alpha: AlgebraicNumber) -> bool:
    """Is alpha / p an algebraic integer?"""
    return (alpha / p).is_integral()


def _odd_prime_factors(n: int) -> list[int]:
    out = []
    while n % 2 == 0:
        n //= 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 2
    if n > 1:
        out.append(n)
    return out


def odd_divisor_square_filter(alpha: AlgebraicNumber, n1: int | None = None) -> bool:
    """Necessary condition for a non-square alpha of Q(sqrt n1) to be a square in K.

    If some odd prime dividing gcd(n2, n3) does not divide alpha, the answer
    is False and alpha is certainly not a square in K.  True means "may be a
    square"; it proves nothing.  Squares of Q(sqrt n1) get True.
    """
    f = alpha.field
    if n1 is None:
        n1 = _subfield_of(alpha)
        if n1 is None:
            raise FieldMismatch("alpha does not lie in a single quadratic subfield; pass n1")
    if not alpha.in_subfield(n1):
        raise FieldMismatch(f"{alpha} is not in Q(sqrt({n1}))")
    if _quadratic_sqrt(alpha, n1) is not None:
        return True
    n2, n3 = f.others(n1)
    for p in _odd_prime_factors(gcd(n2, n3)):
        if not divides(p, alpha):
            return False
    return True


def _quadratic_sqrt(alpha: AlgebraicNumber, n: int) -> AlgebraicNumber | None:
    """Integral square root of alpha inside Q(sqrt n), if any.

    With alpha = x + y sqrt(n) and root u + v sqrt(n): u^2 + n v^2 = x and
    2uv = y, so u^2 = (x +- sqrt(N(alpha)))/2.
    """
    f = alpha.field
    x, *rest = alpha.rational_coords
    y = rest[f.index_of(n) - 1]
    disc = x * x - n * y * y
    if disc < 0:
        return None
    r = _rational_sqrt(disc)
    if r is None:
        return None
    for u2 in ((x + r) / 2, (x - r) / 2):
        u = _rational_sqrt(u2)
        if u is None:
            continue
        v = y / (2 * u) if u else _rational_sqrt((x - u2) / n)
        if v is None:
            continue
        cand = f.from_rational(u) + f.sqrt(n) * v
        if cand.is_integral() and cand * cand == alpha:
            return cand
    return None


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    a, b = isqrt(q.numerator), isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def trace_sq(x: AlgebraicNumber) -> Fraction:
    return (x * x).trace()

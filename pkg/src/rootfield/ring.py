"""Arithmetic in the quotient ring F_p[theta] / (theta**r - d).

Elements are coefficient vectors ``(a_0, ..., a_{r-1})`` standing for
``sum(a_i * theta**i)``. Products are schoolbook convolutions followed by the
reduction ``theta**(r+k) = d * theta**k``; exponentiation is left-to-right
square-and-multiply.

Multiplication counts charged per operation (``r`` = ring degree):

============================  ==========================
``ring_mul``                  ``r*r + (r - 1)``
``ring_sqr``                  ``r*(r + 1)/2 + (r - 1)``
``ring_mul_linear``           ``2*r + 1``
============================  ==========================
"""
from __future__ import annotations

from operator import mul
from typing import Sequence

import gmpy2
from gmpy2 import mpz

from .counting import count_inversion, count_mults
from .errors import InconsistencyError, NonInvertibleError, UsageError
from .fp import Fe, FieldCtx, to_hex

__all__ = [
    "RingCtx",
    "RingEl",
    "ring_one",
    "ring_zero",
    "ring_linear",
    "ring_mul",
    "ring_sqr",
    "ring_mul_linear",
    "ring_pow",
    "ring_inv",
    "ring_const",
]


class RingCtx:
    """F_p[theta]/(theta**r - d) for a fixed field, degree ``r >= 2`` and ``d != 0``."""

    __slots__ = ("field", "r", "d", "_d", "_p")

    def __init__(self, field: FieldCtx, r: int, d):
        r = int(r)
        if r < 2:
            raise UsageError(f"ring degree must be >= 2, got {r}")
        if isinstance(d, Fe) and d.ctx != field:
            raise UsageError("reduction constant belongs to a different field")
        d = int(d) % field.p
        if d == 0:
            raise UsageError("reduction constant d must be nonzero")
        self.field = field
        self.r = r
        self.d = Fe(d, field)
        self._d = mpz(d)
        self._p = field._p

    def __eq__(self, other):
        return (
            isinstance(other, RingCtx)
            and self.r == other.r
            and self.field == other.field
            and self._d == other._d
        )

    def __hash__(self):
        return hash((self.field.p, self.r, int(self._d)))

    def __repr__(self):
        return f"RingCtx(p=0x{self.field.p:x}, r={self.r}, d=0x{int(self._d):x})"

    def element(self, coeffs: Sequence) -> "RingEl":
        coeffs = list(coeffs)
        if len(coeffs) > self.r:
            raise UsageError(f"expected at most {self.r} coefficients, got {len(coeffs)}")
        coeffs += [0] * (self.r - len(coeffs))
        p = self._p
        return RingEl(self, tuple(mpz(int(c)) % p for c in coeffs))

    def one(self) -> "RingEl":
        return ring_one(self)

    def zero(self) -> "RingEl":
        return ring_zero(self)

    def linear(self, u, v) -> "RingEl":
        return ring_linear(self, u, v)


class RingEl:
    """Immutable ring element. ``coeffs`` gives plain ints, lowest degree first."""

    __slots__ = ("ctx", "_c")

    def __init__(self, ctx: RingCtx, c: tuple):
        self.ctx = ctx
        self._c = c

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(int(a) for a in self._c)

    def coeff(self, i: int) -> Fe:
        return Fe(self._c[i], self.ctx.field)

    def is_zero(self) -> bool:
        return not any(self._c)

    def is_linear(self) -> bool:
        return not any(self._c[2:])

    def hex(self) -> str:
        return ",".join(to_hex(a) for a in self._c)

    def __eq__(self, other):
        if isinstance(other, RingEl):
            return self.ctx == other.ctx and self._c == other._c
        if isinstance(other, (tuple, list)):
            return self.coeffs == tuple(int(a) for a in other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self._c))

    def __repr__(self):
        return f"RingEl({self.coeffs})"

    def __mul__(self, other):
        if isinstance(other, RingEl):
            return ring_mul(self, other)
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            return ring_pow(ring_inv(self), -e)
        return ring_pow(self, e)


def ring_zero(ctx: RingCtx) -> RingEl:
    return RingEl(ctx, (mpz(0),) * ctx.r)


def ring_one(ctx: RingCtx) -> RingEl:
    return RingEl(ctx, (mpz(1),) + (mpz(0),) * (ctx.r - 1))


def ring_linear(ctx: RingCtx, u, v) -> RingEl:
    """The element ``u + v*theta``."""
    p = ctx._p
    return RingEl(ctx, (mpz(int(u)) % p, mpz(int(v)) % p) + (mpz(0),) * (ctx.r - 2))


def _check_ctx(x: RingEl, y: RingEl) -> RingCtx:
    if x.ctx is not y.ctx and x.ctx != y.ctx:
        raise UsageError("ring elements belong to different rings")
    return x.ctx


# Raw kernels on tuples of mpz. Each charges its own multiplication count.

def _mul(a, b, r, d, p):
    out = []
    for l in range(r - 1):
        s = sum(map(mul, a[: l + 1], b[l::-1]))
        s += d * sum(map(mul, a[l + 1:], b[r - 1:l:-1]))
        out.append(s % p)
    out.append(sum(map(mul, a, b[::-1])) % p)
    count_mults(r * r + r - 1)
    return tuple(out)


def _sqr(a, r, d, p):
    out = []
    for l in range(r):
        # terms a_j * a_k with j + k = l, j <= k
        h = (l + 1) // 2
        s = 2 * sum(map(mul, a[:h], a[l:l - h:-1])) if h else 0
        if not l & 1:
            s += a[l >> 1] * a[l >> 1]
        if l < r - 1:
            # wrapped terms j + k = l + r with l < j <= k <= r - 1
            w = l + r
            lo, hi = l + 1, (w - 1) // 2
            t = 2 * sum(map(mul, a[lo:hi + 1], a[w - lo:w - hi - 1:-1])) if hi >= lo else 0
            if not w & 1:
                t += a[w >> 1] * a[w >> 1]
            s += d * t
        out.append(s % p)
    count_mults(r * (r + 1) // 2 + r - 1)
    return tuple(out)


def _mul_linear(a, u, v, r, d, p):
    out = [(u * a[0] + v * (d * a[r - 1] % p)) % p]
    for l in range(1, r):
        out.append((u * a[l] + v * a[l - 1]) % p)
    count_mults(2 * r + 1)
    return tuple(out)


def ring_mul(x: RingEl, y: RingEl) -> RingEl:
    """Schoolbook product reduced by theta**r = d."""
    ctx = _check_ctx(x, y)
    return RingEl(ctx, _mul(x._c, y._c, ctx.r, ctx._d, ctx._p))


def ring_sqr(x: RingEl) -> RingEl:
    """``x*x`` using the symmetry of the square (about half the products)."""
    ctx = x.ctx
    return RingEl(ctx, _sqr(x._c, ctx.r, ctx._d, ctx._p))


def ring_mul_linear(x: RingEl, u, v) -> RingEl:
    """``x * (u + v*theta)`` in 2r + 1 multiplications."""
    ctx = x.ctx
    p = ctx._p
    return RingEl(ctx, _mul_linear(x._c, mpz(int(u)) % p, mpz(int(v)) % p, ctx.r, ctx._d, p))


def ring_pow(a: RingEl, M: int) -> RingEl:
    """``a**M`` by left-to-right binary exponentiation.

    Each exponent bit below the leading one costs a squaring, and each set bit
    a multiplication by the original base (a linear-time product when the base
    is ``u + v*theta``). ``M == 0`` gives the identity.
    """
    M = int(M)
    if M < 0:
        raise UsageError("negative exponent; use ring_inv first")
    ctx = a.ctx
    if M == 0:
        return ring_one(ctx)
    r, d, p = ctx.r, ctx._d, ctx._p
    base = a._c
    linear = a.is_linear()
    u, v = base[0], base[1]
    acc = base
    for bit in bin(M)[3:]:
        acc = _sqr(acc, r, d, p)
        if bit == "1":
            acc = _mul_linear(acc, u, v, r, d, p) if linear else _mul(acc, base, r, d, p)
    return RingEl(ctx, acc)


# Dense polynomials for the inversion: lists of mpz, lowest degree first,
# without trailing zeros.

def _trim(f):
    while f and not f[-1]:
        f.pop()
    return f


def _pdivmod(f, g, p):
    f = list(f)
    dg = len(g) - 1
    inv_lead = gmpy2.invert(g[-1], p)
    count_inversion()
    q = [mpz(0)] * max(len(f) - dg, 0)
    n = 0
    for k in range(len(f) - 1 - dg, -1, -1):
        c = f[k + dg] * inv_lead % p
        n += 1
        if c:
            q[k] = c
            for j in range(dg):
                f[k + j] = (f[k + j] - c * g[j]) % p
            n += dg
        f[k + dg] = mpz(0)
    count_mults(n)
    return _trim(q), _trim(f[:dg])


def _pmul_sub(s0, q, s1, p):
    # s0 - q*s1
    out = [mpz(0)] * max(len(s0), len(q) + len(s1) - 1 if q and s1 else 0)
    for i, c in enumerate(s0):
        out[i] = c
    for i, qi in enumerate(q):
        for j, sj in enumerate(s1):
            out[i + j] -= qi * sj
    count_mults(len(q) * len(s1))
    return _trim([c % p for c in out])


def ring_inv(a: RingEl) -> RingEl:
    """Inverse via the extended Euclidean algorithm on a(theta) and theta**r - d.

    Raises :class:`NonInvertibleError` when ``a`` is zero or shares a factor
    with the modulus (the ring is then not a field at ``a``).
    """
    ctx = a.ctx
    r, p = ctx.r, ctx._p
    g = _trim(list(a._c))
    if not g:
        raise NonInvertibleError("zero element has no inverse")
    f = [(-ctx._d) % p] + [mpz(0)] * (r - 1) + [mpz(1)]
    r0, r1 = f, g
    s0, s1 = [], [mpz(1)]
    while len(r1) > 1:
        q, rem = _pdivmod(r0, r1, p)
        r0, r1 = r1, rem
        s0, s1 = s1, _pmul_sub(s0, q, s1, p)
    if not r1:
        raise NonInvertibleError(f"element is a zero divisor in {ctx!r}")
    c = gmpy2.invert(r1[0], p)
    count_inversion()
    count_mults(len(s1))
    inv = [x * c % p for x in s1]
    if len(inv) > r:
        raise InconsistencyError("inverse has degree >= r")
    inv += [mpz(0)] * (r - len(inv))
    return RingEl(ctx, tuple(inv))


def ring_const(a: RingEl, strict: bool = False) -> Fe:
    """The constant coefficient ``a_0``.

    With ``strict`` set, every higher coefficient must vanish, otherwise an
    :class:`InconsistencyError` names the first offending index.
    """
    if strict:
        for i, c in enumerate(a._c[1:], start=1):
            if c:
                raise InconsistencyError(
                    f"expected an element of F_p, coefficient of theta^{i} is nonzero"
                )
    return Fe(a._c[0], a.ctx.field)

"""Arithmetic in a prime field F_p, primality testing and prime generation.

Field elements are :class:`Fe` instances holding a canonical residue in
``[0, p)``. Every multiplication (including squarings inside :func:`fe_pow`)
is charged to the active :class:`~rootfield.counting.MulCounter`.
"""
from __future__ import annotations

import random

import gmpy2
from gmpy2 import mpz

from .counting import count_inversion, count_mults
from .errors import NonInvertibleError, PrimeSearchError, UsageError

__all__ = [
    "FieldCtx",
    "Fe",
    "fe_add",
    "fe_sub",
    "fe_mul",
    "fe_neg",
    "fe_pow",
    "fe_inv",
    "is_prime",
    "gen_prime_1_mod_r",
    "to_hex",
    "from_hex",
]

_SMALL_PRIMES = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    73, 79, 83, 89, 97,
)
# Bases 2..37 decide every n below this bound (Sorenson & Webster 2015).
_DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_DETERMINISTIC_LIMIT = 318665857834031151167461


def is_prime(n: int, rounds: int = 40) -> bool:
    """Miller-Rabin test.

    Deterministic below ~3.2e23; above that ``rounds`` pseudo-random bases are
    drawn from an RNG seeded with ``n``, so the verdict is reproducible.
    """
    n = int(n)
    if n < 2:
        return False
    for sp in _SMALL_PRIMES:
        if n % sp == 0:
            return n == sp
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    if n < _DETERMINISTIC_LIMIT:
        bases = _DETERMINISTIC_BASES
    else:
        rng = random.Random(n)
        bases = [rng.randrange(2, n - 1) for _ in range(rounds)]
    nn = mpz(n)
    for a in bases:
        x = gmpy2.powmod(a, d, nn)
        if x == 1 or x == nn - 1:
            continue
        for _ in range(s - 1):
            x = x * x % nn
            if x == nn - 1:
                break
        else:
            return False
    return True


def gen_prime_1_mod_r(bits: int, r: int, seed=None, max_candidates: int = 10**5) -> int:
    """Return a prime ``p`` of exactly ``bits`` bits with ``p % r == 1``.

    Candidates are ``p = k*r + 1`` (``k`` even when ``r`` is odd, so that ``p``
    is odd), scanned upward from a seeded random ``k`` and wrapping around
    inside the ``bits``-bit range.
    """
    if r < 2:
        raise UsageError(f"r must be > 1, got {r}")
    if bits < 3:
        raise UsageError(f"bits must be >= 3, got {bits}")
    stride = r if r % 2 == 0 else 2 * r
    lo, hi = 1 << (bits - 1), 1 << bits
    # p = m*stride + 1 with lo <= p < hi
    m_min = -(-(lo - 1) // stride)
    m_max = (hi - 2) // stride
    if m_min > m_max:
        raise PrimeSearchError(f"no {bits}-bit integer is 1 mod {r}")
    rng = random.Random(seed)
    m = rng.randint(m_min, m_max)
    for _ in range(min(max_candidates, m_max - m_min + 1)):
        p = m * stride + 1
        if is_prime(p):
            return p
        m = m + 1 if m < m_max else m_min
    raise PrimeSearchError(f"no {bits}-bit prime = 1 mod {r} found in {max_candidates} candidates")


def to_hex(n: int) -> str:
    return format(int(n), "x")


def from_hex(s: str) -> int:
    try:
        return int(s, 16)
    except (TypeError, ValueError):
        raise UsageError(f"not a hexadecimal integer: {s!r}") from None


class FieldCtx:
    """The prime field F_p.

    ``FieldCtx(p)`` verifies primality; :meth:`trusted` skips the check for
    known primes (test and bench speed).
    """

    __slots__ = ("p", "bits", "r_cache", "_p")

    def __init__(self, p: int, *, check: bool = True):
        p = int(p)
        if p < 3 or p % 2 == 0:
            raise UsageError(f"modulus must be an odd prime >= 3, got {p}")
        if check and not is_prime(p):
            raise UsageError(f"modulus {p} is not prime")
        self.p = p
        self.bits = p.bit_length()
        self.r_cache: dict[int, int] = {}
        self._p = mpz(p)

    @classmethod
    def trusted(cls, p: int) -> "FieldCtx":
        return cls(p, check=False)

    def exponent(self, r: int) -> int:
        """(p - 1) / r, cached per r."""
        e = self.r_cache.get(r)
        if e is None:
            if (self.p - 1) % r:
                raise UsageError(f"p = {self.p} is not 1 mod {r}")
            e = self.r_cache[r] = (self.p - 1) // r
        return e

    def __call__(self, value) -> "Fe":
        return Fe(value, self)

    def zero(self) -> "Fe":
        return Fe(0, self)

    def one(self) -> "Fe":
        return Fe(1, self)

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and other.p == self.p

    def __hash__(self):
        return hash(("FieldCtx", self.p))

    def __repr__(self):
        return f"FieldCtx(p=0x{self.p:x}, bits={self.bits})"


class Fe:
    """An element of F_p; ``value`` is always the canonical residue."""

    __slots__ = ("value", "ctx")

    def __init__(self, value, ctx: FieldCtx):
        self.value = int(value) % ctx.p
        self.ctx = ctx

    @classmethod
    def from_hex(cls, s: str, ctx: FieldCtx) -> "Fe":
        return cls(from_hex(s), ctx)

    def hex(self) -> str:
        return to_hex(self.value)

    def is_zero(self) -> bool:
        return self.value == 0

    def __int__(self):
        return self.value

    __index__ = __int__

    def __eq__(self, other):
        if isinstance(other, Fe):
            return self.ctx == other.ctx and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.ctx.p
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.p, self.value))

    def __repr__(self):
        return f"Fe({self.value})"

    def _coerce(self, other) -> "Fe":
        if isinstance(other, Fe):
            if other.ctx != self.ctx:
                raise UsageError("operands belong to different fields")
            return other
        if isinstance(other, int):
            return Fe(other, self.ctx)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else fe_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else fe_sub(self, other)

    def __rsub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else fe_sub(other, self)

    def __mul__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else fe_mul(self, other)

    __rmul__ = __mul__

    def __neg__(self):
        return fe_neg(self)

    def __pow__(self, e: int):
        if e < 0:
            return fe_pow(fe_inv(self), -e)
        return fe_pow(self, e)

    def inverse(self) -> "Fe":
        return fe_inv(self)


def _same_field(a: Fe, b: Fe) -> FieldCtx:
    if a.ctx != b.ctx:
        raise UsageError("operands belong to different fields")
    return a.ctx


def fe_add(a: Fe, b: Fe) -> Fe:
    ctx = _same_field(a, b)
    return Fe(a.value + b.value, ctx)


def fe_sub(a: Fe, b: Fe) -> Fe:
    ctx = _same_field(a, b)
    return Fe(a.value - b.value, ctx)


def fe_neg(a: Fe) -> Fe:
    return Fe(-a.value, a.ctx)


def fe_mul(a: Fe, b: Fe) -> Fe:
    ctx = _same_field(a, b)
    count_mults(1)
    return Fe(a.value * b.value, ctx)


def fe_pow(a: Fe, e: int) -> Fe:
    """Right-to-left binary exponentiation; 0**0 == 1.

    Uses bitlen(e) - 1 squarings and popcount(e) multiplications, so the
    counted cost lies in [bitlen(e), 2*bitlen(e)).
    """
    e = int(e)
    if e < 0:
        raise UsageError("negative exponent; use fe_inv first")
    ctx = a.ctx
    p = ctx._p
    base = mpz(a.value)
    acc = mpz(1)
    n = 0
    while e:
        if e & 1:
            acc = acc * base % p
            n += 1
        e >>= 1
        if e:
            base = base * base % p
            n += 1
    count_mults(n)
    return Fe(acc, ctx)


def fe_inv(a: Fe) -> Fe:
    if a.value == 0:
        raise NonInvertibleError("0 has no inverse")
    count_inversion()
    return Fe(gmpy2.invert(a.value, a.ctx._p), a.ctx)

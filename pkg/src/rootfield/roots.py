"""r-th root extraction in F_p by three Cipolla-Lehmer type methods.

All three work in the ring F_p[theta]/(theta**r - d) with ``d = b**r - c`` for
a witness ``b`` making ``omega = d**((p-1)/r)`` a primitive r-th root of
unity, and with ``alpha = b - theta``. Since ``alpha**(p**i) = b - omega**i *
theta`` and the conjugates multiply to ``c``, the constant
``alpha**((1 + p + ... + p**(r-1)) / r)`` is an r-th root of ``c``. The
methods differ only in how they reach that power:

* :func:`root_hc` (H. C. Williams) raises ``alpha`` to the full exponent,
  about ``r*log2(p)`` bits long.
* :func:`root_wh` (Williams-Hardy) splits the power into
  ``E1**((p-1)/r) * E2`` where ``E1`` and ``E2`` are products of conjugates
  raised to binomial-coefficient exponents.
* :func:`root_new` accumulates ``P = alpha * alpha**(1+p) * ... *
  alpha**(1+p+...+p**(r-2))`` from conjugates with ``r - 2`` cheap steps and
  returns ``alpha * P**((p-1)/r)``. Works for every ``r > 1``.
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import NamedTuple

from .counting import MulCounter, count_iteration, counting, phase
from .errors import (
    InconsistencyError,
    NonResidueError,
    NotApplicableError,
    UsageError,
    WitnessSearchError,
)
from .fp import Fe, FieldCtx, fe_mul, fe_pow
from .ring import (
    RingCtx,
    ring_const,
    ring_inv,
    ring_linear,
    ring_mul,
    ring_mul_linear,
    ring_one,
    ring_pow,
)

__all__ = [
    "AlgoId",
    "RootProblem",
    "RootWitness",
    "Extraction",
    "prime_factors",
    "is_rth_residue",
    "is_primitive_witness",
    "witness_from_b",
    "find_witness",
    "check_applicable",
    "root_hc",
    "root_wh",
    "root_new",
    "wh_exponents",
    "all_roots",
    "oracle_roots",
    "extract",
    "ALGORITHMS",
]

MAX_R = 1 << 20
ORACLE_LIMIT = 1 << 20


class AlgoId(str, enum.Enum):
    HC = "HC"
    WH = "WH"
    NEW = "NEW"

    @classmethod
    def parse(cls, s) -> "AlgoId":
        if isinstance(s, cls):
            return s
        try:
            return cls(str(s).upper())
        except ValueError:
            raise UsageError(f"unknown algorithm {s!r}; choose from hc, wh, new") from None

    def __str__(self):
        return self.value


def prime_factors(n: int) -> tuple[int, ...]:
    """Distinct prime divisors of ``n`` by trial division."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return tuple(out)


@dataclass(frozen=True)
class RootProblem:
    """Solve ``x**r == c`` in ``field``; requires ``p % r == 1``."""

    field: FieldCtx
    r: int
    c: Fe

    def __post_init__(self):
        if not 1 < self.r <= MAX_R:
            raise UsageError(f"r must satisfy 1 < r <= 2**20, got {self.r}")
        if self.field.p % self.r != 1:
            raise UsageError(f"p = {self.field.p} is not 1 mod {self.r}")
        c = self.c
        if isinstance(c, Fe):
            if c.ctx != self.field:
                raise UsageError("c belongs to a different field")
        else:
            object.__setattr__(self, "c", Fe(c, self.field))

    @classmethod
    def make(cls, p: int, r: int, c: int, *, trusted: bool = False) -> "RootProblem":
        field = FieldCtx.trusted(p) if trusted else FieldCtx(p)
        return cls(field, r, Fe(c, field))

    @cached_property
    def prime_factors(self) -> tuple[int, ...]:
        return prime_factors(self.r)

    @property
    def r_is_odd_prime(self) -> bool:
        return self.r > 2 and self.prime_factors == (self.r,)

    @property
    def exponent(self) -> int:
        return self.field.exponent(self.r)


@dataclass(frozen=True)
class RootWitness:
    b: Fe
    d: Fe
    omega: Fe
    trials: int = 0


class Extraction(NamedTuple):
    root: Fe
    witness: RootWitness | None
    counter: MulCounter


def is_rth_residue(prob: RootProblem) -> bool:
    """Euler's criterion ``c**((p-1)/r) == 1``; ``c == 0`` counts as a residue."""
    if prob.c.is_zero():
        return True
    return fe_pow(prob.c, prob.exponent) == 1


def is_primitive_witness(prob: RootProblem, omega: Fe) -> bool:
    """True iff ``omega`` has multiplicative order exactly ``r``."""
    r = prob.r
    if fe_pow(omega, r) != 1:
        return False
    return all(fe_pow(omega, r // q) != 1 for q in prob.prime_factors)


def witness_from_b(prob: RootProblem, b) -> RootWitness | None:
    """The witness for a given ``b``, or None if ``b`` is unsuitable."""
    b = Fe(b, prob.field)
    d = fe_pow(b, prob.r) - prob.c
    if d.is_zero():
        return None
    omega = fe_pow(d, prob.exponent)
    if not is_primitive_witness(prob, omega):
        return None
    return RootWitness(b, d, omega)


def find_witness(prob: RootProblem, seed=None, max_trials: int | None = None, *, b=None) -> RootWitness:
    """Draw ``b`` uniformly from F_p until ``(b**r - c)**((p-1)/r)`` is a
    primitive r-th root of unity.

    For prime ``r`` a draw succeeds with probability about ``1 - 1/r``.
    Passing ``b`` forces that value and raises if it is unsuitable.
    """
    with phase("witness"):
        if b is not None:
            w = witness_from_b(prob, b)
            if w is None:
                raise WitnessSearchError(f"b = {int(b)} does not give a primitive witness")
            return w
        if max_trials is None:
            max_trials = 64 * prob.r
        rng = random.Random(seed)
        p = prob.field.p
        for rejected in range(max_trials):
            w = witness_from_b(prob, rng.randrange(p))
            if w is not None:
                return RootWitness(w.b, w.d, w.omega, rejected)
    raise WitnessSearchError(
        f"no witness in {max_trials} trials (is c an r-th power residue?)"
    )


def check_applicable(algo: AlgoId, r: int) -> None:
    algo = AlgoId.parse(algo)
    if algo is AlgoId.NEW:
        return
    if r < 3 or prime_factors(r) != (r,):
        raise NotApplicableError(f"{algo.value} requires r to be an odd prime, got r = {r}")


def _ring(prob: RootProblem, w: RootWitness) -> RingCtx:
    return RingCtx(prob.field, prob.r, w.d)


def _finish(prob: RootProblem, el) -> Fe:
    with phase("assembly"):
        x = ring_const(el, strict=True)
    with phase("verify"):
        if fe_pow(x, prob.r) != prob.c:
            raise InconsistencyError(f"x**{prob.r} != c; witness or algorithm failure")
    return x


def root_new(prob: RootProblem, w: RootWitness, trace: dict | None = None) -> Fe:
    """r-th root of ``c`` as ``alpha * P**((p-1)/r)``.

    ``P`` is built in ``r - 2`` steps. Step ``i`` forms the conjugate
    ``V = b - omega**i * theta`` (so ``V == alpha**(p**i)``), updates
    ``A = A * V == alpha**(1 + p + ... + p**i)`` with a linear product, then
    ``P = P * A``. For ``r == 2`` the loop is empty and this is Cipolla's
    square root.

    When ``trace`` is a dict it receives the accumulated ``P``, its power,
    the final ring element and the loop iteration count.
    """
    ctx = _ring(prob, w)
    b = w.b
    alpha = ring_linear(ctx, b, -1)
    P = A = alpha
    W = prob.field.one()
    steps = 0
    with phase("accumulation"):
        for _ in range(1, prob.r - 1):
            W = fe_mul(W, w.omega)
            A = ring_mul_linear(A, b, -W)
            P = ring_mul(P, A)
            steps += 1
            count_iteration("accumulation")
    with phase("exponentiation"):
        Pe = ring_pow(P, prob.exponent)
    with phase("assembly"):
        out = ring_mul_linear(Pe, b, -1)
    if trace is not None:
        trace.update(accumulated=P, powered=Pe, product=out, loop_iterations=steps)
    return _finish(prob, out)


def root_hc(prob: RootProblem, w: RootWitness) -> Fe:
    """r-th root of ``c`` as ``alpha**M`` with ``M = (1 + p + ... + p**(r-1)) / r``."""
    check_applicable(AlgoId.HC, prob.r)
    p, r = prob.field.p, prob.r
    M, rem = divmod((p**r - 1) // (p - 1), r)
    if rem:
        raise InconsistencyError("exponent sum is not divisible by r")
    alpha = ring_linear(_ring(prob, w), w.b, -1)
    with phase("exponentiation"):
        x = ring_pow(alpha, M)
    return _finish(prob, x)


def wh_exponents(r: int) -> tuple[list[int], list[int]]:
    """Signed exponents of the conjugates in Williams-Hardy's ``E1`` and ``E2``.

    ``e1[i]`` (``0 <= i <= r-2``) is the exponent of ``b - omega**i * theta``
    in ``E1``; ``e2[i-1]`` (``1 <= i <= r-1``) is the exponent of
    ``b - omega**(r-i-1) * theta`` in ``E2``. The ``E2`` exponents are
    integers only for prime ``r``; otherwise :class:`NotApplicableError`.
    """
    e1 = [(-1) ** (r - i) * comb(r - 2, i) for i in range(r - 1)]
    e2 = []
    for i in range(1, r):
        num = 1 - (-1) ** i * comb(r - 1, i)
        if num % r:
            raise NotApplicableError(f"E2 exponent for i = {i} is not an integer when r = {r}")
        e2.append(num // r)
    return e1, e2


def _signed_product(ctx: RingCtx, b: Fe, factors):
    # numerator and denominator are accumulated separately; one inversion at the end
    num = den = None
    for shift, e in factors:
        if e == 0:
            continue
        X = ring_pow(ring_linear(ctx, b, -shift), abs(e))
        if e > 0:
            num = X if num is None else ring_mul(num, X)
        else:
            den = X if den is None else ring_mul(den, X)
    if num is None:
        num = ring_one(ctx)
    if den is None:
        return num
    return ring_mul(num, ring_inv(den))


def root_wh(prob: RootProblem, w: RootWitness) -> Fe:
    """r-th root of ``c`` as ``E1**((p-1)/r) * E2`` (odd prime ``r`` only)."""
    check_applicable(AlgoId.WH, prob.r)
    r = prob.r
    e1, e2 = wh_exponents(r)
    ctx = _ring(prob, w)
    with phase("accumulation"):
        powers = [prob.field.one()]
        for _ in range(r - 1):
            powers.append(fe_mul(powers[-1], w.omega))
        E1 = _signed_product(ctx, w.b, ((powers[i], e) for i, e in enumerate(e1)))
        E2 = _signed_product(ctx, w.b, ((powers[r - i - 1], e) for i, e in enumerate(e2, start=1)))
    with phase("exponentiation"):
        E1 = ring_pow(E1, prob.exponent)
    with phase("assembly"):
        out = ring_mul(E1, E2)
    return _finish(prob, out)


ALGORITHMS = {AlgoId.HC: root_hc, AlgoId.WH: root_wh, AlgoId.NEW: root_new}


def all_roots(prob: RootProblem, x: Fe, w: RootWitness) -> list[Fe]:
    """All r roots ``x * omega**i``, sorted by value."""
    roots = [x]
    for _ in range(prob.r - 1):
        roots.append(roots[-1] * w.omega)
    roots.sort(key=int)
    if len({y.value for y in roots}) != prob.r:
        raise InconsistencyError("root set has repeated elements; omega is not primitive")
    return roots


def oracle_roots(prob: RootProblem) -> list[Fe]:
    """Brute force: every ``y`` in F_p with ``y**r == c``. Only for ``p < 2**20``."""
    p = prob.field.p
    if p >= ORACLE_LIMIT:
        raise UsageError(f"oracle_roots needs p < 2**20, got a {p.bit_length()}-bit p")
    r, c = prob.r, prob.c.value
    return [Fe(y, prob.field) for y in range(p) if pow(y, r, p) == c]


def extract(
    prob: RootProblem,
    algo=AlgoId.NEW,
    seed=None,
    *,
    witness: RootWitness | None = None,
    counter: MulCounter | None = None,
    max_trials: int | None = None,
) -> Extraction:
    """Find an r-th root of ``prob.c`` with the chosen algorithm.

    Checks applicability, handles ``c == 0``, rejects non-residues, searches
    for a witness (unless one is given) and verifies the result. The returned
    counter holds multiplications by phase: ``residue``, ``witness``,
    ``accumulation``, ``exponentiation``, ``assembly`` and ``verify``.
    """
    algo = AlgoId.parse(algo)
    check_applicable(algo, prob.r)
    with counting(counter) as cnt:
        if prob.c.is_zero():
            return Extraction(prob.field.zero(), None, cnt)
        with phase("residue"):
            if not is_rth_residue(prob):
                raise NonResidueError(f"c is not an r-th power residue mod p (r = {prob.r})")
        if witness is None:
            witness = find_witness(prob, seed, max_trials)
        x = ALGORITHMS[algo](prob, witness)
    return Extraction(x, witness, cnt)

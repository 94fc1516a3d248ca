"""Cipolla-Lehmer type r-th root extraction in prime fields.

Three algorithms are provided (:func:`root_hc`, :func:`root_wh`,
:func:`root_new`) over a small prime-field and quotient-ring layer that counts
every field multiplication.

>>> from rootfield import RootProblem, extract
>>> x, witness, counter = extract(RootProblem.make(13, 3, 8), "new", seed=1)
>>> x.value ** 3 % 13
8
"""
from .counting import MulCounter, count_mults, counting, phase
from .errors import (
    BudgetExceeded,
    InconsistencyError,
    NonInvertibleError,
    NonResidueError,
    NotApplicableError,
    PrimeSearchError,
    RootfieldError,
    UsageError,
    WitnessSearchError,
)
from .fp import (
    Fe,
    FieldCtx,
    fe_add,
    fe_inv,
    fe_mul,
    fe_neg,
    fe_pow,
    fe_sub,
    from_hex,
    gen_prime_1_mod_r,
    is_prime,
    to_hex,
)
from .ring import (
    RingCtx,
    RingEl,
    ring_const,
    ring_inv,
    ring_linear,
    ring_mul,
    ring_mul_linear,
    ring_one,
    ring_pow,
    ring_sqr,
    ring_zero,
)
from .roots import (
    ALGORITHMS,
    AlgoId,
    Extraction,
    RootProblem,
    RootWitness,
    all_roots,
    check_applicable,
    extract,
    find_witness,
    is_primitive_witness,
    is_rth_residue,
    oracle_roots,
    prime_factors,
    root_hc,
    root_new,
    root_wh,
    wh_exponents,
    witness_from_b,
)

__version__ = "0.1.0"

import random
from concurrent.futures import ThreadPoolExecutor

import pytest

from oracles import rth_powers
from rootfield import (
    AlgoId,
    FieldCtx,
    InconsistencyError,
    NonResidueError,
    NotApplicableError,
    RootProblem,
    RootWitness,
    UsageError,
    WitnessSearchError,
    all_roots,
    counting,
    extract,
    find_witness,
    gen_prime_1_mod_r,
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

CUBES_13 = rth_powers(13, 3)


def prob13(c, r=3):
    return RootProblem.make(13, r, c)


def test_cube_table_oracle():
    assert sorted(c for c in CUBES_13 if c) == [1, 5, 8, 12]
    assert CUBES_13[8] == [2, 5, 6]
    assert CUBES_13[1] == [1, 3, 9]


def test_problem_validation():
    with pytest.raises(UsageError):
        RootProblem.make(13, 5, 1)
    with pytest.raises(UsageError):
        RootProblem.make(13, 1, 1)
    with pytest.raises(UsageError):
        RootProblem.make(15, 2, 1)
    pr = RootProblem.make(13, 3, 21)
    assert pr.c.value == 8
    assert RootProblem.make(37, 12, 1).prime_factors == (2, 3)


def test_prime_factors():
    assert prime_factors(2) == (2,)
    assert prime_factors(9) == (3,)
    assert prime_factors(360) == (2, 3, 5)
    assert prime_factors(211) == (211,)


def test_is_rth_residue():
    assert is_rth_residue(prob13(8))
    assert not is_rth_residue(prob13(2))
    assert is_rth_residue(prob13(1))
    for c in range(1, 13):
        assert is_rth_residue(prob13(c)) == (c in CUBES_13)


def test_forced_witness_worked_instance():
    w = find_witness(prob13(8), b=1)
    assert (w.b, w.d, w.omega) == (1, 6, 9)
    assert 6**4 % 13 == 9 and 9**3 % 13 == 1
    with pytest.raises(WitnessSearchError):
        find_witness(prob13(8), b=2)  # d = 0


def test_witness_r4_rejects_square_roots_of_unity():
    p = 13
    F = FieldCtx(p)
    prob = RootProblem(F, 4, F(3))  # 2**4 = 16 = 3 (mod 13)
    assert is_rth_residue(prob)
    for b in range(p):
        d = (pow(b, 4, p) - 3) % p
        w = witness_from_b(prob, b)
        if d == 0:
            assert w is None
            continue
        omega = pow(d, 3, p)
        assert (w is not None) == (pow(omega, 2, p) != 1)


def test_find_witness_deterministic():
    prob = RootProblem.make(gen_prime_1_mod_r(64, 5, seed=1), 5, 243)
    assert find_witness(prob, seed=9) == find_witness(prob, seed=9)
    with pytest.raises(WitnessSearchError):
        find_witness(prob, seed=9, max_trials=0)


@pytest.mark.parametrize("r", [2, 3, 4, 6, 8, 9, 12])
def test_witness_invariants(r):
    p = gen_prime_1_mod_r(64, r, seed=r)
    prob = RootProblem.make(p, r, pow(31337, r, p))
    for s in range(10):
        w = find_witness(prob, seed=s)
        assert w.d == pow(w.b.value, r, p) - prob.c.value
        assert w.omega == pow(w.d.value, (p - 1) // r, p)
        assert pow(w.omega.value, r, p) == 1
        for q in prime_factors(r):
            assert pow(w.omega.value, r // q, p) != 1
        assert is_primitive_witness(prob, w.omega)


def test_root_new_worked_instance():
    prob = prob13(8)
    w = find_witness(prob, b=1)
    trace = {}
    x = root_new(prob, w, trace)
    assert trace["accumulated"] == (12, 2, 6)
    assert trace["powered"] == (10, 10, 10)
    assert trace["product"] == (2, 0, 0)
    assert trace["loop_iterations"] == 1
    assert x == 2 and 2 in CUBES_13[8]


def test_root_new_roots_of_unity():
    prob = prob13(1)
    for s in range(10):
        w = find_witness(prob, seed=s)
        assert root_new(prob, w).value in CUBES_13[1]


def test_root_new_r2_is_cipolla():
    p = gen_prime_1_mod_r(64, 4, seed=3)
    F = FieldCtx(p)
    prob = RootProblem(F, 2, F(pow(987654321, 2, p)))
    w = find_witness(prob, seed=1)
    assert w.omega == p - 1
    trace = {}
    x = root_new(prob, w, trace)
    assert trace["loop_iterations"] == 0
    # Cipolla: (b - theta)^((p+1)/2) with theta^2 = b^2 - c
    from rootfield import RingCtx, ring_linear, ring_pow

    cip = ring_pow(ring_linear(RingCtx(F, 2, w.d), w.b, -1), (p + 1) // 2)
    assert cip == (x.value, 0)


def test_root_hc_examples():
    prob = prob13(8)
    w = find_witness(prob, b=1)
    assert (1 + 13 + 169) // 3 == 61 and (1 + 13 + 169) % 3 == 0
    assert root_hc(prob, w).value in CUBES_13[8]
    for s in range(5):
        w = find_witness(prob13(1), seed=s)
        assert root_hc(prob13(1), w).value in CUBES_13[1]


@pytest.mark.parametrize("r", [2, 4, 6, 9])
def test_hc_wh_not_applicable(r):
    p = gen_prime_1_mod_r(64, r, seed=r)
    prob = RootProblem.make(p, r, 1)
    w = find_witness(prob, seed=0)
    with pytest.raises(NotApplicableError):
        root_hc(prob, w)
    with pytest.raises(NotApplicableError):
        root_wh(prob, w)
    assert pow(root_new(prob, w).value, r, p) == 1


def test_wh_exponents():
    assert wh_exponents(3) == ([-1, 1], [1, 0])
    e1, e2 = wh_exponents(5)
    assert e1 == [-1, 3, -3, 1]
    assert e2 == [1, -1, 1, 0]
    with pytest.raises(NotApplicableError):
        wh_exponents(4)
    with pytest.raises(NotApplicableError):
        wh_exponents(9)


@pytest.mark.parametrize("r", [3, 5, 7, 11, 13])
def test_wh_exponent_identity(r):
    """Exponents realized by E1^((q-1)/r) * E2 equal (1 + q + ... + q^(r-1)) / r
    as polynomials in q; checked by evaluating at several q = 1 (mod r)."""
    e1, e2 = wh_exponents(r)
    for q in (r + 1, 2 * r + 1, 10 * r + 1, 1000 * r + 1):
        # b - omega^i theta is alpha^(q^i)
        E1 = sum(e * q**i for i, e in enumerate(e1))
        E2 = sum(f * q ** (r - i - 1) for i, f in enumerate(e2, start=1))
        assert E1 == (q - 1) ** (r - 2)
        assert E1 * (q - 1) // r + E2 == (q**r - 1) // (q - 1) // r


def test_root_wh_examples():
    prob = prob13(8)
    w = find_witness(prob, b=1)
    assert root_wh(prob, w).value in CUBES_13[8]


def test_all_roots():
    prob = prob13(8)
    w = find_witness(prob, b=1)
    assert [y.value for y in all_roots(prob, prob.field(2), w)] == [2, 5, 6]
    p = 10009
    F = FieldCtx(p)
    prob = RootProblem(F, 2, F(pow(77, 2, p)))
    w = find_witness(prob, seed=1)
    assert [y.value for y in all_roots(prob, F(77), w)] == sorted([77, p - 77])
    bad = RootWitness(F(1), F(1), F(1))
    with pytest.raises(InconsistencyError):
        all_roots(prob, F(77), bad)


def test_oracle_roots():
    assert [y.value for y in oracle_roots(prob13(8))] == [2, 5, 6]
    assert oracle_roots(prob13(2)) == []
    assert [y.value for y in oracle_roots(prob13(0))] == [0]
    big = RootProblem.make(gen_prime_1_mod_r(32, 3, seed=0), 3, 1)
    with pytest.raises(UsageError):
        oracle_roots(big)


def test_extract_contract():
    x, w, counter = extract(prob13(8), AlgoId.NEW, seed=1)
    assert x.value in CUBES_13[8]
    assert w is not None and counter.total > 0
    assert set(counter.phases) >= {"residue", "witness", "exponentiation", "assembly", "verify"}
    with pytest.raises(NonResidueError):
        extract(prob13(2), "new")
    with pytest.raises(NonResidueError):
        extract(prob13(2), "hc")
    with pytest.raises(NotApplicableError):
        extract(RootProblem.make(13, 4, 1), "wh")
    with pytest.raises(NotApplicableError):
        extract(RootProblem.make(13, 4, 1), "hc")
    x, w, counter = extract(prob13(0), "new")
    assert x == 0 and w is None and counter.total == 0


def test_extract_given_witness_matches_all_algorithms():
    p = gen_prime_1_mod_r(128, 7, seed=4)
    F = FieldCtx(p)
    prob = RootProblem(F, 7, F(pow(2024, 7, p)))
    w = find_witness(prob, seed=3)
    xs = {a: extract(prob, a, witness=w).root for a in AlgoId}
    assert xs[AlgoId.HC] == xs[AlgoId.WH] == xs[AlgoId.NEW]


def test_strict_extraction_catches_bad_witness():
    # omega no longer matches the ring constant d, so the conjugates are wrong
    prob = prob13(8)
    w = find_witness(prob, b=1)
    bad = RootWitness(w.b, prob.field(5), w.omega)
    with pytest.raises(InconsistencyError):
        root_new(prob, bad)


@pytest.mark.parametrize("r", [3, 5, 7])
def test_soundness_sweep_small(r):
    for p in (r * k + 1 for k in range(2, 40, 2)):
        if not all(p % q for q in range(2, int(p**0.5) + 1)):
            continue
        F = FieldCtx(p)
        table = rth_powers(p, r)
        for c, ys in table.items():
            if c == 0:
                continue
            prob = RootProblem(F, r, F(c))
            w = find_witness(prob, seed=c)
            roots = {f(prob, w).value for f in (root_hc, root_wh, root_new)}
            assert len(roots) == 1 and roots <= set(ys)


@pytest.mark.parametrize("r", [3, 5, 7])
def test_accumulation_bound(r):
    p = gen_prime_1_mod_r(64, r, seed=0)
    prob = RootProblem.make(p, r, pow(5, r, p))
    w = find_witness(prob, seed=0)
    with counting() as c:
        root_new(prob, w)
    assert 0 < c.phases["accumulation"] <= (r + 1) ** 3
    assert c.iterations["accumulation"] == r - 2


def test_concurrent_counters_do_not_interleave():
    p = gen_prime_1_mod_r(128, 11, seed=0)
    F = FieldCtx(p)
    rng = random.Random(0)
    probs = [RootProblem(F, 11, F(pow(rng.randrange(1, p), 11, p))) for _ in range(8)]
    serial = [extract(pr, "new", seed=i).counter.as_dict() for i, pr in enumerate(probs)]
    with ThreadPoolExecutor(4) as ex:
        futs = [ex.submit(extract, pr, "new", i) for i, pr in enumerate(probs)]
        parallel = [f.result().counter.as_dict() for f in futs]
    assert parallel == serial

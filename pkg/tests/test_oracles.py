import random

import pytest

from unmixedpit import (AuditReport, PrimeField, UnivariatePoly, UnmixedCircuit, UnmixedProduct,
                        brute_force_is_zero, expand_gate, is_minimal, is_pseudo_simple,
                        random_unmixed_circuit, random_zero_circuit, schwartz_zippel_is_zero, simplify,
                        sparsity_audit)
from unmixedpit.oracles import FieldRNG, gate_sparsity_product, schwartz_zippel_witness

from conftest import P61


def x(var, n, beta=1):
    return UnmixedProduct(n, beta, {var: UnivariatePoly([0, 1], var, P61)})


def test_rng_is_reproducible_and_in_range():
    a, b = FieldRNG(42), FieldRNG(42)
    xs = [a.element() for _ in range(100)]
    assert xs == [b.element() for _ in range(100)]
    assert all(0 <= v < P61 for v in xs)
    assert xs != [FieldRNG(43).element() for _ in range(100)]
    small = FieldRNG(1, PrimeField(7))
    draws = [small.element() for _ in range(700)]
    assert set(draws) == set(range(7))
    assert all(small.nonzero() for _ in range(100))


def test_rng_matches_its_documented_recipe():
    # MT19937 seeded with the integer, 64-bit draws, rejection below the largest multiple of p
    r = random.Random(0)
    limit = ((1 << 64) // P61) * P61
    expected = []
    while len(expected) < 5:
        v = r.getrandbits(64)
        if v < limit:
            expected.append(v % P61)
    rng = FieldRNG(0)
    assert [rng.element() for _ in range(5)] == expected


def test_brute_force_examples():
    assert brute_force_is_zero(UnmixedCircuit(1, [x(1, 1), x(1, 1, -1)]))
    assert not brute_force_is_zero(UnmixedCircuit(2, [x(1, 2), x(2, 2)]))


def test_schwartz_zippel_examples():
    Z = UnmixedCircuit(1, [x(1, 1), x(1, 1, -1)])
    assert all(schwartz_zippel_is_zero(Z, 5, seed) for seed in range(20))
    C = UnmixedCircuit(1, [x(1, 1)])
    assert not schwartz_zippel_is_zero(C, 20, seed=0)
    assert schwartz_zippel_witness(C, 20, seed=0)[0] != 0
    with pytest.raises(ValueError):
        schwartz_zippel_is_zero(C, 0)


def test_schwartz_zippel_agrees_with_brute_force():
    for seed in range(500):
        C = random_unmixed_circuit(2 + seed % 2, 1 + seed % 3, 2, 0.7, 0.3, seed)
        assert schwartz_zippel_is_zero(C, 20, seed) == brute_force_is_zero(C)


def test_random_circuits_are_deterministic():
    a = random_unmixed_circuit(3, 3, 2, 0.6, 0.5, seed=9)
    b = random_unmixed_circuit(3, 3, 2, 0.6, 0.5, seed=9)
    assert a == b
    assert a != random_unmixed_circuit(3, 3, 2, 0.6, 0.5, seed=10)


def test_zero_fraction_one_always_plants_zero():
    for seed in range(60):
        n, k = 1 + seed % 3, 1 + seed % 6
        C = random_unmixed_circuit(n, k, 2, zero_fraction=1.0, seed=seed)
        assert C.k == k
        assert brute_force_is_zero(C)
        assert all(g.degree <= C.degree_cap for g in C.gates)


def test_zero_fraction_zero_never_collides():
    hits = sum(brute_force_is_zero(random_unmixed_circuit(2, 2, 2, 0.7, 0.0, seed)) for seed in range(1000))
    assert hits == 0


def test_zero_circuit_shapes():
    C = random_zero_circuit(1, 2, seed=0)
    assert C.k == 3 and brute_force_is_zero(C)
    C = random_zero_circuit(2, 3, seed=0)
    assert C.k == 5 and brute_force_is_zero(C)
    with pytest.raises(ValueError):
        random_zero_circuit(3, 2)


def test_zero_circuits_follow_the_expansion_template():
    # gates: (a1+b1)(a2+b2), -a1 a2, -a1 b2, -b1 a2, -b1 b2
    for seed in range(10):
        C = random_zero_circuit(2, 2, seed=seed, max_factor_degree=2)
        first, aa, ab, ba, bb = C.gates
        assert all(g.beta == P61 - 1 for g in (aa, ab, ba, bb))
        a1, a2 = aa.factors.get(1), aa.factors.get(2)
        b1, b2 = bb.factors.get(1), bb.factors.get(2)
        assert ab.factors.get(1) == a1 and ab.factors.get(2) == b2
        assert ba.factors.get(1) == b1 and ba.factors.get(2) == a2
        one = lambda v: UnivariatePoly([1], v, P61)  # noqa: E731
        for var, a, b in ((1, a1, b1), (2, a2, b2)):
            total = (a or one(var)) + (b or one(var))
            assert first.factors[var] == total.monic()[1]


def test_planted_circuits_are_usually_pseudo_simple_and_minimal():
    good = 0
    for seed in range(40):
        _, C = simplify(random_zero_circuit(2, 3, seed=seed))
        if is_pseudo_simple(C) and is_minimal(C, brute_force_is_zero):
            good += 1
    assert good >= 30


def test_audit_base_case():
    Z = UnmixedCircuit(1, [x(1, 1), x(1, 1, -1)])
    report = sparsity_audit(Z)
    assert report.zero and not report.pseudo_simple and report.passed
    _, base = simplify(Z)
    assert [g.factors for g in base.gates] == [{}, {}]
    report = sparsity_audit(base)
    assert report.sparsities == (1, 1)
    assert report.bound == 2 ** 20
    assert report.zero and report.pseudo_simple and report.minimal and report.passed
    assert report.to_tsv() == f"1,1\t{2**20}\ttrue\ttrue\ttrue\tpass"


def test_audit_on_planted_instances():
    for seed in range(20):
        _, C = simplify(random_zero_circuit(1 + seed % 2, 3, seed=seed))
        report = sparsity_audit(C)
        assert report.passed
        assert report.sparsities == tuple(len(expand_gate(g)) for g in C.gates)


def test_failed_audit_prints_fail():
    r = AuditReport((10,), 5, True, True, True, False)
    assert r.to_tsv() == "10\t5\ttrue\ttrue\ttrue\tFAIL"


def test_gate_sparsity_product():
    g = UnmixedProduct(2, 3, {1: UnivariatePoly([1, 0, 1], 1, P61), 2: UnivariatePoly([1, 2, 1], 2, P61)})
    assert gate_sparsity_product(g) == 6 == len(expand_gate(g))
    assert gate_sparsity_product(UnmixedProduct(2, 0)) == 0

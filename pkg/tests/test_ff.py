import pytest
from hypothesis import given
from hypothesis import strategies as st

from unmixedpit import FieldElement, FieldMismatchError, PrimeField, field_arith
from unmixedpit.ff import DEFAULT_FIELD, MERSENNE_61, is_prime, resolve_field

from conftest import elements

F101 = PrimeField(101)


def test_small_examples():
    assert field_arith(F101(57), F101(50), "add") == F101(6)
    assert field_arith(F101(7), F101(7), "div") == F101(1)
    with pytest.raises(ZeroDivisionError):
        field_arith(F101(1), F101(0), "div")


def test_default_modulus_is_mersenne_61():
    assert MERSENNE_61 == 2**61 - 1
    assert DEFAULT_FIELD.p == MERSENNE_61
    assert resolve_field(None) is DEFAULT_FIELD
    assert resolve_field(101) == F101


@pytest.mark.parametrize("n,expected", [
    (0, False), (1, False), (2, True), (3, True), (4, False), (101, True),
    (561, False),  # Carmichael
    (2**61 - 1, True), (2**61 + 1, False), (2**89 - 1, True), (3215031751, False),
])
def test_is_prime(n, expected):
    assert is_prime(n) is expected


def test_is_prime_matches_trial_division():
    def slow(n):
        return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))
    assert all(is_prime(n) == slow(n) for n in range(2000))


def test_rejects_composite_modulus():
    with pytest.raises(ValueError):
        PrimeField(100)


def test_mixing_fields_is_an_error():
    with pytest.raises(FieldMismatchError):
        F101(3) + PrimeField(103)(3)
    with pytest.raises(ValueError):
        field_arith(F101(1), F101(1), "pow")


def test_element_behaviour():
    a = F101(-1)
    assert int(a) == 100
    assert a == 100 and a == F101(201)
    assert 2 - F101(3) == F101(100)
    assert F101(3) ** -1 * 3 == 1
    assert hash(F101(5)) == hash(F101(106))
    assert not F101(0) and F101(1)
    with pytest.raises(AttributeError):
        a.value = 3


@given(elements(), elements(), elements())
def test_ring_axioms(a, b, c):
    F = DEFAULT_FIELD
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.sub(F.add(a, b), b) == a


@given(elements().filter(bool))
def test_fermat_and_inverse(a):
    F = DEFAULT_FIELD
    assert F.pow(a, F.p - 1) == 1
    assert F.mul(a, F.inv(a)) == 1
    assert F.div(a, a) == 1


@given(st.integers(-10**30, 10**30), st.integers(-10**30, 10**30))
def test_elements_agree_with_integer_arithmetic(x, y):
    p = F101.p
    assert int(F101(x) * F101(y)) == (x * y) % p
    assert int(F101(x) - F101(y)) == (x - y) % p

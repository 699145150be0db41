"""Coefficient-field arithmetic: frozen hand values, axioms, an independent
multiplication oracle, and the error contract."""

import itertools

import pytest

from hooleyff.base_field import TABLE_LIMIT, Field, field_create, is_prime, prime_factors
from hooleyff.errors import (
    DegreeMismatch,
    NotPrime,
    ReducibleModulus,
    TooLarge,
    ZeroArgument,
)


def naive_mul(field: Field, x: int, y: int) -> int:
    """Schoolbook product of coefficient vectors reduced by the modulus."""
    p, e = field.p, field.e
    a, b = field.coeffs(x), field.coeffs(y)
    prod = [0] * (2 * e - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            prod[i + j] = (prod[i + j] + ai * bj) % p
    for k in range(2 * e - 2, e - 1, -1):
        lead = prod[k]
        prod[k] = 0
        for t in range(e):
            prod[k - e + t] = (prod[k - e + t] - lead * field.modulus[t]) % p
    return field.from_coeffs(prod[:e])


def test_is_prime():
    assert [n for n in range(2, 30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert not is_prime(1) and not is_prime(0)
    assert prime_factors(720) == [2, 3, 5]
    assert prime_factors(1) == []


def test_construction_errors():
    with pytest.raises(NotPrime):
        Field(4)
    with pytest.raises(NotPrime):
        Field(1)
    with pytest.raises(DegreeMismatch):
        Field(3, 0)
    with pytest.raises(DegreeMismatch):
        Field(3, 2, [1, 0, 0, 1])  # degree 3 modulus for e = 2
    with pytest.raises(DegreeMismatch):
        Field(3, 2, [1, 0, 2])  # not monic
    with pytest.raises(ReducibleModulus):
        Field(2, 2, [1, 0, 1])  # x^2 + 1 = (x+1)^2 over F_2
    with pytest.raises(TooLarge):
        Field(2, 21)
    assert 2 ** 20 == TABLE_LIMIT


def test_frozen_generators_and_moduli():
    assert Field(3).generator == 2
    assert Field(5).generator == 2
    assert Field(7).generator == 3
    assert Field(2).generator == 1
    F4 = Field(2, 2)
    assert F4.modulus == (1, 1, 1)
    assert F4.generator == 2  # the root w itself
    F8 = Field(2, 3)
    assert F8.modulus == (1, 0, 1, 1)
    F9 = Field(3, 2)
    assert F9.modulus == (1, 0, 1)


def test_f4_hand_values():
    F4 = Field(2, 2)
    w = 2  # encoding of the adjoined root
    assert F4.mul(w, w) == F4.add(w, 1)  # w^2 = w + 1
    assert F4.mul(w, F4.mul(w, w)) == 1  # w^3 = 1
    assert F4.trace(0) == 0 and F4.trace(1) == 0
    assert F4.trace(w) == 1 and F4.trace(F4.mul(w, w)) == 1


@pytest.mark.parametrize("p,e", [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2), (2, 3)])
def test_axioms_exhaustive(p, e):
    F = Field(p, e)
    q = F.q
    for x, y in itertools.product(range(q), repeat=2):
        assert F.add(x, y) == F.add(y, x)
        assert F.mul(x, y) == F.mul(y, x)
        assert F.mul(x, y) == naive_mul(F, x, y)
        assert F.add(x, F.neg(x)) == 0
        assert F.sub(x, y) == F.add(x, F.neg(y))
        if y != 0:
            assert F.mul(F.div(x, y), y) == x
    for x, y, z in itertools.product(range(q), repeat=3):
        assert F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z))
        assert F.add(F.add(x, y), z) == F.add(x, F.add(y, z))
        assert F.mul(F.mul(x, y), z) == F.mul(x, F.mul(y, z))


@pytest.mark.parametrize("p,e", [(3, 1), (7, 1), (2, 2), (3, 2), (2, 4)])
def test_generator_and_dlog(p, e):
    F = Field(p, e)
    q = F.q
    seen = set()
    acc = 1
    for _ in range(q - 1):
        seen.add(acc)
        acc = F.mul(acc, F.generator)
    assert seen == set(range(1, q))  # full multiplicative order
    for x in range(1, q):
        assert F.pow(F.generator, F.dlog(x)) == x
    with pytest.raises(ZeroArgument):
        F.dlog(0)
    with pytest.raises(ZeroArgument):
        F.inv(0)


@pytest.mark.parametrize("p,e", [(2, 1), (5, 1), (2, 2), (3, 2), (2, 3), (5, 2)])
def test_trace_properties(p, e):
    F = Field(p, e)
    values = set()
    for x in range(F.q):
        t = F.trace(x)
        values.add(t)
        assert 0 <= t < p
        assert F.trace(F.frobenius(x)) == t  # Frobenius invariance
        for y in range(F.q):
            assert F.trace(F.add(x, y)) == (F.trace(x) + F.trace(y)) % p
    assert values == set(range(p))  # surjective onto the prime field


def test_pow_and_frobenius():
    F = Field(3, 2)
    for x in range(F.q):
        assert F.pow(x, 3) == F.frobenius(x)
        if x:
            assert F.pow(x, -1) == F.inv(x)
            assert F.pow(x, F.q - 1) == 1
    assert F.pow(0, 0) == 1 and F.pow(0, 5) == 0
    with pytest.raises(ZeroArgument):
        F.pow(0, -2)


def test_coeffs_round_trip():
    F = Field(5, 2)
    for x in range(F.q):
        assert F.from_coeffs(F.coeffs(x)) == x
    assert F.coeffs(0) == (0, 0)
    assert F.coeffs(1) == (1, 0)
    with pytest.raises(DegreeMismatch):
        F.from_coeffs([1, 2, 3])


def test_serialization_and_cache():
    F = Field(3, 2)
    doc = F.to_json()
    assert doc == {"p": 3, "e": 2, "modulus": [1, 0, 1]}
    assert Field.from_json(doc) == F
    assert field_create(3, 2) is field_create(3, 2)
    assert field_create(3) == Field(3)
    assert Field(3) != Field(5)
    assert hash(Field(3, 2)) == hash(Field(3, 2))

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weierstats.ffield import ENUMERATION_BOUND, Field, FieldError, parse_field


def test_prime_field_construction():
    f = Field(5)
    assert f.order == 5 and f.k == 1 and f.char == 5


def test_extension_uses_smallest_irreducible_modulus():
    f = Field(5, 2)
    # scan monic quadratics x^2 + c1 x + c0 by code c0 + 5 c1, testing
    # irreducibility by root absence (valid in degree 2)
    expected = None
    for code in range(25):
        c0, c1 = code % 5, code // 5
        if all((x * x + c1 * x + c0) % 5 for x in range(5)):
            expected = (c0, c1, 1)
            break
    assert f.modulus == expected == (2, 0, 1)


def test_non_prime_rejected():
    with pytest.raises(FieldError):
        Field(4)
    with pytest.raises(FieldError):
        Field(1)


def test_enumeration_order_and_cardinality():
    f5 = Field(5)
    els = list(f5.elements())
    assert len(els) == 5
    assert els[0] == f5.zero and els[1] == f5.one
    f25 = Field(5, 2)
    els25 = list(f25.elements())
    assert len(els25) == 25
    assert els25[0] == f25.zero and els25[1] == f25.one
    # identical order on a second run
    assert els25 == list(f25.elements())


def test_sum_of_all_elements_is_zero():
    f7 = Field(7)
    acc = f7.zero
    for x in f7.elements():
        acc = acc + x
    assert acc == f7.zero


def test_inverse():
    f5 = Field(5)
    assert f5.element(2).inverse() == f5.element(3)
    assert f5.one.inverse() == f5.one
    with pytest.raises(ZeroDivisionError):
        f5.zero.inverse()
    f25 = Field(5, 2)
    for x in f25.elements():
        if x:
            assert x * x.inverse() == f25.one


def test_enumeration_bound_guard():
    huge = Field(2, 29)  # order 2^29 > bound
    assert huge.order > ENUMERATION_BOUND
    with pytest.raises(FieldError):
        list(huge.elements())


@pytest.mark.parametrize("p,k", [(5, 1), (5, 2), (7, 1), (13, 1), (7, 3)])
def test_field_axioms_on_random_triples(p, k):
    f = Field(p, k)
    rng = random.Random(99)
    q = f.order
    for _ in range(1000):
        a, b, c = (f.from_code(rng.randrange(q)) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + (-a) == f.zero
        if b:
            assert b * b.inverse() == f.one


@pytest.mark.parametrize("p,k", [(5, 2), (3, 3), (7, 2)])
def test_frobenius_and_pth_root(p, k):
    f = Field(p, k)
    for x in f.elements():
        assert x ** (p**k) == x
        r = x.pth_root()
        assert r**p == x
    # additivity / multiplicativity of Frobenius on a sample
    rng = random.Random(7)
    for _ in range(200):
        a, b = f.from_code(rng.randrange(f.order)), f.from_code(rng.randrange(f.order))
        assert (a + b).frobenius() == a.frobenius() + b.frobenius()
        assert (a * b).frobenius() == a.frobenius() * b.frobenius()


@given(st.integers(min_value=0, max_value=24), st.integers(min_value=0, max_value=24))
@settings(max_examples=100)
def test_codes_round_trip_and_commutativity(ca, cb):
    f = Field(5, 2)
    a, b = f.from_code(ca), f.from_code(cb)
    assert a.code == ca
    assert a + b == b + a
    assert a * b == b * a


def test_parse_field():
    assert parse_field("7").order == 7
    assert parse_field("5^2").order == 25
    with pytest.raises(FieldError):
        parse_field("6")


def test_field_mismatch_rejected():
    a = Field(5).one
    b = Field(7).one
    with pytest.raises(FieldError):
        a + b

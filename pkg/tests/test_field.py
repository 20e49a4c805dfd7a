import itertools

import pytest
from hypothesis import given, settings, strategies as st

from multilin.errors import PreconditionError
from multilin.field import (
    Field,
    embed,
    enumerate_field,
    field_make,
    field_of_order,
    is_prime,
)

# every prime power up to 64
SMALL_ORDERS = [
    4, 8, 9, 16, 25, 27, 32, 49, 64,
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
]


def test_canonical_moduli():
    assert field_make(2).modulus == (0, 1)
    assert field_make(2, 2).modulus == (1, 1, 1)  # x^2 + x + 1
    assert field_make(3, 2).modulus == (1, 0, 1)  # x^2 + 1
    # lex comparison is low-degree first: x^3 + x^2 + 1 beats x^3 + x + 1
    assert field_make(2, 3).modulus == (1, 0, 1, 1)


def test_field_make_validation():
    with pytest.raises(PreconditionError):
        field_make(4)
    with pytest.raises(PreconditionError):
        field_make(2, 0)
    with pytest.raises(PreconditionError):
        field_make(2, 21)  # 2^21 above the scope cap
    with pytest.raises(PreconditionError):
        Field(2, 2, (0, 0, 1))  # x^2 is reducible


def test_enumeration_order_is_lex_on_coefficients():
    F4 = field_make(2, 2)
    assert [F4.coeffs(a) for a in enumerate_field(F4)] == [
        (0, 0), (0, 1), (1, 0), (1, 1),
    ]
    F9 = field_make(3, 2)
    coeffs = [F9.coeffs(a) for a in enumerate_field(F9)]
    assert coeffs == sorted(coeffs)
    assert len(set(coeffs)) == 9


def test_f4_multiplication_table():
    F4 = field_make(2, 2)
    x = F4.element([0, 1])
    assert F4.mul(x, x) == F4.element([1, 1])  # x^2 = x + 1
    assert F4.mul(x, F4.element([1, 1])) == F4.one  # x(x+1) = x^2 + x = 1


def test_prime_field_inverse():
    F5 = field_make(5)
    assert F5.inv(2) == 3
    assert all(F5.mul(a, F5.inv(a)) == 1 for a in range(1, 5))
    with pytest.raises(PreconditionError):
        F5.inv(0)


def test_wilson_product_f9():
    F9 = field_make(3, 2)
    prod = F9.one
    for a in range(1, 9):
        prod = F9.mul(prod, a)
    assert prod == F9.neg(F9.one)


@pytest.mark.parametrize("q", SMALL_ORDERS)
def test_field_axioms_exhaustive(q):
    F = field_of_order(q)
    elems = range(q)
    for a, b in itertools.product(elems, repeat=2):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.add(a, F.neg(a)) == 0
    # triples: associativity and distributivity
    for a, b, c in itertools.product(elems, repeat=3):
        assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
        assert F.add(a, F.add(b, c)) == F.add(F.add(a, b), c)
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    for a in range(1, q):
        assert F.mul(a, F.inv(a)) == F.one


@pytest.mark.parametrize("q", [4, 9, 8, 27, 25])
def test_frobenius(q):
    F = field_of_order(q)
    p = F.p
    frob = lambda a: F.pow(a, p)
    for a, b in itertools.product(range(q), repeat=2):
        assert frob(F.add(a, b)) == F.add(frob(a), frob(b))
        assert frob(F.mul(a, b)) == F.mul(frob(a), frob(b))


@pytest.mark.parametrize("p,e,r", [(2, 1, 2), (2, 2, 2), (3, 1, 2), (2, 1, 3), (3, 2, 2), (2, 4, 2)])
def test_embed_is_injective_homomorphism(p, e, r):
    src = field_make(p, e)
    dst = field_make(p, e * r)
    images = [embed(a, src, dst) for a in range(src.q)]
    assert len(set(images)) == src.q
    assert embed(src.one, src, dst) == dst.one
    assert embed(0, src, dst) == 0
    for a, b in itertools.product(range(src.q), repeat=2):
        assert embed(src.add(a, b), src, dst) == dst.add(images[a], images[b])
        assert embed(src.mul(a, b), src, dst) == dst.mul(images[a], images[b])
    # the image is exactly the fixed field of the q-power Frobenius
    fixed = [a for a in range(dst.q) if dst.pow(a, src.q) == a]
    assert sorted(images) == fixed


def test_embed_rejects_non_extension():
    with pytest.raises(PreconditionError):
        embed(1, field_make(2, 2), field_make(2, 3))
    with pytest.raises(PreconditionError):
        embed(1, field_make(2), field_make(3))


def test_fixed_points_count_in_extension():
    F4 = field_make(2, 2)
    F16 = field_make(2, 4)
    assert sum(1 for a in range(16) if F16.pow(a, 4) == a) == 4
    assert sum(1 for a in range(F4.q) if F4.pow(a, 2) == a) == 2


def test_serialization_roundtrip():
    for q in (2, 4, 9, 27):
        F = field_of_order(q)
        again = Field.from_dict(F.to_dict())
        assert again == F
        assert F.to_dict()["modulus"][-1] == 1


def test_scalar_and_element_encoding():
    F8 = field_make(2, 3)
    assert F8.scalar(1) == F8.one
    for a in range(8):
        assert F8.element(F8.coeffs(a)) == a


def test_is_prime():
    assert [n for n in range(2, 30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@given(st.integers(min_value=0, max_value=26), st.integers(min_value=0, max_value=26), st.integers(min_value=0, max_value=26))
@settings(max_examples=60, deadline=None)
def test_f27_axioms_sampled(a, b, c):
    F = field_make(3, 3)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))


def test_large_extension_log_arithmetic():
    # above the dense-table limit: exercises the discrete-log backend
    F = field_make(2, 10)
    one = F.one
    assert F.mul(one, one) == one
    x = F.element([0, 1])
    acc = one
    for _ in range(F.q - 1):
        acc = F.mul(acc, x)
    assert acc == one  # x^(q-1) = 1
    assert F.mul(x, F.inv(x)) == one
    assert F.pow(x, F.q - 1) == one

import pytest

from quillenlab.fields import (
    ExtensionField, field_create, field_from_order, factor_prime_power, is_prime,
)


def test_prime_fields():
    F2 = field_create(2, 1)
    assert F2.modulus == (0, 1)
    assert F2.q == 2
    F7 = field_create(7)
    assert F7.q == 7
    assert F7.mul(3, 5) == 1
    assert F7.inv(3) == 5


def test_gf4_modulus_is_unique_irreducible_quadratic():
    F4 = field_create(2, 2)
    assert F4.modulus == (1, 1, 1)   # x^2 + x + 1


def test_nonprime_characteristic_rejected():
    with pytest.raises(ValueError):
        field_create(4, 1)
    with pytest.raises(ValueError):
        field_create(1, 1)


def test_modulus_choice_is_deterministic():
    # least-encoding monic irreducibles for small binary fields
    assert field_create(2, 3).modulus == (1, 1, 0, 1)      # x^3+x+1
    assert field_create(2, 4).modulus == (1, 1, 0, 0, 1)   # x^4+x+1
    assert field_create(3, 2).modulus == (1, 0, 1)         # x^2+1


@pytest.mark.parametrize("p,k", [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3),
                                 (3, 2), (2, 4), (2, 5), (2, 6)])
def test_field_axioms_exhaustive(p, k):
    # all fields of size <= 64: associativity, commutativity, distributivity,
    # inverses, by full exhaustion
    F = field_create(p, k)
    assert F.q <= 64
    els = list(F.elements())
    for a in els:
        assert F.add(a, 0) == a
        assert F.mul(a, 1) == a
        assert F.mul(a, 0) == 0
        assert F.add(a, F.neg(a)) == 0
    for a in els:
        for b in els:
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)
    if F.q <= 16:
        for a in els:
            for b in els:
                for c in els:
                    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
                    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    for a in range(1, F.q):
        assert F.mul(a, F.inv(a)) == 1


def test_multiplicative_orders():
    F7 = field_create(7)
    assert F7.order(2) == 3
    assert F7.order(3) == 6
    assert F7.least_of_order(3) == 2
    assert F7.least_of_order(5) is None
    F4 = field_create(2, 2)
    assert F4.order(2) == 3 and F4.order(3) == 3


def test_pow_handles_negative_exponents():
    F7 = field_create(7)
    assert F7.pow(2, -1) == F7.inv(2)
    assert F7.pow(2, -3) == F7.inv(F7.pow(2, 3))


def test_factor_prime_power():
    assert factor_prime_power(8) == (2, 3)
    assert factor_prime_power(7) == (7, 1)
    assert factor_prime_power(49) == (7, 2)
    with pytest.raises(ValueError):
        factor_prime_power(12)
    assert field_from_order(16).k == 4


def test_extension_field_gf16_over_gf4():
    F4 = field_create(2, 2)
    E = ExtensionField(F4, 2)
    assert E.q == 16
    u = E.least_of_order(5)
    assert u is not None and E.order(u) == 5
    # the multiplication matrix realizes the element: its multiplicative
    # order as a matrix equals the element order
    from quillenlab.elements import Mat, element_order
    M = Mat(F4, E.mult_matrix_rows(u))
    assert element_order(M) == 5
    # and it is GF(4)-linear: theta(a*b) = theta(a) @ theta(b)
    a, b = 7, 11
    Ma = Mat(F4, E.mult_matrix_rows(a))
    Mb = Mat(F4, E.mult_matrix_rows(b))
    Mab = Mat(F4, E.mult_matrix_rows(E.mul(a, b)))
    assert Ma * Mb == Mab


def test_is_prime_small():
    primes = [n for n in range(2, 60) if is_prime(n)]
    assert primes == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]

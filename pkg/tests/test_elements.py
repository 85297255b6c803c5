import itertools
import random

import pytest

from quillenlab.elements import (
    Coset, Mat, Perm, beta_matrix, block_diag, commutes, conjugate,
    element_from_json, element_to_json, element_order, parse_perm, transvection,
)
from quillenlab.fields import field_create


def test_perm_basics():
    g = parse_perm("(1,2,3)(4,5)", 6)
    assert g.images == (2, 3, 1, 5, 4, 6)
    assert g.cycle_string() == "(1,2,3)(4,5)"
    assert (g * g.inverse()).is_identity()
    assert parse_perm("()", 4) == Perm.identity(4)
    with pytest.raises(ValueError):
        Perm((1, 1, 3))
    with pytest.raises(ValueError):
        parse_perm("(1,9)", 5)
    with pytest.raises(ValueError):
        parse_perm("1,2,3", 5)


def test_perm_parity_and_order():
    assert parse_perm("(1,2,3)", 5).is_even()
    assert not parse_perm("(1,2)", 5).is_even()
    assert parse_perm("(1,7)(2,3)", 8).is_even()
    assert element_order(parse_perm("(1,2,3,4,5)", 5)) == 5
    assert element_order(Perm.identity(3)) == 1
    assert element_order(parse_perm("(1,2)(3,4,5)", 5)) == 6


def test_conjugation_convention():
    # conjugate(x, g) = x g x^-1; on cycles, relabel points by x
    e1 = parse_perm("(1,2,3)", 8)
    c1 = parse_perm("(1,7)(2,3)", 8)
    assert conjugate(c1, e1) == parse_perm("(2,7,3)", 8)
    # the conjugate is not a power of e1
    assert conjugate(c1, e1) not in (e1, e1 * e1)


def test_conjugation_is_left_action_homomorphism():
    rng = random.Random(5)
    perms = [Perm(rng.sample(range(1, 7), 6)) for _ in range(6)]
    for x, g, h in itertools.product(perms, repeat=3):
        assert conjugate(x, g * h) == conjugate(x, g) * conjugate(x, h)
        assert conjugate(x * g, h) == conjugate(x, conjugate(g, h))
        assert element_order(conjugate(x, g)) == element_order(g)
    ident = Perm.identity(6)
    for g in perms:
        assert conjugate(ident, g) == g
        assert conjugate(g, g) == g
    # commuting pair: conjugation fixes
    a = parse_perm("(1,2)", 6)
    b = parse_perm("(3,4,5)", 6)
    assert conjugate(a, b) == b


def test_matrix_arithmetic():
    F2 = field_create(2)
    X = Mat(F2, [[0, 1], [1, 1]])
    assert element_order(X) == 3
    assert X.det() == 1
    assert (X * X.inverse()).is_identity()
    assert X ** 3 == Mat.identity(2, F2)
    assert X ** -1 == X.inverse()
    with pytest.raises(ZeroDivisionError):
        Mat(F2, [[1, 1], [1, 1]]).inverse()


def test_beta_and_transvection():
    F2 = field_create(2)
    assert beta_matrix(1, 2, 2, F2).rows == ((0, 1), (0, 0))
    with pytest.raises(ValueError):
        beta_matrix(0, 1, 2, F2)
    with pytest.raises(ValueError):
        beta_matrix(1, 3, 2, F2)
    F7 = field_create(7)
    t = transvection(1, 3, 3, F7)
    # inverse of I + b13 is I - b13
    assert t.inverse() == Mat(F7, [[1, 0, 6], [0, 1, 0], [0, 0, 1]])
    # transvection order equals the characteristic
    assert element_order(t) == 7
    assert element_order(transvection(1, 2, 2, field_create(2, 2))) == 2
    assert element_order(transvection(2, 1, 2, field_create(3))) == 3


def test_coset_equality_is_scalar_orbit():
    F7 = field_create(7)
    m = Mat(F7, [[1, 1], [0, 1]])
    a = Coset(m, 6)
    b = Coset(Mat(F7, [[3, 3], [0, 3]]), 6)
    assert a == b and hash(a) == hash(b)
    assert Coset(Mat.scalar(4, 2, F7), 6).is_identity()
    # PSL-style center: only the two square roots of 1
    c = Coset(m, 2)
    d = Coset(Mat(F7, [[6, 6], [0, 6]]), 2)
    e = Coset(Mat(F7, [[3, 3], [0, 3]]), 2)
    assert c == d and c != e


def test_coset_equivalence_relation_and_conjugation():
    F7 = field_create(7)
    reps = [Mat(F7, [[1, 1], [0, 1]]), Mat(F7, [[0, 1], [6, 0]]), Mat(F7, [[2, 0], [0, 4]])]
    scalars = [1, 2, 3]
    cosets = [Coset(m, 6) for m in reps]
    for cs, m, lam in zip(cosets, reps, scalars):
        scaled = Coset(Mat(F7, [[F7.mul(lam, x) for x in row] for row in m.rows]), 6)
        assert cs == scaled
        # conjugation is well defined on scalar orbits
        g = Coset(Mat(F7, [[0, 1], [1, 0]]), 6)
        assert conjugate(g, cs) == conjugate(g, scaled)


def test_coset_center_order_must_divide():
    F7 = field_create(7)
    with pytest.raises(ValueError):
        Coset(Mat.identity(2, F7), 4)   # 4 does not divide 6


def test_block_diag():
    F2 = field_create(2)
    X = Mat(F2, [[0, 1], [1, 1]])
    m = block_diag(F2, X, 2, X * X)
    assert m.n == 6
    assert m.rows[2][2] == 1 and m.rows[3][3] == 1
    assert element_order(m) == 3


def test_json_roundtrips():
    F4 = field_create(2, 2)
    els = [
        parse_perm("(1,2,3)(4,5)", 6),
        Mat(F4, [[2, 0], [1, 3]]),
        Coset(Mat(field_create(7), [[1, 1], [0, 1]]), 6),
    ]
    for g in els:
        assert element_from_json(element_to_json(g)) == g
    with pytest.raises(ValueError):
        element_from_json({"nope": 1})


def test_incompatible_conjugation_rejected():
    with pytest.raises(TypeError):
        conjugate(Perm.identity(3), Mat.identity(2, field_create(2)))


def test_commutes():
    a = parse_perm("(1,2)", 5)
    b = parse_perm("(3,4)", 5)
    c = parse_perm("(2,3)", 5)
    assert commutes(a, b)
    assert not commutes(a, c)

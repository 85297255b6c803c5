import numpy as np
from hypothesis import given, settings, strategies as st

from quillenlab.snf import is_unimodular, smith_normal_form, verify_certificate


def test_zero_matrix():
    res = smith_normal_form(np.zeros((3, 4), dtype=int))
    assert res.invariants == [0, 0, 0]
    assert verify_certificate(np.zeros((3, 4), dtype=int), res)


def test_diag_2_3():
    M = [[2, 0], [0, 3]]
    res = smith_normal_form(M)
    assert res.invariants == [1, 6]
    assert verify_certificate(M, res)


def test_identity():
    res = smith_normal_form(np.eye(5, dtype=int))
    assert res.invariants == [1] * 5


def test_single_entry_torsion():
    res = smith_normal_form([[2]])
    assert res.invariants == [2]
    assert res.torsion == [2]
    assert res.rank == 1


def test_empty_shapes():
    assert smith_normal_form(np.zeros((0, 5), dtype=int)).invariants == []
    assert smith_normal_form(np.zeros((5, 0), dtype=int)).invariants == []


def test_hundred_random_certificates():
    rng = np.random.RandomState(12345)
    for trial in range(100):
        m = rng.randint(1, 31)
        n = rng.randint(1, 31)
        M = rng.randint(-50, 51, size=(m, n))
        res = smith_normal_form(M)
        assert verify_certificate(M, res), trial
        nz = [x for x in res.invariants if x != 0]
        for a, b in zip(nz, nz[1:]):
            assert b % a == 0
        assert all(x >= 0 for x in res.invariants)


def test_transforms_are_unimodular():
    rng = np.random.RandomState(7)
    for _ in range(10):
        M = rng.randint(-9, 10, size=(6, 8))
        res = smith_normal_form(M)
        assert is_unimodular(res.u)
        assert is_unimodular(res.v)


def test_big_entries_fall_back_to_exact():
    M = [[2**60, 1], [1, 2**60]]
    res = smith_normal_form(M)
    assert verify_certificate(M, res)
    assert res.invariants[0] == 1


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-30, 30), min_size=1, max_size=6),
                min_size=1, max_size=6).filter(
                    lambda rows: len({len(r) for r in rows}) == 1))
def test_snf_certificate_property(rows):
    M = np.array(rows)
    res = smith_normal_form(M)
    assert verify_certificate(M, res)
    nz = [x for x in res.invariants if x != 0]
    for a, b in zip(nz, nz[1:]):
        assert b % a == 0

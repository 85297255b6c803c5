import numpy as np
import pytest

from quillenlab.elements import Mat, Perm, commutes, parse_perm
from quillenlab.fields import field_create
from quillenlab.groups import (
    CapExceeded, GroupSpec, central_p_elements, centralizes, enumerate_group,
    group_data, is_maximal_elem_abelian, named_group, normalizes_cyclic,
    spec_from_json,
)


def test_enumerate_small_groups():
    assert len(enumerate_group(named_group("Sym(3)"))) == 6
    assert len(enumerate_group(named_group("Sym(5)"))) == 120
    assert len(enumerate_group(named_group("Alt(5)"))) == 60
    assert len(enumerate_group(named_group("Alt(6)"))) == 360


def test_enumerate_sl23():
    els = enumerate_group(named_group("SL(2,3)"))
    assert len(els) == 24
    assert all(g.det() == 1 for g in els)


@pytest.mark.parametrize("name,order", [
    ("GL(2,4)", 180), ("SL(2,7)", 336), ("PSL(2,7)", 168), ("PGL(2,7)", 336),
    ("SL(3,2)", 168), ("SL(2,4)", 60), ("GL(1,5)", 4), ("PSL(3,2)", 168),
])
def test_named_group_orders(name, order):
    # the GroupData constructor cross-checks the enumeration against the
    # order formula, so success here is the assertion
    assert group_data(named_group(name)).order == order


def test_enumerate_a8():
    a8 = group_data(named_group("Alt(8)"))
    assert a8.order == 20160
    assert all(g.is_even() for g in a8.elements[:50])


def test_closure_property():
    data = group_data(named_group("Sym(3)"))
    els = set(data.elements)
    for a in els:
        assert a.inverse() in els
        for b in els:
            assert a * b in els


def test_cap_exceeded():
    with pytest.raises(CapExceeded):
        group_data(GroupSpec("perm", 10, named_group("Sym(10)").generators,
                             name="Sym(10)", cap=1000))


def test_centralizes():
    e2 = parse_perm("(4,5,6)", 8)
    c1 = parse_perm("(1,7)(2,3)", 8)
    e1 = parse_perm("(1,2,3)", 8)
    assert centralizes(Perm.identity(8), [e1, e2, c1])
    assert centralizes(c1, [e2])
    assert not centralizes(c1, [e1])
    # reduction to generators: commuting with S iff with <S> generators
    data = group_data(named_group("Sym(5)"))
    g = parse_perm("(1,2)", 5)
    S = [parse_perm("(3,4)", 5), parse_perm("(3,4,5)", 5)]
    closure = [x for x in data.elements
               if x in set(enumerate_group(GroupSpec("perm", 5, tuple(S))))]
    assert centralizes(g, S) == centralizes(g, closure)


def test_normalizes_cyclic():
    e1 = parse_perm("(1,2,3)", 8)
    c1 = parse_perm("(1,7)(2,3)", 8)
    assert normalizes_cyclic(e1, e1, 3)
    assert not normalizes_cyclic(c1, e1, 3)
    # inverting a power: (1,3,2) normalizes with k=2
    swap = parse_perm("(2,3)", 8)
    assert normalizes_cyclic(swap, e1, 3)
    # closure under inverse
    for g in (c1, swap, e1):
        assert normalizes_cyclic(g, e1, 3) == normalizes_cyclic(g.inverse(), e1, 3)
    with pytest.raises(ValueError):
        normalizes_cyclic(c1, parse_perm("(1,2)", 8), 3)


def test_central_p_elements():
    assert central_p_elements(named_group("Sym(5)"), 3) == []
    w = central_p_elements(named_group("GL(2,4)"), 3)
    assert len(w) == 2 and all(m.is_scalar() for m in w)
    w2 = central_p_elements(named_group("SL(3,4)"), 3)
    assert len(w2) == 2 and all(m.is_scalar() for m in w2)
    # structural path for a group over the cap
    w3 = central_p_elements(named_group("SL(3,64)"), 3)
    assert len(w3) == 2 and all(m.is_scalar() for m in w3)


def test_maximality_modes():
    a8 = named_group("Alt(8)")
    E = [parse_perm("(1,2,3)", 8), parse_perm("(4,5,6)", 8)]
    assert is_maximal_elem_abelian(a8, E, 3) is True
    assert is_maximal_elem_abelian(a8, [E[0]], 3) is False
    assert is_maximal_elem_abelian(a8, E, 3, mode="asserted") == "asserted"
    with pytest.raises(ValueError):
        is_maximal_elem_abelian(a8, E, 3, mode="bogus")


def test_order_p_indices_match_bruteforce():
    data = group_data(named_group("Sym(5)"))
    from quillenlab.elements import element_order
    brute = {i for i, g in enumerate(data.elements)
             if not g.is_identity() and element_order(g) == 3}
    assert set(int(i) for i in data.order_p_indices(3)) == brute
    # 3-cycle count in S5
    assert len(brute) == 20


def test_bulk_commute_mask_matches_bruteforce():
    data = group_data(named_group("SL(2,3)"))
    x = data.elements[5]
    mask = data.commute_indices(x)
    brute = [i for i, g in enumerate(data.elements) if commutes(g, x)]
    assert list(map(int, mask)) == brute


def test_line_system_centralizer_transport():
    data = group_data(named_group("Alt(6)"))
    ls = data.line_system(3)
    for lid in range(0, ls.line_count(), 7):
        direct = np.sort(data.commute_indices(ls.gens[lid]))
        assert np.array_equal(ls.centralizer_indices(lid), direct)
        assert ls.centralizer_size(lid) == len(direct)


def test_group_spec_json_roundtrip():
    spec = named_group("PSL(2,7)")
    j = spec.to_json()
    spec2 = spec_from_json(j)
    assert spec2.cache_key() == spec.cache_key()
    # named shortcut
    spec3 = spec_from_json("Alt(5)")
    assert spec3.name == "Alt(5)"
    # cycle-notation generators for a perm spec
    spec4 = spec_from_json({"kind": "perm", "n": 4, "generators": ["(1,2)", "(1,2,3,4)"]})
    assert len(enumerate_group(spec4)) == 24


def test_det_constraint_checked_on_generators():
    F = field_create(7)
    with pytest.raises(ValueError):
        GroupSpec("mat", 2, (Mat(F, [[2, 0], [0, 1]]),), q=7, det1=True)
    GroupSpec("mat", 2, (Mat(F, [[2, 0], [0, 4]]),), q=7, det1=True)

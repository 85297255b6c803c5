import numpy as np
import pytest

from quillenlab.complexes import (
    OrderComplex, SubgroupNode, ap_poset, graph_betti1, homology,
    order_complex_of_group, p_rank, qdp_check, rational_rank,
)
from quillenlab.elements import parse_perm
from quillenlab.groups import GroupSpec, group_data, named_group
from quillenlab.snf import smith_normal_form


def c3c3_spec():
    return GroupSpec("perm", 6, (parse_perm("(1,2,3)", 6), parse_perm("(4,5,6)", 6)),
                     name="C3xC3")


def test_subgroup_node_basics():
    e = parse_perm("(1,2,3)", 6)
    node = SubgroupNode.from_generators([e], 3)
    assert node.rank == 1 and len(node.elements) == 3
    assert node.contains(e * e)
    with pytest.raises(ValueError):
        SubgroupNode([e], 3)   # not closed: missing identity and square


def test_ap_poset_sym3():
    pos = ap_poset(named_group("Sym(3)"), 3)
    assert len(pos.nodes) == 1 and pos.nodes[0].rank == 1
    assert pos.maximal == [True]
    pos2 = ap_poset(named_group("Sym(3)"), 2)
    assert len(pos2.nodes) == 3
    assert pos2.inclusions() == []
    assert all(pos2.maximal)


def test_ap_poset_c3c3():
    pos = ap_poset(c3c3_spec(), 3)
    ranks = sorted(nd.rank for nd in pos.nodes)
    assert ranks == [1, 1, 1, 1, 2]
    assert len(pos.inclusions()) == 4
    # only the top node is maximal
    assert [m for nd, m in zip(pos.nodes, pos.maximal) if nd.rank == 2] == [True]
    assert not any(m for nd, m in zip(pos.nodes, pos.maximal) if nd.rank == 1)


def test_homology_point_and_discrete():
    K1 = OrderComplex(["pt"], [])
    H1 = homology(K1)
    assert all(v == 0 for v in H1.betti.values())
    K3 = OrderComplex(["a", "b", "c"], [])
    H3 = homology(K3)
    assert H3.betti == {-1: 0, 0: 2}
    assert H3.torsion[0] == []


def test_homology_circle():
    nodes = ["v0", "v1", "v2", "e01", "e02", "e12"]
    incl = [(0, 3), (1, 3), (0, 4), (2, 4), (1, 5), (2, 5)]
    K = OrderComplex(nodes, incl)
    H = homology(K)
    assert H.betti == {-1: 0, 0: 0, 1: 1}
    assert graph_betti1(K) == 1
    assert H.euler_consistent()


def test_boundary_squared_is_zero():
    pos = ap_poset(c3c3_spec(), 3)
    K = OrderComplex(pos.nodes, pos.inclusions())
    # d_0 after d_1 is zero, including the augmentation row
    d1 = K.boundary_matrix(1)
    d0 = K.boundary_matrix(0)
    assert not np.any(d0 @ d1)


def test_faces_of_flags_are_present():
    pos = ap_poset(group_data(named_group("Alt(6)")), 3)
    K = OrderComplex(pos.nodes, pos.inclusions())
    for k, simplices in K.simplices_by_dim.items():
        if k == 0:
            continue
        for s in simplices[:50]:
            for pos_ in range(len(s)):
                face = s[:pos_] + s[pos_ + 1:]
                assert K.flag_index(k - 1, face) is not None


def test_cone_homology_vanishes():
    H = homology(order_complex_of_group(c3c3_spec(), 3)[1])
    assert all(v == 0 for v in H.betti.values())
    assert all(not t for t in H.torsion.values())
    H2 = homology(order_complex_of_group(named_group("Sym(3)"), 3)[1])
    assert all(v == 0 for v in H2.betti.values())


def test_qdp_reports():
    rep = qdp_check(c3c3_spec(), 3)
    assert rep.rank == 2 and rep.qdp is False
    rep2 = qdp_check(named_group("Sym(3)"), 2)
    # three isolated vertices: rank 1 and H~_0 nonzero
    assert rep2.rank == 1 and rep2.qdp is True
    j = rep2.to_json()
    assert j["betti"]["0"] == 2 and j["qdp"] is True


def test_p_rank_a8():
    assert p_rank(group_data(named_group("Alt(8)")), 3) == 2


def test_a8_poset_and_homology():
    a8 = group_data(named_group("Alt(8)"))
    pos = ap_poset(a8, 3)
    lines = sum(1 for nd in pos.nodes if nd.rank == 1)
    planes = sum(1 for nd in pos.nodes if nd.rank == 2)
    assert (lines, planes) == (616, 280)
    assert len(pos.inclusions()) == 1120
    K = OrderComplex(pos.nodes, pos.inclusions())
    H = homology(K)
    # rank-2 group: the order complex is a graph; compare with E - V + C
    assert H.betti[1] == graph_betti1(K) == 225
    assert H.betti[0] == 0
    rep = qdp_check(a8, 3)
    assert rep.qdp is True


def test_rational_rank_oracle_agrees_with_snf():
    rng = np.random.RandomState(42)
    for _ in range(20):
        M = rng.randint(-6, 7, size=(rng.randint(1, 9), rng.randint(1, 9)))
        assert rational_rank(M) == smith_normal_form(M).rank


def test_betti_agree_with_rational_ranks():
    # reduced betti from SNF equals the rank computation over Q
    pos = ap_poset(c3c3_spec(), 3)
    K = OrderComplex(pos.nodes, pos.inclusions())
    H = homology(K)
    d1 = K.boundary_matrix(1)
    d0 = K.boundary_matrix(0)
    r1 = rational_rank(d1)
    r0 = rational_rank(d0)
    assert H.betti[0] == K.simplex_count(0) - r0 - r1
    assert H.betti[1] == K.simplex_count(1) - r1

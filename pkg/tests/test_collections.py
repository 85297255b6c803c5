import pytest

from quillenlab.admissible import (
    Collection, ElemAbelianBasis, collection_from_json, delta_vectors,
    index_tuples, is_admissible, is_faithful, is_faithful_full,
    pstable_obstruction, sign_vectors, signature, word,
)
from quillenlab.elements import Perm, parse_perm
from quillenlab.groups import named_group


def a8_collection():
    e1 = parse_perm("(1,2,3)", 8)
    e2 = parse_perm("(4,5,6)", 8)
    c1 = parse_perm("(1,7)(2,3)", 8)
    c2 = parse_perm("(4,8)(5,6)", 8)
    return Collection(E=ElemAbelianBasis(3, (e1, e2)), c=(c1, c2),
                      group=named_group("Alt(8)"))


def test_index_tuples_counts():
    assert index_tuples(2, 1) == [(1,), (2,)]
    assert len(index_tuples(3, 3)) == 6
    assert len(index_tuples(4, 2)) == 12
    assert index_tuples(3, 0) == [()]
    with pytest.raises(ValueError):
        index_tuples(3, 4)
    for r in range(1, 6):
        for l in range(r + 1):
            expect = 1
            for k in range(l):
                expect *= r - k
            assert len(index_tuples(r, l)) == expect


def test_signature_examples():
    assert signature((1, 4, 2)) == 1
    assert signature((1, 2, 3)) == 1
    assert signature((2,)) == -1
    assert signature(()) == 1


def test_signature_flips_under_transposition():
    for r in range(1, 6):
        for l in range(2, r + 1):
            for tup in index_tuples(r, l):
                for a in range(l):
                    for b in range(a + 1, l):
                        swapped = list(tup)
                        swapped[a], swapped[b] = swapped[b], swapped[a]
                        assert signature(tuple(swapped)) == -signature(tup)


def test_sign_and_delta_vectors():
    assert len(sign_vectors(3)) == 27
    assert len(delta_vectors(4)) == 16
    assert (0, 0) in delta_vectors(2) and (-1, 1) in sign_vectors(2)


def test_basis_validation():
    e1 = parse_perm("(1,2,3)", 6)
    e2 = parse_perm("(4,5,6)", 6)
    E = ElemAbelianBasis(3, (e1, e2))
    assert E.r == 2 and len(E.table) == 9
    with pytest.raises(ValueError):
        ElemAbelianBasis(3, (e1, e1 * e1))      # dependent
    with pytest.raises(ValueError):
        ElemAbelianBasis(3, (parse_perm("(1,2)", 6),))   # wrong order
    with pytest.raises(ValueError):
        ElemAbelianBasis(3, (e1, parse_perm("(3,4,5)", 6)))  # not commuting


def test_subspace_identities():
    e1 = parse_perm("(1,2,3)", 9)
    e2 = parse_perm("(4,5,6)", 9)
    e3 = parse_perm("(7,8,9)", 9)
    E = ElemAbelianBasis(3, (e1, e2, e3))
    # E_empty = E, E_[1..r] trivial
    assert len(E.subspace(()).elements) == 27
    assert len(E.subspace((1, 2, 3)).elements) == 1
    # E_[i1..il] = intersection of the hyperplanes
    for tup in index_tuples(3, 2):
        inter = set(E.subspace((tup[0],)).elements) & set(E.subspace((tup[1],)).elements)
        assert set(E.subspace(tup).elements) == inter
    # <e_i> is the intersection of the other hyperplanes
    line1 = set(E.subspace((2, 3)).elements)
    assert line1 == set(E.line(1)) | {E.identity}
    with pytest.raises(ValueError):
        E.subspace((1, 1))
    with pytest.raises(ValueError):
        E.subspace((4,))


def test_subspaces_equal_iff_same_index_set():
    # exhaustive over r <= 4 on an abstract basis
    for r in (2, 3, 4):
        gens = []
        for i in range(r):
            cyc = "(" + ",".join(str(x) for x in range(i * 3 + 1, i * 3 + 4)) + ")"
            gens.append(parse_perm(cyc, 3 * r))
        E = ElemAbelianBasis(3, gens)
        tuples = [t for l in range(r + 1) for t in index_tuples(r, l)]
        for ta in tuples:
            for tb in tuples:
                same = set(E.subspace(ta).elements) == set(E.subspace(tb).elements)
                assert same == (set(ta) == set(tb))


def test_word_order_of_factors():
    a = parse_perm("(1,2)", 4)
    b = parse_perm("(2,3)", 4)
    assert word((a, b), (1, 1)) == a * b
    assert word((a, b), (0, 1)) == b
    assert word((a, b), (-1, 0)) == a.inverse()


def test_faithful_a8():
    coll = a8_collection()
    rep = is_faithful(coll)
    assert rep.faithful and rep.words_checked == 3 ** 2
    assert is_faithful_full(coll).faithful


def test_faithful_trivial_c():
    coll = a8_collection()
    triv = Collection(E=coll.E, c=(Perm.identity(8), Perm.identity(8)),
                      group=coll.group)
    assert is_faithful(triv).faithful


def test_not_faithful_support_swap():
    # an element conjugating e_1 into E but off the line <e_1>
    s6 = named_group("Sym(6)")
    E = ElemAbelianBasis(3, (parse_perm("(1,2,3)", 6), parse_perm("(4,5,6)", 6)))
    swap = parse_perm("(1,4)(2,5)(3,6)", 6)
    bad = Collection(E=E, c=(swap, Perm.identity(6)), group=s6)
    rep = is_faithful(bad)
    assert not rep.faithful
    assert any(v["i"] == 1 for v in rep.violations)
    assert not is_faithful_full(bad).faithful


def test_generator_and_subspace_level_checks_agree():
    coll = a8_collection()
    cases = [
        coll,
        Collection(E=coll.E, c=(Perm.identity(8), Perm.identity(8)), group=coll.group),
        Collection(E=coll.E, c=(parse_perm("(1,4)(2,5)(3,6)", 8), Perm.identity(8)),
                   group=coll.group),
        Collection(E=coll.E, c=(parse_perm("(7,8)(1,2)", 8), coll.c[1]), group=coll.group),
    ]
    for c in cases:
        assert is_faithful(c).faithful == is_faithful_full(c).faithful


def test_admissible_a8():
    rep = is_admissible(a8_collection())
    assert rep.admissible
    assert rep.maximality is True
    assert rep.pairwise_commuting
    assert rep.internal_consistency


def test_not_admissible_with_identity_c():
    coll = a8_collection()
    bad = Collection(E=coll.E, c=(Perm.identity(8), coll.c[1]), group=coll.group)
    rep = is_admissible(bad)
    assert not rep.admissible
    assert rep.avoids_normalizer == [False, True]
    assert rep.failures


def test_admissible_asserted_mode():
    coll = a8_collection()
    asserted = Collection(E=coll.E, c=coll.c, group=coll.group, maximality="asserted")
    rep = is_admissible(asserted)
    assert rep.admissible and rep.maximality == "asserted"


def test_rank_budget_enforced():
    gens = []
    r = 13
    for i in range(r):
        cyc = "(" + ",".join(str(x) for x in range(i * 3 + 1, i * 3 + 4)) + ")"
        gens.append(parse_perm(cyc, 3 * r))
    E = ElemAbelianBasis(3, gens)
    coll = Collection(E=E, c=tuple(Perm.identity(3 * r) for _ in range(r)),
                      group=named_group(f"Sym({3 * r})"), maximality="asserted")
    with pytest.raises(ValueError):
        is_faithful(coll)


def test_enumerate_maximality_over_cap_raises():
    from quillenlab.constructions import symmetric_alternating
    from quillenlab.groups import CapExceeded
    big = symmetric_alternating(10, 5)
    assert big.maximality == "asserted"
    forced = Collection(E=big.E, c=big.c, group=big.group, maximality="enumerate")
    with pytest.raises(CapExceeded):
        is_admissible(forced)


def test_obstruction_certificates():
    cert = pstable_obstruction(named_group("GL(2,4)"), 3)
    assert cert is not None and cert.witness.is_scalar() and cert.mode == "enumerated"
    cert2 = pstable_obstruction(named_group("SL(3,4)"), 3)
    assert cert2 is not None
    assert pstable_obstruction(named_group("Alt(8)"), 3) is None
    j = cert.to_json()
    assert j["p"] == 3 and "witness" in j


def test_collection_json_roundtrip():
    coll = a8_collection()
    j = coll.to_json()
    back = collection_from_json(j)
    assert back.E.basis == coll.E.basis
    assert back.c == coll.c
    assert back.group.cache_key() == coll.group.cache_key()
    assert back.maximality == coll.maximality

"""Index tuples, signatures, the subspaces E_i of an elementary abelian basis,
and the faithful / admissible collection predicates with the p-core
obstruction.

Conventions: a basis (e_1, ..., e_r) spans E; the hyperplane E_i drops e_i;
E_[i1..il] drops all the indexed generators; sign words are products
c_1^eps_1 * ... * c_r^eps_r with eps_i in {-1, 0, 1}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .elements import commutes, conjugate, element_order, element_to_json
from .groups import (
    GroupSpec, central_p_elements, is_maximal_elem_abelian,
    normalizes_cyclic, spec_from_json, parse_element,
)

MAX_FAITHFUL_RANK = 12


def index_tuples(r: int, l: int):
    """All ordered l-tuples of distinct indices from 1..r."""
    if not 0 <= l <= r:
        raise ValueError(f"tuple length {l} out of range 0..{r}")
    return [tuple(t) for t in itertools.permutations(range(1, r + 1), l)]


def all_index_tuples(r: int):
    out = []
    for l in range(r + 1):
        out.extend(index_tuples(r, l))
    return out


def signature(tup) -> int:
    """(-1)^(n+m): n transpositions to sort, m sorted slots differing from 1..l."""
    tup = tuple(tup)
    inversions = sum(
        1 for a in range(len(tup)) for b in range(a + 1, len(tup)) if tup[a] > tup[b]
    )
    srt = sorted(tup)
    m = sum(1 for pos, v in enumerate(srt, start=1) if v != pos)
    return -1 if (inversions + m) % 2 else 1


def sign_vectors(r: int):
    return list(itertools.product((-1, 0, 1), repeat=r))


def delta_vectors(r: int):
    return list(itertools.product((0, 1), repeat=r))


class ElemAbelianBasis:
    """An ordered basis (e_1,...,e_r) of an elementary abelian p-subgroup.

    Caches the full element table of E with coordinates, so membership and
    subspace construction are table lookups.
    """

    def __init__(self, p: int, basis):
        basis = tuple(basis)
        if not basis:
            raise ValueError("basis must be non-empty")
        for e in basis:
            if element_order(e) != p:
                raise ValueError(f"basis element {e!r} does not have order {p}")
        for a, b in itertools.combinations(basis, 2):
            if not commutes(a, b):
                raise ValueError("basis elements must commute pairwise")
        self.p = p
        self.basis = basis
        ident = basis[0] * basis[0].inverse()
        self.identity = ident
        table = {ident: (0,) * len(basis)}
        for i, e in enumerate(basis):
            cur = list(table.items())
            for g, coord in cur:
                x = g
                for k in range(1, p):
                    x = x * e
                    table[x] = coord[:i] + (k,) + coord[i + 1:]
        if len(table) != p ** len(basis):
            raise ValueError("basis elements are not independent")
        self.table = table

    @property
    def r(self) -> int:
        return len(self.basis)

    def contains(self, g) -> bool:
        return g in self.table

    def coords(self, g):
        return self.table.get(g)

    def line(self, i: int):
        """The nontrivial elements of <e_i> (1-indexed i)."""
        e = self.basis[i - 1]
        out = []
        x = e
        while not x.is_identity():
            out.append(x)
            x = x * e
        return tuple(out)

    def subspace_elements(self, tup):
        """Elements of E_[i1..il]: drop the indexed generators."""
        keep = [k for k in range(self.r) if (k + 1) not in tup]
        out = [g for g, coord in self.table.items()
               if all(coord[k] == 0 for k in range(self.r) if k not in keep)]
        return tuple(sorted(out))

    def subspace(self, tup) -> "SubspaceOfE":
        tup = tuple(tup)
        if len(set(tup)) != len(tup):
            raise ValueError(f"repeated index in tuple {tup}")
        for i in tup:
            if not 1 <= i <= self.r:
                raise ValueError(f"index {i} out of range 1..{self.r}")
        return SubspaceOfE(tup, self.subspace_elements(tup), self.r - len(tup))


@dataclass(frozen=True)
class SubspaceOfE:
    defining: tuple
    elements: tuple
    rank: int

    @property
    def fset(self):
        return frozenset(self.elements)


@dataclass
class Collection:
    """A basis E plus candidate elements (c_1,...,c_r)."""

    E: ElemAbelianBasis
    c: tuple
    group: GroupSpec
    maximality: str = "enumerate"          # or "asserted"
    recipe: dict | None = None

    def __post_init__(self):
        if len(self.c) != self.E.r:
            raise ValueError("need exactly one c_i per basis element")
        if self.maximality not in ("enumerate", "asserted"):
            raise ValueError(f"unknown maximality mode {self.maximality!r}")

    @property
    def p(self) -> int:
        return self.E.p

    def to_json(self):
        out = {
            "group": self.group.name or self.group.to_json(),
            "p": self.p,
            "basis": [element_to_json(e) for e in self.E.basis],
            "c": [element_to_json(x) for x in self.c],
            "maximality": self.maximality,
        }
        if self.recipe:
            out["recipe"] = self.recipe
        return out


def collection_from_json(obj) -> Collection:
    spec = spec_from_json(obj["group"])
    p = int(obj["p"])
    basis = [parse_element(e, kind=spec.kind, n=spec.n, q=spec.q,
                           center_order=spec.center_order) for e in obj["basis"]]
    cs = [parse_element(x, kind=spec.kind, n=spec.n, q=spec.q,
                        center_order=spec.center_order) for x in obj["c"]]
    return Collection(E=ElemAbelianBasis(p, basis), c=tuple(cs), group=spec,
                      maximality=obj.get("maximality", "enumerate"),
                      recipe=obj.get("recipe"))


def word(cs, eps):
    """The product c_1^eps_1 * c_2^eps_2 * ... in index order."""
    out = None
    for c, e in zip(cs, eps):
        factor = c ** e
        out = factor if out is None else out * factor
    return out


# ---------------------------------------------------------------------------
# Faithfulness
# ---------------------------------------------------------------------------


@dataclass
class FaithfulReport:
    faithful: bool
    violations: list
    words_checked: int

    def to_json(self):
        return {
            "faithful": self.faithful,
            "violations": self.violations,
            "words_checked": self.words_checked,
        }


def is_faithful(coll: Collection) -> FaithfulReport:
    """Generator-level faithfulness: every sign word that carries some e_i
    into E must normalize <e_i>.  Reports all violations."""
    E = coll.E
    r = E.r
    if r > MAX_FAITHFUL_RANK:
        raise ValueError(f"rank {r} exceeds the 3^r faithfulness budget (r <= {MAX_FAITHFUL_RANK})")
    lines = {i: set(E.line(i)) for i in range(1, r + 1)}
    violations = []
    count = 0
    for eps in sign_vectors(r):
        w = word(coll.c, eps)
        count += 1
        for i in range(1, r + 1):
            x = conjugate(w, E.basis[i - 1])
            if E.contains(x) and x not in lines[i]:
                violations.append({
                    "eps": list(eps),
                    "i": i,
                    "lands_at_coords": list(E.coords(x)),
                })
    return FaithfulReport(faithful=not violations, violations=violations,
                         words_checked=count)


def is_faithful_full(coll: Collection) -> FaithfulReport:
    """Subspace-level faithfulness over every non-vacuous index tuple.

    The tuples of length 0 and r are skipped: for those the condition holds
    for any word, so they constrain nothing.
    """
    E = coll.E
    r = E.r
    violations = []
    count = 0
    tuples = [t for l in range(1, r) for t in index_tuples(r, l)]
    for eps in sign_vectors(r):
        w = word(coll.c, eps)
        count += 1
        for tup in tuples:
            sub = E.subspace(tup)
            conj = [conjugate(w, g) for g in sub.elements]
            if all(E.contains(x) for x in conj):
                if set(conj) != set(sub.elements):
                    violations.append({"eps": list(eps), "tuple": list(tup)})
    return FaithfulReport(faithful=not violations, violations=violations,
                         words_checked=count)


# ---------------------------------------------------------------------------
# Admissibility
# ---------------------------------------------------------------------------


@dataclass
class AdmissibleReport:
    admissible: bool
    maximality: object               # True / False / "asserted"
    centralizes_hyperplanes: list    # per i: bool
    avoids_normalizer: list          # per i: bool
    pairwise_commuting: bool
    faithful: FaithfulReport
    internal_consistency: bool       # Lemma-level guarantee cross-check
    failures: list

    def to_json(self):
        return {
            "admissible": self.admissible,
            "maximality": self.maximality,
            "centralizes_hyperplanes": self.centralizes_hyperplanes,
            "avoids_normalizer": self.avoids_normalizer,
            "pairwise_commuting": self.pairwise_commuting,
            "faithful": self.faithful.to_json(),
            "internal_consistency": self.internal_consistency,
            "failures": self.failures,
        }


def is_admissible(coll: Collection, spec: GroupSpec | None = None) -> AdmissibleReport:
    """Check (a) E maximal, (b) c_i in C_G(E_i), (c) c_i not in N_G(<e_i>),
    (d) [c_i, c_j] = 1; cross-checks faithfulness, which (b)-(d) imply."""
    spec = spec or coll.group
    E = coll.E
    r = E.r
    p = E.p
    failures = []

    maximality = is_maximal_elem_abelian(spec, E.basis, p, mode=coll.maximality)
    if maximality is False:
        failures.append("E is not maximal")

    cent = []
    for i in range(1, r + 1):
        ok = all(commutes(coll.c[i - 1], E.basis[j - 1]) for j in range(1, r + 1) if j != i)
        cent.append(ok)
        if not ok:
            failures.append(f"c_{i} does not centralize the hyperplane E_{i}")

    avoid = []
    for i in range(1, r + 1):
        ok = not normalizes_cyclic(coll.c[i - 1], E.basis[i - 1], p)
        avoid.append(ok)
        if not ok:
            failures.append(f"c_{i} normalizes <e_{i}>")

    comm = all(commutes(a, b) for a, b in itertools.combinations(coll.c, 2))
    if not comm:
        failures.append("the c_i do not commute pairwise")

    faithful = is_faithful(coll)
    local_ok = all(cent) and all(avoid) and comm
    # (b)-(d) guarantee faithfulness; a disagreement is an arithmetic fault
    internal = not (local_ok and not faithful.faithful)
    if not internal:
        failures.append("internal error: local conditions hold but faithfulness fails")

    admissible = bool(local_ok and internal and maximality in (True, "asserted"))
    return AdmissibleReport(
        admissible=admissible,
        maximality=maximality,
        centralizes_hyperplanes=cent,
        avoids_normalizer=avoid,
        pairwise_commuting=comm,
        faithful=faithful,
        internal_consistency=internal,
        failures=failures,
    )


# ---------------------------------------------------------------------------
# The p-core obstruction
# ---------------------------------------------------------------------------


@dataclass
class ObstructionCertificate:
    """A central order-p element rules out every qualifying collection."""

    group: GroupSpec
    p: int
    witness: object
    mode: str                        # "enumerated" or "structural"

    def to_json(self):
        return {
            "group": self.group.name or self.group.to_json(),
            "p": self.p,
            "witness": element_to_json(self.witness),
            "mode": self.mode,
            "asserts": "no collection with c_i in C_G(E_i) \\ C_G(e_i) exists "
                       "for any maximal elementary abelian p-subgroup",
        }


def pstable_obstruction(spec: GroupSpec, p: int) -> ObstructionCertificate | None:
    """Certificate that O_p(G) meets Z(G), if a central order-p element exists."""
    witnesses = central_p_elements(spec, p)
    if not witnesses:
        return None
    hint = spec.order_hint()
    mode = "enumerated"
    if hint is not None and hint > spec.effective_cap():
        mode = "structural"
    return ObstructionCertificate(group=spec, p=p, witness=witnesses[0], mode=mode)

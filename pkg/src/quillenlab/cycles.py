"""Signed simplex chains on the p-subgroup poset: the basis chain Z_{E,a},
its group translates, the coefficient tables for translated flags, and the
nonzero-homology-class certificate.

Everything here works on explicitly constructed subgroup nodes, so no group
enumeration is needed except for the optional independent homology check.
The chain complex is augmented: the boundary of a vertex is the empty flag.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .admissible import (
    Collection, ElemAbelianBasis, delta_vectors, index_tuples, signature, word,
)
from .complexes import OrderComplex, SubgroupNode, ap_poset, rational_rank
from .elements import conjugate
from .groups import GroupSpec, GroupData, group_data, CapExceeded
from .snf import smith_normal_form


class Flag:
    """A strictly increasing chain of SubgroupNodes; () is the empty flag."""

    __slots__ = ("nodes",)

    def __init__(self, nodes):
        nodes = tuple(nodes)
        for a, b in zip(nodes, nodes[1:]):
            if not b.includes(a):
                raise ValueError("flag chain is not strictly increasing")
        object.__setattr__(self, "nodes", nodes)

    def __setattr__(self, *a):
        raise AttributeError("Flag is immutable")

    @property
    def dim(self) -> int:
        return len(self.nodes) - 1

    def face(self, pos: int) -> "Flag":
        return Flag(self.nodes[:pos] + self.nodes[pos + 1:])

    def translate(self, x) -> "Flag":
        return Flag(tuple(nd.conjugate_by(x) for nd in self.nodes))

    def __eq__(self, other):
        return isinstance(other, Flag) and self.nodes == other.nodes

    def __hash__(self):
        return hash(self.nodes)

    def __repr__(self):
        return f"Flag(dim={self.dim})"


class IntChain:
    """A finite formal Z-combination of same-dimension flags."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms=None):
        self.dim = dim
        self.terms = {}
        if terms:
            for flag, coeff in (terms.items() if isinstance(terms, dict) else terms):
                self.add_term(flag, coeff)

    def add_term(self, flag: Flag, coeff: int):
        if coeff == 0:
            return
        if flag.dim != self.dim:
            raise ValueError(f"flag of dim {flag.dim} in a dim-{self.dim} chain")
        new = self.terms.get(flag, 0) + coeff
        if new:
            self.terms[flag] = new
        else:
            self.terms.pop(flag, None)

    def coefficient(self, flag: Flag) -> int:
        return self.terms.get(flag, 0)

    def is_zero(self) -> bool:
        return not self.terms

    def scaled(self, a: int) -> "IntChain":
        out = IntChain(self.dim)
        if a:
            for flag, c in self.terms.items():
                out.terms[flag] = c * a
        return out

    def plus(self, other: "IntChain") -> "IntChain":
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        out = IntChain(self.dim, dict(self.terms))
        for flag, c in other.terms.items():
            out.add_term(flag, c)
        return out

    def translate(self, x) -> "IntChain":
        out = IntChain(self.dim)
        for flag, c in self.terms.items():
            out.add_term(flag.translate(x), c)
        return out

    def __eq__(self, other):
        return isinstance(other, IntChain) and self.dim == other.dim and self.terms == other.terms

    def __repr__(self):
        return f"IntChain(dim={self.dim}, {len(self.terms)} flags)"


def sigma_flag(E: ElemAbelianBasis, tup) -> Flag:
    """The flag E_[i1..i_{r-1}] < ... < E_[i1] < E for an (r-1)-tuple."""
    tup = tuple(tup)
    r = E.r
    if len(tup) != r - 1:
        raise ValueError(f"need a tuple of length r-1 = {r - 1}, got {len(tup)}")
    nodes = []
    for t in range(r - 1, -1, -1):
        sub = E.subspace(tup[:t])
        nodes.append(SubgroupNode(sub.elements, E.p))
    return Flag(nodes)


def tau_flag(E: ElemAbelianBasis, tup) -> Flag:
    """sigma with the top term E removed (the d_{r-1} face)."""
    return sigma_flag(E, tup).face(E.r - 1)


def build_ZE(E: ElemAbelianBasis, a: int) -> IntChain:
    """Z_{E,a} = a * sum over (r-1)-tuples of sgn(i) * sigma_i."""
    r = E.r
    chain = IntChain(r - 1)
    if a == 0:
        return chain
    for tup in index_tuples(r, r - 1):
        chain.add_term(sigma_flag(E, tup), a * signature(tup))
    return chain


def chain_boundary(Z: IntChain) -> IntChain:
    """Simplicial boundary with augmentation (vertices map to the empty flag)."""
    out = IntChain(Z.dim - 1)
    if Z.dim < 0:
        return out
    for flag, c in Z.terms.items():
        for pos in range(len(flag.nodes)):
            out.add_term(flag.face(pos), c * (-1) ** pos)
    return out


def boundary_identity_check(E: ElemAbelianBasis, a: int) -> bool:
    """d(Z_{E,a}) equals (-1)^(r-1) * a * sum of sgn(i) * tau_i, exactly."""
    r = E.r
    lhs = chain_boundary(build_ZE(E, a))
    rhs = IntChain(r - 2)
    sign = (-1) ** (r - 1)
    if a != 0:
        for tup in index_tuples(r, r - 1):
            rhs.add_term(tau_flag(E, tup), sign * a * signature(tup))
    return lhs == rhs


# ---------------------------------------------------------------------------
# Translated cycles and coefficient tables
# ---------------------------------------------------------------------------


@dataclass
class CycleSpec:
    """E plus translates: Z = sum_j x_j . Z_{E, a_j}."""

    E: ElemAbelianBasis
    translates: list  # list of (label, x, a); labels index the report

    def __post_init__(self):
        if not self.translates:
            raise ValueError("need at least one translate")


def build_ZG(spec: CycleSpec) -> IntChain:
    E = spec.E
    out = IntChain(E.r - 1)
    base = {}
    for tup in index_tuples(E.r, E.r - 1):
        base[tup] = (sigma_flag(E, tup), signature(tup))
    for _, x, a in spec.translates:
        if a == 0:
            continue
        for tup, (flag, sgn) in base.items():
            out.add_term(flag.translate(x), a * sgn)
    return out


@dataclass
class CoefficientEntry:
    C_direct: int
    C_set: int
    D_direct: int
    D_set: int
    C_members: list
    D_members: list

    @property
    def consistent(self) -> bool:
        return self.C_direct == self.C_set and self.D_direct == self.D_set


@dataclass
class CoefficientReport:
    entries: dict        # (label, tuple) -> CoefficientEntry
    chain: IntChain
    boundary: IntChain

    @property
    def consistent(self) -> bool:
        return all(e.consistent for e in self.entries.values())

    @property
    def subset_ok(self) -> bool:
        """Membership sets satisfy C(j,i) <= D(j,i)."""
        return all(set(e.C_members) <= set(e.D_members) for e in self.entries.values())

    def nonzero_C(self):
        return sorted((lab, tup) for (lab, tup), e in self.entries.items() if e.C_direct != 0)

    def all_D_zero(self) -> bool:
        return all(e.D_direct == 0 for e in self.entries.values())


def coefficient_tables(spec: CycleSpec) -> CoefficientReport:
    """Coefficients of the translated sigma and tau flags, computed two ways:
    directly off the accumulated chains, and through the index-set formulas;
    the report records both and their membership sets."""
    E = spec.E
    r = E.r
    tuples = index_tuples(r, r - 1)
    Z = build_ZG(spec)
    dZ = chain_boundary(Z)

    sigma_of = {}
    tau_of = {}
    for lab, x, a in spec.translates:
        for tup in tuples:
            sigma_of[(lab, tup)] = sigma_flag(E, tup).translate(x)
            tau_of[(lab, tup)] = tau_flag(E, tup).translate(x)

    weights = {lab: a for lab, _, a in spec.translates}
    entries = {}
    for lab, x, a in spec.translates:
        for tup in tuples:
            sflag = sigma_of[(lab, tup)]
            tflag = tau_of[(lab, tup)]
            c_members = sorted(k for k, f in sigma_of.items() if f == sflag)
            d_members = sorted(k for k, f in tau_of.items() if f == tflag)
            c_set = sum(weights[l] * signature(k) for l, k in c_members)
            d_set = ((-1) ** (r - 1)) * sum(weights[l] * signature(k) for l, k in d_members)
            entries[(lab, tup)] = CoefficientEntry(
                C_direct=Z.coefficient(sflag),
                C_set=c_set,
                D_direct=dZ.coefficient(tflag),
                D_set=d_set,
                C_members=c_members,
                D_members=d_members,
            )
    return CoefficientReport(entries=entries, chain=Z, boundary=dZ)


def standard_weights(r: int) -> dict:
    """a_delta = (-1)^(delta_1 + ... + delta_r) over all 0/1 vectors."""
    if r < 1:
        raise ValueError("rank must be positive")
    return {d: (-1) ** sum(d) for d in delta_vectors(r)}


def delta_cycle_spec(coll: Collection) -> CycleSpec:
    """Translates c^delta with the alternating standard weights."""
    weights = standard_weights(coll.E.r)
    translates = []
    for d in delta_vectors(coll.E.r):
        translates.append((d, word(coll.c, d), weights[d]))
    return CycleSpec(E=coll.E, translates=translates)


# ---------------------------------------------------------------------------
# Membership formulas from the translate-set description
# ---------------------------------------------------------------------------


def _normalizes_set(w, elements, table_set) -> bool:
    return all(conjugate(w, g) in table_set for g in elements)


def coefficient_formula_report(coll: Collection) -> dict:
    """Closed-form coefficient identities for delta-translate cycles.

    Returns per-(delta, i) comparisons of the computed coefficients against
    the normalizer-sum formulas, the singleton-support statement under
    c_i not normalizing <e_i>, and the delta-pairing cancellation that kills
    every D under the standard weights.
    """
    E = coll.E
    r = E.r
    spec = delta_cycle_spec(coll)
    report = coefficient_tables(spec)
    weights = {lab: a for lab, _, a in spec.translates}
    deltas = [lab for lab, _, _ in spec.translates]

    e_set = set(E.table)
    sub_sets = {}
    for tup in index_tuples(r, r - 1):
        i1 = tup[0] if tup else None
        if i1 is not None and i1 not in sub_sets:
            sub = E.subspace((i1,))
            sub_sets[i1] = (sub.elements, set(sub.elements))

    out = {"entries": {}, "normalizer_sum_C_ok": True, "normalizer_sum_D_ok": True,
           "singleton_support_ok": True, "pairing_cancellation_ok": True}
    for (lab, tup), entry in report.entries.items():
        # C via the sum over delta' with c^(delta-delta') normalizing E
        deltas_in_N_E = []
        for lab2 in deltas:
            diff = tuple(a - b for a, b in zip(lab, lab2))
            w = word(coll.c, diff)
            if _normalizes_set(w, E.basis, e_set):
                deltas_in_N_E.append(lab2)
        f1 = signature(tup) * sum(weights[d] for d in deltas_in_N_E)
        # D via the same sum over the hyperplane E_{i1}
        if tup:
            i1 = tup[0]
            sub_elems, sub_set = sub_sets[i1]
            deltas_in_N_Ei = []
            for lab2 in deltas:
                diff = tuple(a - b for a, b in zip(lab, lab2))
                w = word(coll.c, diff)
                if _normalizes_set(w, sub_elems, sub_set):
                    deltas_in_N_Ei.append(lab2)
        else:
            # r = 1: the hyperplane is trivial, every word normalizes it
            deltas_in_N_Ei = list(deltas)
        f2 = ((-1) ** (r - 1)) * signature(tup) * sum(weights[d] for d in deltas_in_N_Ei)

        ok1 = f1 == entry.C_direct
        ok2 = f2 == entry.D_direct
        # singleton support: only (delta, i) itself hits the sigma flag when
        # the c_i avoid the line normalizers
        ok3 = (entry.C_members == [(lab, tup)]
               and entry.C_direct == signature(tup) * weights[lab])
        # the contributing deltas pair off across coordinate i1 and cancel
        pairs_ok = True
        if tup:
            i1 = tup[0]
            flip = {}
            for d in deltas_in_N_Ei:
                partner = d[:i1 - 1] + (1 - d[i1 - 1],) + d[i1:]
                flip[d] = partner
            pairs_ok = all(flip[d] in deltas_in_N_Ei for d in deltas_in_N_Ei) and \
                all(weights[d] + weights[flip[d]] == 0 for d in deltas_in_N_Ei)
        else:
            pairs_ok = sum(weights[d] for d in deltas_in_N_Ei) == 0
        out["entries"][(lab, tup)] = {
            "C": entry.C_direct, "D": entry.D_direct,
            "normalizer_sum_C": f1, "normalizer_sum_D": f2,
            "singleton_support": ok3, "pairing_cancellation": pairs_ok,
        }
        out["normalizer_sum_C_ok"] &= ok1
        out["normalizer_sum_D_ok"] &= ok2
        out["singleton_support_ok"] &= ok3
        out["pairing_cancellation_ok"] &= pairs_ok
    out["coefficients_consistent"] = report.consistent
    out["subset_ok"] = report.subset_ok
    return out


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------


def solve_boundary_rational(A: np.ndarray, b: np.ndarray) -> bool:
    """Is A w = b solvable over the rationals?"""
    if A.size == 0:
        return not np.any(b)
    ra = rational_rank(A)
    rab = rational_rank(np.hstack([A, b.reshape(-1, 1)]))
    return ra == rab


def solve_boundary_integral(A: np.ndarray, b: np.ndarray) -> bool:
    """Is A w = b solvable over the integers?  (Via the SNF certificate.)"""
    if A.size == 0:
        return not np.any(b)
    res = smith_normal_form(A)
    ub = res.u @ b.astype(res.u.dtype)
    r = res.rank
    for i in range(len(ub)):
        d = int(res.d[i, i]) if i < min(res.d.shape) else 0
        if i < r:
            if int(ub[i]) % d != 0:
                return False
        else:
            if int(ub[i]) != 0:
                return False
    return True


@dataclass
class CycleCertificate:
    ok: bool
    C_nonzero_at: list
    D_all_zero: bool
    coefficients_consistent: bool
    independent_check: str           # "passed" | "skipped(cap)" | "failed" | "skipped"
    maximality: object
    coefficient_ring: str
    errors: list

    def to_json(self):
        return {
            "certified": self.ok,
            "C_nonzero_at": [
                {"delta": list(lab), "tuple": list(tup)} for lab, tup in self.C_nonzero_at
            ],
            "D_all_zero": self.D_all_zero,
            "coefficients_consistent": self.coefficients_consistent,
            "independent_homology_check": self.independent_check,
            "maximality": self.maximality,
            "coefficient_ring": self.coefficient_ring,
            "errors": self.errors,
        }


def certify_nonzero_class(coll: Collection, spec: GroupSpec | None = None,
                          independent: bool = True) -> CycleCertificate:
    """Certificate that the delta-translate cycle is a nonzero class in
    reduced homology of degree r-1.

    Checks some C nonzero and all D zero (which makes Z a nonzero cycle);
    maximality of E then prevents Z from being a boundary.  For enumerable
    groups the not-a-boundary step is re-verified independently against the
    full order complex.
    """
    from .admissible import is_admissible

    spec = spec or coll.group
    errors = []
    adm = is_admissible(coll, spec)
    if not (all(adm.centralizes_hyperplanes) and all(adm.avoids_normalizer)
            and adm.pairwise_commuting):
        errors.append("local admissibility conditions fail: " + "; ".join(adm.failures))

    report = coefficient_tables(delta_cycle_spec(coll))
    nonzero = report.nonzero_C()
    d_zero = report.all_D_zero()
    if not nonzero:
        errors.append("all C coefficients vanish; the chain is zero")
    if not d_zero:
        errors.append("some D coefficient is nonzero; the chain is not a cycle")
    if not report.consistent:
        errors.append("direct and set-formula coefficients disagree (arithmetic fault)")
    if not report.subset_ok:
        errors.append("membership sets violate C(j,i) <= D(j,i)")

    indep = "skipped"
    if independent and not errors:
        try:
            data = group_data(spec)
        except CapExceeded:
            indep = "skipped(cap)"
            data = None
        if data is not None:
            indep = _independent_nonboundary_check(data, coll, report.chain, errors)

    ok = not errors and d_zero and bool(nonzero) and indep != "failed"
    return CycleCertificate(
        ok=ok,
        C_nonzero_at=nonzero,
        D_all_zero=d_zero,
        coefficients_consistent=report.consistent,
        independent_check=indep,
        maximality=adm.maximality,
        coefficient_ring="Z",
        errors=errors,
    )


def _independent_nonboundary_check(data: GroupData, coll: Collection,
                                   Z: IntChain, errors: list) -> str:
    """Verify against the full complex that Z is a cycle and not a boundary."""
    p = coll.E.p
    poset = ap_poset(data, p)
    node_index = {nd: i for i, nd in enumerate(poset.nodes)}
    K = OrderComplex(poset.nodes, poset.inclusions())
    k = Z.dim
    vec = np.zeros(K.simplex_count(k), dtype=np.int64)
    for flag, c in Z.terms.items():
        try:
            chain_idx = tuple(node_index[nd] for nd in flag.nodes)
        except KeyError:
            errors.append("a flag of Z uses a subgroup missing from the poset")
            return "failed"
        pos = K.flag_index(k, chain_idx)
        if pos is None:
            errors.append("a flag of Z is not a simplex of the order complex")
            return "failed"
        vec[pos] = c
    if not np.any(vec):
        errors.append("Z vanishes in the complex basis")
        return "failed"
    bound = K.boundary_matrix(k)
    if np.any(bound @ vec):
        errors.append("Z is not a cycle in the full complex")
        return "failed"
    if k + 1 > K.dim or K.simplex_count(k + 1) == 0:
        return "passed"
    A = K.boundary_matrix(k + 1)
    if not solve_boundary_rational(A, vec):
        return "passed"
    if not solve_boundary_integral(A, vec):
        return "passed"
    errors.append("Z is a boundary in the full complex")
    return "failed"

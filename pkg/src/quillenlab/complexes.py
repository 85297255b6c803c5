"""The poset A_p(G) of nontrivial elementary abelian p-subgroups, its order
complex, and reduced integral homology via Smith normal form.

The chain complex is augmented (an empty simplex in degree -1), so reduced
homology is uniform in all ranks, including rank 1 where the interesting
class lives in degree 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .elements import conjugate
from .groups import GroupSpec, GroupData, group_data, close_elementary_abelian
from .snf import smith_normal_form, verify_certificate


class SubgroupNode:
    """An elementary abelian p-subgroup as its canonically sorted element tuple."""

    __slots__ = ("elements", "fset", "p", "rank")

    def __init__(self, elements, p: int):
        elements = tuple(sorted(set(elements)))
        size = len(elements)
        rank = 0
        while p**rank < size:
            rank += 1
        if p**rank != size or rank == 0:
            raise ValueError(f"subgroup size {size} is not a positive power of {p}")
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "fset", frozenset(elements))
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "rank", rank)

    def __setattr__(self, *a):
        raise AttributeError("SubgroupNode is immutable")

    @staticmethod
    def from_generators(gens, p: int) -> "SubgroupNode":
        return SubgroupNode(close_elementary_abelian(list(gens), p), p)

    def contains(self, g) -> bool:
        return g in self.fset

    def includes(self, other: "SubgroupNode") -> bool:
        return other.fset < self.fset

    def conjugate_by(self, x) -> "SubgroupNode":
        return SubgroupNode(tuple(conjugate(x, g) for g in self.elements), self.p)

    def key(self):
        return tuple(g.key() for g in self.elements)

    def __eq__(self, other):
        return isinstance(other, SubgroupNode) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __lt__(self, other):
        return (self.rank, self.elements) < (other.rank, other.elements)

    def __repr__(self):
        return f"SubgroupNode(rank={self.rank}, order={len(self.elements)})"


@dataclass
class ApPoset:
    """All nontrivial elementary abelian p-subgroups with inclusion data."""

    p: int
    nodes: list                      # SubgroupNode, canonically sorted
    maximal: list                    # bool per node
    _inclusions: list | None = None

    def inclusions(self):
        """All strict inclusion pairs (i, j) with nodes[i] < nodes[j]."""
        if self._inclusions is None:
            by_rank: dict[int, list[int]] = {}
            for i, nd in enumerate(self.nodes):
                by_rank.setdefault(nd.rank, []).append(i)
            out = []
            ranks = sorted(by_rank)
            for ra in ranks:
                for rb in ranks:
                    if rb <= ra:
                        continue
                    for i in by_rank[ra]:
                        fa = self.nodes[i].fset
                        for j in by_rank[rb]:
                            if fa < self.nodes[j].fset:
                                out.append((i, j))
            self._inclusions = out
        return self._inclusions

    @property
    def max_rank(self) -> int:
        return max((nd.rank for nd in self.nodes), default=0)


def ap_poset(spec: GroupSpec | GroupData, p: int) -> ApPoset:
    """Build A_p(G) for an enumerable group."""
    data = spec if isinstance(spec, GroupData) else group_data(spec)
    ls = data.line_system(p)
    elements = data.elements
    identity_idx = data.index[data.spec.identity()]
    idx_p = data.order_p_indices(p)

    # commuting order-p elements per line (indices into the element list)
    sub_bulk = data.order_p_bulk(p)

    def line_comm(line_id):
        g = ls.gens[line_id]
        if sub_bulk is not None:
            mask = sub_bulk.commute_mask(g)
            return frozenset(int(i) for i in idx_p[mask])
        from .elements import commutes
        return frozenset(int(i) for i in idx_p if commutes(elements[int(i)], g))

    comm_cache: dict[int, frozenset] = {}

    def comm(line_id):
        if line_id not in comm_cache:
            comm_cache[line_id] = line_comm(line_id)
        return comm_cache[line_id]

    found: dict[frozenset, tuple] = {}   # member index set -> (basis line ids, cand set)
    level = []
    for lid in range(ls.line_count()):
        members = frozenset(ls.lines[lid]) | {identity_idx}
        cand = comm(lid) - members
        found[members] = ((lid,), cand)
        level.append(members)

    while level:
        nxt = []
        for members in level:
            basis, cand = found[members]
            for y in sorted(cand):
                ylid = ls.line_of(elements[y])
                new_members = frozenset(
                    data.index[elements[m] * elements[yp]]
                    for m in members for yp in (ls.lines[ylid] + (identity_idx,))
                )
                if new_members in found:
                    continue
                new_cand = (cand & comm(ylid)) - new_members
                found[new_members] = (basis + (ylid,), new_cand)
                nxt.append(new_members)
        level = nxt

    nodes = []
    maximal = []
    for members, (basis, cand) in found.items():
        node = SubgroupNode(tuple(elements[i] for i in members), p)
        nodes.append((node, len(cand) == 0))
    nodes.sort(key=lambda t: t[0])
    return ApPoset(p=p, nodes=[n for n, _ in nodes], maximal=[m for _, m in nodes])


# ---------------------------------------------------------------------------
# Order complex and homology
# ---------------------------------------------------------------------------


class OrderComplex:
    """Simplicial complex of strictly increasing chains in a poset."""

    def __init__(self, nodes, inclusions):
        self.nodes = list(nodes)
        n = len(self.nodes)
        above = [[] for _ in range(n)]
        for i, j in inclusions:
            above[i].append(j)
        for lst in above:
            lst.sort()
        simplices = {0: [(i,) for i in range(n)]}
        k = 0
        while simplices.get(k):
            nxt = []
            for chain in simplices[k]:
                last = chain[-1]
                for j in above[last]:
                    nxt.append(chain + (j,))
            if nxt:
                simplices[k + 1] = sorted(nxt)
            k += 1
        self.simplices_by_dim = {k: v for k, v in simplices.items() if v}
        self._index = {
            k: {s: i for i, s in enumerate(v)} for k, v in self.simplices_by_dim.items()
        }

    @property
    def dim(self) -> int:
        return max(self.simplices_by_dim, default=-1)

    def simplex_count(self, k: int) -> int:
        if k == -1:
            return 1 if self.nodes else 0
        return len(self.simplices_by_dim.get(k, ()))

    def boundary_matrix(self, k: int) -> np.ndarray:
        """The map C_k -> C_{k-1}; k = 0 gives the augmentation row."""
        if k <= -1 or k > self.dim:
            raise ValueError(f"no boundary in dimension {k}")
        cols = self.simplices_by_dim[k]
        if k == 0:
            return np.ones((1, len(cols)), dtype=np.int64)
        rows_index = self._index[k - 1]
        M = np.zeros((len(rows_index), len(cols)), dtype=np.int64)
        for c, s in enumerate(cols):
            for pos in range(len(s)):
                face = s[:pos] + s[pos + 1:]
                M[rows_index[face], c] += (-1) ** pos
        return M

    def flag_index(self, k: int, chain) -> int | None:
        return self._index.get(k, {}).get(tuple(chain))


@dataclass
class HomologyResult:
    betti: dict          # degree -> betti number (reduced; degrees -1..dim)
    torsion: dict        # degree -> list of torsion coefficients > 1
    simplex_counts: dict # degree -> number of simplices (degree -1 counts 1)

    def euler_consistent(self) -> bool:
        lhs = sum((-1) ** k * c for k, c in self.simplex_counts.items())
        rhs = sum((-1) ** k * b for k, b in self.betti.items())
        return lhs == rhs

    def to_json(self):
        return {
            "betti": {str(k): int(v) for k, v in sorted(self.betti.items())},
            "torsion": {str(k): [int(t) for t in v] for k, v in sorted(self.torsion.items())},
            "simplices": {str(k): int(v) for k, v in sorted(self.simplex_counts.items())},
        }


def homology(K: OrderComplex, check_certificates: bool = True) -> HomologyResult:
    """Reduced integral homology of the (augmented) order complex."""
    dim = K.dim
    if dim == -1:
        return HomologyResult(betti={}, torsion={}, simplex_counts={})
    snfs = {}
    for k in range(0, dim + 1):
        M = K.boundary_matrix(k)
        res = smith_normal_form(M)
        if check_certificates and not verify_certificate(M, res):
            raise RuntimeError(f"SNF certificate failed for boundary {k}")
        snfs[k] = res
    betti = {}
    torsion = {}
    counts = {-1: 1}
    for k in range(0, dim + 1):
        counts[k] = K.simplex_count(k)
    for k in range(-1, dim + 1):
        nk = counts[k]
        rk = snfs[k].rank if k >= 0 else 0
        rk1 = snfs[k + 1].rank if k + 1 <= dim else 0
        betti[k] = nk - rk - rk1
        tors = snfs[k + 1].torsion if k + 1 <= dim else []
        torsion[k] = tors
    result = HomologyResult(betti=betti, torsion=torsion, simplex_counts=counts)
    if not result.euler_consistent():
        raise RuntimeError("Euler characteristic mismatch in homology computation")
    return result


def order_complex_of_group(spec: GroupSpec | GroupData, p: int):
    poset = ap_poset(spec, p)
    return poset, OrderComplex(poset.nodes, poset.inclusions())


def p_rank(spec: GroupSpec | GroupData, p: int) -> int:
    """Largest rank of an elementary abelian p-subgroup (needs enumeration)."""
    return ap_poset(spec, p).max_rank


@dataclass
class QdpReport:
    group: str
    p: int
    rank: int
    homology: HomologyResult
    qdp: bool

    def to_json(self):
        h = self.homology.to_json()
        return {
            "group": self.group,
            "p": self.p,
            "rank": self.rank,
            "betti": h["betti"],
            "torsion": h["torsion"],
            "qdp": self.qdp,
        }


def qdp_check(spec: GroupSpec | GroupData, p: int) -> QdpReport:
    """Quillen dimension at p: reduced homology in degree rank-1 nonzero."""
    data = spec if isinstance(spec, GroupData) else group_data(spec)
    poset, K = order_complex_of_group(data, p)
    H = homology(K)
    r = poset.max_rank
    top = r - 1
    qdp = bool(H.betti.get(top, 0) > 0 or H.torsion.get(top, []))
    return QdpReport(group=data.spec.name or data.spec.kind, p=p, rank=r,
                     homology=H, qdp=qdp)


# ---------------------------------------------------------------------------
# Independent oracles
# ---------------------------------------------------------------------------


def graph_betti1(K: OrderComplex) -> int:
    """E - V + C for a 1-dimensional complex (independent of the SNF path)."""
    if K.dim > 1:
        raise ValueError("graph formula requires a 1-dimensional complex")
    V = K.simplex_count(0)
    E = K.simplex_count(1)
    parent = list(range(V))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for (i, j) in K.simplices_by_dim.get(1, ()):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
    comps = len({find(i) for i in range(V)})
    return E - V + comps


def rational_rank(M) -> int:
    """Exact rank over the rationals by fraction Gaussian elimination."""
    M = np.asarray(M)
    a = [[Fraction(int(x)) for x in row] for row in M]
    m = len(a)
    n = len(a[0]) if m else 0
    rank = 0
    row = 0
    for col in range(n):
        piv = None
        for r in range(row, m):
            if a[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        inv = 1 / a[row][col]
        a[row] = [x * inv for x in a[row]]
        for r in range(m):
            if r != row and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[row])]
        rank += 1
        row += 1
        if row == m:
            break
    return rank

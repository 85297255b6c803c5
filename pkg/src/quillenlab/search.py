"""Exhaustive admissible-collection search for enumerable groups.

The search walks maximal elementary abelian p-subgroups E, then ordered
frames of independent lines of E (admissibility depends only on the line
<e_i> and the hyperplane E_i, never on which generator of the line was
picked, so bases are searched modulo rescaling each e_i), then backtracks
over pairwise-commuting candidate tuples drawn from C_G(E_i) minus
N_G(<e_i>).  Candidate sets are evaluated smallest-centralizer-first so
empty slots kill a frame before anything expensive happens.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from .admissible import (
    Collection, ElemAbelianBasis, ObstructionCertificate, is_admissible,
    pstable_obstruction,
)
from .complexes import ap_poset
from .elements import commutes, conjugate
from .groups import CapExceeded, GroupData, GroupSpec, group_data


@dataclass
class SearchLimits:
    max_rank: int = 4
    max_found: int = 1            # stop after this many found (0 = exhaust)
    forced: bool = False          # ignore the central-obstruction short-circuit
    frame_reduction: bool = True  # search line frames, not raw bases
    conjugacy_reduction: bool = False  # one maximal E per conjugacy class
    verify_found: bool = True     # re-run the full admissibility check on hits


@dataclass
class SearchStats:
    group_order: int = 0
    maximal_subgroups: int = 0
    subgroups_searched: int = 0
    frames_tested: int = 0
    candidate_sets_built: int = 0
    tuples_tested: int = 0

    def to_json(self):
        return {
            "group_order": self.group_order,
            "maximal_subgroups": self.maximal_subgroups,
            "subgroups_searched": self.subgroups_searched,
            "frames_tested": self.frames_tested,
            "candidate_sets_built": self.candidate_sets_built,
            "tuples_tested": self.tuples_tested,
        }


@dataclass
class SearchResult:
    outcome: str                  # "found" | "none" | "obstructed" | "capped"
    collections: list = dc_field(default_factory=list)
    certificate: ObstructionCertificate | None = None
    stats: SearchStats = dc_field(default_factory=SearchStats)
    reason: str = ""

    def to_json(self):
        out = {
            "outcome": self.outcome,
            "collections": [c.to_json() for c in self.collections],
            "stats": self.stats.to_json(),
        }
        if self.certificate is not None:
            out["obstruction"] = self.certificate.to_json()
        if self.reason:
            out["reason"] = self.reason
        return out


def _lines_of_subgroup(node_elements, data: GroupData, p: int):
    """The lines (rank-1 subgroups) inside a subgroup, as index tuples."""
    ls = data.line_system(p)
    seen = set()
    out = []
    for g in node_elements:
        if g.is_identity():
            continue
        lid = ls.line_of(g)
        if lid not in seen:
            seen.add(lid)
            out.append(lid)
    out.sort()
    return out


def _frames(lines, data: GroupData, p: int, rank: int):
    """Ordered tuples of lines that span the subgroup (independent frames)."""
    ls = data.line_system(p)
    elements = data.elements
    ident = data.spec.identity()

    def span_members(line_ids):
        members = {ident}
        for lid in line_ids:
            gen = ls.gens[lid]
            members = {m * gen**k for m in members for k in range(p)}
        return members

    frames = []

    def extend(partial, members):
        if len(partial) == rank:
            frames.append(tuple(partial))
            return
        for lid in lines:
            if lid in partial:
                continue
            if ls.gens[lid] in members:
                continue
            new_members = {m * ls.gens[lid]**k for m in members for k in range(p)}
            partial.append(lid)
            extend(partial, new_members)
            partial.pop()

    extend([], {ident})
    return frames


def _orbit_representatives(maximal_nodes, data: GroupData):
    """One node per conjugacy orbit (optional accelerator)."""
    key_to_idx = {frozenset(nd.elements): i for i, nd in enumerate(maximal_nodes)}
    seen = [False] * len(maximal_nodes)
    reps = []
    gens = data.spec.generators
    for i, nd in enumerate(maximal_nodes):
        if seen[i]:
            continue
        reps.append(i)
        seen[i] = True
        queue = [nd.elements]
        while queue:
            els = queue.pop()
            for g in gens:
                conj = frozenset(conjugate(g, x) for x in els)
                j = key_to_idx.get(conj)
                if j is not None and not seen[j]:
                    seen[j] = True
                    queue.append(tuple(conj))
    return reps


def search_admissible(spec: GroupSpec, p: int,
                      limits: SearchLimits | None = None) -> SearchResult:
    """Search for admissible collections at the prime p.

    Outcomes: "found" with the discovered collections; "none" after an
    exhaustive sweep; "obstructed" when a central order-p element
    short-circuits the search; "capped" when the group cannot be enumerated.
    """
    limits = limits or SearchLimits()
    stats = SearchStats()

    if not limits.forced:
        try:
            cert = pstable_obstruction(spec, p)
        except CapExceeded:
            cert = None
        if cert is not None:
            return SearchResult(outcome="obstructed", certificate=cert, stats=stats)

    try:
        data = group_data(spec)
    except CapExceeded as exc:
        return SearchResult(outcome="capped", stats=stats, reason=str(exc))

    stats.group_order = data.order
    poset = ap_poset(data, p)
    maximal_nodes = [nd for nd, mx in zip(poset.nodes, poset.maximal) if mx]
    stats.maximal_subgroups = len(maximal_nodes)
    if limits.conjugacy_reduction:
        reps = _orbit_representatives(maximal_nodes, data)
        search_nodes = [maximal_nodes[i] for i in reps]
    else:
        search_nodes = maximal_nodes

    ls = data.line_system(p)
    elements = data.elements
    found: list[Collection] = []

    def line_powers(lid):
        gen = ls.gens[lid]
        out = set()
        x = gen
        while not x.is_identity():
            out.add(x)
            x = x * gen
        return out

    norm_cache: dict[tuple, bool] = {}

    def normalizes_line(cand_idx, lid, powers):
        key = (cand_idx, lid)
        hit = norm_cache.get(key)
        if hit is None:
            hit = conjugate(elements[cand_idx], ls.gens[lid]) in powers
            norm_cache[key] = hit
        return hit

    for node in search_nodes:
        rank = node.rank
        if rank > limits.max_rank:
            return SearchResult(
                outcome="capped", stats=stats,
                reason=f"maximal subgroup of rank {rank} exceeds the rank limit "
                       f"{limits.max_rank}")
        stats.subgroups_searched += 1
        node_lines = _lines_of_subgroup(node.elements, data, p)
        if limits.frame_reduction:
            frames = _frames(node_lines, data, p, rank)
        else:
            # raw ordered bases: every generator choice of every frame
            frames = []
            for fr in _frames(node_lines, data, p, rank):
                gen_choices = [sorted(line_powers(lid)) for lid in fr]
                for combo in itertools.product(*gen_choices):
                    frames.append(combo)

        for frame in frames:
            stats.frames_tested += 1
            if limits.frame_reduction:
                basis = [ls.gens[lid] for lid in frame]
                frame_lines = list(frame)
            else:
                basis = list(frame)
                frame_lines = [ls.line_of(g) for g in frame]
            powers = [line_powers(lid) for lid in frame_lines]

            # candidate pools: C_G(E_i) \ N_G(<e_i>), cheapest centralizer first
            sizes = []
            for i in range(rank):
                others = [frame_lines[j] for j in range(rank) if j != i]
                size = min((ls.centralizer_size(l) for l in others), default=data.order)
                sizes.append((size, i))
            sizes.sort()

            pools: dict[int, list] = {}
            dead = False
            for _, i in sizes:
                others = [frame_lines[j] for j in range(rank) if j != i]
                if others:
                    others.sort(key=ls.centralizer_size)
                    cz = ls.centralizer_indices(others[0])
                    for l in others[1:]:
                        cz = np.intersect1d(cz, ls.centralizer_indices(l),
                                            assume_unique=True)
                else:
                    cz = np.arange(data.order, dtype=np.int64)
                stats.candidate_sets_built += 1
                pool = [int(x) for x in cz
                        if not normalizes_line(int(x), frame_lines[i], powers[i])]
                if not pool:
                    dead = True
                    break
                pools[i] = pool
            if dead:
                continue

            order_of_slots = sorted(range(rank), key=lambda i: len(pools[i]))
            chosen: dict[int, int] = {}

            def backtrack(depth):
                if depth == rank:
                    stats.tuples_tested += 1
                    cs = tuple(elements[chosen[i]] for i in range(rank))
                    coll = Collection(
                        E=ElemAbelianBasis(p, tuple(basis)), c=cs, group=spec,
                        maximality="enumerate",
                        recipe={"family": "search", "params": {"p": p},
                                "derived": {"rank": rank}},
                    )
                    if limits.verify_found and not is_admissible(coll, spec).admissible:
                        return False
                    found.append(coll)
                    return bool(limits.max_found and len(found) >= limits.max_found)
                slot = order_of_slots[depth]
                for cand in pools[slot]:
                    g = elements[cand]
                    ok = True
                    for prev_slot in order_of_slots[:depth]:
                        if not commutes(g, elements[chosen[prev_slot]]):
                            ok = False
                            break
                    if ok:
                        chosen[slot] = cand
                        if backtrack(depth + 1):
                            return True
                        del chosen[slot]
                return False

            if backtrack(0):
                return SearchResult(outcome="found", collections=found, stats=stats)

    if found:
        return SearchResult(outcome="found", collections=found, stats=stats)
    return SearchResult(outcome="none", stats=stats)

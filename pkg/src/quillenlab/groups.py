"""Groups given by generators: bounded enumeration and local predicates.

Enumeration is a plain closure from generators, kept below a configurable
cap (env QUILLENLAB_CAP, default 500000).  Everything downstream is a filter
over the enumerated element list; permutation and matrix groups get
numpy-vectorized kernels for the hot filters (commutation masks, order-p
scans) but the semantics are identical to the per-element loops.
"""

from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass

import numpy as np

from .fields import Field, field_from_order
from .elements import (
    Perm, Mat, Coset,
    commutes, conjugate, element_order, transvection,
    element_to_json, element_from_json,
)

DEFAULT_CAP = 500_000
CAP_ENV_VAR = "QUILLENLAB_CAP"


def default_cap() -> int:
    raw = os.environ.get(CAP_ENV_VAR)
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return DEFAULT_CAP


class CapExceeded(RuntimeError):
    """Enumeration would exceed the cap; use local verification mode."""


@dataclass(frozen=True)
class GroupSpec:
    """A group described by generators.

    kind: "perm" (on n points), "mat" (subgroup of GL(n,q), optionally
    det=1), or "coset" (central quotient of a matrix kind, elements are
    matrices modulo the scalar subgroup of the stated order).
    """

    kind: str
    n: int
    generators: tuple
    name: str = ""
    q: int | None = None
    det1: bool = False
    center_order: int = 1
    cap: int | None = None

    def __post_init__(self):
        if self.kind not in ("perm", "mat", "coset"):
            raise ValueError(f"unknown group kind {self.kind!r}")
        for g in self.generators:
            self._check_element(g)

    def _check_element(self, g):
        if self.kind == "perm":
            if not isinstance(g, Perm) or g.degree != self.n:
                raise ValueError(f"generator {g!r} is not a permutation on {self.n} points")
        elif self.kind == "mat":
            if not isinstance(g, Mat) or g.n != self.n or g.field.q != self.q:
                raise ValueError(f"generator {g!r} does not match GL({self.n},{self.q})")
            if g.det() == 0:
                raise ValueError(f"generator {g!r} is singular")
            if self.det1 and g.det() != 1:
                raise ValueError(f"generator {g!r} has det != 1 in an SL-kind group")
        else:
            if not isinstance(g, Coset) or g.n != self.n or g.field.q != self.q:
                raise ValueError(f"generator {g!r} does not match the coset kind")
            if g.center_order != self.center_order:
                raise ValueError("generator has the wrong central subgroup order")

    @property
    def field(self) -> Field | None:
        return field_from_order(self.q) if self.q else None

    def identity(self):
        if self.kind == "perm":
            return Perm.identity(self.n)
        if self.kind == "mat":
            return Mat.identity(self.n, self.field)
        return Coset.identity(self.n, self.field, self.center_order)

    def effective_cap(self) -> int:
        return self.cap if self.cap is not None else default_cap()

    def cache_key(self):
        return (self.kind, self.n, self.q, self.det1, self.center_order,
                tuple(g.key() for g in self.generators))

    def order_hint(self) -> int | None:
        """Known group order for the built-in named groups, else None."""
        m = re.fullmatch(r"(Sym|Alt)\((\d+)\)", self.name)
        if m:
            n = int(m.group(2))
            return math.factorial(n) // (1 if m.group(1) == "Sym" else 2)
        m = re.fullmatch(r"(GL|SL|PGL|PSL)\((\d+),(\d+)\)", self.name)
        if m:
            fam, n, q = m.group(1), int(m.group(2)), int(m.group(3))
            gl = 1
            for i in range(n):
                gl *= q**n - q**i
            if fam == "GL":
                return gl
            if fam == "SL":
                return gl // (q - 1)
            if fam == "PGL":
                return gl // (q - 1)
            return gl // (q - 1) // math.gcd(n, q - 1)
        return None

    def to_json(self):
        return {
            "kind": "mat" if self.kind == "coset" else self.kind,
            "quotient_center": self.kind == "coset",
            "n": self.n,
            "q": self.q,
            "det1": self.det1,
            "generators": [element_to_json(g) for g in self.generators],
            "cap": self.cap,
            "name": self.name,
        }


def spec_from_json(obj) -> GroupSpec:
    if isinstance(obj, str):
        return named_group(obj)
    if isinstance(obj, dict) and set(obj) == {"name"}:
        return named_group(obj["name"])
    kind = obj["kind"]
    quotient = bool(obj.get("quotient_center", False))
    n = int(obj["n"])
    q = obj.get("q")
    q = int(q) if q else None
    det1 = bool(obj.get("det1", False))
    gens = []
    center_order = 1
    if quotient:
        kind = "coset"
        center_order = math.gcd(n, q - 1) if det1 else q - 1
    for g in obj.get("generators", []):
        el = parse_element(g, kind=kind, n=n, q=q, center_order=center_order)
        gens.append(el)
    return GroupSpec(kind=kind, n=n, generators=tuple(gens),
                     name=obj.get("name") or "",
                     q=q, det1=det1, center_order=center_order, cap=obj.get("cap"))


def parse_element(obj, kind, n, q=None, center_order=1):
    """Parse a JSON payload or cycle-notation string into an element."""
    from .elements import parse_perm
    if isinstance(obj, str):
        if kind != "perm":
            raise ValueError("cycle notation is only valid for permutation groups")
        return parse_perm(obj, n)
    el = element_from_json(obj)
    if kind == "coset" and isinstance(el, Mat):
        el = Coset(el, center_order)
    return el


# ---------------------------------------------------------------------------
# Built-in named groups
# ---------------------------------------------------------------------------


def _sl_generators(n: int, q: int):
    F = field_from_order(q)
    if n == 1:
        return ()
    gens = [transvection(1, 2, n, F)]
    # basis cycle with a sign fix to land in SL
    rows = [[0] * n for _ in range(n)]
    for j in range(n - 1):
        rows[j + 1][j] = 1
    sign = 1 if n % 2 == 1 else F.neg(1)
    rows[0][n - 1] = sign
    gens.append(Mat(F, rows))
    gamma = F.least_of_order(F.q - 1) if F.q > 2 else None
    if gamma is not None:
        diag = [[0] * n for _ in range(n)]
        diag[0][0] = gamma
        diag[1][1] = F.inv(gamma)
        for i in range(2, n):
            diag[i][i] = 1
        gens.append(Mat(F, diag))
    return tuple(gens)


def _gl_generators(n: int, q: int):
    F = field_from_order(q)
    gamma = F.least_of_order(F.q - 1) if F.q > 2 else None
    if n == 1:
        return (Mat(F, [[gamma]]),) if gamma is not None else ()
    gens = list(_sl_generators(n, q))
    if gamma is not None:
        diag = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        diag[0][0] = gamma
        gens.append(Mat(F, diag))
    return tuple(gens)


def named_group(name: str, cap: int | None = None) -> GroupSpec:
    """Built-in groups: Sym(n), Alt(n), GL(n,q), SL(n,q), PGL(n,q), PSL(n,q)."""
    name = name.strip().replace(" ", "")
    m = re.fullmatch(r"Sym\((\d+)\)", name)
    if m:
        n = int(m.group(1))
        gens = []
        if n >= 2:
            gens.append(Perm((2, 1) + tuple(range(3, n + 1))))
        if n >= 3:
            gens.append(Perm(tuple(range(2, n + 1)) + (1,)))
        return GroupSpec("perm", n, tuple(gens), name=f"Sym({n})", cap=cap)
    m = re.fullmatch(r"Alt\((\d+)\)", name)
    if m:
        n = int(m.group(1))
        gens = []
        if n >= 3:
            gens.append(Perm((2, 3, 1) + tuple(range(4, n + 1))))
        if n >= 4:
            if n % 2 == 1:
                gens.append(Perm(tuple(range(2, n + 1)) + (1,)))
            else:
                gens.append(Perm((1,) + tuple(range(3, n + 1)) + (2,)))
        return GroupSpec("perm", n, tuple(gens), name=f"Alt({n})", cap=cap)
    m = re.fullmatch(r"(GL|SL|PGL|PSL)\((\d+),(\d+)\)", name)
    if m:
        fam, n, q = m.group(1), int(m.group(2)), int(m.group(3))
        if fam == "GL":
            return GroupSpec("mat", n, _gl_generators(n, q), name=name, q=q, cap=cap)
        if fam == "SL":
            return GroupSpec("mat", n, _sl_generators(n, q), name=name, q=q,
                             det1=True, cap=cap)
        if fam == "PGL":
            gens = tuple(Coset(g, q - 1) for g in _gl_generators(n, q))
            return GroupSpec("coset", n, gens, name=name, q=q,
                             center_order=q - 1, cap=cap)
        gens = tuple(Coset(g, math.gcd(n, q - 1)) for g in _sl_generators(n, q))
        return GroupSpec("coset", n, gens, name=name, q=q, det1=True,
                         center_order=math.gcd(n, q - 1), cap=cap)
    raise ValueError(f"unknown named group: {name!r}")


# ---------------------------------------------------------------------------
# Vectorized kernels
# ---------------------------------------------------------------------------


class PermBulk:
    """All elements of a permutation group as one (N, n) index array."""

    def __init__(self, elements):
        self.arr = np.array([[i - 1 for i in g.images] for g in elements], dtype=np.int32)

    def commute_mask(self, x: Perm) -> np.ndarray:
        x0 = np.array([i - 1 for i in x.images], dtype=np.int32)
        gx = self.arr[:, x0]            # row g composed with x: (g o x)(i) = g(x(i))
        xg = x0[self.arr]               # (x o g)(i) = x(g(i))
        return (gx == xg).all(axis=1)

    def power(self, e: int) -> np.ndarray:
        """e-th power of every element, as an array of the same shape."""
        n = self.arr.shape[1]
        result = np.tile(np.arange(n, dtype=np.int32), (self.arr.shape[0], 1))
        base = self.arr
        while e > 0:
            if e & 1:
                result = np.take_along_axis(base, result, axis=1)
            base = np.take_along_axis(base, base, axis=1)
            e >>= 1
        return result

    def order_p_mask(self, p: int) -> np.ndarray:
        n = self.arr.shape[1]
        idn = np.arange(n, dtype=np.int32)
        pw = self.power(p)
        return (pw == idn).all(axis=1) & ~(self.arr == idn).all(axis=1)


class MatBulk:
    """All elements of a matrix group as one (N, n, n) entry-code array."""

    def __init__(self, elements, field: Field):
        self.field = field
        self.n = elements[0].n if elements else 0
        self.add_t, self.mul_t = field.np_tables()
        self.arr = np.array([[list(r) for r in g.rows] for g in elements], dtype=np.uint16)

    def _mul_right(self, A, b):
        """A[m] @ b for every m; b is a single (n, n) uint16 matrix."""
        n = self.n
        out = np.zeros_like(A)
        for i in range(n):
            for k in range(n):
                acc = out[:, i, k]
                for j in range(n):
                    if b[j, k] == 0:
                        continue
                    acc = self.add_t[acc, self.mul_t[A[:, i, j], b[j, k]]]
                out[:, i, k] = acc
        return out

    def _mul_left(self, b, A):
        n = self.n
        out = np.zeros_like(A)
        for i in range(n):
            for k in range(n):
                acc = out[:, i, k]
                for j in range(n):
                    if b[i, j] == 0:
                        continue
                    acc = self.add_t[self.mul_t[np.uint16(b[i, j]), A[:, j, k]], acc]
                out[:, i, k] = acc
        return out

    def mul_pair(self, A, B):
        """Row-wise product A[m] @ B[m]."""
        n = self.n
        out = np.zeros_like(A)
        for i in range(n):
            for k in range(n):
                acc = out[:, i, k]
                for j in range(n):
                    acc = self.add_t[acc, self.mul_t[A[:, i, j], B[:, j, k]]]
                out[:, i, k] = acc
        return out

    def commute_mask(self, x: Mat) -> np.ndarray:
        b = np.array([list(r) for r in x.rows], dtype=np.uint16)
        gx = self._mul_right(self.arr, b)
        xg = self._mul_left(b, self.arr)
        return (gx == xg).all(axis=(1, 2))

    def power(self, e: int) -> np.ndarray:
        idn = np.zeros_like(self.arr)
        for i in range(self.n):
            idn[:, i, i] = 1
        result = idn
        base = self.arr
        while e > 0:
            if e & 1:
                result = self.mul_pair(result, base)
            base = self.mul_pair(base, base)
            e >>= 1
        return result

    def order_p_mask(self, p: int) -> np.ndarray:
        idn = np.zeros_like(self.arr)
        for i in range(self.n):
            idn[:, i, i] = 1
        pw = self.power(p)
        return (pw == idn).all(axis=(1, 2)) & ~(self.arr == idn).all(axis=(1, 2))


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def _bfs_enumerate(spec: GroupSpec, cap: int):
    """Generic closure from generators; raises CapExceeded past the cap."""
    ident = spec.identity()
    seen = {ident}
    frontier = [ident]
    gens = list(spec.generators)
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    new.append(y)
                    if len(seen) > cap:
                        raise CapExceeded(
                            f"group exceeds enumeration cap {cap}; "
                            "use local verification mode")
        frontier = new
    return sorted(seen)


class GroupData:
    """An enumerated group: canonical element list plus cached filters."""

    def __init__(self, spec: GroupSpec, cap: int | None = None):
        cap = cap if cap is not None else spec.effective_cap()
        hint = spec.order_hint()
        if hint is not None and hint > cap:
            raise CapExceeded(
                f"|{spec.name}| = {hint} exceeds enumeration cap {cap}; "
                "use local verification mode")
        self.spec = spec
        self.elements = _bfs_enumerate(spec, cap)
        if hint is not None and len(self.elements) != hint:
            raise RuntimeError(
                f"enumeration of {spec.name} produced {len(self.elements)} elements, "
                f"expected {hint}")
        self.index = {g: i for i, g in enumerate(self.elements)}
        self._bulk = None
        self._order_p: dict[int, np.ndarray] = {}
        self._order_p_bulk: dict = {}
        self._line_systems: dict[int, "LineSystem"] = {}

    @property
    def order(self) -> int:
        return len(self.elements)

    def bulk(self):
        if self._bulk is None:
            if self.spec.kind == "perm":
                self._bulk = PermBulk(self.elements)
            elif self.spec.kind == "mat" and self.spec.field.q <= 256:
                self._bulk = MatBulk(self.elements, self.spec.field)
            else:
                self._bulk = False
        return self._bulk or None

    def commute_indices(self, x) -> np.ndarray:
        """Indices of all elements commuting with x, ascending."""
        bulk = self.bulk()
        if bulk is not None and type(x) in (Perm, Mat):
            return np.flatnonzero(bulk.commute_mask(x))
        return np.array([i for i, g in enumerate(self.elements) if commutes(g, x)],
                        dtype=np.int64)

    def order_p_indices(self, p: int) -> np.ndarray:
        """Indices of all elements of order exactly p (p prime)."""
        if p not in self._order_p:
            bulk = self.bulk()
            if bulk is not None:
                self._order_p[p] = np.flatnonzero(bulk.order_p_mask(p))
            else:
                self._order_p[p] = np.array(
                    [i for i, g in enumerate(self.elements)
                     if not g.is_identity() and element_order(g) == p],
                    dtype=np.int64)
        return self._order_p[p]

    def order_p_bulk(self, p: int):
        """Vectorized view restricted to the order-p elements (or None)."""
        if p not in self._order_p_bulk:
            idx = self.order_p_indices(p)
            subset = [self.elements[int(i)] for i in idx]
            if not subset:
                self._order_p_bulk[p] = False
            elif self.spec.kind == "perm":
                self._order_p_bulk[p] = PermBulk(subset)
            elif self.spec.kind == "mat" and self.spec.field.q <= 256:
                self._order_p_bulk[p] = MatBulk(subset, self.spec.field)
            else:
                self._order_p_bulk[p] = False
        return self._order_p_bulk[p] or None

    def line_system(self, p: int) -> "LineSystem":
        if p not in self._line_systems:
            self._line_systems[p] = LineSystem(self, p)
        return self._line_systems[p]


class LineSystem:
    """The order-p cyclic subgroups of an enumerated group.

    Centralizers of lines are computed once per conjugacy orbit and
    transported along the orbit (C(g x g^-1) = g C(x) g^-1), which keeps the
    exhaustive searches on 10^4..10^5-element matrix groups tractable.
    """

    def __init__(self, data: GroupData, p: int):
        self.data = data
        self.p = p
        idx_p = data.order_p_indices(p)
        self.element_line = {}
        self.lines = []          # per line: tuple of member element indices (order-p only)
        self.gens = []           # per line: canonical generator (least element)
        for i in idx_p:
            g = data.elements[int(i)]
            if g in self.element_line:
                continue
            members = []
            x = g
            while not x.is_identity():
                members.append(data.index[x])
                x = x * g
            line_id = len(self.lines)
            for m in members:
                self.element_line[data.elements[m]] = line_id
            members.sort()
            self.lines.append(tuple(members))
            self.gens.append(data.elements[members[0]])
        self._orbit_parent = None
        self._centralizers: dict[int, np.ndarray] = {}
        self._central_flags = [None] * len(self.lines)

    def line_count(self) -> int:
        return len(self.lines)

    def line_of(self, g) -> int:
        return self.element_line[g]

    def is_central_line(self, line_id: int) -> bool:
        flag = self._central_flags[line_id]
        if flag is None:
            g = self.gens[line_id]
            flag = all(commutes(g, h) for h in self.data.spec.generators)
            self._central_flags[line_id] = flag
        return flag

    def _build_orbits(self):
        """Conjugation orbits of lines; stores per-line conjugators from roots."""
        from collections import deque
        ident = self.data.spec.identity()
        root_of = [None] * len(self.lines)
        conj_from_root = [None] * len(self.lines)
        reps = []
        gens = self.data.spec.generators
        for start in range(len(self.lines)):
            if root_of[start] is not None:
                continue
            reps.append(start)
            root_of[start] = start
            conj_from_root[start] = ident
            queue = deque([start])
            while queue:
                lid = queue.popleft()
                x = self.gens[lid]
                w = conj_from_root[lid]
                for g in gens:
                    y = conjugate(g, x)
                    nid = self.element_line[y]
                    if root_of[nid] is None:
                        root_of[nid] = start
                        conj_from_root[nid] = g * w
                        queue.append(nid)
        self._orbit_root = root_of
        self._orbit_conj = conj_from_root
        self._orbit_reps = reps

    def centralizer_indices(self, line_id: int) -> np.ndarray:
        """Sorted element indices of the full centralizer of the line."""
        if line_id in self._centralizers:
            return self._centralizers[line_id]
        if self.is_central_line(line_id):
            out = np.arange(self.data.order, dtype=np.int64)
            self._centralizers[line_id] = out
            return out
        if self._orbit_parent is None:
            self._build_orbits()
            self._orbit_parent = True
        root = self._orbit_root[line_id]
        if root == line_id:
            out = self.data.commute_indices(self.gens[line_id])
        else:
            base = self.centralizer_indices(root)
            w = self._orbit_conj[line_id]
            elements = self.data.elements
            index = self.data.index
            w_inv = w.inverse()
            out = np.array(sorted(index[w * elements[int(i)] * w_inv] for i in base),
                           dtype=np.int64)
        self._centralizers[line_id] = out
        return out

    def centralizer_size(self, line_id: int) -> int:
        if self.is_central_line(line_id):
            return self.data.order
        if self._orbit_parent is None:
            self._build_orbits()
            self._orbit_parent = True
        root = self._orbit_root[line_id]
        return len(self.centralizer_indices(root))


_GROUP_CACHE: dict = {}


def group_data(spec: GroupSpec, cap: int | None = None) -> GroupData:
    """Enumerate (with caching) the group described by spec.

    The cap applies even when the enumeration is already cached, so the
    behaviour does not depend on what was computed earlier in the process.
    """
    effective = cap if cap is not None else spec.effective_cap()
    key = spec.cache_key()
    data = _GROUP_CACHE.get(key)
    if data is None:
        data = GroupData(spec, cap=effective)
        _GROUP_CACHE[key] = data
    if data.order > effective:
        raise CapExceeded(
            f"group of order {data.order} exceeds enumeration cap {effective}; "
            "use local verification mode")
    return data


def enumerate_group(spec: GroupSpec, cap: int | None = None):
    """Complete, duplicate-free, canonically sorted element list."""
    return list(group_data(spec, cap=cap).elements)


# ---------------------------------------------------------------------------
# Predicates
# ---------------------------------------------------------------------------


def centralizes(g, S) -> bool:
    """True iff g commutes with every element of S."""
    return all(commutes(g, s) for s in S)


def normalizes_cyclic(g, e, p: int) -> bool:
    """True iff g e g^-1 is a power e^k, 1 <= k <= p-1 (e of order p)."""
    if element_order(e) != p:
        raise ValueError(f"element does not have order {p}")
    x = conjugate(g, e)
    y = e
    for _ in range(p - 1):
        if x == y:
            return True
        y = y * e
    return False


def central_p_elements(spec: GroupSpec, p: int, cap: int | None = None):
    """All order-p elements commuting with every generator.

    Works by enumeration when the group fits under the cap; named full
    matrix groups GL/SL fall back to the structural scalar computation.
    """
    effective = cap if cap is not None else spec.effective_cap()
    hint = spec.order_hint()
    if hint is None or hint <= effective:
        try:
            data = group_data(spec, cap=cap)
        except CapExceeded:
            data = None
        if data is not None:
            out = []
            for i in data.order_p_indices(p):
                g = data.elements[int(i)]
                if centralizes(g, spec.generators):
                    out.append(g)
            return sorted(out)
    if spec.kind == "mat" and re.fullmatch(r"(GL|SL)\(\d+,\d+\)", spec.name or ""):
        F = spec.field
        out = []
        for lam in F.units():
            if F.order(lam) != p:
                continue
            if spec.det1 and F.pow(lam, spec.n) != 1:
                continue
            out.append(Mat.scalar(lam, spec.n, F))
        return sorted(out)
    raise CapExceeded(
        "group is too large to enumerate and has no structural central scalar mode")


def close_elementary_abelian(basis, p: int):
    """All elements of the subgroup generated by commuting order-p elements."""
    ident = None
    for b in basis:
        one = b * b.inverse()
        ident = one
        break
    if ident is None:
        raise ValueError("empty basis")
    members = [ident]
    for b in basis:
        powers = [ident]
        x = b
        while not x.is_identity():
            powers.append(x)
            x = x * b
        members = [m * q for m in members for q in powers]
    out = sorted(set(members))
    if len(out) != p ** len(basis):
        raise ValueError("generators are not independent commuting order-p elements")
    return out


def is_maximal_elem_abelian(spec: GroupSpec, E, p: int, mode: str = "enumerate"):
    """Maximality of the elementary abelian subgroup generated by E.

    In "enumerate" mode returns a bool by scanning all order-p elements of
    the group; in "asserted" mode returns the string "asserted" and leaves
    the claim to the caller's certificate.
    """
    if mode == "asserted":
        return "asserted"
    if mode != "enumerate":
        raise ValueError(f"unknown maximality mode {mode!r}")
    basis = [g for g in E if not g.is_identity()]
    table = set(close_elementary_abelian(basis, p))
    data = group_data(spec)
    for i in data.order_p_indices(p):
        g = data.elements[int(i)]
        if g in table:
            continue
        if centralizes(g, basis):
            return False
    return True

"""Deterministic builders for the explicit collections in symmetric,
alternating, linear and projective linear groups, the GF(2) fixtures for
dimensions 4 and 6, obstruction certificates for the excluded families, and
transfer of a collection to a central quotient.
"""

from __future__ import annotations

import itertools
import math

from .admissible import Collection, ElemAbelianBasis, ObstructionCertificate
from .elements import Coset, Mat, block_diag, conjugate, transvection
from .fields import ExtensionField, field_create, field_from_order, is_prime
from .groups import GroupSpec, central_p_elements, enumerate_group, named_group


def multiplicative_order(q: int, p: int) -> int:
    """Least d >= 1 with q^d = 1 mod p."""
    if q % p == 0:
        raise ValueError(f"{p} divides {q}; no multiplicative order")
    d = 1
    x = q % p
    while x != 1:
        x = (x * q) % p
        d += 1
    return d


def p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        out *= p
        n //= p
    return out


def _require_odd_prime(p: int):
    if not is_prime(p) or p == 2:
        raise ValueError(f"p must be an odd prime, got {p}")


def _maximality_mode(spec: GroupSpec) -> str:
    hint = spec.order_hint()
    if hint is not None and hint <= spec.effective_cap():
        return "enumerate"
    return "asserted"


def _cycle(points):
    return "(" + ",".join(str(x) for x in points) + ")"


# ---------------------------------------------------------------------------
# Symmetric / alternating groups
# ---------------------------------------------------------------------------


def symmetric_alternating(n: int, p: int, kind: str = "alt") -> Collection:
    """e_i the i-th block p-cycle, c_i the 3-cycle on its first three points.

    Valid for p > 3 (prime) and n >= p; the same elements work in Alt(n) and
    Sym(n) since p-cycles for odd p and 3-cycles are even.
    """
    if not is_prime(p) or p <= 3:
        raise ValueError(f"this construction needs a prime p > 3, got {p}")
    if n < p:
        raise ValueError(f"need n >= p, got n={n}, p={p}")
    if kind not in ("alt", "sym"):
        raise ValueError(f"kind must be 'alt' or 'sym', got {kind!r}")
    r = n // p
    b = n - r * p
    from .elements import parse_perm
    basis = []
    cs = []
    for i in range(1, r + 1):
        start = (i - 1) * p + 1
        basis.append(parse_perm(_cycle(range(start, start + p)), n))
        cs.append(parse_perm(_cycle((start, start + 1, start + 2)), n))
    spec = named_group(f"Alt({n})" if kind == "alt" else f"Sym({n})")
    return Collection(
        E=ElemAbelianBasis(p, basis), c=tuple(cs), group=spec,
        maximality=_maximality_mode(spec),
        recipe={"family": "sym-alt", "params": {"n": n, "p": p, "kind": kind},
                "derived": {"rank": r, "b": b}},
    )


def a8_p3(kind: str = "alt") -> Collection:
    """The degree-8 exception at p = 3."""
    from .elements import parse_perm
    if kind not in ("alt", "sym"):
        raise ValueError(f"kind must be 'alt' or 'sym', got {kind!r}")
    e1 = parse_perm("(1,2,3)", 8)
    e2 = parse_perm("(4,5,6)", 8)
    c1 = parse_perm("(1,7)(2,3)", 8)
    c2 = parse_perm("(4,8)(5,6)", 8)
    spec = named_group("Alt(8)" if kind == "alt" else "Sym(8)")
    return Collection(
        E=ElemAbelianBasis(3, (e1, e2)), c=(c1, c2), group=spec,
        maximality=_maximality_mode(spec),
        recipe={"family": "a8-p3", "params": {"kind": kind}, "derived": {"rank": 2}},
    )


# ---------------------------------------------------------------------------
# GF(2) fixtures for dimensions 4 and 6 at p = 3
# ---------------------------------------------------------------------------


def _xy_blocks():
    F2 = field_create(2)
    X = Mat(F2, [[0, 1], [1, 1]])
    Y = Mat(F2, [[0, 1], [1, 0]])
    return F2, X, Y


def _block_matrix(field, grid):
    """Assemble a matrix from a square grid of equal-size blocks (None = 0)."""
    size = None
    for row in grid:
        for b in row:
            if b is not None:
                size = b.n
                break
    k = len(grid)
    n = k * size
    rows = [[0] * n for _ in range(n)]
    for bi, row in enumerate(grid):
        for bj, b in enumerate(row):
            if b is None:
                continue
            for i in range(size):
                for j in range(size):
                    rows[bi * size + i][bj * size + j] = b.rows[i][j]
    return Mat(field, tuple(tuple(r) for r in rows))


def sl42() -> Collection:
    """The rank-2 collection in the 4-dimensional group over GF(2)."""
    F2, X, Y = _xy_blocks()
    X2 = X * X
    e1 = _block_matrix(F2, [[X2, None], [None, X2]])
    e2 = _block_matrix(F2, [[X2, None], [None, X]])
    c1 = _block_matrix(F2, [[X, None], [Y, X]])
    c2 = _block_matrix(F2, [[X, None], [X, X2]])
    spec = named_group("SL(4,2)")
    return Collection(
        E=ElemAbelianBasis(3, (e1, e2)), c=(c1, c2), group=spec,
        maximality=_maximality_mode(spec),
        recipe={"family": "sl4-gf2", "params": {"n": 4, "q": 2, "p": 3},
                "derived": {"rank": 2}},
    )


def sl62() -> Collection:
    """The rank-3 collection in the 6-dimensional group over GF(2)."""
    F2, X, Y = _xy_blocks()
    X2 = X * X
    I = Mat.identity(2, F2)
    e1 = _block_matrix(F2, [[X2, None, None], [None, I, None], [None, None, I]])
    e2 = _block_matrix(F2, [[X, None, None], [None, X, None], [None, None, X]])
    e3 = _block_matrix(F2, [[X2, None, None], [None, X2, None], [None, None, X]])
    c1 = _block_matrix(F2, [[X, None, None], [X, I, None], [None, None, I]])
    c2 = _block_matrix(F2, [[X, None, None], [None, X, Y], [None, None, X]])
    c3 = _block_matrix(F2, [[X, None, None], [None, X, X], [None, None, X2]])
    spec = named_group("SL(6,2)")
    return Collection(
        E=ElemAbelianBasis(3, (e1, e2, e3)), c=(c1, c2, c3), group=spec,
        maximality=_maximality_mode(spec),
        recipe={"family": "sl6-gf2", "params": {"n": 6, "q": 2, "p": 3},
                "derived": {"rank": 3}},
    )


# ---------------------------------------------------------------------------
# Linear groups, d > 1
# ---------------------------------------------------------------------------


def _theta_block(q: int, d: int, p: int):
    """The image of a least order-p element of GF(q^d)* in d x d matrices
    over GF(q), via multiplication on the power basis."""
    base = field_from_order(q)
    ext = ExtensionField(base, d)
    u = ext.least_of_order(p)
    if u is None:
        raise ValueError(f"no element of order {p} in GF({q}^{d})")
    return Mat(base, ext.mult_matrix_rows(u)), u


def _search_block_c(block: Mat, p: int, det_one: bool):
    """First d x d matrix (transvections first, then canonical scan) that
    fails to normalize <block>."""
    F = block.field
    d = block.n
    powers = set()
    x = block
    while not x.is_identity():
        powers.add(x)
        x = x * block

    def normalizes(m):
        return conjugate(m, block) in powers

    for a in range(1, d + 1):
        for b in range(1, d + 1):
            if a == b:
                continue
            for lam in F.units():
                rows = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
                rows[a - 1][b - 1] = lam
                m = Mat(F, rows)
                if not normalizes(m):
                    return m
    limit = 200_000
    count = 0
    for flat in itertools.product(range(F.q), repeat=d * d):
        count += 1
        if count > limit:
            break
        m = Mat(F, tuple(tuple(flat[i * d:(i + 1) * d]) for i in range(d)))
        det = m.det()
        if det == 0 or (det_one and det != 1):
            continue
        if not normalizes(m):
            return m
    raise ValueError("block search exhausted without a valid candidate")


def _compose_gf2_collection(n: int) -> tuple:
    """Basis and c-elements for even n >= 4 over GF(2) from the 4- and
    6-dimensional fixtures placed on disjoint diagonal blocks."""
    pieces = []
    rem = n
    while rem > 0:
        if rem % 4 == 0 or rem == 4:
            pieces.append(4)
            rem -= 4
        elif rem >= 6 and (rem - 6) % 4 == 0:
            pieces.append(6)
            rem -= 6
        else:
            pieces.append(4)
            rem -= 4
    F2 = field_create(2)
    basis = []
    cs = []
    offset = 0
    for size in pieces:
        sub = sl42() if size == 4 else sl62()
        for e, c in zip(sub.E.basis, sub.c):
            before = offset
            after = n - offset - size
            blocks_e = ([before] if before else []) + [e] + ([after] if after else [])
            blocks_c = ([before] if before else []) + [c] + ([after] if after else [])
            basis.append(block_diag(F2, *blocks_e))
            cs.append(block_diag(F2, *blocks_c))
        offset += size
    return tuple(basis), tuple(cs)


def linear_d_gt_1(n: int, q: int, p: int, kind: str = "SL") -> Collection:
    """Block-diagonal collection when the order d of q mod p exceeds 1.

    Outside characteristic-2-with-p-3, e_i places an order-p element of
    GF(q^d)* in the i-th d x d block and c_i is found by a deterministic
    search in that block.  Over GF(2) at p = 3 the explicit fixtures for
    dimensions 4 and 6 are composed instead (the 2-dimensional case has no
    admissible collection and is rejected).
    """
    _require_odd_prime(p)
    if kind not in ("SL", "GL"):
        raise ValueError(f"kind must be 'SL' or 'GL', got {kind!r}")
    if q % p == 0:
        raise ValueError("defining characteristic is out of scope")
    d = multiplicative_order(q, p)
    if d == 1:
        raise ValueError(f"q = {q} is 1 mod p = {p}; use the d = 1 construction")
    r = n // d
    f = n - r * d
    if r == 0:
        raise ValueError(f"p = {p} does not divide the order of {kind}({n},{q})")
    if q == 2 and p == 3:
        if n == 2:
            raise ValueError("the 2-dimensional group over GF(2) at p = 3 is excluded")
        spec = named_group(f"{kind}({n},{q})")
        if n == 3:
            theta, u = _theta_block(2, 2, 3)
            F2 = field_create(2)
            e1 = block_diag(F2, theta, 1)
            powers = {e1, e1 * e1}
            c1 = None
            for g in enumerate_group(named_group("SL(3,2)")):
                if conjugate(g, e1) not in powers:
                    c1 = g
                    break
            basis, cs = (e1,), (c1,)
        elif n % 2 == 0:
            basis, cs = _compose_gf2_collection(n)
        else:
            basis0, cs0 = _compose_gf2_collection(n - 1)
            F2 = field_create(2)
            basis = tuple(block_diag(F2, m, 1) for m in basis0)
            cs = tuple(block_diag(F2, m, 1) for m in cs0)
        return Collection(
            E=ElemAbelianBasis(p, basis), c=cs, group=spec,
            maximality=_maximality_mode(spec),
            recipe={"family": "linear-d-gt-1", "params": {"n": n, "q": q, "p": p, "kind": kind},
                    "derived": {"d": d, "rank": len(basis), "f": n - 2 * len(basis),
                                "route": "gf2-fixtures"}},
        )
    theta, u = _theta_block(q, d, p)
    F = field_from_order(q)
    basis = []
    for i in range(1, r + 1):
        before = (i - 1) * d
        after = n - i * d
        blocks = ([before] if before else []) + [theta] + ([after] if after else [])
        basis.append(block_diag(F, *blocks))
    c_block = _search_block_c(theta, p, det_one=(kind == "SL"))
    cs = []
    for i in range(1, r + 1):
        before = (i - 1) * d
        after = n - i * d
        blocks = ([before] if before else []) + [c_block] + ([after] if after else [])
        cs.append(block_diag(F, *blocks))
    spec = named_group(f"{kind}({n},{q})")
    return Collection(
        E=ElemAbelianBasis(p, tuple(basis)), c=tuple(cs), group=spec,
        maximality=_maximality_mode(spec),
        recipe={"family": "linear-d-gt-1", "params": {"n": n, "q": q, "p": p, "kind": kind},
                "derived": {"d": d, "rank": r, "f": f, "u": u,
                            "theta_rows": [list(row) for row in theta.rows],
                            "c_block_rows": [list(row) for row in c_block.rows]}},
    )


# ---------------------------------------------------------------------------
# Linear groups, d = 1
# ---------------------------------------------------------------------------


def _d1_basis(F, n: int, u: int):
    """e_i = diag(u,...,u^(1-n) at slot i,...,u); det = 1 automatically."""
    out = []
    low = F.pow(u, 1 - n)
    for i in range(1, n):
        diag = [u] * n
        diag[i - 1] = low
        out.append(Mat(F, tuple(tuple(diag[a] if a == b else 0 for b in range(n))
                                for a in range(n))))
    return tuple(out)


def linear_d_eq_1(n: int, q: int, p: int) -> Collection:
    """Diagonal basis with c_j = I + beta_{jn}, for p | q-1 and p coprime to n."""
    _require_odd_prime(p)
    if (q - 1) % p != 0:
        raise ValueError(f"need p | q-1; got p={p}, q={q}")
    if math.gcd(p, n) != 1:
        raise ValueError(f"need gcd(p, n) = 1; got p={p}, n={n}")
    if n < 2:
        raise ValueError("need n >= 2")
    F = field_from_order(q)
    u = F.least_of_order(p)
    basis = _d1_basis(F, n, u)
    cs = tuple(transvection(j, n, n, F) for j in range(1, n))
    spec = named_group(f"SL({n},{q})")
    return Collection(
        E=ElemAbelianBasis(p, basis), c=cs, group=spec,
        maximality=_maximality_mode(spec),
        recipe={"family": "linear-d-eq-1", "params": {"n": n, "q": q, "p": p},
                "derived": {"rank": n - 1, "u": u}},
    )


# ---------------------------------------------------------------------------
# Projective linear groups
# ---------------------------------------------------------------------------


def projective_linear(n: int, q: int, p: int, kind: str) -> Collection:
    """Collections of central cosets for the projective groups with p | q-1.

    PGL uses diag(u I, 1, u I) classes; PSL either embeds the (n-1)-dim
    d = 1 collection in the corner, or, when the p-part of q-1 exceeds that
    of n, uses diag(u I, u^(1-n), u I) with u a p-th root of a central
    scalar.  The 3-dimensional projective special case at p = 3 is excluded.
    """
    _require_odd_prime(p)
    if kind not in ("PGL", "PSL"):
        raise ValueError(f"kind must be 'PGL' or 'PSL', got {kind!r}")
    F = field_from_order(q)
    if kind == "PGL":
        if (q - 1) % p != 0:
            raise ValueError(f"PGL construction needs p | q-1; got p={p}, q={q}")
        m = q - 1
        u = F.least_of_order(p)
        basis = []
        for i in range(1, n):
            diag = [u] * n
            diag[i - 1] = 1
            basis.append(Coset(Mat(F, tuple(tuple(diag[a] if a == b else 0
                                                  for b in range(n))
                                            for a in range(n))), m))
        cs = tuple(Coset(transvection(j, n, n, F), m) for j in range(1, n))
        spec = named_group(f"PGL({n},{q})")
        return Collection(
            E=ElemAbelianBasis(p, tuple(basis)), c=cs, group=spec,
            maximality=_maximality_mode(spec),
            recipe={"family": "projective", "params": {"n": n, "q": q, "p": p, "kind": kind},
                    "derived": {"rank": n - 1, "u": u}},
        )
    # PSL
    if math.gcd(n, q - 1) % p != 0:
        raise ValueError(f"PSL construction needs p | gcd(n, q-1); got p={p}, n={n}, q={q}")
    if p == 3 and n == 3:
        raise ValueError("the 3-dimensional projective special case at p = 3 is excluded")
    m = math.gcd(n, q - 1)
    np_, qp_ = p_part(n, p), p_part(q - 1, p)
    spec = named_group(f"PSL({n},{q})")
    if np_ >= qp_:
        inner = linear_d_eq_1(n - 1, q, p)
        basis = tuple(Coset(block_diag(F, e, 1), m) for e in inner.E.basis)
        cs = tuple(Coset(block_diag(F, c, 1), m) for c in inner.c)
        derived = {"rank": n - 2, "route": "corner-embedding", "u": inner.recipe["derived"]["u"]}
    else:
        z = F.least_of_order(np_)
        u = None
        for a in F.units():
            if F.pow(a, p) == z:
                u = a
                break
        if u is None:
            raise ValueError("no p-th root of the central scalar exists")
        mats = _d1_basis(F, n, u)
        basis = tuple(Coset(e, m) for e in mats)
        cs = tuple(Coset(transvection(j, n, n, F), m) for j in range(1, n))
        derived = {"rank": n - 1, "route": "root-of-center", "u": u, "z": z}
    return Collection(
        E=ElemAbelianBasis(p, basis), c=cs, group=spec,
        maximality=_maximality_mode(spec),
        recipe={"family": "projective", "params": {"n": n, "q": q, "p": p, "kind": kind},
                "derived": derived},
    )


# ---------------------------------------------------------------------------
# Obstructed families and quotient transfer
# ---------------------------------------------------------------------------


def obstruction_family(kind: str, n: int, q: int, p: int) -> ObstructionCertificate:
    """Central order-p scalar witness for the linear/unitary families with
    p | q - eps (and p | gcd(n, q - eps) for the S-types)."""
    _require_odd_prime(p)
    if kind not in ("GL", "SL", "GU", "SU"):
        raise ValueError(f"kind must be one of GL, SL, GU, SU; got {kind!r}")
    eps = 1 if kind in ("GL", "SL") else -1
    if (q - eps) % p != 0:
        raise ValueError(f"need p | q - ({eps}); got p={p}, q={q}")
    if kind in ("SL", "SU") and math.gcd(n, q - eps) % p != 0:
        raise ValueError(f"need p | gcd(n, q - ({eps})); got n={n}, q={q}, p={p}")
    field_q = q if eps == 1 else q * q
    F = field_from_order(field_q)
    lam = None
    for a in F.units():
        if F.order(a) != p:
            continue
        if kind in ("SL", "SU") and F.pow(a, n) != 1:
            continue
        if eps == -1 and F.pow(a, q + 1) != 1:
            continue
        lam = a
        break
    if lam is None:
        raise ValueError("no central scalar of order p exists (preconditions unmet)")
    witness = Mat.scalar(lam, n, F)
    if eps == 1:
        spec = named_group(f"{kind}({n},{q})")
        mode = "structural"
        hint = spec.order_hint()
        if hint is not None and hint <= spec.effective_cap():
            central = central_p_elements(spec, p)
            if witness not in central:
                raise RuntimeError("structural witness disagrees with enumeration")
            mode = "enumerated"
    else:
        spec = GroupSpec("mat", n, (), name=f"{kind}({n},{q})", q=field_q,
                         det1=(kind == "SU"))
        mode = "structural"
    return ObstructionCertificate(group=spec, p=p, witness=witness, mode=mode)


def central_quotient_spec(spec: GroupSpec) -> GroupSpec:
    """The quotient of a matrix group by its full scalar center."""
    if spec.kind != "mat":
        raise ValueError("central quotient needs a matrix group")
    m = math.gcd(spec.n, spec.q - 1) if spec.det1 else spec.q - 1
    gens = tuple(Coset(g, m) for g in spec.generators)
    name = spec.name
    if name.startswith("SL("):
        name = "P" + name
    elif name.startswith("GL("):
        name = "P" + name
    else:
        name = f"{name}/Z" if name else ""
    return GroupSpec("coset", spec.n, gens, name=name, q=spec.q,
                     det1=spec.det1, center_order=m, cap=spec.cap)


def quotient_collection(coll: Collection) -> Collection:
    """Image of a matrix-group collection in the central quotient."""
    qspec = central_quotient_spec(coll.group)
    m = qspec.center_order
    basis = tuple(Coset(e, m) for e in coll.E.basis)
    cs = tuple(Coset(c, m) for c in coll.c)
    return Collection(
        E=ElemAbelianBasis(coll.p, basis), c=cs, group=qspec,
        maximality=_maximality_mode(qspec),
        recipe={"family": "quotient-image", "params": {"of": coll.recipe},
                "derived": {"center_order": m}},
    )

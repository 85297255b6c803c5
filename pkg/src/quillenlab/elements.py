"""Group elements: permutations, invertible matrices over GF(q), central cosets.

All three kinds are immutable, hashable, totally ordered within a kind, and
share the same operator surface: ``*`` composes, ``inverse()``, ``**`` powers,
``is_identity()``.  Conjugation is the left action x * g * x^-1.
"""

from __future__ import annotations

import re

from .fields import Field, field_from_order


class Perm:
    """Permutation of {1..n} stored as the image tuple (images[i-1] = g(i))."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(int(i) for i in images)
        n = len(images)
        if sorted(images) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {images}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, *a):
        raise AttributeError("Perm is immutable")

    @property
    def degree(self):
        return len(self.images)

    @staticmethod
    def identity(n):
        return Perm(range(1, n + 1))

    def __call__(self, i):
        return self.images[i - 1]

    def __mul__(self, other):
        # (a*b)(i) = a(b(i))
        if not isinstance(other, Perm) or other.degree != self.degree:
            return NotImplemented
        im = self.images
        return Perm(tuple(im[j - 1] for j in other.images))

    def inverse(self):
        inv = [0] * self.degree
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Perm(inv)

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = Perm.identity(self.degree)
        base = self
        while e > 0:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_identity(self):
        return all(v == i for i, v in enumerate(self.images, start=1))

    def cycles(self):
        """Cycle decomposition as a list of tuples, fixed points omitted."""
        seen = [False] * self.degree
        out = []
        for i in range(1, self.degree + 1):
            if seen[i - 1]:
                continue
            cyc = [i]
            seen[i - 1] = True
            j = self(i)
            while j != i:
                cyc.append(j)
                seen[j - 1] = True
                j = self(j)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_string(self):
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + ",".join(str(x) for x in c) + ")" for c in cycs)

    def is_even(self):
        return sum(len(c) - 1 for c in self.cycles()) % 2 == 0

    def key(self):
        return ("perm", self.images)

    def __eq__(self, other):
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __lt__(self, other):
        return self.images < other.images

    def __repr__(self):
        return f"Perm{self.cycle_string()}"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_perm(text: str, n: int) -> Perm:
    """Parse cycle notation like "(1,2,3)(4,5)" (also space-separated).

    Cycles compose right-to-left (function composition); for the usual
    disjoint-cycle notation the order does not matter.
    """
    text = text.strip()
    if text in ("", "()", "e", "id"):
        return Perm.identity(n)
    if not re.fullmatch(r"(\s*\([^()]*\)\s*)+", text):
        raise ValueError(f"bad cycle notation: {text!r}")
    perm = Perm.identity(n)
    for body in _CYCLE_RE.findall(text):
        body = body.strip()
        if not body:
            continue
        pts = [int(t) for t in re.split(r"[,\s]+", body)]
        if len(set(pts)) != len(pts):
            raise ValueError(f"repeated point in cycle: {body!r}")
        for p in pts:
            if not 1 <= p <= n:
                raise ValueError(f"point {p} out of range 1..{n}")
        im = list(range(1, n + 1))
        for a, b in zip(pts, pts[1:] + pts[:1]):
            im[a - 1] = b
        perm = perm * Perm(im)
    return perm


class Mat:
    """Invertible square matrix over a Field, rows as a tuple of tuples."""

    __slots__ = ("field", "rows")

    def __init__(self, field: Field, rows):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        n = len(rows)
        for r in rows:
            if len(r) != n:
                raise ValueError("matrix must be square")
            for x in r:
                if not 0 <= x < field.q:
                    raise ValueError(f"entry {x} not in {field!r}")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, *a):
        raise AttributeError("Mat is immutable")

    @property
    def n(self):
        return len(self.rows)

    @staticmethod
    def identity(n, field):
        return Mat(field, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @staticmethod
    def scalar(lam, n, field):
        return Mat(field, tuple(tuple(lam if i == j else 0 for j in range(n)) for i in range(n)))

    def __mul__(self, other):
        if not isinstance(other, Mat) or other.field != self.field or other.n != self.n:
            return NotImplemented
        F = self.field
        add, mul = F.add, F.mul
        brows = other.rows
        n = self.n
        out = []
        for arow in self.rows:
            row = []
            for j in range(n):
                acc = 0
                for k in range(n):
                    x = arow[k]
                    if x:
                        y = brows[k][j]
                        if y:
                            acc = add(acc, mul(x, y))
                row.append(acc)
            out.append(tuple(row))
        return Mat(F, tuple(out))

    def _echelon(self):
        """Gauss-Jordan on [A | I]; returns (det, inverse rows or None)."""
        F = self.field
        n = self.n
        a = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(self.rows)]
        det = 1
        for col in range(n):
            piv = None
            for r in range(col, n):
                if a[r][col] != 0:
                    piv = r
                    break
            if piv is None:
                return 0, None
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                det = F.neg(det)
            det = F.mul(det, a[col][col])
            inv = F.inv(a[col][col])
            a[col] = [F.mul(inv, x) for x in a[col]]
            for r in range(n):
                if r != col and a[r][col] != 0:
                    f = a[r][col]
                    a[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(a[r], a[col])]
        return det, [row[n:] for row in a]

    def det(self):
        return self._echelon()[0]

    def inverse(self):
        det, inv = self._echelon()
        if det == 0:
            raise ZeroDivisionError("singular matrix")
        return Mat(self.field, tuple(tuple(r) for r in inv))

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = Mat.identity(self.n, self.field)
        base = self
        while e > 0:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_identity(self):
        return all(x == (1 if i == j else 0) for i, r in enumerate(self.rows) for j, x in enumerate(r))

    def is_scalar(self):
        d = self.rows[0][0]
        if d == 0:
            return False
        return all(x == (d if i == j else 0) for i, r in enumerate(self.rows) for j, x in enumerate(r))

    def flat(self):
        return tuple(x for r in self.rows for x in r)

    def key(self):
        return ("mat", self.field.q, self.n, self.flat())

    def __eq__(self, other):
        return isinstance(other, Mat) and self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash((self.field.q, self.rows))

    def __lt__(self, other):
        return self.flat() < other.flat()

    def __repr__(self):
        return f"Mat(GF({self.field.q}), {list(map(list, self.rows))})"


def _center_scalars(field: Field, m: int):
    """The m-element scalar subgroup {x in F* : x^m = 1}; m must divide q-1."""
    if (field.q - 1) % m != 0:
        raise ValueError(f"center order {m} does not divide {field.q - 1}")
    return tuple(x for x in field.units() if field.pow(x, m) == 1)


class Coset:
    """A matrix modulo a scalar central subgroup of the stated order.

    Equality is equality of scalar orbits; the stored representative is the
    lexicographically least scalar multiple (row-major entry comparison).
    """

    __slots__ = ("rep", "center_order")

    def __init__(self, rep: Mat, center_order: int):
        scalars = _center_scalars(rep.field, center_order)
        best = None
        F = rep.field
        for lam in scalars:
            flat = tuple(F.mul(lam, x) for x in rep.flat())
            if best is None or flat < best:
                best = flat
        n = rep.n
        rows = tuple(best[i * n:(i + 1) * n] for i in range(n))
        object.__setattr__(self, "rep", Mat(F, rows))
        object.__setattr__(self, "center_order", center_order)

    def __setattr__(self, *a):
        raise AttributeError("Coset is immutable")

    @property
    def field(self):
        return self.rep.field

    @property
    def n(self):
        return self.rep.n

    @staticmethod
    def identity(n, field, center_order):
        return Coset(Mat.identity(n, field), center_order)

    def __mul__(self, other):
        if not isinstance(other, Coset) or other.center_order != self.center_order:
            return NotImplemented
        return Coset(self.rep * other.rep, self.center_order)

    def inverse(self):
        return Coset(self.rep.inverse(), self.center_order)

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = Coset.identity(self.n, self.field, self.center_order)
        base = self
        while e > 0:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_identity(self):
        return self.rep.is_identity()

    def key(self):
        return ("coset", self.field.q, self.n, self.center_order, self.rep.flat())

    def __eq__(self, other):
        return (
            isinstance(other, Coset)
            and self.center_order == other.center_order
            and self.rep == other.rep
        )

    def __hash__(self):
        return hash((self.center_order, self.rep))

    def __lt__(self, other):
        return self.rep.flat() < other.rep.flat()

    def __repr__(self):
        return f"Coset({self.rep!r} mod C_{self.center_order})"


# ---------------------------------------------------------------------------
# Shared operations
# ---------------------------------------------------------------------------


def conjugate(x, g):
    """Left conjugation action: returns x * g * x^-1."""
    if type(x) is not type(g):
        raise TypeError(f"incompatible element kinds: {type(x).__name__}, {type(g).__name__}")
    return x * g * x.inverse()


def commutes(a, b) -> bool:
    return a * b == b * a


def element_order(g) -> int:
    """Least k >= 1 with g^k the identity."""
    k = 1
    x = g
    while not x.is_identity():
        x = x * g
        k += 1
    return k


def beta_matrix(a: int, b: int, n: int, field: Field) -> Mat:
    """The n x n matrix with a single 1 at position (a, b), 1-indexed."""
    if not (1 <= a <= n and 1 <= b <= n):
        raise ValueError(f"indices ({a},{b}) out of range 1..{n}")
    return Mat(field, tuple(
        tuple(1 if (i == a - 1 and j == b - 1) else 0 for j in range(n)) for i in range(n)
    ))


def transvection(a: int, b: int, n: int, field: Field) -> Mat:
    """I_n + beta_{ab} for a != b."""
    if a == b:
        raise ValueError("transvection needs a != b")
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    rows[a - 1][b - 1] = field.add(rows[a - 1][b - 1], 1)
    return Mat(field, tuple(tuple(r) for r in rows))


def block_diag(field: Field, *blocks) -> Mat:
    """Assemble a block-diagonal matrix from square Mat blocks / sizes.

    Integer arguments insert identity blocks of that size.
    """
    mats = []
    for b in blocks:
        mats.append(Mat.identity(b, field) if isinstance(b, int) else b)
    n = sum(m.n for m in mats)
    rows = [[0] * n for _ in range(n)]
    off = 0
    for m in mats:
        for i in range(m.n):
            for j in range(m.n):
                rows[off + i][off + j] = m.rows[i][j]
        off += m.n
    return Mat(field, tuple(tuple(r) for r in rows))


# ---------------------------------------------------------------------------
# JSON encoding
# ---------------------------------------------------------------------------


def element_to_json(g):
    if isinstance(g, Perm):
        return {"perm": list(g.images)}
    if isinstance(g, Mat):
        return {"mat": {"q": g.field.q, "rows": [list(r) for r in g.rows]}}
    if isinstance(g, Coset):
        return {"coset": {"mat": {"q": g.field.q, "rows": [list(r) for r in g.rep.rows]},
                          "center_order": g.center_order}}
    raise TypeError(f"not a group element: {g!r}")


def element_from_json(obj):
    if isinstance(obj, dict):
        if "perm" in obj:
            return Perm(obj["perm"])
        if "mat" in obj:
            payload = obj["mat"]
            return Mat(field_from_order(int(payload["q"])), payload["rows"])
        if "coset" in obj:
            payload = obj["coset"]
            m = payload["mat"]
            rep = Mat(field_from_order(int(m["q"])), m["rows"])
            return Coset(rep, int(payload["center_order"]))
    raise ValueError(f"unrecognized element encoding: {obj!r}")

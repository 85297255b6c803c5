"""Exact arithmetic for small finite fields GF(p^k) and extensions GF(q^d).

Elements are canonical integers: the base-p digits of an encoding are the
polynomial coefficients (digit i = coefficient of x^i), so 0 is zero, 1 is
one, and the integer order on encodings is the canonical element order used
everywhere for deterministic choices ("least element of order m" etc.).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

# Above this size we skip precomputed multiplication tables and multiply
# polynomials directly on every call.
_TABLE_LIMIT = 256


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def factor_prime_power(q: int) -> tuple[int, int]:
    """Split q = p^k with p prime; raise if q is not a prime power."""
    if q < 2:
        raise ValueError(f"not a prime power: {q}")
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        return q, 1
    k = 0
    m = q
    while m % p == 0:
        m //= p
        k += 1
    if m != 1:
        raise ValueError(f"not a prime power: {q}")
    return p, k


def prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Polynomial arithmetic over an abstract coefficient field.
#
# Polynomials are little-endian tuples of coefficient encodings with no
# trailing zeros; () is the zero polynomial.  The "ops" argument is anything
# with add/sub/mul/inv methods and integer encodings where 0 is zero and 1
# is one -- a _PrimeOps bootstrap or a full Field.
# ---------------------------------------------------------------------------


class _PrimeOps:
    """Arithmetic of GF(p) on plain ints, used to bootstrap Field."""

    def __init__(self, p):
        self.p = p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)


def _trim(cs):
    i = len(cs)
    while i > 0 and cs[i - 1] == 0:
        i -= 1
    return tuple(cs[:i])


def _poly_sub(ops, a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else 0
        y = b[i] if i < len(b) else 0
        out.append(ops.sub(x, y))
    return _trim(out)


def _poly_mul(ops, a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y == 0:
                continue
            out[i + j] = ops.add(out[i + j], ops.mul(x, y))
    return _trim(out)


def _poly_mod(ops, a, mod):
    # mod is monic of degree d (leading coefficient 1 at index d)
    d = len(mod) - 1
    a = list(a)
    for i in range(len(a) - 1, d - 1, -1):
        c = a[i]
        if c == 0:
            continue
        a[i] = 0
        for j in range(d):
            a[i - d + j] = ops.sub(a[i - d + j], ops.mul(c, mod[j]))
    return _trim(a)


def _poly_mulmod(ops, a, b, mod):
    return _poly_mod(ops, _poly_mul(ops, a, b), mod)


def _poly_powmod(ops, a, e, mod):
    result = (1,)
    base = _poly_mod(ops, a, mod)
    while e > 0:
        if e & 1:
            result = _poly_mulmod(ops, result, base, mod)
        base = _poly_mulmod(ops, base, base, mod)
        e >>= 1
    return result


def _poly_gcd(ops, a, b):
    while b:
        lead_inv = ops.inv(b[-1])
        b_monic = tuple(ops.mul(c, lead_inv) for c in b)
        a, b = b, _poly_mod(ops, a, b_monic)
    return a


def _is_irreducible(ops, f, field_size) -> bool:
    """Rabin's test for a monic polynomial f over a field of given size."""
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = (0, 1)
    for t in prime_divisors(d):
        h = _poly_sub(ops, _poly_powmod(ops, x, field_size ** (d // t), f), x)
        if len(_poly_gcd(ops, h, f)) > 1:
            return False
    h = _poly_sub(ops, _poly_powmod(ops, x, field_size**d, f), x)
    return h == ()


def _least_irreducible(ops, degree, field_size):
    """Deterministic modulus: scan non-leading coefficient encodings upward.

    The scan order equals the canonical integer encoding of the coefficient
    tuple, so the result is reproducible across runs.
    """
    if degree == 1:
        return (0, 1)
    for code in range(field_size**degree):
        coeffs = []
        c = code
        for _ in range(degree):
            coeffs.append(c % field_size)
            c //= field_size
        f = tuple(coeffs) + (1,)
        if _is_irreducible(ops, f, field_size):
            return f
    raise RuntimeError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------
# Fields
# ---------------------------------------------------------------------------


class Field:
    """GF(p^k) with the canonical (least-encoding) irreducible modulus."""

    def __init__(self, characteristic: int, degree: int = 1):
        if not is_prime(characteristic):
            raise ValueError(f"characteristic must be prime, got {characteristic}")
        if degree < 1:
            raise ValueError(f"degree must be positive, got {degree}")
        self.p = characteristic
        self.k = degree
        self.q = characteristic**degree
        self._ops = _PrimeOps(characteristic)
        self.modulus = _least_irreducible(self._ops, degree, characteristic)
        self._mul_table = None
        self._inv_table = None
        self._np_add = None
        self._np_mul = None
        if 1 < degree and self.q <= _TABLE_LIMIT:
            self._build_tables()

    # -- encoding helpers ---------------------------------------------------

    def encode(self, coeffs) -> int:
        e = 0
        for c in reversed(list(coeffs)):
            e = e * self.p + int(c)
        return e

    def decode(self, a: int):
        coeffs = []
        for _ in range(self.k):
            coeffs.append(a % self.p)
            a //= self.p
        return _trim(coeffs)

    # -- arithmetic ---------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        p = self.p
        out = 0
        mult = 1
        while a or b:
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        p = self.p
        out = 0
        mult = 1
        while a:
            out += ((p - a % p) % p) * mult
            a //= p
            mult *= p
        return out

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        if self._mul_table is not None:
            return self._mul_table[a][b]
        return self.encode(_poly_mulmod(self._ops, self.decode(a), self.decode(b), self.modulus))

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        if self._inv_table is not None:
            return self._inv_table[a]
        return self.pow(a, self.q - 2)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = 1
        base = a
        while e > 0:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        x = a
        n = 1
        while x != 1:
            x = self.mul(x, a)
            n += 1
        return n

    def least_of_order(self, m: int):
        """Least element (canonical encoding order) of multiplicative order m."""
        if (self.q - 1) % m != 0:
            return None
        for a in range(1, self.q):
            if self.order(a) == m:
                return a
        return None

    def elements(self):
        return range(self.q)

    def units(self):
        return range(1, self.q)

    # -- tables -------------------------------------------------------------

    def _build_tables(self):
        q = self.q
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            da = self.decode(a)
            for b in range(a, q):
                v = self.encode(_poly_mulmod(self._ops, da, self.decode(b), self.modulus))
                mul[a][b] = v
                mul[b][a] = v
        self._mul_table = mul
        inv = [0] * q
        for a in range(1, q):
            inv[a] = self.pow(a, q - 2)
        self._inv_table = inv

    def np_tables(self):
        """(add, mul) tables as uint16 numpy arrays, for vectorized kernels."""
        if self.q > _TABLE_LIMIT:
            raise ValueError(f"field too large for numpy tables: q={self.q}")
        if self._np_add is None:
            q = self.q
            add = np.zeros((q, q), dtype=np.uint16)
            mul = np.zeros((q, q), dtype=np.uint16)
            for a in range(q):
                for b in range(q):
                    add[a, b] = self.add(a, b)
                    mul[a, b] = self.mul(a, b)
            self._np_add = add
            self._np_mul = mul
        return self._np_add, self._np_mul

    # -- identity -----------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash(("Field", self.p, self.k))

    def __repr__(self):
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def field_create(characteristic: int, degree: int = 1) -> Field:
    """Create (and cache) GF(characteristic^degree)."""
    return Field(characteristic, degree)


def field_from_order(q: int) -> Field:
    p, k = factor_prime_power(q)
    return field_create(p, k)


class ExtensionField:
    """GF(q^d) built over an explicit base GF(q), with a base-aware basis.

    Needed where GF(q^d) must act as a d-dimensional GF(q)-space (the
    regular-representation embedding into d x d matrices over GF(q)).
    Elements are integers whose base-q digits are base-field encodings of
    the coefficients in the power basis of the modulus.
    """

    def __init__(self, base: Field, degree: int):
        if degree < 1:
            raise ValueError("degree must be positive")
        self.base = base
        self.d = degree
        self.q = base.q**degree
        self.modulus = _least_irreducible(base, degree, base.q)

    def encode(self, coeffs) -> int:
        e = 0
        for c in reversed(list(coeffs)):
            e = e * self.base.q + int(c)
        return e

    def decode(self, a: int):
        coeffs = []
        for _ in range(self.d):
            coeffs.append(a % self.base.q)
            a //= self.base.q
        return _trim(coeffs)

    def mul(self, a: int, b: int) -> int:
        return self.encode(_poly_mulmod(self.base, self.decode(a), self.decode(b), self.modulus))

    def pow(self, a: int, e: int) -> int:
        result = 1
        base = a
        while e > 0:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def order(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        x = a
        n = 1
        while x != 1:
            x = self.mul(x, a)
            n += 1
        return n

    def least_of_order(self, m: int):
        if (self.q - 1) % m != 0:
            return None
        for a in range(1, self.q):
            if self.order(a) == m:
                return a
        return None

    def mult_matrix_rows(self, a: int):
        """Multiplication-by-a as a d x d matrix over the base field.

        Row-major; acts on column coordinate vectors in the power basis.
        """
        d = self.d
        cols = []
        for j in range(d):
            yj = self.encode([0] * j + [1])
            prod = self.decode(self.mul(a, yj))
            col = list(prod) + [0] * (d - len(prod))
            cols.append(col)
        return tuple(tuple(cols[j][i] for j in range(d)) for i in range(d))

    def __repr__(self):
        return f"GF({self.base.q}^{self.d})/GF({self.base.q})"

"""Integer Smith normal form with unimodular transform certificates.

Row/column elimination with smallest-pivot selection and in-loop
divisibility repair, so the diagonal comes out as d_1 | d_2 | ...
The arithmetic runs in int64 with an overflow audit; if entries grow past
the safe bound the whole computation restarts on Python integers
(dtype=object), which is exact at any size.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_SAFE = 2**52


@dataclass
class SNFResult:
    d: np.ndarray          # same shape as the input, nonzero only on the diagonal
    u: np.ndarray          # rows transform, |det| = 1
    v: np.ndarray          # columns transform, |det| = 1
    invariants: list       # diagonal entries d_1 | d_2 | ..., zeros trailing

    @property
    def rank(self) -> int:
        return sum(1 for x in self.invariants if x != 0)

    @property
    def torsion(self) -> list:
        return [int(x) for x in self.invariants if x > 1]


class _NeedsExact(Exception):
    pass


def _smith(A, U, V, audit: bool):
    m, n = A.shape
    t = 0
    steps = 0
    while t < min(m, n):
        sub = A[t:, t:]
        nz = np.nonzero(sub)
        if len(nz[0]) == 0:
            break
        absvals = np.abs(sub[nz])
        w = int(np.argmin(absvals))
        pi, pj = int(nz[0][w]) + t, int(nz[1][w]) + t
        if pi != t:
            A[[t, pi]] = A[[pi, t]]
            U[[t, pi]] = U[[pi, t]]
        if pj != t:
            A[:, [t, pj]] = A[:, [pj, t]]
            V[:, [t, pj]] = V[:, [pj, t]]
        while True:
            col = A[t + 1:, t]
            if np.any(col):
                q = col // A[t, t]
                A[t + 1:, :] -= np.outer(q, A[t, :])
                U[t + 1:, :] -= np.outer(q, U[t, :])
                col = A[t + 1:, t]
                if np.any(col):
                    # a remainder smaller than the pivot exists; promote it
                    r = int(np.flatnonzero(col)[0]) + t + 1
                    A[[t, r]] = A[[r, t]]
                    U[[t, r]] = U[[r, t]]
                    continue
            row = A[t, t + 1:]
            if np.any(row):
                q = row // A[t, t]
                A[:, t + 1:] -= A[:, t:t + 1] * q
                V[:, t + 1:] -= V[:, t:t + 1] * q
                row = A[t, t + 1:]
                if np.any(row):
                    c = int(np.flatnonzero(row)[0]) + t + 1
                    A[:, [t, c]] = A[:, [c, t]]
                    V[:, [t, c]] = V[:, [c, t]]
                    continue
                # the column may have been refilled by column operations
                if np.any(A[t + 1:, t]):
                    continue
            break
        # divisibility repair: the pivot must divide the remaining block
        rest = A[t + 1:, t + 1:]
        if rest.size and np.any(rest % A[t, t]):
            r = int(np.nonzero(np.any(rest % A[t, t], axis=1))[0][0]) + t + 1
            A[t, :] += A[r, :]
            U[t, :] += U[r, :]
            continue
        if A[t, t] < 0:
            A[t, :] = -A[t, :]
            U[t, :] = -U[t, :]
        t += 1
        steps += 1
        if audit and steps % 16 == 0:
            peak = max(int(np.abs(A).max(initial=0)), int(np.abs(U).max(initial=0)),
                       int(np.abs(V).max(initial=0)))
            if peak > _SAFE:
                raise _NeedsExact
    if audit:
        peak = max(int(np.abs(A).max(initial=0)), int(np.abs(U).max(initial=0)),
                   int(np.abs(V).max(initial=0)))
        if peak > _SAFE:
            raise _NeedsExact
    return A, U, V


def smith_normal_form(M) -> SNFResult:
    """Diagonalize an integer matrix by unimodular row/column transforms.

    Returns D, U, V with U @ M @ V == D, D diagonal with d_1 | d_2 | ...
    """
    M = np.asarray(M)
    if M.ndim != 2:
        raise ValueError("matrix must be 2-dimensional")
    m, n = M.shape
    try:
        A = M.astype(np.int64).copy()
        if M.size and int(np.abs(M).max()) > _SAFE:
            raise _NeedsExact
        U = np.eye(m, dtype=np.int64)
        V = np.eye(n, dtype=np.int64)
        A, U, V = _smith(A, U, V, audit=True)
    except _NeedsExact:
        A = np.array([[int(x) for x in row] for row in M], dtype=object).reshape(m, n)
        U = np.eye(m, dtype=np.int64).astype(object)
        V = np.eye(n, dtype=np.int64).astype(object)
        A, U, V = _smith(A, U, V, audit=False)
    invariants = [int(A[i, i]) for i in range(min(m, n))]
    return SNFResult(d=A, u=U, v=V, invariants=invariants)


def verify_certificate(M, res: SNFResult) -> bool:
    """Exact check of U @ M @ V == D (falls back to Python ints if needed)."""
    M = np.asarray(M)
    m, n = M.shape
    if m == 0 or n == 0:
        return res.d.shape == M.shape
    mu = int(np.abs(res.u).max(initial=0))
    mm = int(np.abs(M).max(initial=0))
    mv = int(np.abs(res.v).max(initial=0))
    bound = mu * mm * m
    bound2 = bound * mv * n
    if bound2 < 2**62 and res.u.dtype != object:
        prod = res.u.astype(np.int64) @ M.astype(np.int64) @ res.v.astype(np.int64)
        return np.array_equal(prod, res.d.astype(np.int64))
    uo = res.u.astype(object)
    vo = res.v.astype(object)
    mo = M.astype(object)
    prod = uo @ mo @ vo
    return np.array_equal(prod, res.d.astype(object))


def rank_of(M) -> int:
    return smith_normal_form(M).rank


def is_unimodular(T) -> bool:
    """|det T| == 1, computed by fraction-free elimination on Python ints."""
    T = [[int(x) for x in row] for row in np.asarray(T)]
    n = len(T)
    if n == 0:
        return True
    from fractions import Fraction
    a = [[Fraction(x) for x in row] for row in T]
    det = Fraction(1)
    for c in range(n):
        piv = None
        for r in range(c, n):
            if a[r][c] != 0:
                piv = r
                break
        if piv is None:
            return False
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(c + 1, n):
            if a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return abs(det) == 1

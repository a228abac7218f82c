"""Exact linear algebra over a ``Field``, row-vector convention.

Matrices are numpy arrays of field codes.  ``x @ M`` is the image of the row
vector x.  GF(2) ranks of large matrices go through a packed-bitword
elimination; everything else uses a vectorised Gauss-Jordan loop.
"""
from __future__ import annotations

import numpy as np

from .field import Field

PACKED_THRESHOLD = 200


def _nonzero_mask(F: Field, arr):
    if F.kind == "rational":
        return np.array([x != 0 for x in arr.reshape(-1)], dtype=bool).reshape(arr.shape)
    return arr != 0


def rref(F: Field, M):
    """Reduced row echelon form.  Returns (R, pivots) with zero rows dropped."""
    M = np.array(M, dtype=F.dtype, copy=True)
    if M.ndim != 2:
        raise ValueError("rref expects a matrix")
    n, m = M.shape
    r = 0
    pivots = []
    for c in range(m):
        if r == n:
            break
        nz = np.flatnonzero(_nonzero_mask(F, M[r:, c]))
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            M[[r, i]] = M[[i, r]]
        piv = M[r, c]
        if piv != F.one:
            M[r] = F.vmul(M[r], F.inv(piv))
        rows = np.flatnonzero(_nonzero_mask(F, M[:, c]))
        rows = rows[rows != r]
        if rows.size:
            M[rows] = F.vsub(M[rows], F.vmul(M[rows, c][:, None], M[r][None, :]))
        pivots.append(c)
        r += 1
    return M[:r], pivots


def _pack_gf2(M):
    n, m = M.shape
    words = max(1, (m + 63) // 64)
    padded = np.zeros((n, words * 64), dtype=np.uint8)
    padded[:, :m] = M
    return np.packbits(padded, axis=1, bitorder="little").view(np.uint64).copy()


def rank_gf2(M) -> int:
    """Rank over GF(2) of a 0/1 matrix using packed 64-bit rows."""
    M = np.asarray(M)
    if M.size == 0:
        return 0
    if M.shape[1] > M.shape[0]:
        M = M.T
    n, m = M.shape
    A = _pack_gf2((M & 1).astype(np.uint8))
    r = 0
    for c in range(m):
        w, b = divmod(c, 64)
        bit = np.uint64(1) << np.uint64(b)
        col = A[r:, w] & bit
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        below = r + 1 + np.flatnonzero(A[r + 1:, w] & bit)
        if below.size:
            A[below, w:] ^= A[r, w:]
        r += 1
        if r == n:
            break
    return r


def rank(F: Field, M) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    if F.kind == "prime" and F.p == 2 and min(M.shape) >= PACKED_THRESHOLD:
        return rank_gf2(M)
    return len(rref(F, M)[1])


def left_kernel(F: Field, M):
    """Basis (as rows) of {x : x @ M = 0}."""
    M = np.asarray(M, dtype=F.dtype)
    n = M.shape[0]
    if M.shape[1] == 0:
        return F.eye(n)
    R, piv = rref(F, M.T)
    free = [j for j in range(n) if j not in set(piv)]
    K = F.zeros((len(free), n))
    for k, j in enumerate(free):
        K[k, j] = F.one
        for i, pc in enumerate(piv):
            if R[i, j] != 0:
                K[k, pc] = F.neg(R[i, j])
    return K


def solve_left(F: Field, M, b):
    """Some x with x @ M = b, or None.  Free variables are set to zero."""
    M = np.asarray(M, dtype=F.dtype)
    b = np.asarray(b, dtype=F.dtype)
    n = M.shape[0]
    aug = np.concatenate([M.T, b.reshape(-1, 1)], axis=1)
    R, piv = rref(F, aug)
    if n in piv:
        return None
    x = F.zeros(n)
    for i, pc in enumerate(piv):
        x[pc] = R[i, n]
    return x


def row_basis(F: Field, M):
    R, _ = rref(F, M)
    return R


class Subspace:
    """Row space kept in reduced echelon form, supporting membership and coordinates."""

    def __init__(self, F: Field, dim: int, rows=None):
        self.F = F
        self.dim = dim
        if rows is None or len(rows) == 0:
            self.R = F.zeros((0, dim))
            self.pivots = []
        else:
            self.R, self.pivots = rref(F, np.asarray(rows, dtype=F.dtype).reshape(-1, dim))

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, v):
        """Return (remainder, coefficients) with v = remainder + coeffs @ R."""
        F = self.F
        v = np.array(v, dtype=F.dtype, copy=True)
        coeffs = F.zeros(len(self.pivots))
        for i, pc in enumerate(self.pivots):
            c = v[pc]
            if c != 0:
                coeffs[i] = c
                v = F.vsub(v, F.vmul(self.R[i], c))
        return v, coeffs

    def contains(self, v) -> bool:
        rem, _ = self.reduce(v)
        return not np.any(_nonzero_mask(self.F, rem))

    def add(self, v) -> bool:
        """Add v to the span; return True if the rank grew."""
        rem, _ = self.reduce(v)
        if not np.any(_nonzero_mask(self.F, rem)):
            return False
        self.R, self.pivots = rref(self.F, np.vstack([self.R, rem[None, :]]))
        return True

    def contains_all(self, rows) -> bool:
        return all(self.contains(r) for r in np.asarray(rows).reshape(-1, self.dim))


def inverse(F: Field, M):
    """Inverse of a square matrix, or None when singular."""
    M = np.asarray(M, dtype=F.dtype)
    n = M.shape[0]
    R, piv = rref(F, np.concatenate([M, F.eye(n)], axis=1))
    if piv[:n] != list(range(n)) or len(piv) < n:
        return None
    return R[:n, n:]

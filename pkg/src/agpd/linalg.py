"""Dense linear algebra over a :class:`~agpd.field.Field`.

Matrices are 2-D numpy integer arrays of field elements.  Elimination is
done with vectorised row operations through the field tables; products go
through the F_p expansion of each entry (an m x m block per element), which
turns a field matmul into one integer matmul mod p.
"""
from __future__ import annotations

import numpy as np

from .field import Field


def rref(F: Field, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns.

    The pivot in each column is the first row (top-down) holding a nonzero
    entry, so the result is deterministic.
    """
    R = np.array(M, dtype=np.int64, copy=True)
    if R.ndim != 2:
        raise ValueError("expected a matrix")
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            R[[r, pr]] = R[[pr, r]]
        R[r] = F.mul(F.inv(int(R[r, c])), R[r])
        factors = R[:, c].copy()
        factors[r] = 0
        mask = factors != 0
        if mask.any():
            R[mask] = F.sub(R[mask], F.mul(factors[mask, None], R[r][None, :]))
        pivots.append(c)
        r += 1
    return R, pivots


def rank(F: Field, M) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(F, M)[1])


def row_basis(F: Field, M) -> np.ndarray:
    """Canonical basis of the row space (nonzero rows of the RREF)."""
    R, piv = rref(F, M)
    return R[: len(piv)]


def same_row_space(F: Field, A, B) -> bool:
    RA, RB = row_basis(F, A), row_basis(F, B)
    return RA.shape == RB.shape and bool(np.array_equal(RA, RB))


def expand(F: Field, M) -> np.ndarray:
    """F_p matrix of the F_p-linear map x -> M x on digit vectors."""
    M = np.asarray(M)
    r, c = M.shape
    blocks = F.mul_matrices[M]  # (r, c, m, m)
    return blocks.transpose(0, 2, 1, 3).reshape(r * F.m, c * F.m)


def to_digits(F: Field, V) -> np.ndarray:
    """(..., n) elements -> (..., n*m) base-p digits."""
    V = np.asarray(V)
    return F._digits[V].reshape(*V.shape[:-1], V.shape[-1] * F.m)


def from_digits(F: Field, D) -> np.ndarray:
    D = np.asarray(D)
    D = D.reshape(*D.shape[:-1], D.shape[-1] // F.m, F.m)
    return D @ F._weights


def matmul(F: Field, A, B) -> np.ndarray:
    """A @ B over the field."""
    A, B = np.asarray(A), np.asarray(B)
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
    if A.size == 0 or B.size == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    EA = expand(F, A)
    DB = to_digits(F, B.T).T  # (c*m, s)
    prod = (EA @ DB) % F.p  # (r*m, s)
    return from_digits(F, prod.T).T


class LinearMap:
    """A fixed matrix prepared for repeated products with batches of vectors."""

    def __init__(self, F: Field, M):
        self.F = F
        self.M = np.asarray(M, dtype=np.int64)
        self._E = expand(F, self.M).T.copy()

    def __call__(self, V) -> np.ndarray:
        """Row vectors V (..., c) -> (..., r) with each row mapped to M v."""
        D = to_digits(self.F, V)
        return from_digits(self.F, (D @ self._E) % self.F.p)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)

"""Exact dense linear algebra over prime fields GF(p).

Matrices are dense numpy integer arrays (row-major) with every entry
reduced into ``[0, p)``.  All routines return canonical reduced-echelon
bases so that downstream set-level computations are order-stable:
identical inputs always produce identical outputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class DimensionMismatch(ValueError):
    """Raised when matrix/vector shapes are incompatible."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The prime field GF(p).  Doubles as the matrix toolkit over it.

    All scalar arithmetic is reduced modulo ``p``; ``p`` must be prime
    so that every nonzero scalar is invertible.
    """

    p: int = 2

    def __post_init__(self):
        if not isinstance(self.p, int) or not _is_prime(self.p):
            raise ValueError(f"field modulus must be a prime integer, got {self.p!r}")

    # ------------------------------------------------------------------
    # scalars
    # ------------------------------------------------------------------
    def inv(self, a: int) -> int:
        """Multiplicative inverse of a nonzero scalar."""
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in GF(p)")
        return pow(a, self.p - 2, self.p)

    # ------------------------------------------------------------------
    # matrix constructors
    # ------------------------------------------------------------------
    def matrix(self, data) -> np.ndarray:
        """Coerce ``data`` to a 2-d int64 array with entries in [0, p)."""
        arr = np.asarray(data, dtype=np.int64) % self.p
        if arr.ndim != 2:
            raise DimensionMismatch(f"expected a 2-d matrix, got ndim={arr.ndim}")
        return arr

    def vector(self, data) -> np.ndarray:
        arr = np.asarray(data, dtype=np.int64) % self.p
        if arr.ndim != 1:
            raise DimensionMismatch(f"expected a 1-d vector, got ndim={arr.ndim}")
        return arr

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        return np.zeros((rows, cols), dtype=np.int64)

    def identity(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    # ------------------------------------------------------------------
    # elimination
    # ------------------------------------------------------------------
    def rref(self, A) -> tuple[np.ndarray, list[int]]:
        """Reduced row echelon form.

        Returns ``(R, pivot_cols)`` where ``R`` is the RREF of ``A`` and
        ``pivot_cols`` lists the pivot column indices (length = rank).
        """
        R = self.matrix(A).copy()
        m, n = R.shape
        pivots: list[int] = []
        row = 0
        for col in range(n):
            if row == m:
                break
            nz = np.nonzero(R[row:, col])[0]
            if nz.size == 0:
                continue
            piv = row + int(nz[0])
            if piv != row:
                R[[row, piv]] = R[[piv, row]]
            R[row] = (R[row] * self.inv(int(R[row, col]))) % self.p
            factors = R[:, col].copy()
            factors[row] = 0
            R = (R - np.outer(factors, R[row])) % self.p
            pivots.append(col)
            row += 1
        return R, pivots

    def rank(self, A) -> int:
        """GF(p)-rank of ``A``."""
        _, pivots = self.rref(A)
        return len(pivots)

    def kernel_basis(self, A) -> np.ndarray:
        """Canonical basis of ``{x : Ax = 0}``, one vector per column.

        The basis is derived from the RREF of ``A``: for each free column
        ``f`` there is one vector with a 1 in position ``f``, so the
        matrix of basis columns is in (column) reduced echelon form.
        Shape is ``(cols(A), cols(A) - rank(A))``.
        """
        A = self.matrix(A)
        m, n = A.shape
        R, pivots = self.rref(A)
        free = [c for c in range(n) if c not in pivots]
        basis = self.zeros(n, len(free))
        for k, f in enumerate(free):
            basis[f, k] = 1
            for i, pc in enumerate(pivots):
                basis[pc, k] = (-R[i, f]) % self.p
        return basis

    def image_basis(self, A) -> np.ndarray:
        """Canonical basis of the column space, one vector per column.

        Computed as the RREF of the transpose, so the basis vectors are
        in reduced echelon form.  Shape is ``(rows(A), rank(A))``.
        """
        A = self.matrix(A)
        R, pivots = self.rref(A.T)
        return R[: len(pivots)].T.copy()

    def solve(self, A, b) -> np.ndarray | None:
        """One solution of ``Ax = b``, or ``None`` if inconsistent.

        The returned solution is the echelon-canonical particular
        solution (free variables set to zero).
        """
        A = self.matrix(A)
        b = self.vector(b)
        if b.shape[0] != A.shape[0]:
            raise DimensionMismatch(
                f"b has length {b.shape[0]}, expected {A.shape[0]}"
            )
        n = A.shape[1]
        aug = np.hstack([A, b.reshape(-1, 1)])
        R, pivots = self.rref(aug)
        if n in pivots:
            return None
        x = np.zeros(n, dtype=np.int64)
        for i, pc in enumerate(pivots):
            x[pc] = R[i, n]
        return x

    def solve_matrix(self, A, B) -> np.ndarray | None:
        """Columnwise ``solve``: one ``X`` with ``AX = B``, or ``None``."""
        A = self.matrix(A)
        B = self.matrix(B)
        if B.shape[0] != A.shape[0]:
            raise DimensionMismatch(
                f"B has {B.shape[0]} rows, expected {A.shape[0]}"
            )
        cols = []
        for j in range(B.shape[1]):
            x = self.solve(A, B[:, j])
            if x is None:
                return None
            cols.append(x)
        if not cols:
            return self.zeros(A.shape[1], 0)
        return np.stack(cols, axis=1)

    # ------------------------------------------------------------------
    # subspace helpers (columns-as-basis convention)
    # ------------------------------------------------------------------
    def column_span_rref(self, A) -> np.ndarray:
        """Canonical form of a column span: RREF rows of the transpose."""
        A = self.matrix(A)
        R, pivots = self.rref(A.T)
        return R[: len(pivots)].copy()

    def in_span(self, basis_cols, v) -> bool:
        """Is ``v`` in the column span of ``basis_cols``?"""
        return self.solve(self.matrix(basis_cols), v) is not None

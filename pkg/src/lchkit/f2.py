"""Dense linear algebra over F2 on numpy uint8 arrays.

Matrices act on column vectors: ``M[i, j] = 1`` means basis vector ``j`` maps
onto a sum containing basis vector ``i``.
"""
from __future__ import annotations

import numpy as np


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.uint8)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.uint8)


def asmat(a) -> np.ndarray:
    return (np.asarray(a, dtype=np.int64) & 1).astype(np.uint8)


def mul(*mats: np.ndarray) -> np.ndarray:
    out = mats[0].astype(np.int64)
    for m in mats[1:]:
        out = (out @ m.astype(np.int64)) & 1
    return out.astype(np.uint8)


def add(*mats: np.ndarray) -> np.ndarray:
    out = mats[0].copy()
    for m in mats[1:]:
        out ^= m
    return out


def is_zero(m: np.ndarray) -> bool:
    return not m.any()


def rref(m: np.ndarray):
    """Reduced row echelon form. Returns (R, pivot columns)."""
    r = m.copy().astype(np.uint8)
    rows, cols = r.shape
    pivots = []
    row = 0
    for col in range(cols):
        if row >= rows:
            break
        hits = np.nonzero(r[row:, col])[0]
        if hits.size == 0:
            continue
        p = row + hits[0]
        if p != row:
            r[[row, p]] = r[[p, row]]
        others = np.nonzero(r[:, col])[0]
        for o in others:
            if o != row:
                r[o] ^= r[row]
        pivots.append(col)
        row += 1
    return r, pivots


def rank(m: np.ndarray) -> int:
    if m.size == 0:
        return 0
    return len(rref(m)[1])


def nullspace(m: np.ndarray) -> np.ndarray:
    """Columns form a basis of ker m."""
    rows, cols = m.shape
    if rows == 0:
        return eye(cols)
    r, pivots = rref(m)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = zeros(cols, len(free))
    for k, f in enumerate(free):
        basis[f, k] = 1
        for i, p in enumerate(pivots):
            if r[i, f]:
                basis[p, k] = 1
    return basis


def colspace(m: np.ndarray) -> np.ndarray:
    """Columns form a basis of the image of m (a subset of m's columns)."""
    if m.size == 0:
        return zeros(m.shape[0], 0)
    _, pivots = rref(m)
    return m[:, pivots].copy()


def solve(a: np.ndarray, b: np.ndarray):
    """One solution x of a x = b (b a vector or matrix), or None."""
    b2 = b.reshape(a.shape[0], -1)
    aug = np.concatenate([a, b2], axis=1).astype(np.uint8)
    r, pivots = rref(aug)
    n = a.shape[1]
    if any(p >= n for p in pivots):
        return None
    x = zeros(n, b2.shape[1])
    for i, p in enumerate(pivots):
        x[p] = r[i, n:]
    return x.reshape((n,) + b.shape[1:]) if b.ndim == 1 else x


def inverse(m: np.ndarray):
    n = m.shape[0]
    if m.shape != (n, n):
        return None
    x = solve(m, eye(n))
    return x


def extend_basis(sub: np.ndarray, ambient: np.ndarray) -> np.ndarray:
    """Columns of ``ambient`` completing the span of ``sub`` to span(ambient).

    Both inputs are column bases; sub's span must lie inside ambient's span.
    """
    k = sub.shape[1]
    stacked = np.concatenate([sub, ambient], axis=1)
    _, pivots = rref(stacked)
    return stacked[:, [p for p in pivots if p >= k]].copy()


class Homology:
    """Homology at a single spot ``C_in --d_in--> C --d_out--> C_out``.

    Keeps cycle, boundary and representative bases so classes can be
    expressed in coordinates.
    """

    def __init__(self, d_in: np.ndarray, d_out: np.ndarray):
        self.dim_c = d_out.shape[1]
        self.cycles = nullspace(d_out)
        self.boundaries = colspace(d_in)
        self.reps = extend_basis(self.boundaries, self.cycles)
        self.dim = self.reps.shape[1]
        self._frame = np.concatenate([self.boundaries, self.reps], axis=1)

    def coords(self, z: np.ndarray) -> np.ndarray:
        """Coordinates of cycles (columns of z) in the representative basis."""
        z2 = z.reshape(self.dim_c, -1)
        x = solve(self._frame, z2)
        if x is None:
            raise ValueError("not a cycle")
        return x[self.boundaries.shape[1]:, :]

"""Dense exact linear algebra over a prime field F_p.

Matrices are numpy int64 arrays with entries in [0, p).  The modulus is
capped below 2**31 so a product of two residues never overflows, and
matrix products are chunked so accumulated sums stay below 2**63.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_MODULUS = 2**31 - 1


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int = 32003

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.p > MAX_MODULUS:
            raise ValueError(f"modulus {self.p} exceeds {MAX_MODULUS}")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, -1, self.p)

    def array(self, data) -> np.ndarray:
        return np.asarray(data, dtype=np.int64) % self.p

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        inner = a.shape[-1]
        # each partial sum of `step` products stays below 2**62
        step = max(1, (1 << 62) // ((self.p - 1) ** 2 or 1))
        if inner <= step:
            return (a @ b) % self.p
        out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        for k in range(0, inner, step):
            out = (out + a[:, k : k + step] @ b[k : k + step]) % self.p
        return out


@dataclass
class Echelon:
    """Row echelon form: unit pivots, zero entries below each pivot."""

    rows: np.ndarray  # rank x ncols, pivot row k has a 1 in column pivots[k]
    pivots: list[int]
    ncols: int

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def free_columns(self) -> list[int]:
        taken = set(self.pivots)
        return [c for c in range(self.ncols) if c not in taken]


def echelon(field: PrimeField, m: np.ndarray) -> Echelon:
    """Forward Gaussian elimination, scanning columns left to right.

    Only rows with a non-zero entry in the pivot column are touched, and
    only on the columns where the pivot row is non-zero; the relation
    matrices built from face rings are very sparse, so this keeps the
    fill-in work far below the dense cost.
    """
    p = field.p
    work = field.array(m).copy()
    nrows, ncols = work.shape
    active = np.ones(nrows, dtype=bool)
    pivot_rows: list[np.ndarray] = []
    pivots: list[int] = []
    for c in range(ncols):
        if len(pivots) == nrows:
            break
        cand = np.flatnonzero(active & (work[:, c] != 0))
        if cand.size == 0:
            continue
        if cand.size > 1:
            # sparsest candidate limits fill-in
            r = cand[np.argmin(np.count_nonzero(work[cand, c:], axis=1))]
        else:
            r = cand[0]
        row = work[r] * pow(int(work[r, c]), -1, p) % p
        active[r] = False
        others = cand[cand != r]
        if others.size:
            nz = np.flatnonzero(row)
            factors = work[others, c]
            block = work[np.ix_(others, nz)]
            work[np.ix_(others, nz)] = (block - np.outer(factors, row[nz])) % p
        pivot_rows.append(row)
        pivots.append(c)
    rows = np.array(pivot_rows, dtype=np.int64).reshape(len(pivots), ncols)
    return Echelon(rows, pivots, ncols)


def rank(field: PrimeField, m) -> int:
    m = np.asarray(m)
    if m.size == 0:
        return 0
    # elimination cost scales with the number of columns scanned
    if m.shape[1] > m.shape[0]:
        m = m.T
    return echelon(field, m).rank


def reduction_matrix(field: PrimeField, ech: Echelon) -> np.ndarray:
    """X with v ≡ v[free] - v[pivots] @ X modulo the row space.

    Equivalent to reading the free columns of the fully reduced form,
    obtained here by back substitution over the pivot block only.
    """
    p = field.p
    free = ech.free_columns
    k = ech.rank
    x = np.zeros((k, len(free)), dtype=np.int64)
    if k == 0 or not free:
        return x
    upp = ech.rows[:, ech.pivots]  # unit upper triangular
    rhs = ech.rows[:, free]
    for t in range(k - 1, -1, -1):
        if t + 1 < k:
            x[t] = (rhs[t] - field.matmul(upp[t : t + 1, t + 1 :], x[t + 1 :])[0]) % p
        else:
            x[t] = rhs[t] % p
    return x


def reduce_rows(field: PrimeField, ech: Echelon, x: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Coordinates of the rows of ``v`` in the quotient by the row space, on the free columns."""
    v = np.asarray(v, dtype=np.int64)
    free = ech.free_columns
    if ech.rank == 0:
        return v[:, free] % field.p
    return (v[:, free] - field.matmul(v[:, ech.pivots], x)) % field.p

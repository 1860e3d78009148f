"""Exact linear algebra over the rationals.

Matrices are numpy object arrays holding ``mpq`` (gmpy2) entries, so shapes with a
zero dimension behave as expected.  Every basis produced here is canonical:
subspaces are stored by the nonzero rows of the reduced row echelon form of any
spanning set (leftmost pivot rule), and complements use non-pivot coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from gmpy2 import mpq as Rat

Vector = np.ndarray
Matrix = np.ndarray


def Q(x) -> Rat:
    """Coerce an int, Fraction, mpq or "p/q" string to an exact rational.  Floats are refused."""
    if type(x) is Rat:
        return x
    if isinstance(x, (bool, float, np.floating)):
        raise TypeError(f"refusing inexact scalar {x!r}")
    if isinstance(x, Fraction):
        return Rat(x)
    if isinstance(x, (int, np.integer)) or type(x).__name__ == "mpz":
        return Rat(int(x))
    if isinstance(x, str):
        return Rat(x.strip())
    raise TypeError(f"cannot read {x!r} as a rational")


def fmt_rat(x) -> str:
    x = Q(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def mat(rows, shape: tuple[int, int] | None = None) -> Matrix:
    """Build a rational matrix; ``shape`` is needed when there are no rows or columns."""
    rows = [list(r) for r in rows]
    if shape is None:
        if not rows:
            raise ValueError("shape required for a matrix with no rows")
        shape = (len(rows), len(rows[0]))
    m, n = shape
    out = np.empty((m, n), dtype=object)
    if len(rows) != m or any(len(r) != n for r in rows):
        raise ValueError(f"entries do not match shape {shape}")
    for i, r in enumerate(rows):
        for j, v in enumerate(r):
            out[i, j] = Q(v)
    return out


def vec(entries: Iterable) -> Vector:
    entries = list(entries)
    out = np.empty(len(entries), dtype=object)
    for i, v in enumerate(entries):
        out[i] = Q(v)
    return out


def zeros(m: int, n: int) -> Matrix:
    out = np.empty((m, n), dtype=object)
    out.fill(Rat(0))
    return out


def zvec(n: int) -> Vector:
    out = np.empty(n, dtype=object)
    out.fill(Rat(0))
    return out


def eye(n: int) -> Matrix:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = Rat(1)
    return out


def unit_vector(n: int, i: int) -> Vector:
    out = zvec(n)
    out[i] = Rat(1)
    return out


def normalize(a: np.ndarray) -> np.ndarray:
    """Return a copy with every entry a Rat (numpy fills empty sums with int 0)."""
    out = np.empty(a.shape, dtype=object)
    flat_in, flat_out = a.reshape(-1), out.reshape(-1)
    for i, v in enumerate(flat_in):
        flat_out[i] = Q(v)
    return out


def mul(A: Matrix, B: np.ndarray) -> np.ndarray:
    """Matrix product that stays exact and well shaped when an inner dimension is 0."""
    if A.shape[1] == 0:
        return zeros(A.shape[0], B.shape[1]) if B.ndim == 2 else zvec(A.shape[0])
    return A @ B


def block_diag(*blocks: Matrix) -> Matrix:
    m = sum(b.shape[0] for b in blocks)
    n = sum(b.shape[1] for b in blocks)
    out = zeros(m, n)
    i = j = 0
    for b in blocks:
        out[i:i + b.shape[0], j:j + b.shape[1]] = b
        i += b.shape[0]
        j += b.shape[1]
    return out


def hstack(blocks: Sequence[Matrix], rows: int) -> Matrix:
    if not blocks:
        return zeros(rows, 0)
    return np.concatenate(list(blocks), axis=1)


def vstack(blocks: Sequence[Matrix], cols: int) -> Matrix:
    if not blocks:
        return zeros(0, cols)
    return np.concatenate(list(blocks), axis=0)


def columns(vectors: Sequence[Vector], n: int) -> Matrix:
    """Matrix whose columns are the given vectors of length n."""
    out = zeros(n, len(vectors))
    for j, v in enumerate(vectors):
        out[:, j] = v
    return out


def is_zero(a: np.ndarray) -> bool:
    return all(x == 0 for x in a.reshape(-1))


def equal(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and all(x == y for x, y in zip(a.reshape(-1), b.reshape(-1)))


def rref(A: Matrix) -> tuple[list[list[Rat]], list[int]]:
    """Reduced row echelon form with the leftmost pivot rule.

    Returns the nonzero rows and their pivot columns.
    """
    m, n = A.shape
    rows = [[Q(x) for x in A[i]] for i in range(m)]
    pivots: list[int] = []
    r = 0
    for col in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if rows[i][col]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r]
        inv = 1 / piv[col]
        if inv != 1:
            for j in range(col, n):
                if piv[j]:
                    piv[j] *= inv
        nz = [j for j in range(col, n) if piv[j]]
        for i in range(m):
            if i != r:
                f = rows[i][col]
                if f:
                    row = rows[i]
                    for j in nz:
                        row[j] -= f * piv[j]
        pivots.append(col)
        r += 1
    return rows[:r], pivots


def rank(A: Matrix) -> int:
    return len(rref(A)[1])


class EchelonBasis:
    """Incrementally maintained reduced echelon basis of a row space.

    Adding rows one at a time keeps memory at the rank rather than the row
    count, which matters for the tall constraint systems built elsewhere.
    """

    def __init__(self, n: int):
        self.n = n
        self.rows: list[list[Rat]] = []
        self.pivots: list[int] = []

    def reduce(self, row: list[Rat]) -> list[Rat]:
        row = list(row)
        for piv_row, p in zip(self.rows, self.pivots):
            f = row[p]
            if f:
                for j in range(p, self.n):
                    if piv_row[j]:
                        row[j] -= f * piv_row[j]
        return row

    def add(self, row) -> bool:
        row = self.reduce([Q(x) for x in row])
        p = next((j for j in range(self.n) if row[j]), None)
        if p is None:
            return False
        inv = 1 / row[p]
        row = [x * inv if x else x for x in row]
        for other in self.rows:
            f = other[p]
            if f:
                for j in range(p, self.n):
                    if row[j]:
                        other[j] -= f * row[j]
        k = next((i for i, q in enumerate(self.pivots) if q > p), len(self.pivots))
        self.rows.insert(k, row)
        self.pivots.insert(k, p)
        return True


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n stored by its canonical (reduced echelon) basis."""

    ambient_dim: int
    rows: tuple[tuple[Rat, ...], ...]
    pivots: tuple[int, ...]

    @staticmethod
    def span(vectors: Iterable, n: int) -> "Subspace":
        vectors = list(vectors)
        A = mat([list(v) for v in vectors], (len(vectors), n))
        rows, piv = rref(A)
        return Subspace(n, tuple(tuple(r) for r in rows), tuple(piv))

    @staticmethod
    def zero(n: int) -> "Subspace":
        return Subspace(n, (), ())

    @staticmethod
    def full(n: int) -> "Subspace":
        return Subspace.span([unit_vector(n, i) for i in range(n)], n)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> list[Vector]:
        return [vec(r) for r in self.rows]

    def matrix(self) -> Matrix:
        """Basis vectors as columns (ambient_dim x dim)."""
        out = zeros(self.ambient_dim, self.dim)
        for j, r in enumerate(self.rows):
            out[:, j] = r
        return out

    def coordinates(self, v) -> Vector | None:
        """Coordinates of v in the canonical basis, or None when v is not in the subspace."""
        v = [Q(x) for x in v]
        c = [v[p] for p in self.pivots]
        rest = list(v)
        for coef, r in zip(c, self.rows):
            if coef:
                for j, x in enumerate(r):
                    if x:
                        rest[j] -= coef * x
        if any(rest):
            return None
        return vec(c)

    def contains(self, v) -> bool:
        return self.coordinates(v) is not None

    def coordinate_matrix(self, M: Matrix) -> Matrix:
        """Coordinates of each column of M; raises if a column leaves the subspace."""
        out = zeros(self.dim, M.shape[1])
        for j in range(M.shape[1]):
            c = self.coordinates(M[:, j])
            if c is None:
                raise ValueError("column is not in the subspace")
            out[:, j] = c
        return out

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(r) for r in self.rows)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(list(self.rows) + list(other.rows), self.ambient_dim)

    def intersection(self, other: "Subspace") -> "Subspace":
        # x = A a = B b  <=>  [A | -B] (a, b) = 0
        A, B = self.matrix(), other.matrix()
        K = kernel_basis(hstack([A, -B], self.ambient_dim))
        return Subspace.span([mul(A, np.array(k[: self.dim], dtype=object)) for k in K.basis],
                             self.ambient_dim)


def kernel_basis(A: Matrix) -> Subspace:
    """Canonical basis of {x : Ax = 0}."""
    n = A.shape[1]
    rows, piv = rref(A)
    free = [j for j in range(n) if j not in set(piv)]
    vectors = []
    for f in free:
        v = zvec(n)
        v[f] = Rat(1)
        for r, p in zip(rows, piv):
            v[p] = -r[f]
        vectors.append(v)
    return Subspace.span(vectors, n)


def image_basis(A: Matrix) -> Subspace:
    """Canonical basis of the column space."""
    return Subspace.span([A[:, j] for j in range(A.shape[1])], A.shape[0])


def solve(A: Matrix, b) -> Vector | None:
    """One solution of Ax = b with free variables 0, or None when inconsistent."""
    m, n = A.shape
    aug = hstack([A, mat([[x] for x in b], (m, 1))], m)
    rows, piv = rref(aug)
    if piv and piv[-1] == n:
        return None
    x = zvec(n)
    for r, p in zip(rows, piv):
        x[p] = r[n]
    return x


@dataclass(frozen=True)
class Quotient:
    """W/U with representatives chosen on the non-pivot coordinates of U inside W.

    ``project`` takes W-coordinates to quotient coordinates; ``representatives``
    are ambient vectors whose classes form the quotient basis, in that order.
    """

    W: Subspace
    U: Subspace
    representatives: tuple[Vector, ...]
    project: Matrix

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def classify(self, v) -> Vector:
        c = self.W.coordinates(v)
        if c is None:
            raise ValueError("vector is not in W")
        return mul(self.project, c)

    def representative(self, q) -> Vector:
        out = zvec(self.W.ambient_dim)
        for coef, r in zip(q, self.representatives):
            out = out + Q(coef) * r
        return out


def quotient_data(W: Subspace, U: Subspace) -> Quotient:
    if not U.is_subspace_of(W):
        raise ValueError("U is not contained in W")
    k = W.dim
    Ucoords = [W.coordinates(u) for u in U.rows]
    rows, piv = rref(mat([list(c) for c in Ucoords], (len(Ucoords), k)))
    nonpiv = [j for j in range(k) if j not in set(piv)]
    Wbasis = W.basis
    reps = tuple(Wbasis[j] for j in nonpiv)
    P = zeros(len(nonpiv), k)
    for i, f in enumerate(nonpiv):
        P[i, f] = Rat(1)
        for r, p in zip(rows, piv):
            if r[f]:
                P[i, p] -= r[f]
    return Quotient(W, U, reps, P)


def kernel_from_echelon(eb: EchelonBasis) -> Subspace:
    """Canonical kernel of the rows accumulated in an EchelonBasis."""
    n = eb.n
    piv = set(eb.pivots)
    vectors = []
    for f in range(n):
        if f in piv:
            continue
        v = zvec(n)
        v[f] = Rat(1)
        for r, p in zip(eb.rows, eb.pivots):
            v[p] = -r[f]
        vectors.append(v)
    return Subspace.span(vectors, n)

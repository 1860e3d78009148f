"""Two-term cochain complexes V0 -> V1 over Q and chain maps between them."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .ratkernel import (
    Matrix,
    Quotient,
    Subspace,
    equal,
    eye,
    image_basis,
    kernel_basis,
    mul,
    quotient_data,
    rank,
    solve,
    zeros,
)


@dataclass(frozen=True, eq=False)
class TwoTermComplex:
    """d: Q^n0 -> Q^n1 given as an n1 x n0 matrix."""

    d: Matrix

    @property
    def n0(self) -> int:
        return self.d.shape[1]

    @property
    def n1(self) -> int:
        return self.d.shape[0]

    @cached_property
    def H0(self) -> Subspace:
        return kernel_basis(self.d)

    @cached_property
    def image(self) -> Subspace:
        return image_basis(self.d)

    @cached_property
    def H1(self) -> Quotient:
        return quotient_data(Subspace.full(self.n1), self.image)

    def betti(self) -> tuple[int, int]:
        return self.H0.dim, self.H1.dim


@dataclass(frozen=True, eq=False)
class ChainMap:
    source: TwoTermComplex
    target: TwoTermComplex
    f0: Matrix
    f1: Matrix

    def commutes(self) -> bool:
        return equal(mul(self.f1, self.source.d), mul(self.target.d, self.f0))

    def h0_matrix(self) -> Matrix:
        """Induced map on H0 in the canonical kernel bases."""
        K, K2 = self.source.H0, self.target.H0
        if K.dim == 0:
            return zeros(K2.dim, 0)
        return K2.coordinate_matrix(mul(self.f0, K.matrix()))

    def h1_matrix(self) -> Matrix:
        """Induced map on H1 in the representative bases."""
        Qs, Qt = self.source.H1, self.target.H1
        out = zeros(Qt.dim, Qs.dim)
        for j, r in enumerate(Qs.representatives):
            out[:, j] = Qt.classify(mul(self.f1, r))
        return out

    def is_quasi_iso(self) -> bool:
        a, b = self.h0_matrix(), self.h1_matrix()
        return (a.shape[0] == a.shape[1] and rank(a) == a.shape[0]
                and b.shape[0] == b.shape[1] and rank(b) == b.shape[0])

    def then(self, other: "ChainMap") -> "ChainMap":
        """other after self."""
        return ChainMap(self.source, other.target, mul(other.f0, self.f0), mul(other.f1, self.f1))


def inverse(A: Matrix) -> Matrix:
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("not square")
    out = zeros(n, n)
    I = eye(n)
    for j in range(n):
        x = solve(A, I[:, j])
        if x is None:
            raise ValueError("matrix is singular")
        out[:, j] = x
    return out


def is_invertible(A: Matrix) -> bool:
    return A.shape[0] == A.shape[1] and rank(A) == A.shape[0]

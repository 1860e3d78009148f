"""Finite-dimensional Lie algebras over ℚ by structure constants.

``consts[i, j, k]`` is the coefficient of e_k in [e_i, e_j].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .complexes import inverse
from .ratkernel import Matrix, Quotient, Subspace, Vector, Q, equal, is_zero, mul, unit_vector, zeros, zvec


def _const_table(n: int) -> np.ndarray:
    out = np.empty((n, n, n), dtype=object)
    out[...] = Q(0)
    return out


@dataclass(frozen=True, eq=False)
class LieAlg:
    consts: np.ndarray

    @property
    def dim(self) -> int:
        return self.consts.shape[0]

    def bracket(self, x: Vector, y: Vector) -> Vector:
        out = zvec(self.dim)
        for i in range(self.dim):
            if not x[i]:
                continue
            for j in range(self.dim):
                if y[j]:
                    out = out + x[i] * y[j] * self.consts[i, j]
        return out

    def ad(self, x: Vector) -> Matrix:
        n = self.dim
        m = zeros(n, n)
        for j in range(n):
            m[:, j] = self.bracket(x, unit_vector(n, j))
        return m

    def basis(self) -> list[Vector]:
        return [unit_vector(self.dim, i) for i in range(self.dim)]

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, LieAlg) and self.consts.shape == other.consts.shape
                and equal(self.consts, other.consts))

    def __hash__(self) -> int:
        return id(self)


def from_bracket(n: int, br: Callable[[Vector, Vector], Vector]) -> LieAlg:
    """Tabulate a bilinear map on basis vectors."""
    c = _const_table(n)
    for i in range(n):
        for j in range(n):
            c[i, j] = br(unit_vector(n, i), unit_vector(n, j))
    return LieAlg(c)


def from_table(n: int, table: dict[tuple[int, int], Sequence]) -> LieAlg:
    """Build from [e_i, e_j] for i < j; the rest follows by antisymmetry."""
    c = _const_table(n)
    for (i, j), v in table.items():
        for k, a in enumerate(v):
            c[i, j, k] = Q(a)
            c[j, i, k] = -Q(a)
    return LieAlg(c)


def lie_violations(L: LieAlg) -> list[str]:
    out = []
    B = L.basis()
    for i in range(L.dim):
        for j in range(i, L.dim):
            if not equal(L.consts[i, j], -L.consts[j, i]):
                out.append(f"antisymmetry ({i},{j})")
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            for k in range(j + 1, L.dim):
                x, y, z = B[i], B[j], B[k]
                jac = (L.bracket(x, L.bracket(y, z)) + L.bracket(y, L.bracket(z, x))
                       + L.bracket(z, L.bracket(x, y)))
                if not is_zero(jac):
                    out.append(f"Jacobi ({i},{j},{k})")
    return out


def is_lie(L: LieAlg) -> bool:
    return not lie_violations(L)


def is_abelian(L: LieAlg) -> bool:
    return is_zero(L.consts)


def morphism_violations(f: Matrix, L1: LieAlg, L2: LieAlg, domain: Subspace | None = None) -> list[str]:
    """Pairs of basis vectors (of ``domain`` if given) on which f fails to respect brackets."""
    B = L1.basis() if domain is None else domain.basis
    out = []
    for i, x in enumerate(B):
        for j in range(i + 1, len(B)):
            y = B[j]
            if not equal(mul(f, L1.bracket(x, y)), L2.bracket(mul(f, x), mul(f, y))):
                out.append(f"({i},{j})")
    return out


def is_morphism(f: Matrix, L1: LieAlg, L2: LieAlg) -> bool:
    return not morphism_violations(f, L1, L2)


def is_derivation(D: Matrix, L: LieAlg) -> bool:
    B = L.basis()
    for i, x in enumerate(B):
        for y in B[i + 1:]:
            lhs = mul(D, L.bracket(x, y))
            rhs = L.bracket(mul(D, x), y) + L.bracket(x, mul(D, y))
            if not equal(lhs, rhs):
                return False
    return True


def commutator(A: Matrix, B: Matrix) -> Matrix:
    return mul(A, B) - mul(B, A)


def transport(L: LieAlg, P: Matrix) -> LieAlg:
    """The bracket carried along the isomorphism P: [x, y]' = P[P⁻¹x, P⁻¹y]."""
    Pi = inverse(P)
    return from_bracket(L.dim, lambda x, y: mul(P, L.bracket(mul(Pi, x), mul(Pi, y))))


def direct_sum(*algs: LieAlg) -> LieAlg:
    n = sum(L.dim for L in algs)
    c = _const_table(n)
    off = 0
    for L in algs:
        d = L.dim
        c[off:off + d, off:off + d, off:off + d] = L.consts
        off += d
    return LieAlg(c)


def restrict(L: LieAlg, S: Subspace) -> LieAlg:
    """The bracket on S in its canonical basis coordinates; raises if S is not a subalgebra."""
    B = S.basis
    c = _const_table(S.dim)
    for i, x in enumerate(B):
        for j, y in enumerate(B):
            coords = S.coordinates(L.bracket(x, y))
            if coords is None:
                raise ValueError(f"subspace is not closed under the bracket at basis pair ({i},{j})")
            c[i, j] = coords
    return LieAlg(c)


def quotient(L: LieAlg, Qt: Quotient) -> LieAlg:
    """Bracket on a quotient by an ideal, computed on representatives."""
    c = _const_table(Qt.dim)
    for i in range(Qt.dim):
        for j in range(Qt.dim):
            c[i, j] = Qt.classify(L.bracket(Qt.representative(unit_vector(Qt.dim, i)),
                                            Qt.representative(unit_vector(Qt.dim, j))))
    return LieAlg(c)


def abelian(n: int) -> LieAlg:
    return LieAlg(_const_table(n))


def sl2() -> LieAlg:
    """Basis (e, f, h): [e,f] = h, [h,e] = 2e, [h,f] = -2f."""
    return from_table(3, {(0, 1): (0, 0, 1), (0, 2): (-2, 0, 0), (1, 2): (0, 2, 0)})


def heisenberg() -> LieAlg:
    """Basis (x, y, z): [x,y] = z, z central."""
    return from_table(3, {(0, 1): (0, 0, 1)})


def affine_line() -> LieAlg:
    """The 2-dimensional non-abelian algebra: [x,y] = y."""
    return from_table(2, {(0, 1): (0, 1)})


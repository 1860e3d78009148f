"""Crossed modules of Lie algebras, strict Lie 2-algebras and 2-term L∞ morphisms.

A crossed module is ∂: g → h with an action φ: h → Der(g).  As a complex it
sits in degrees 0 (g) and 1 (h), matching the complex of multiplicative
sections; cohomology is H⁰ = ker ∂ and H¹ = coker ∂.

An L∞ morphism F: X → X′ is (f_g, f_h, f2) with f2: Λ²h → g′ and

    f_h ∂ = ∂′ f_g
    ∂′ f2(X, Y) = f_h[X, Y] − [f_h X, f_h Y]
    f2(X, ∂u) = f_g(φ_X u) − φ′_{f_h X} f_g u
    Σ_cyc f2([X, Y], Z) − φ′_{f_h X} f2(Y, Z) = 0

Strict morphisms (f2 = 0) are exactly crossed-module morphisms.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Sequence

import numpy as np

from .complexes import ChainMap, TwoTermComplex, inverse, is_invertible
from .fingroupoid import Report
from .liealg import (
    LieAlg,
    commutator,
    direct_sum,
    from_bracket,
    is_derivation,
    lie_violations,
    morphism_violations,
    restrict,
    transport,
)
from .ratkernel import (
    Matrix,
    Q,
    Subspace,
    Vector,
    block_diag,
    equal,
    eye,
    hstack,
    is_zero,
    kernel_basis,
    mul,
    quotient_data,
    solve,
    unit_vector,
    vstack,
    zeros,
    zvec,
)


@dataclass(frozen=True, eq=False)
class XMod:
    g: LieAlg
    h: LieAlg
    partial: Matrix            # h.dim x g.dim
    phi: tuple[Matrix, ...]    # φ of each basis vector of h, acting on g

    def act(self, X: Vector) -> Matrix:
        out = zeros(self.g.dim, self.g.dim)
        for i, a in enumerate(X):
            if a:
                out = out + a * self.phi[i]
        return out

    @cached_property
    def complex(self) -> TwoTermComplex:
        return TwoTermComplex(self.partial)

    def same_as(self, other: "XMod") -> bool:
        return self is other or (self.g == other.g and self.h == other.h
                                 and self.partial.shape == other.partial.shape
                                 and equal(self.partial, other.partial)
                                 and all(equal(a, b) for a, b in zip(self.phi, other.phi)))


def validate_xmod(X: XMod) -> Report:
    rep = Report()
    ng, nh = X.g.dim, X.h.dim
    if X.partial.shape != (nh, ng) or len(X.phi) != nh or any(m.shape != (ng, ng) for m in X.phi):
        raise ValueError("crossed module data has inconsistent shapes")
    for v in lie_violations(X.g):
        rep.fail("g is a Lie algebra", v)
    for v in lie_violations(X.h):
        rep.fail("h is a Lie algebra", v)
    for i, D in enumerate(X.phi):
        if not is_derivation(D, X.g):
            rep.fail("φ is a derivation", f"h[{i}]")
    B = X.h.basis()
    for i, j in combinations(range(nh), 2):
        if not equal(X.act(X.h.bracket(B[i], B[j])), commutator(X.phi[i], X.phi[j])):
            rep.fail("φ is a Lie morphism", f"({i},{j})")
    for k, u in enumerate(X.g.basis()):
        if not equal(X.act(mul(X.partial, u)), X.g.ad(u)):
            rep.fail("φ of ∂u is ad u", f"g[{k}]")
    for i, Xi in enumerate(B):
        lhs = mul(X.partial, X.phi[i])
        rhs = mul(X.h.ad(Xi), X.partial)
        if not equal(lhs, rhs):
            rep.fail("∂ is equivariant", f"h[{i}]")
    return rep


@dataclass(frozen=True, eq=False)
class XModMorphism:
    source: XMod
    target: XMod
    f1: Matrix     # g → g′
    f2: Matrix     # h → h′

    @cached_property
    def chain_map(self) -> ChainMap:
        return ChainMap(self.source.complex, self.target.complex, self.f1, self.f2)


def validate_xmod_morphism(F: XModMorphism) -> Report:
    X, Y = F.source, F.target
    rep = Report()
    if F.f1.shape != (Y.g.dim, X.g.dim) or F.f2.shape != (Y.h.dim, X.h.dim):
        raise ValueError("morphism matrices have the wrong shape")
    if not equal(mul(F.f2, X.partial), mul(Y.partial, F.f1)):
        rep.fail("f2 ∂ = ∂′ f1", "")
    for i, Xi in enumerate(X.h.basis()):
        if not equal(mul(F.f1, X.phi[i]), mul(Y.act(mul(F.f2, Xi)), F.f1)):
            rep.fail("f1 φ_X = φ′_{f2 X} f1", f"h[{i}]")
    for v in morphism_violations(F.f2, X.h, Y.h):
        rep.fail("f2 is a Lie morphism", v)
    if rep.ok:
        # a consequence of the two conditions above; asserted rather than assumed
        bad = morphism_violations(F.f1, X.g, Y.g)
        if bad:
            raise AssertionError(f"f1 fails to be a Lie morphism at {bad[0]} although f2 is one")
    return rep


def is_xmod_quasi_iso(F: XModMorphism | "Linf2Morphism") -> bool:
    return F.chain_map.is_quasi_iso()


def identity_xmod_morphism(X: XMod) -> XModMorphism:
    return XModMorphism(X, X, eye(X.g.dim), eye(X.h.dim))


def compose_xmod_morphisms(G: XModMorphism, F: XModMorphism) -> XModMorphism:
    """G after F."""
    if not F.target.same_as(G.source):
        raise ValueError("morphisms are not composable")
    return XModMorphism(F.source, G.target, mul(G.f1, F.f1), mul(G.f2, F.f2))


# -- strict Lie 2-algebras --------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Lie2Algebra:
    """A category internal to Lie algebras: arrows V1, objects V0."""

    V1: LieAlg
    V0: LieAlg
    s: Matrix
    t: Matrix
    unit: Matrix

    def composable(self) -> Subspace:
        return kernel_basis(hstack([self.s, -self.t], self.V0.dim))

    def compose_matrix(self) -> Matrix:
        """(v, w) ↦ v ∘ w = v + w − 1_{s v} on V1 ⊕ V1."""
        n = self.V1.dim
        return hstack([eye(n) - mul(self.unit, self.s), eye(n)], n)


def validate_lie2(L: Lie2Algebra) -> Report:
    rep = Report()
    for v in lie_violations(L.V1):
        rep.fail("arrows form a Lie algebra", v)
    for v in lie_violations(L.V0):
        rep.fail("objects form a Lie algebra", v)
    for name, f, a, b in (("s", L.s, L.V1, L.V0), ("t", L.t, L.V1, L.V0), ("unit", L.unit, L.V0, L.V1)):
        for v in morphism_violations(f, a, b):
            rep.fail(f"{name} is a Lie morphism", v)
    n0 = L.V0.dim
    if not equal(mul(L.s, L.unit), eye(n0)) or not equal(mul(L.t, L.unit), eye(n0)):
        rep.fail("unit is a section of s and t", "")
    pair = direct_sum(L.V1, L.V1)
    for v in morphism_violations(L.compose_matrix(), pair, L.V1, domain=L.composable()):
        rep.fail("composition is a Lie morphism", v)
    return rep


def semidirect_bracket(X: XMod):
    """[(u, X), (v, Y)] = ([u, v] + φ_X v − φ_Y u, [X, Y]) on g ⊕ h."""
    n = X.g.dim

    def br(a, b):
        u, Xa = a[:n], a[n:]
        v, Yb = b[:n], b[n:]
        top = X.g.bracket(u, v) + mul(X.act(Xa), v) - mul(X.act(Yb), u)
        return np.concatenate([top, X.h.bracket(Xa, Yb)])

    return br


def xmod_to_lie2(X: XMod) -> Lie2Algebra:
    """Semidirect form: arrows g ⊕ h, s(u, X) = X, t(u, X) = X + ∂u, unit X ↦ (0, X)."""
    n, m = X.g.dim, X.h.dim
    V1 = from_bracket(n + m, semidirect_bracket(X))
    s = hstack([zeros(m, n), eye(m)], m)
    t = hstack([X.partial, eye(m)], m)
    unit = vstack([zeros(n, m), eye(m)], m)
    return Lie2Algebra(V1, X.h, s, t, unit)


def lie2_to_xmod(L: Lie2Algebra) -> XMod:
    """ker s → V0 with φ_X = [1_X, ·], in the canonical basis of ker s."""
    K = kernel_basis(L.s)
    Km = K.matrix()
    g = restrict(L.V1, K)
    partial = mul(L.t, Km)
    phi = tuple(K.coordinate_matrix(mul(L.V1.ad(mul(L.unit, X)), Km)) for X in L.V0.basis())
    return XMod(g, L.V0, partial, phi)


# -- the DGLA view ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DGLA2:
    """2-term DGLA: d: g → h, a bracket on h and the mixed bracket [X, u] = φ_X u.

    The bracket of two elements of g vanishes for degree reasons; the crossed
    module bracket on g is recovered as [u, v] = [du, v].
    """

    d: Matrix
    h: LieAlg
    mixed: tuple[Matrix, ...]


def xmod_to_dgla(X: XMod) -> DGLA2:
    return DGLA2(X.partial, X.h, X.phi)


def dgla_to_xmod(D: DGLA2) -> XMod:
    n = D.d.shape[1]
    probe = XMod(from_bracket(n, lambda u, v: zvec(n)), D.h, D.d, D.mixed)
    g = from_bracket(n, lambda u, v: mul(probe.act(mul(D.d, u)), v))
    return XMod(g, D.h, D.d, D.mixed)


def dgla_violations(D: DGLA2) -> list[str]:
    out = [f"h: {v}" for v in lie_violations(D.h)]
    n = D.d.shape[1]
    X = XMod(from_bracket(n, lambda u, v: zvec(n)), D.h, D.d, D.mixed)
    B = D.h.basis()
    for i, j in combinations(range(D.h.dim), 2):
        if not equal(X.act(D.h.bracket(B[i], B[j])), commutator(D.mixed[i], D.mixed[j])):
            out.append(f"graded Jacobi ({i},{j})")
    for i, Xi in enumerate(B):
        if not equal(mul(D.d, D.mixed[i]), mul(D.h.ad(Xi), D.d)):
            out.append(f"d is a derivation on [h, g] at h[{i}]")
    U = [unit_vector(n, k) for k in range(n)]
    for a in range(n):
        for b in range(a, n):
            s = mul(X.act(mul(D.d, U[a])), U[b]) + mul(X.act(mul(D.d, U[b])), U[a])
            if not is_zero(s):
                out.append(f"d is a derivation on [g, g] at ({a},{b})")
    return out


# -- L∞ morphisms -------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Linf2Morphism:
    source: XMod
    target: XMod
    f_g: Matrix
    f_h: Matrix
    f2: np.ndarray     # shape (g′.dim, h.dim, h.dim), f2[:, i, j] = f2(e_i, e_j)

    def quad(self, X: Vector, Y: Vector) -> Vector:
        out = zvec(self.target.g.dim)
        for i, a in enumerate(X):
            if not a:
                continue
            for j, b in enumerate(Y):
                if b:
                    out = out + a * b * self.f2[:, i, j]
        return out

    @cached_property
    def chain_map(self) -> ChainMap:
        return ChainMap(self.source.complex, self.target.complex, self.f_g, self.f_h)

    def h_maps(self) -> tuple[Matrix, Matrix]:
        return self.chain_map.h0_matrix(), self.chain_map.h1_matrix()


def _zero_f2(ng_target: int, nh: int) -> np.ndarray:
    out = np.empty((ng_target, nh, nh), dtype=object)
    out[...] = Q(0)
    return out


def strict(F: XModMorphism) -> Linf2Morphism:
    return Linf2Morphism(F.source, F.target, F.f1, F.f2, _zero_f2(F.target.g.dim, F.source.h.dim))


def linf_identity(X: XMod) -> Linf2Morphism:
    return strict(identity_xmod_morphism(X))


def linf_violations(F: Linf2Morphism) -> list[str]:
    A, B = F.source, F.target
    out = []
    if F.f_g.shape != (B.g.dim, A.g.dim) or F.f_h.shape != (B.h.dim, A.h.dim):
        raise ValueError("linear parts have the wrong shape")
    if F.f2.shape != (B.g.dim, A.h.dim, A.h.dim):
        raise ValueError("f2 has the wrong shape")
    if not equal(mul(F.f_h, A.partial), mul(B.partial, F.f_g)):
        out.append("chain map")
    H = A.h.basis()
    n = A.h.dim
    for i in range(n):
        for j in range(i, n):
            if not equal(F.f2[:, i, j], -F.f2[:, j, i]):
                out.append(f"f2 antisymmetric ({i},{j})")
    fh = [mul(F.f_h, X) for X in H]
    for i, j in combinations(range(n), 2):
        lhs = mul(B.partial, F.f2[:, i, j])
        rhs = mul(F.f_h, A.h.bracket(H[i], H[j])) - B.h.bracket(fh[i], fh[j])
        if not equal(lhs, rhs):
            out.append(f"bracket defect ({i},{j})")
    for i in range(n):
        for k, u in enumerate(A.g.basis()):
            lhs = F.quad(H[i], mul(A.partial, u))
            rhs = mul(F.f_g, mul(A.phi[i], u)) - mul(B.act(fh[i]), mul(F.f_g, u))
            if not equal(lhs, rhs):
                out.append(f"mixed defect (h[{i}], g[{k}])")
    for i, j, k in combinations(range(n), 3):
        tot = zvec(B.g.dim)
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            tot = tot + F.quad(A.h.bracket(H[a], H[b]), H[c]) - mul(B.act(fh[a]), F.f2[:, b, c])
        if not is_zero(tot):
            out.append(f"cubic coherence ({i},{j},{k})")
    return out


def linf_compose(G: Linf2Morphism, F: Linf2Morphism) -> Linf2Morphism:
    """G after F: (G∘F)₂(X, Y) = G_g F₂(X, Y) + G₂(F_h X, F_h Y)."""
    if not F.target.same_as(G.source):
        raise ValueError("L∞ morphisms are not composable")
    A = F.source
    n = A.h.dim
    f2 = _zero_f2(G.target.g.dim, n)
    H = A.h.basis()
    fh = [mul(F.f_h, X) for X in H]
    for i in range(n):
        for j in range(n):
            f2[:, i, j] = mul(G.f_g, F.f2[:, i, j]) + G.quad(fh[i], fh[j])
    return Linf2Morphism(A, G.target, mul(G.f_g, F.f_g), mul(G.f_h, F.f_h), f2)


def _retraction(K: TwoTermComplex) -> tuple[Matrix, Matrix, Matrix, Matrix]:
    """(i0, p0, i1, p1) between K and its cohomology, by the pivot rule."""
    S = K.H0
    i0 = S.matrix()
    p0 = zeros(S.dim, K.n0)
    for r, p in enumerate(S.pivots):
        p0[r, p] = 1
    Qt = K.H1
    i1 = zeros(K.n1, Qt.dim)
    for j, r in enumerate(Qt.representatives):
        i1[:, j] = r
    p1 = zeros(Qt.dim, K.n1)
    for j in range(K.n1):
        p1[:, j] = Qt.classify(unit_vector(K.n1, j))
    return i0, p0, i1, p1


def linf_quasi_inverse(F: Linf2Morphism | XModMorphism) -> Linf2Morphism:
    """An L∞ morphism G: X′ → X with H(G) = H(F)⁻¹.

    The linear part is the inverse of F's when F is an isomorphism, and
    i ∘ H(F)⁻¹ ∘ p for the pivot-rule retractions otherwise; f2 then solves
    the (linear) defect equations.
    """
    if isinstance(F, XModMorphism):
        F = strict(F)
    if not F.chain_map.is_quasi_iso():
        raise ValueError("linear part is not a quasi-isomorphism")
    A, B = F.source, F.target
    if is_invertible(F.f_g) and is_invertible(F.f_h):
        # an isomorphism: invert on the nose rather than through cohomology
        Gg, Gh = inverse(F.f_g), inverse(F.f_h)
    else:
        iA0, _, iA1, _ = _retraction(A.complex)
        _, pB0, _, pB1 = _retraction(B.complex)
        h0, h1 = F.h_maps()
        Gg = mul(mul(iA0, inverse(h0)), pB0)
        Gh = mul(mul(iA1, inverse(h1)), pB1)
    f2 = _solve_f2(B, A, Gg, Gh)
    G = Linf2Morphism(B, A, Gg, Gh, f2)
    bad = linf_violations(G)
    if bad:
        raise AssertionError(f"quasi-inverse fails {bad[0]}")
    return G


def _solve_f2(A: XMod, B: XMod, Fg: Matrix, Fh: Matrix) -> np.ndarray:
    """Solve for f2: Λ²(A.h) → B.g completing the linear parts (A → B) to an L∞ morphism."""
    n, m = A.h.dim, B.g.dim
    pairs = list(combinations(range(n), 2))
    idx = {p: k for k, p in enumerate(pairs)}
    nv = m * len(pairs)
    H = A.h.basis()
    fh = [mul(Fh, X) for X in H]

    def expr(X: Vector, Y: Vector) -> Matrix:
        """f2(X, Y) as an (m x nv) matrix acting on the unknowns."""
        E = zeros(m, nv)
        for (i, j), k in idx.items():
            c = X[i] * Y[j] - X[j] * Y[i]
            if c:
                E[:, k * m:(k + 1) * m] += c * eye(m)
        return E

    rows: list[Matrix] = []
    rhs: list[Vector] = []
    for i, j in pairs:
        rows.append(mul(B.partial, expr(H[i], H[j])))
        rhs.append(mul(Fh, A.h.bracket(H[i], H[j])) - B.h.bracket(fh[i], fh[j]))
    for i in range(n):
        for u in A.g.basis():
            rows.append(expr(H[i], mul(A.partial, u)))
            rhs.append(mul(Fg, mul(A.phi[i], u)) - mul(B.act(fh[i]), mul(Fg, u)))
    for i, j, k in combinations(range(n), 3):
        E = zeros(m, nv)
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            E = E + expr(A.h.bracket(H[a], H[b]), H[c]) - mul(B.act(fh[a]), expr(H[b], H[c]))
        rows.append(E)
        rhs.append(zvec(m))
    f2 = _zero_f2(m, n)
    if nv == 0:
        return f2
    M = vstack(rows, nv)
    b = np.concatenate(rhs) if rhs else zvec(0)
    x = solve(M, b)
    if x is None:
        raise ValueError("no quadratic correction completes the linear part")
    for (i, j), k in idx.items():
        f2[:, i, j] = x[k * m:(k + 1) * m]
        f2[:, j, i] = -x[k * m:(k + 1) * m]
    return f2


def complete_linear_part(A: XMod, B: XMod, Fg: Matrix, Fh: Matrix) -> Linf2Morphism:
    """The L∞ morphism with the given chain map as linear part, if one exists."""
    return Linf2Morphism(A, B, Fg, Fh, _solve_f2(A, B, Fg, Fh))


# -- derived zig-zags --------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DerivedZigZag:
    """Quasi-isomorphisms with directions; a backward entry points from the next object to the previous one."""

    entries: tuple[tuple[XModMorphism | Linf2Morphism, str], ...]

    def objects(self) -> list[XMod]:
        out: list[XMod] = []
        for i, (F, d) in enumerate(self.entries):
            if d not in ("forward", "backward"):
                raise ValueError(f"entry {i} has direction {d!r}")
            a, b = (F.source, F.target) if d == "forward" else (F.target, F.source)
            if out and not out[-1].same_as(a):
                raise ValueError(f"entry {i} does not start where the previous one ends")
            if not out:
                out.append(a)
            out.append(b)
        return out

    def validate(self) -> Report:
        rep = Report()
        self.objects()
        for i, (F, _) in enumerate(self.entries):
            if not F.chain_map.is_quasi_iso():
                rep.fail("quasi-isomorphism", f"entry {i}")
        return rep

    def h_maps(self) -> tuple[Matrix, Matrix]:
        """Composite cohomology maps, inverting backward entries."""
        objs = self.objects()
        h0, h1 = eye(objs[0].complex.H0.dim), eye(objs[0].complex.H1.dim)
        for F, d in self.entries:
            a0, a1 = F.chain_map.h0_matrix(), F.chain_map.h1_matrix()
            if d == "backward":
                a0, a1 = inverse(a0), inverse(a1)
            h0, h1 = mul(a0, h0), mul(a1, h1)
        return h0, h1


def flatten_zigzag(Z: DerivedZigZag) -> Linf2Morphism:
    rep = Z.validate()
    if not rep.ok:
        raise ValueError("; ".join(rep.lines()))
    out: Linf2Morphism | None = None
    for F, d in Z.entries:
        step = linf_quasi_inverse(F) if d == "backward" else (strict(F) if isinstance(F, XModMorphism) else F)
        out = step if out is None else linf_compose(step, out)
    if out is None:
        raise ValueError("empty zig-zag")
    return out


# -- constructions ------------------------------------------------------------------------

def xmod_basis_change(X: XMod, P: Matrix, Qh: Matrix) -> tuple[XMod, XModMorphism]:
    """Transport X along P: g → g′ and Qh: h → h′; returns the new crossed module and the isomorphism."""
    Pi, Qi = inverse(P), inverse(Qh)
    g2 = transport(X.g, P)
    h2 = transport(X.h, Qh)
    partial = mul(mul(Qh, X.partial), Pi)
    phi = tuple(mul(mul(P, X.act(Qi[:, j])), Pi) for j in range(X.h.dim))
    Y = XMod(g2, h2, partial, phi)
    return Y, XModMorphism(X, Y, P, Qh)


def xmod_direct_sum(X: XMod, Y: XMod) -> XMod:
    phi = tuple(block_diag(m, zeros(Y.g.dim, Y.g.dim)) for m in X.phi) + \
        tuple(block_diag(zeros(X.g.dim, X.g.dim), m) for m in Y.phi)
    return XMod(direct_sum(X.g, Y.g), direct_sum(X.h, Y.h), block_diag(X.partial, Y.partial), phi)


def acyclic_xmod(a: LieAlg) -> XMod:
    """id: a → a with the adjoint action; both cohomology groups vanish."""
    return XMod(a, a, eye(a.dim), tuple(a.ad(x) for x in a.basis()))


def module_xmod(h: LieAlg, rho: Sequence[Matrix]) -> XMod:
    """An h-module V as 0: V → h; V carries the zero bracket."""
    n = rho[0].shape[0] if rho else 0
    return XMod(from_bracket(n, lambda u, v: zvec(n)), h, zeros(h.dim, n), tuple(rho))


def ideal_xmod(h: LieAlg, ideal: Subspace) -> XMod:
    """Inclusion of an ideal with the adjoint action, in the ideal's canonical basis."""
    g = restrict(h, ideal)
    M = ideal.matrix()
    phi = tuple(ideal.coordinate_matrix(mul(h.ad(X), M)) for X in h.basis())
    return XMod(g, h, M, phi)


def central_quotient_xmod(g: LieAlg, center: Subspace) -> XMod:
    """g → g/c for a central c, with the action induced by ad."""
    Qt = quotient_data(Subspace.full(g.dim), center)
    partial = zeros(Qt.dim, g.dim)
    for j, u in enumerate(g.basis()):
        partial[:, j] = Qt.classify(u)
    h = from_bracket(Qt.dim, lambda x, y: Qt.classify(g.bracket(Qt.representative(x), Qt.representative(y))))
    phi = tuple(g.ad(Qt.representative(unit_vector(Qt.dim, i))) for i in range(Qt.dim))
    return XMod(g, h, partial, phi)


@dataclass(frozen=True, eq=False)
class AcyclicExtension:
    total: XMod
    projection: XModMorphism
    inclusion: XModMorphism


def acyclic_extension(X: XMod, a: LieAlg, psi: Sequence[Matrix]) -> AcyclicExtension:
    """g ⊕ a → h ⋉ a for an action ψ of h on a by derivations.

    Brackets: [(u, α), (v, γ)] = ([u, v], ψ_{∂u}γ − ψ_{∂v}α + [α, γ]) on g ⊕ a,
    the semidirect bracket on h ⋉ a, and
    φ_{(X, β)}(v, γ) = (φ_X v, ψ_X γ + [β, γ] − ψ_{∂v} β).
    The projection to X and the inclusion of X are quasi-isomorphisms.
    """
    ng, nh, na = X.g.dim, X.h.dim, a.dim

    def psi_of(Xv):
        out = zeros(na, na)
        for i, c in enumerate(Xv):
            if c:
                out = out + c * psi[i]
        return out

    def br_g(p, q):
        u, al = p[:ng], p[ng:]
        v, ga = q[:ng], q[ng:]
        du, dv = mul(X.partial, u), mul(X.partial, v)
        return np.concatenate([X.g.bracket(u, v),
                               mul(psi_of(du), ga) - mul(psi_of(dv), al) + a.bracket(al, ga)])

    def br_h(p, q):
        Xa, be = p[:nh], p[nh:]
        Yb, ga = q[:nh], q[nh:]
        return np.concatenate([X.h.bracket(Xa, Yb),
                               mul(psi_of(Xa), ga) - mul(psi_of(Yb), be) + a.bracket(be, ga)])

    g = from_bracket(ng + na, br_g)
    h = from_bracket(nh + na, br_h)
    partial = block_diag(X.partial, eye(na))
    phi = []
    for k in range(nh + na):
        Xa, be = unit_vector(nh + na, k)[:nh], unit_vector(nh + na, k)[nh:]
        M = zeros(ng + na, ng + na)
        for j in range(ng + na):
            v, ga = unit_vector(ng + na, j)[:ng], unit_vector(ng + na, j)[ng:]
            M[:, j] = np.concatenate([mul(X.act(Xa), v),
                                      mul(psi_of(Xa), ga) + a.bracket(be, ga)
                                      - mul(psi_of(mul(X.partial, v)), be)])
        phi.append(M)
    T = XMod(g, h, partial, tuple(phi))
    proj = XModMorphism(T, X, hstack([eye(ng), zeros(ng, na)], ng), hstack([eye(nh), zeros(nh, na)], nh))
    inc = XModMorphism(X, T, vstack([eye(ng), zeros(na, ng)], ng), vstack([eye(nh), zeros(na, nh)], nh))
    return AcyclicExtension(T, proj, inc)


def is_h_identity(F: Linf2Morphism) -> bool:
    h0, h1 = F.h_maps()
    return all(m.shape[0] == m.shape[1] and equal(m, eye(m.shape[0])) for m in (h0, h1))


def are_inverse_on_h(F: Linf2Morphism, G: Linf2Morphism) -> bool:
    return is_h_identity(linf_compose(G, F)) and is_h_identity(linf_compose(F, G))


def invertible_h(F: Linf2Morphism | XModMorphism) -> bool:
    cm = F.chain_map
    return cm.is_quasi_iso() and is_invertible(cm.h0_matrix()) and is_invertible(cm.h1_matrix())

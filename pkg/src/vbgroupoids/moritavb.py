"""Morita invariance of the complex of multiplicative sections.

Chain maps here act on coordinates: degree 0 on Γ(C) block coordinates and
degree 1 on the canonical basis of Γ_mult.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .complexes import ChainMap, TwoTermComplex, inverse, is_invertible
from .fingroupoid import (
    FinGroupoid,
    GroupoidFunctor,
    Report,
    identity_functor,
    is_weak_equivalence,
    surjectivity_profile,
    weak_fibre_product,
)
from .ratkernel import (
    Matrix,
    Subspace,
    equal,
    eye,
    hstack,
    is_zero,
    kernel_basis,
    mul,
    rank,
    vstack,
    zeros,
    zvec,
)
from .sections import MultSection, SectionComplex, build_complex, section_violations
from .vbgroupoid import (
    RepUTH,
    TotalArithmetic,
    VBArrow,
    VBMorphism,
    split_from_total,
    vb_inv,
    vb_mul,
    vb_target,
)

_complexes: "weakref.WeakKeyDictionary[RepUTH, SectionComplex]" = weakref.WeakKeyDictionary()


def section_complex(R: RepUTH) -> SectionComplex:
    """The complex of R, computed once per rep so chain maps share endpoints."""
    K = _complexes.get(R)
    if K is None:
        K = build_complex(R)
        _complexes[R] = K
    return K


def _ambient_to_coords(A: Matrix, Ks: SectionComplex, Kt: SectionComplex) -> Matrix:
    """Restrict an ambient-level map to Γ_mult(source) and express it in target coordinates."""
    return Kt.deg1.space.coordinate_matrix(mul(A, Ks.deg1.space.matrix()))


def _chain_map(Ks: SectionComplex, Kt: SectionComplex, f0: Matrix, f1_ambient: Matrix) -> ChainMap:
    F = ChainMap(Ks.complex, Kt.complex, f0, _ambient_to_coords(f1_ambient, Ks, Kt))
    if not F.commutes():
        raise AssertionError("constructed map does not commute with δ")
    return F


# -- VB-Morita --------------------------------------------------------------------

def fiber_chain_map(F: VBMorphism, x: str) -> ChainMap:
    R1, R2 = F.source, F.target
    y = F.base.obj(x)
    return ChainMap(TwoTermComplex(R1.d(x)), TwoTermComplex(R2.d(y)), F.on_C[x], F.on_E[x])


def is_vb_morita(F: VBMorphism) -> tuple[bool, Report]:
    """Base weak equivalence plus a quasi-isomorphism (Cₓ → Eₓ) → (D → F) at every object."""
    rep = Report()
    ok, base = is_weak_equivalence(F.base)
    rep.extend(base, "base ")
    for x in F.source.G.objects:
        if not fiber_chain_map(F, x).is_quasi_iso():
            rep.fail("fiber quasi-isomorphism", x)
    return rep.ok, rep


def is_vb_morita_total(F: VBMorphism) -> bool:
    """Weak equivalence of the total groupoids, checked by linear algebra.

    Full faithfulness: for each base arrow g the map v ↦ (Φv, s̃v, t̃v) from V_g
    to the fibre product of W_{φg} with E_{s(g)} × E_{t(g)} is bijective, and φ
    is bijective on hom-sets.  Essential surjectivity: every F_y equals the
    span of ∂'(D_y) and Δ'_h Φ_E(Eₓ) for some h: φ(x) → y.
    """
    R1, R2, phi = F.source, F.target, F.base
    G, H = R1.G, R2.G
    for x in G.objects:
        for y in G.objects:
            mapped = [phi(g) for g in G.arrows_between(x, y)]
            if sorted(mapped) != sorted(H.arrows_between(phi.obj(x), phi.obj(y))):
                return False
    for g in G.arrow_ids:
        s, t = G.src(g), G.tgt(g)
        h = phi(g)
        nD, nF = R2.C[H.tgt(h)], R2.E[H.src(h)]
        nEs, nEt = R1.E[s], R1.E[t]
        # constraint on (d, f, e1, e2): f = Φ e1 and ∂d + Δ f = Φ e2
        cons = vstack([
            hstack([zeros(nF, nD), eye(nF), -F.on_E[s], zeros(nF, nEt)], nF),
            hstack([R2.d(H.tgt(h)), R2.deltaE[h], zeros(R2.E[H.tgt(h)], nEs), -F.on_E[t]], R2.E[H.tgt(h)]),
        ], nD + nF + nEs + nEt)
        target_dim = kernel_basis(cons).dim
        nC = R1.C[t]
        M = vstack([
            hstack([F.on_C[t], zeros(nD, nEs)], nD),
            hstack([zeros(nF, nC), F.on_E[s]], nF),
            hstack([zeros(nEs, nC), eye(nEs)], nEs),
            hstack([R1.d(t), R1.deltaE[g]], nEt),
        ], nC + nEs)
        if nC + nEs != target_dim or rank(M) != nC + nEs:
            return False
    for y in H.objects:
        good = False
        for x in G.objects:
            for h in H.arrows_between(phi.obj(x), y):
                S = hstack([R2.d(y), mul(R2.deltaE[h], F.on_E[x])], R2.E[y])
                if rank(S) == R2.E[y]:
                    good = True
        if not good:
            return False
    return True


@dataclass(frozen=True)
class VBSurjectivity:
    on_objects: bool
    on_arrows: bool
    on_pairs: bool

    @property
    def all(self) -> bool:
        return self.on_objects and self.on_arrows and self.on_pairs


def vb_surjectivity_profile(F: VBMorphism) -> VBSurjectivity:
    """Surjectivity of the total map V → W on objects, arrows and composable pairs.

    Over an infinite field a finite union of proper subspaces is proper, so each
    target fiber must be hit by a single source fiber.
    """
    R1, R2, phi = F.source, F.target, F.base
    G, H = R1.G, R2.G

    def onto_C(x):
        return rank(F.on_C[x]) == R2.C[phi.obj(x)]

    def onto_E(x):
        return rank(F.on_E[x]) == R2.E[phi.obj(x)]

    objs = all(any(onto_E(x) for x in G.objects if phi.obj(x) == y) for y in H.objects)
    arrows = all(any(onto_C(G.tgt(g)) and onto_E(G.src(g)) for g in G.arrow_ids if phi(g) == h)
                 for h in H.arrow_ids)
    pairs = all(any(onto_C(G.tgt(g)) and onto_C(G.tgt(k)) and onto_E(G.src(k))
                    for g, k in G.pairs if (phi(g), phi(k)) == (h, l))
                for h, l in H.pairs)
    return VBSurjectivity(objs, arrows, pairs)


# -- pullbacks ----------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PullbackRep:
    base: FinGroupoid
    source_rep: RepUTH
    functor: GroupoidFunctor
    rep: RepUTH

    def projection(self) -> VBMorphism:
        """φ^!: φ*W → W, the identity on fibers."""
        R = self.rep
        return VBMorphism(R, self.source_rep, self.functor,
                          {x: eye(R.C[x]) for x in self.base.objects},
                          {x: eye(R.E[x]) for x in self.base.objects})


def pullback_rep(W: RepUTH, phi: GroupoidFunctor) -> PullbackRep:
    G = phi.source
    if phi.target is not W.G:
        raise ValueError("functor does not land in the base of the rep")
    C = {x: W.C[phi.obj(x)] for x in G.objects}
    E = {x: W.E[phi.obj(x)] for x in G.objects}
    partial = {x: W.d(phi.obj(x)) for x in G.objects}
    dC = {g: W.deltaC[phi(g)] for g in G.arrow_ids}
    dE = {g: W.deltaE[phi(g)] for g in G.arrow_ids}
    omega = {}
    for g, h in G.pairs:
        m = W.omega.get((phi(g), phi(h)))
        if m is not None and not is_zero(m):
            omega[(g, h)] = m
    return PullbackRep(G, W, phi, RepUTH(G, C, E, partial, dC, dE, omega))


def _core_block_map(Ks: SectionComplex, Kt: SectionComplex, blocks: Mapping[tuple[str, str], Matrix]) -> Matrix:
    """Γ-level map assembled from blocks (target object, source object) -> matrix."""
    M = zeros(Kt.layout.core_dim, Ks.layout.core_dim)
    for (y, x), b in blocks.items():
        ty, _ = Kt.layout.core[y]
        sx, _ = Ks.layout.core[x]
        M[ty:ty + b.shape[0], sx:sx + b.shape[1]] = b
    return M


def chain_map_pullback(P: PullbackRep) -> ChainMap:
    """φ*: C(W) → C(φ*W), pulling sections back along φ₀ and (φ, φ₀)."""
    W, R, phi = P.source_rep, P.rep, P.functor
    Kw, Kp = section_complex(W), section_complex(R)
    G = P.base
    f0 = _core_block_map(Kw, Kp, {(x, phi.obj(x)): eye(R.C[x]) for x in G.objects})
    A = zeros(Kp.layout.ambient_dim, Kw.layout.ambient_dim)
    for g in G.arrow_ids:
        to, n = Kp.layout.kappa[g]
        so, _ = Kw.layout.kappa[phi(g)]
        A[to:to + n, so:so + n] = eye(n)
    for x in G.objects:
        to, n = Kp.layout.e[x]
        so, _ = Kw.layout.e[phi.obj(x)]
        A[to:to + n, so:so + n] = eye(n)
    return _chain_map(Kw, Kp, f0, A)


def pullback_of_morphism(F: VBMorphism) -> tuple[PullbackRep, VBMorphism]:
    """Factor Φ = φ^! ∘ Φ̄ with Φ̄: V → φ*W covering the identity."""
    P = pullback_rep(F.target, F.base)
    G = F.source.G
    bar = VBMorphism(F.source, P.rep, identity_functor(G), dict(F.on_C), dict(F.on_E))
    return P, bar


def chain_map_bar(F: VBMorphism, P: PullbackRep | None = None) -> tuple[ChainMap, PullbackRep]:
    """Φ̄: C(V) → C(φ*W)."""
    if P is None:
        P, bar = pullback_of_morphism(F)
    V = F.source
    G = V.G
    Kv, Kp = section_complex(V), section_complex(P.rep)
    f0 = _core_block_map(Kv, Kp, {(x, x): F.on_C[x] for x in G.objects})
    A = zeros(Kp.layout.ambient_dim, Kv.layout.ambient_dim)
    for g in G.arrow_ids:
        to, _ = Kp.layout.kappa[g]
        so, _ = Kv.layout.kappa[g]
        b = F.on_C[G.tgt(g)]
        A[to:to + b.shape[0], so:so + b.shape[1]] = b
    for x in G.objects:
        to, _ = Kp.layout.e[x]
        so, _ = Kv.layout.e[x]
        b = F.on_E[x]
        A[to:to + b.shape[0], so:so + b.shape[1]] = b
    return _chain_map(Kv, Kp, f0, A), P


# -- projectable sections -----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ProjectableComplex:
    morphism: VBMorphism
    deg0: Subspace       # inside Γ(C) coordinates
    deg1: Subspace       # inside Γ_mult(V) coordinates
    complex: TwoTermComplex
    inclusion: ChainMap


def _fibres(phi: GroupoidFunctor) -> tuple[dict[str, list[str]], dict[str, list[str]]]:
    objs: dict[str, list[str]] = {}
    arrs: dict[str, list[str]] = {}
    for x in phi.source.objects:
        objs.setdefault(phi.obj(x), []).append(x)
    for g in phi.source.arrow_ids:
        arrs.setdefault(phi(g), []).append(g)
    return objs, arrs


def _require_surjective(phi: GroupoidFunctor) -> None:
    p = surjectivity_profile(phi)
    missing = [n for n, ok in (("objects", p.on_objects), ("arrows", p.on_arrows),
                               ("composable pairs", p.on_pairs)) if not ok]
    if missing:
        raise ValueError("base map is not surjective on " + ", ".join(missing))


def projectable_complex(F: VBMorphism) -> ProjectableComplex:
    phi = F.base
    _require_surjective(phi)
    V = F.source
    Kv = section_complex(V)
    L = Kv.layout
    objs, arrs = _fibres(phi)
    rows0 = []
    for y, xs in objs.items():
        for x in xs[1:]:
            r = zeros(F.target.C[y], L.core_dim)
            o0, n0 = L.core[xs[0]]
            o1, n1 = L.core[x]
            r[:, o0:o0 + n0] += F.on_C[xs[0]]
            r[:, o1:o1 + n1] -= F.on_C[x]
            rows0.append(r)
    deg0 = kernel_basis(vstack(rows0, L.core_dim))
    rows1 = []
    G = V.G
    for h, gs in arrs.items():
        for g in gs[1:]:
            g0 = gs[0]
            r = zeros(F.target.C[phi.target.tgt(h)], L.ambient_dim)
            o0, _ = L.kappa[g0]
            o1, _ = L.kappa[g]
            b0, b1 = F.on_C[G.tgt(g0)], F.on_C[G.tgt(g)]
            r[:, o0:o0 + b0.shape[1]] += b0
            r[:, o1:o1 + b1.shape[1]] -= b1
            rows1.append(r)
            r = zeros(F.target.E[phi.target.src(h)], L.ambient_dim)
            o0, _ = L.e[G.src(g0)]
            o1, _ = L.e[G.src(g)]
            b0, b1 = F.on_E[G.src(g0)], F.on_E[G.src(g)]
            r[:, o0:o0 + b0.shape[1]] += b0
            r[:, o1:o1 + b1.shape[1]] -= b1
            rows1.append(r)
    A = vstack(rows1, L.ambient_dim)
    deg1 = kernel_basis(mul(A, Kv.deg1.space.matrix()))
    P0, P1 = deg0.matrix(), deg1.matrix()
    d_img = mul(Kv.delta, P0)
    d = deg1.coordinate_matrix(d_img)  # raises if δ leaves the projectable sections
    K = TwoTermComplex(d)
    inc = ChainMap(K, Kv.complex, P0, P1)
    if not inc.commutes():
        raise AssertionError("inclusion of projectable sections does not commute with δ")
    return ProjectableComplex(F, deg0, deg1, K, inc)


def project_sections(PC: ProjectableComplex) -> ChainMap:
    """Φ_*: push projectable sections forward to sections of W."""
    F = PC.morphism
    phi = F.base
    V, W = F.source, F.target
    Kv, Kw = section_complex(V), section_complex(W)
    Lv, Lw = Kv.layout, Kw.layout
    objs, arrs = _fibres(phi)
    f0 = zeros(Lw.core_dim, PC.deg0.dim)
    for j, b in enumerate(PC.deg0.basis):
        c = Lv.decode_core(b)
        pushed = {}
        for y, xs in objs.items():
            vals = [mul(F.on_C[x], c[x]) for x in xs]
            if any(not equal(v, vals[0]) for v in vals):
                raise ValueError("core section is not projectable")
            pushed[y] = vals[0]
        f0[:, j] = Lw.encode_core(pushed)
    f1 = zeros(Kw.deg1.dim, PC.deg1.dim)
    Bv = Kv.deg1.space.matrix()
    for j, b in enumerate(PC.deg1.basis):
        s = Lv.decode(mul(Bv, b))
        kappa, e = {}, {}
        for h, gs in arrs.items():
            vals = [F.apply(s.arrow(g, V)) for g in gs]
            if any(v != vals[0] for v in vals):
                raise ValueError("section is not projectable")
            kappa[h] = vals[0].c
        for y, xs in objs.items():
            e[y] = mul(F.on_E[xs[0]], s.e[xs[0]])
        pushed = MultSection(kappa, e)
        if section_violations(pushed, W):
            raise AssertionError("pushed-forward section is not multiplicative")
        f1[:, j] = Kw.coords(pushed)
    out = ChainMap(PC.complex, Kw.complex, f0, f1)
    if not out.commutes():
        raise AssertionError("Φ_* does not commute with δ")
    return out


def fibre_product_dims(bar: ChainMap, pull: ChainMap) -> tuple[int, int]:
    """Degreewise dimensions of {(a, b) : Φ̄(a) = φ*(b)}."""
    d0 = kernel_basis(hstack([bar.f0, -pull.f0], bar.f0.shape[0])).dim
    d1 = kernel_basis(hstack([bar.f1, -pull.f1], bar.f1.shape[0])).dim
    return d0, d1


def surjectivity_lemma_holds(F: ChainMap) -> bool:
    """For a quasi-isomorphism with surjective degree 0, degree 1 is surjective as well."""
    if not F.is_quasi_iso() or rank(F.f0) != F.f0.shape[0]:
        return True
    return rank(F.f1) == F.f1.shape[0]


@dataclass(frozen=True, eq=False)
class MoritaSquare:
    inclusion: ChainMap
    push: ChainMap
    bar: ChainMap
    pull: ChainMap
    projectable: ProjectableComplex

    def all_quasi_iso(self) -> bool:
        return all(m.is_quasi_iso() for m in (self.inclusion, self.push, self.bar, self.pull))

    def commutes(self) -> bool:
        lhs = self.inclusion.then(self.bar)
        rhs = self.push.then(self.pull)
        return equal(lhs.f0, rhs.f0) and equal(lhs.f1, rhs.f1)

    def fibre_product_identity(self) -> bool:
        return fibre_product_dims(self.bar, self.pull) == (self.projectable.deg0.dim, self.projectable.deg1.dim)


def morita_square(F: VBMorphism) -> MoritaSquare:
    PC = projectable_complex(F)
    push = project_sections(PC)
    bar, P = chain_map_bar(F)
    pull = chain_map_pullback(P)
    return MoritaSquare(PC.inclusion, push, bar, pull, PC)


# -- zig-zags and induced isomorphisms ----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ZigZag:
    """Chain maps with directions; a backward map points from the next complex to the previous one."""

    entries: tuple[tuple[ChainMap, str], ...]

    def complexes(self) -> list[TwoTermComplex]:
        out = []
        for F, d in self.entries:
            a, b = (F.source, F.target) if d == "forward" else (F.target, F.source)
            if out and out[-1] is not a:
                raise ValueError("adjacent maps in the zig-zag do not share a complex")
            if not out:
                out.append(a)
            out.append(b)
        return out

    def __add__(self, other: "ZigZag") -> "ZigZag":
        return ZigZag(self.entries + other.entries)


def morita_zigzag(F: VBMorphism) -> ZigZag:
    """C(V) → C(φ*W) ← C(W)."""
    bar, P = chain_map_bar(F)
    return ZigZag(((bar, "forward"), (chain_map_pullback(P), "backward")))


def zigzag_h_isos(Z: ZigZag) -> tuple[Matrix, Matrix]:
    Z.complexes()
    first = Z.entries[0][0]
    start = first.source if Z.entries[0][1] == "forward" else first.target
    h0, h1 = eye(start.H0.dim), eye(start.H1.dim)
    for i, (F, d) in enumerate(Z.entries):
        if not F.is_quasi_iso():
            raise ValueError(f"map {i} of the zig-zag is not a quasi-isomorphism")
        a0, a1 = F.h0_matrix(), F.h1_matrix()
        if d == "backward":
            a0, a1 = inverse(a0), inverse(a1)
        h0, h1 = mul(a0, h0), mul(a1, h1)
    return h0, h1


def morita_H_iso(F: VBMorphism | ZigZag) -> tuple[Matrix, Matrix]:
    """Isomorphisms H(V) → H(W) in canonical bases: (φ*)⁻¹ ∘ Φ̄ on cohomology."""
    if isinstance(F, VBMorphism):
        ok, rep = is_vb_morita(F)
        if not ok:
            raise ValueError("not a VB-Morita map: " + "; ".join(rep.lines()))
        F = morita_zigzag(F)
    h0, h1 = zigzag_h_isos(F)
    if not (is_invertible(h0) and is_invertible(h1)):
        raise AssertionError("composed cohomology maps are not invertible")
    return h0, h1


# -- weak fibre products of VB-groupoids -----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class _Triple:
    v: VBArrow
    w: VBArrow
    v2: VBArrow

    def __add__(self, o):
        return _Triple(self.v + o.v, self.w + o.w, self.v2 + o.v2)

    def __sub__(self, o):
        return _Triple(self.v - o.v, self.w - o.w, self.v2 - o.v2)


@dataclass(frozen=True, eq=False)
class VBWeakFibreProduct:
    rep: RepUTH
    proj: VBMorphism     # to V
    proj2: VBMorphism    # to V'
    side_basis: Mapping[str, Matrix]   # object -> basis of the side fiber inside E ⊕ D ⊕ E'


def vb_weak_fibre_product(F: VBMorphism, F2: VBMorphism) -> VBWeakFibreProduct:
    """Weak fibre product of Φ: V → W and Φ': V' → W, in split form.

    Over an object (x, h, x') the side fiber is {(e, d, e') : ∂d + Δ_h Φe = Φ'e'}
    and the core is Cₓ ⊕ C'ₓ'.  An arrow over (g, h, g') is a triple (v, w, v')
    with w the middle of its source; the lift uses the zero-core lifts of V and V'.
    """
    V, W, V2 = F.source, F.target, F2.source
    if F2.target is not W:
        raise ValueError("morphisms must share a target")
    wfp = weak_fibre_product(F.base, F2.base)
    P = wfp.groupoid
    H = W.G
    basis: dict[str, Matrix] = {}
    blocks: dict[str, tuple[int, int, int]] = {}
    C, E = {}, {}
    for o, (x, h, x2) in wfp.obj_of.items():
        nE, nD, nE2 = V.E[x], W.C[H.tgt(h)], V2.E[x2]
        A = hstack([mul(W.deltaE[h], F.on_E[x]), W.d(H.tgt(h)), -F2.on_E[x2]], W.E[H.tgt(h)])
        S = kernel_basis(A)
        basis[o] = S.matrix()
        blocks[o] = (nE, nD, nE2)
        C[o] = V.C[x] + V2.C[x2]
        E[o] = S.dim
    spaces = {o: Subspace.span(list(basis[o].T), sum(blocks[o])) for o in P.objects}

    def split_side(o, vec3):
        c = spaces[o].coordinates(vec3)
        if c is None:
            raise AssertionError("element left the side fiber")
        return c

    def parts(o, eps):
        nE, nD, _ = blocks[o]
        full = mul(basis[o], eps)
        return full[:nE], full[nE:nE + nD], full[nE + nD:]

    def lift(a, eps):
        g, h, g2 = wfp.arrow_of[a]
        e, d, e2 = parts(P.src(a), eps)
        return _Triple(VBArrow(zvec(V.dC(g)), g, e), VBArrow(d, h, mul(F.on_E[V.G.src(g)], e)),
                       VBArrow(zvec(V2.dC(g2)), g2, e2))

    def core_at(o, c):
        x, h, x2 = wfp.obj_of[o]
        n = V.C[x]
        return _Triple(VBArrow(c[:n], V.G.unit[x], zvec(V.E[x])), VBArrow(zvec(W.C[H.tgt(h)]), h, zvec(W.E[H.src(h)])),
                       VBArrow(c[n:], V2.G.unit[x2], zvec(V2.E[x2])))

    def zero(a):
        g, h, g2 = wfp.arrow_of[a]
        return _Triple(VBArrow(zvec(V.dC(g)), g, zvec(V.dE(g))), VBArrow(zvec(W.dC(h)), h, zvec(W.dE(h))),
                       VBArrow(zvec(V2.dC(g2)), g2, zvec(V2.dE(g2))))

    def middle_target(T):
        return vb_mul(vb_mul(F2.apply(T.v2), T.w, W), vb_inv(F.apply(T.v), W), W)

    def arrow_id(T):
        return f"[{T.v.g},{T.w.g},{T.v2.g}]"

    def mul_(T2, T1):
        if not middle_target(T1) == T2.w:
            raise ValueError("triples are not composable")
        return _Triple(vb_mul(T2.v, T1.v, V), T1.w, vb_mul(T2.v2, T1.v2, V2))

    def source(T):
        return split_side(P.src(arrow_id(T)), np.concatenate([T.v.e, T.w.c, T.v2.e]))

    def target(T):
        u = middle_target(T)
        return split_side(P.tgt(arrow_id(T)), np.concatenate([vb_target(T.v, V), u.c, vb_target(T.v2, V2)]))

    def core_coords(a, T):
        return np.concatenate([T.v.c, T.v2.c])

    arith = TotalArithmetic(P, C, E, lift, core_at, zero, mul_, source, target, core_coords)
    R, _ = split_from_total(arith)
    on_C1, on_C2, on_E1, on_E2 = {}, {}, {}, {}
    for o, (x, h, x2) in wfp.obj_of.items():
        n1, n2 = V.C[x], V2.C[x2]
        on_C1[o] = hstack([eye(n1), zeros(n1, n2)], n1)
        on_C2[o] = hstack([zeros(n2, n1), eye(n2)], n2)
        nE, nD, _ = blocks[o]
        on_E1[o] = basis[o][:nE, :]
        on_E2[o] = basis[o][nE + nD:, :]
    p1 = VBMorphism(R, V, wfp.proj, on_C1, on_E1)
    p2 = VBMorphism(R, V2, wfp.proj2, on_C2, on_E2)
    return VBWeakFibreProduct(R, p1, p2, basis)

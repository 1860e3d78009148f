"""LA-groupoids over finite bases and the crossed module of multiplicative sections.

Over a finite base the Lie algebroids involved are bundles of Lie algebras with
zero anchor, so every bracket of sections is pointwise.  The fiber over an
arrow g is V_g = C_{t(g)} ⊕ E_{s(g)} in split coordinates (core first).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .complexes import is_invertible
from .fingroupoid import (
    FinGroupoid,
    Group,
    GroupoidFunctor,
    Report,
    action_groupoid,
    identity_functor,
    point_groupoid,
    surjectivity_profile,
)
from .liealg import (
    LieAlg,
    direct_sum,
    from_bracket,
    is_abelian,
    is_morphism,
    lie_violations,
    morphism_violations,
    quotient,
    restrict,
    transport,
)
from .moritavb import (
    PullbackRep,
    is_vb_morita,
    project_sections,
    projectable_complex,
    pullback_rep,
    section_complex,
)
from .ratkernel import (
    Matrix,
    Subspace,
    Vector,
    block_diag,
    equal,
    eye,
    hstack,
    is_zero,
    kernel_basis,
    mul,
    unit_vector,
    zeros,
    zvec,
)
from .sections import MultSection, SectionComplex, section_violations
from .vbgroupoid import (
    RepUTH,
    VBArrow,
    VBMorphism,
    direct_sum as rep_direct_sum,
    resplit,
    twist_by_basis_change,
    type1_pullback,
    vb_inv,
    vb_mul,
    validate_vb_morphism,
)
from .xmodlinf import (
    DerivedZigZag,
    Lie2Algebra,
    XMod,
    XModMorphism,
    lie2_to_xmod,
    validate_lie2,
    validate_xmod,
    validate_xmod_morphism,
    xmod_to_lie2,
)


class LAError(ValueError):
    """An LA-groupoid axiom failed; the message names the axiom and a witness."""


@dataclass(frozen=True, eq=False)
class LAGroupoid:
    rep: RepUTH
    side_bracket: Mapping[str, LieAlg]
    fiber_bracket: Mapping[str, LieAlg]

    def vector(self, a: VBArrow) -> Vector:
        return np.concatenate([a.c, a.e])

    def arrow(self, g: str, v: Vector) -> VBArrow:
        n = self.rep.dC(g)
        return VBArrow(v[:n], g, v[n:])

    def bracket(self, a: VBArrow, b: VBArrow) -> VBArrow:
        if a.g != b.g:
            raise ValueError("bracket of elements over different arrows")
        return self.arrow(a.g, self.fiber_bracket[a.g].bracket(self.vector(a), self.vector(b)))


def _fiber_dim(R: RepUTH, g: str) -> int:
    return R.dC(g) + R.dE(g)


def _source_matrix(R: RepUTH, g: str) -> Matrix:
    return hstack([zeros(R.dE(g), R.dC(g)), eye(R.dE(g))], R.dE(g))


def _target_matrix(R: RepUTH, g: str) -> Matrix:
    t = R.G.tgt(g)
    return hstack([R.d(t), R.deltaE[g]], R.E[t])


def _inverse_matrix(L: LAGroupoid, g: str) -> Matrix:
    R = L.rep
    n = _fiber_dim(R, g)
    gi = R.G.inv[g]
    out = zeros(_fiber_dim(R, gi), n)
    for j in range(n):
        out[:, j] = L.vector(vb_inv(L.arrow(g, unit_vector(n, j)), R))
    return out


def validate_la(L: LAGroupoid) -> Report:
    R = L.rep
    G = R.G
    rep = Report()
    for x in G.objects:
        if L.side_bracket[x].dim != R.E[x]:
            raise ValueError(f"side bracket at {x} has the wrong dimension")
        for v in lie_violations(L.side_bracket[x]):
            rep.fail("side fiber is a Lie algebra", f"{x} {v}")
    for g in G.arrow_ids:
        if L.fiber_bracket[g].dim != _fiber_dim(R, g):
            raise ValueError(f"fiber bracket at {g} has the wrong dimension")
        for v in lie_violations(L.fiber_bracket[g]):
            rep.fail("fiber is a Lie algebra", f"{g} {v}")
    if not rep.ok:
        return rep
    for g in G.arrow_ids:
        Vg = L.fiber_bracket[g]
        for v in morphism_violations(_source_matrix(R, g), Vg, L.side_bracket[G.src(g)]):
            rep.fail("source is a Lie morphism", f"{g} {v}")
        for v in morphism_violations(_target_matrix(R, g), Vg, L.side_bracket[G.tgt(g)]):
            rep.fail("target is a Lie morphism", f"{g} {v}")
        for v in morphism_violations(_inverse_matrix(L, g), Vg, L.fiber_bracket[G.inv[g]]):
            rep.fail("inversion is a Lie morphism", f"{g} {v}")
    for x in G.objects:
        u = G.unit[x]
        one = np.concatenate([zeros(R.C[x], R.E[x]), eye(R.E[x])]) if R.E[x] else zeros(R.C[x], 0)
        for v in morphism_violations(one, L.side_bracket[x], L.fiber_bracket[u]):
            rep.fail("unit is a Lie morphism", f"{x} {v}")
    for g, h in G.pairs:
        _check_multiplication(L, g, h, rep)
    return rep


def _check_multiplication(L: LAGroupoid, g: str, h: str, rep: Report) -> None:
    R = L.rep
    ng = _fiber_dim(R, g)
    E = R.E[R.G.src(g)]
    S = kernel_basis(hstack([_source_matrix(R, g), -_target_matrix(R, h)], E))
    pair = direct_sum(L.fiber_bracket[g], L.fiber_bracket[h])
    target = L.fiber_bracket[R.G.mul(g, h)]

    def m(p):
        return L.vector(vb_mul(L.arrow(g, p[:ng]), L.arrow(h, p[ng:]), R))

    B = S.basis
    for i, p in enumerate(B):
        for j in range(i + 1, len(B)):
            q = B[j]
            pq = pair.bracket(p, q)
            if not S.contains(pq):
                rep.fail("composable pairs form a subalgebra", f"({g},{h}) [{i},{j}]")
                continue
            if not equal(m(pq), target.bracket(m(p), m(q))):
                rep.fail("multiplication is a Lie morphism", f"({g},{h}) [{i},{j}]")


def _require_valid(L: LAGroupoid) -> None:
    rep = validate_la(L)
    if not rep.ok:
        raise LAError("invalid LA-groupoid: " + "; ".join(rep.lines()[:5]))


# -- core bracket, Γ_mult bracket and the derivation D --------------------------------

def _core_sections(K: SectionComplex) -> list[dict[str, Vector]]:
    L = K.layout
    return [L.decode_core(unit_vector(L.core_dim, j)) for j in range(L.core_dim)]


def core_bracket(L: LAGroupoid, K: SectionComplex | None = None) -> LieAlg:
    """[c₁, c₂](x) = C-part of [(c₁ₓ, 0), (c₂ₓ, 0)] in V_{1ₓ}, checked against right and left translates."""
    R = L.rep
    G = R.G
    K = K or section_complex(R)
    lay = K.layout

    def at_unit(c1, c2, x):
        u = G.unit[x]
        b = L.bracket(VBArrow(c1[x], u, zvec(R.E[x])), VBArrow(c2[x], u, zvec(R.E[x])))
        if not is_zero(b.e):
            raise LAError(f"core is not an ideal at {x}")
        return b.c

    def br(a, b):
        c1, c2 = lay.decode_core(a), lay.decode_core(b)
        return lay.encode_core({x: at_unit(c1, c2, x) for x in G.objects})

    C = from_bracket(lay.core_dim, br)
    cs = _core_sections(K)
    for i, c1 in enumerate(cs):
        for j, c2 in enumerate(cs):
            c12 = lay.decode_core(C.consts[i, j])
            for g in G.arrow_ids:
                if G.is_unit(g):
                    continue
                r1, r2 = _right(c1, g, R), _right(c2, g, R)
                l1, l2 = _left(c1, g, R), _left(c2, g, R)
                if L.bracket(r1, r2) != _right(c12, g, R):
                    raise LAError(f"[c1, c2]^r differs from [c1^r, c2^r] at {g} for core basis ({i},{j})")
                if L.bracket(l1, l2) != _left(c12, g, R).scale(-1):
                    raise LAError(f"[c1, c2]^l differs from -[c1^l, c2^l] at {g} for core basis ({i},{j})")
                if L.bracket(r1, l2) != VBArrow(zvec(R.dC(g)), g, zvec(R.dE(g))):
                    raise LAError(f"[c1^r, c2^l] is nonzero at {g} for core basis ({i},{j})")
    return C


def _right(c: Mapping[str, Vector], g: str, R: RepUTH) -> VBArrow:
    return VBArrow(c[R.G.tgt(g)], g, zvec(R.dE(g)))


def _left(c: Mapping[str, Vector], g: str, R: RepUTH) -> VBArrow:
    s = R.G.src(g)
    return VBArrow(mul(R.deltaC[g], c[s]), g, -mul(R.d(s), c[s]))


def section_bracket(L: LAGroupoid, V: MultSection, W: MultSection) -> MultSection:
    """Pointwise bracket of two sections; the side part is read over units."""
    R = L.rep
    G = R.G
    kappa, e = {}, {}
    for g in G.arrow_ids:
        b = L.bracket(V.arrow(g, R), W.arrow(g, R))
        kappa[g] = b.c
        if G.is_unit(g):
            e[G.src(g)] = b.e
    for g in G.arrow_ids:
        if not equal(L.bracket(V.arrow(g, R), W.arrow(g, R)).e, e[G.src(g)]):
            raise LAError(f"bracket of sections is not a section at {g}")
    return MultSection(kappa, e)


def mult_bracket(L: LAGroupoid, K: SectionComplex | None = None) -> LieAlg:
    """Γ_mult with the pointwise bracket, in its canonical basis; closure is verified."""
    R = L.rep
    K = K or section_complex(R)
    secs = [K.section(unit_vector(K.deg1.dim, j)) for j in range(K.deg1.dim)]
    n = len(secs)
    table = {}
    for i in range(n):
        for j in range(n):
            s = section_bracket(L, secs[i], secs[j])
            bad = section_violations(s, R)
            if bad:
                raise LAError(f"Γ_mult is not closed under the bracket: basis ({i},{j}) fails {bad[0]}")
            table[(i, j)] = K.coords(s)

    def br(a, b):
        out = zvec(n)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                if x and y:
                    out = out + x * y * table[(i, j)]
        return out

    return from_bracket(n, br)


def derivation_D(L: LAGroupoid, V: MultSection, K: SectionComplex | None = None) -> Matrix:
    """D_V(c)(x) = C-part of [V(1ₓ), (cₓ, 0)] in V_{1ₓ}, as a matrix on Γ(C) coordinates."""
    R = L.rep
    G = R.G
    K = K or section_complex(R)
    lay = K.layout
    out = zeros(lay.core_dim, lay.core_dim)
    for j, c in enumerate(_core_sections(K)):
        val = {}
        for x in G.objects:
            u = G.unit[x]
            b = L.bracket(V.arrow(u, R), VBArrow(c[x], u, zvec(R.E[x])))
            if not is_zero(b.e):
                raise LAError(f"D_V leaves the core at {x}")
            val[x] = b.c
        out[:, j] = lay.encode_core(val)
    return out


@dataclass(frozen=True, eq=False)
class XModOfSections(XMod):
    la: LAGroupoid | None = None
    sections: SectionComplex | None = None


def crossed_module(L: LAGroupoid) -> XModOfSections:
    """Γ(C) → Γ_mult(V) → Der(Γ(C)); every axiom is verified before returning."""
    _require_valid(L)
    R = L.rep
    K = section_complex(R)
    g = core_bracket(L, K)
    h = mult_bracket(L, K)
    phi = tuple(derivation_D(L, K.section(unit_vector(K.deg1.dim, j)), K) for j in range(K.deg1.dim))
    X = XModOfSections(g, h, K.delta, phi, L, K)
    rep = validate_xmod(X)
    if not rep.ok:
        raise LAError("crossed module axioms fail: " + "; ".join(rep.lines()[:5]))
    bad = morphism_violations(K.delta, g, h)
    if bad:
        raise LAError(f"δ is not a Lie morphism at {bad[0]}")
    return X


def lie2_bracket(X: XMod) -> Lie2Algebra:
    """Semidirect bracket on Γ(C) ⊕ Γ_mult with ŝ, t̂ and the unit; verified."""
    L2 = xmod_to_lie2(X)
    rep = validate_lie2(L2)
    if not rep.ok:
        raise LAError("Lie 2-algebra check fails: " + "; ".join(rep.lines()[:5]))
    return L2


@dataclass(frozen=True, eq=False)
class HLie:
    H0: LieAlg
    H1: LieAlg


def H_lie_algebras(X: XMod) -> HLie:
    """Brackets on H⁰ = ker ∂ (abelian) and H¹ = coker ∂, in the canonical cohomology bases."""
    K = X.complex
    H0 = restrict(X.g, K.H0)
    if not is_abelian(H0):
        raise LAError("ker ∂ is not abelian")
    Qt = K.H1
    im = K.image
    for u in X.g.basis():
        du = mul(X.partial, u)
        for Y in X.h.basis():
            if not im.contains(X.h.bracket(Y, du)):
                raise LAError("im ∂ is not an ideal")
    H1 = quotient(X.h, Qt)
    reps = [Qt.representative(unit_vector(Qt.dim, i)) for i in range(Qt.dim)]
    for i, a in enumerate(reps):
        for j, b in enumerate(reps):
            for u in X.g.basis():
                moved = Qt.classify(X.h.bracket(a + mul(X.partial, u), b))
                if not equal(moved, H1.consts[i, j]):
                    raise LAError(f"H¹ bracket depends on the representative at ({i},{j})")
    return HLie(H0, H1)


# -- constructions -------------------------------------------------------------------

def _crossed_fiber(X: XMod, beta: Matrix) -> LieAlg:
    """Bracket on C ⊕ E over an arrow acting by β on the side: the semidirect bracket twisted by β."""
    n = X.g.dim

    def br(a, b):
        c1, e1 = a[:n], a[n:]
        c2, e2 = b[:n], b[n:]
        top = (X.g.bracket(c1, c2) + mul(X.act(mul(beta, e1)), c2) - mul(X.act(mul(beta, e2)), c1))
        return np.concatenate([top, X.h.bracket(e1, e2)])

    return from_bracket(n + X.h.dim, br)


def group_action_la(group: Group, points, act, X: XMod,
                    autos: Mapping[str, tuple[Matrix, Matrix]]) -> LAGroupoid:
    """A finite group acting on a set and on a crossed module by automorphisms (α, β).

    The result lives over the action groupoid with C = g, E = h at every point,
    Δ^C = α, Δ^E = β and Ω = 0.  With g = 0 this is a group acting on a Lie
    algebra bundle; with a trivial group on one point it is a Lie 2-algebra.
    """
    for a in group.elements:
        for b in group.elements:
            ab = group.mul(a, b)
            if not (equal(autos[ab][0], mul(autos[a][0], autos[b][0]))
                    and equal(autos[ab][1], mul(autos[a][1], autos[b][1]))):
                raise ValueError(f"automorphisms do not form an action at ({a},{b})")
    G = action_groupoid(group, points, act)
    elem = {f"{a}.{x}": a for a in group.elements for x in G.objects}
    C = {x: X.g.dim for x in G.objects}
    E = {x: X.h.dim for x in G.objects}
    R = RepUTH(G, C, E, {x: X.partial for x in G.objects},
               {g: autos[elem[g]][0] for g in G.arrow_ids},
               {g: autos[elem[g]][1] for g in G.arrow_ids}, {})
    side = {x: X.h for x in G.objects}
    fiber = {g: _crossed_fiber(X, autos[elem[g]][1]) for g in G.arrow_ids}
    return LAGroupoid(R, side, fiber)


def lie2_point_la(L2: Lie2Algebra) -> LAGroupoid:
    """The LA-groupoid V₁ ⇉ V₀ of a Lie 2-algebra over the one-point groupoid."""
    X = lie2_to_xmod(L2)
    P = point_groupoid()
    (x,) = P.objects
    u = P.unit[x]
    R = RepUTH(P, {x: X.g.dim}, {x: X.h.dim}, {x: X.partial},
               {u: eye(X.g.dim)}, {u: eye(X.h.dim)}, {})
    return LAGroupoid(R, {x: X.h}, {u: _crossed_fiber(X, eye(X.h.dim))})


def type1_la(G: FinGroupoid, algebras: Mapping[str, LieAlg]) -> LAGroupoid:
    """Pairs (e₁, e₂) ∈ E_{t(g)} × E_{s(g)} with the direct-sum bracket, in the split form of type1_pullback."""
    E = {x: algebras[x].dim for x in G.objects}
    R = type1_pullback(G, E)
    fiber = {}
    for g in G.arrow_ids:
        s, t = G.src(g), G.tgt(g)
        ds = direct_sum(algebras[t], algebras[s])
        if G.is_unit(g):
            n = E[s]
            # split (c, e) = (e₁ − e₂, e₂)
            P = np.concatenate([hstack([eye(n), -eye(n)], n), hstack([zeros(n, n), eye(n)], n)]) if n else zeros(0, 0)
            ds = transport(ds, P)
        fiber[g] = ds
    return LAGroupoid(R, dict(algebras), fiber)


def _fiber_change(R_old: RepUTH, g: str, PC: Mapping[str, Matrix], PE: Mapping[str, Matrix]) -> Matrix:
    G = R_old.G
    return block_diag(PC[G.tgt(g)], PE[G.src(g)])


def twist_la(L: LAGroupoid, PC: Mapping[str, Matrix], PE: Mapping[str, Matrix]) -> LAGroupoid:
    """Transport along per-object isomorphisms of C and E."""
    R = L.rep
    G = R.G
    R2 = twist_by_basis_change(R, PC, PE)
    side = {x: transport(L.side_bracket[x], PE[x]) for x in G.objects}
    fiber = {g: transport(L.fiber_bracket[g], _fiber_change(R, g, PC, PE)) for g in G.arrow_ids}
    return LAGroupoid(R2, side, fiber)


def twist_iso(L: LAGroupoid, L2: LAGroupoid, PC: Mapping[str, Matrix], PE: Mapping[str, Matrix]) -> VBMorphism:
    """The LA isomorphism L → twist_la(L, PC, PE) covering the identity."""
    return VBMorphism(L.rep, L2.rep, identity_functor(L.rep.G), dict(PC), dict(PE))


def resplit_la(L: LAGroupoid, sigma: Mapping[str, Matrix]) -> LAGroupoid:
    """Change the horizontal lift by σ; split coordinates move by (c, e) ↦ (c − σ_g e, e)."""
    R = L.rep
    R2 = resplit(R, sigma)
    fiber = {}
    for g in R.G.arrow_ids:
        nc, ne = R.dC(g), R.dE(g)
        s = sigma.get(g)
        P = eye(nc + ne)
        if s is not None:
            P[:nc, nc:] = -s
        fiber[g] = transport(L.fiber_bracket[g], P)
    return LAGroupoid(R2, dict(L.side_bracket), fiber)


def _interleave(n1c: int, n2c: int, n1e: int, n2e: int) -> Matrix:
    """(c1, e1, c2, e2) ↦ (c1, c2, e1, e2)."""
    n = n1c + n2c + n1e + n2e
    src = list(range(n1c)) + list(range(n1c + n1e, n1c + n1e + n2c)) + \
        list(range(n1c, n1c + n1e)) + list(range(n1c + n1e + n2c, n))
    P = zeros(n, n)
    for i, j in enumerate(src):
        P[i, j] = 1
    return P


def direct_sum_la(L1: LAGroupoid, L2: LAGroupoid) -> LAGroupoid:
    R1, R2 = L1.rep, L2.rep
    R = rep_direct_sum(R1, R2)
    G = R.G
    side = {x: direct_sum(L1.side_bracket[x], L2.side_bracket[x]) for x in G.objects}
    fiber = {}
    for g in G.arrow_ids:
        P = _interleave(R1.dC(g), R2.dC(g), R1.dE(g), R2.dE(g))
        fiber[g] = transport(direct_sum(L1.fiber_bracket[g], L2.fiber_bracket[g]), P)
    return LAGroupoid(R, side, fiber)


@dataclass(frozen=True, eq=False)
class LAPullback:
    la: LAGroupoid
    pullback: PullbackRep

    def projection(self) -> VBMorphism:
        return self.pullback.projection()


def pullback_la(L: LAGroupoid, phi: GroupoidFunctor) -> LAPullback:
    """φ*L: fibers over g are those of L over φ(g)."""
    P = pullback_rep(L.rep, phi)
    G = phi.source
    side = {x: L.side_bracket[phi.obj(x)] for x in G.objects}
    fiber = {g: L.fiber_bracket[phi(g)] for g in G.arrow_ids}
    return LAPullback(LAGroupoid(P.rep, side, fiber), P)


# -- LA-Morita maps and the zig-zag of crossed modules ----------------------------------------

def la_morphism_violations(F: VBMorphism, L1: LAGroupoid, L2: LAGroupoid) -> list[str]:
    R1 = L1.rep
    G = R1.G
    out = []
    for x in G.objects:
        for v in morphism_violations(F.on_E[x], L1.side_bracket[x], L2.side_bracket[F.base.obj(x)]):
            out.append(f"side {x} {v}")
    for g in G.arrow_ids:
        M = block_diag(F.on_C[G.tgt(g)], F.on_E[G.src(g)])
        for v in morphism_violations(M, L1.fiber_bracket[g], L2.fiber_bracket[F.base(g)]):
            out.append(f"fiber {g} {v}")
    return out


def is_la_morita(F: VBMorphism, L1: LAGroupoid, L2: LAGroupoid) -> tuple[bool, Report]:
    rep = Report()
    if F.source is not L1.rep or F.target is not L2.rep:
        raise ValueError("morphism does not connect the given LA-groupoids")
    rep.extend(validate_vb_morphism(F), "vb ")
    for v in la_morphism_violations(F, L1, L2):
        rep.fail("fiberwise Lie morphism", v)
    ok, mrep = is_vb_morita(F)
    if not ok:
        rep.extend(mrep, "morita ")
    return rep.ok, rep


@dataclass(frozen=True, eq=False)
class ProjectableXMod:
    sub: XMod
    inclusion: XModMorphism
    push: XModMorphism


def projectable_xmod(F: VBMorphism, Xs: XModOfSections, Xt: XModOfSections) -> ProjectableXMod:
    """The sub crossed module of projectable sections, with its inclusion and Φ_*."""
    PC = projectable_complex(F)
    P0, P1 = PC.deg0.matrix(), PC.deg1.matrix()
    g = restrict(Xs.g, PC.deg0)
    h = restrict(Xs.h, PC.deg1)
    try:
        phi = tuple(PC.deg0.coordinate_matrix(mul(Xs.act(V), P0)) for V in PC.deg1.basis)
    except ValueError:
        raise LAError("projectable core sections are not closed under D of projectable sections") from None
    sub = XMod(g, h, PC.complex.d, phi)
    rep = validate_xmod(sub)
    if not rep.ok:
        raise LAError("projectable sections do not form a crossed module: " + "; ".join(rep.lines()[:3]))
    inc = XModMorphism(sub, Xs, P0, P1)
    cm = project_sections(PC)
    push = XModMorphism(sub, Xt, cm.f0, cm.f1)
    for name, m in (("inclusion", inc), ("push-forward", push)):
        r = validate_xmod_morphism(m)
        if not r.ok:
            raise LAError(f"{name} is not a crossed-module morphism: " + "; ".join(r.lines()[:3]))
        if not m.chain_map.is_quasi_iso():
            raise LAError(f"{name} is not a quasi-isomorphism")
    return ProjectableXMod(sub, inc, push)


@dataclass(frozen=True, eq=False)
class LAMoritaResult:
    zigzag: DerivedZigZag
    source: XModOfSections
    target: XModOfSections
    h0: Matrix
    h1: Matrix
    H_source: HLie
    H_target: HLie


def la_morita_zigzag(Phi: VBMorphism, Psi: VBMorphism, LW: LAGroupoid, LV: LAGroupoid,
                     LV2: LAGroupoid) -> LAMoritaResult:
    """H(V) ← H(W^Φ) → H(W) ← H(W^Ψ) → H(V′) for LA-Morita maps Φ: W → V, Ψ: W → V′."""
    for name, F, L2 in (("Φ", Phi, LV), ("Ψ", Psi, LV2)):
        ok, rep = is_la_morita(F, LW, L2)
        if not ok:
            raise LAError(f"{name} is not LA-Morita: " + "; ".join(rep.lines()[:3]))
        if not surjectivity_profile(F.base).all:
            raise LAError(f"{name} is not surjective on objects, arrows and composable pairs")
    XW, XV, XV2 = crossed_module(LW), crossed_module(LV), crossed_module(LV2)
    A = projectable_xmod(Phi, XW, XV)
    B = projectable_xmod(Psi, XW, XV2)
    Z = DerivedZigZag(((A.push, "backward"), (A.inclusion, "forward"),
                       (B.inclusion, "backward"), (B.push, "forward")))
    h0, h1 = Z.h_maps()
    Hs, Ht = H_lie_algebras(XV), H_lie_algebras(XV2)
    if not (is_invertible(h0) and is_invertible(h1)):
        raise AssertionError("zig-zag cohomology maps are not invertible")
    if not is_morphism(h0, Hs.H0, Ht.H0) or not is_morphism(h1, Hs.H1, Ht.H1):
        raise AssertionError("zig-zag cohomology maps do not intertwine the brackets")
    return LAMoritaResult(Z, XV, XV2, h0, h1, Hs, Ht)


def invariant_side_subalgebra(L: LAGroupoid) -> tuple[Subspace, LieAlg]:
    """Sections e of E with Δ^E_g e_{s(g)} = e_{t(g)} for all g, with the pointwise bracket."""
    R = L.rep
    G = R.G
    off, o = {}, 0
    for x in G.objects:
        off[x] = o
        o += R.E[x]
    n = o
    S = Subspace.full(n)
    for g in G.arrow_ids:
        s, t = G.src(g), G.tgt(g)
        A = zeros(R.E[t], n)
        A[:, off[s]:off[s] + R.E[s]] += R.deltaE[g]
        A[:, off[t]:off[t] + R.E[t]] -= eye(R.E[t])
        S = S.intersection(kernel_basis(A))
    total = direct_sum(*[L.side_bracket[x] for x in G.objects])
    return S, restrict(total, S)


def section_side_values(K: SectionComplex, coords: Vector) -> Vector:
    """The side part e of the section with the given Γ_mult coordinates, objects concatenated."""
    s = K.section(coords)
    G = K.rep.G
    return np.concatenate([s.e[x] for x in G.objects]) if G.objects else zvec(0)


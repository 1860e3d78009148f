"""Multiplicative sections of a split VB-groupoid and the complex δ: Γ(C) → Γ_mult.

A multiplicative section is a pair (κ, e): the arrow over g is (κ(g), g, e(s(g))).
Ambient coordinates list κ(g) ∈ C_{t(g)} for every arrow (units included, in
sorted order) followed by e(x) ∈ Eₓ for every object.  Core sections Γ(C) use
one block per object.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping

from .complexes import TwoTermComplex
from .ratkernel import (
    EchelonBasis,
    Matrix,
    Quotient,
    Subspace,
    Vector,
    equal,
    is_zero,
    kernel_from_echelon,
    mul,
    solve,
    vec,
    zeros,
    zvec,
)
from .vbgroupoid import (
    RepUTH,
    VBArrow,
    core_arrow,
    vb_inv,
    vb_mul,
    vb_source,
    vb_target,
    zero_arrow,
)


@dataclass(frozen=True, eq=False)
class MultSection:
    kappa: Mapping[str, Vector]
    e: Mapping[str, Vector]

    def arrow(self, g: str, R: RepUTH) -> VBArrow:
        return VBArrow(self.kappa[g], g, self.e[R.G.src(g)])

    def full(self, R: RepUTH) -> dict[str, VBArrow]:
        return {g: self.arrow(g, R) for g in R.G.arrow_ids}


class Layout:
    """Block offsets of the ambient space and of Γ(C)."""

    def __init__(self, R: RepUTH):
        G = R.G
        self.R = R
        off = 0
        self.kappa: dict[str, tuple[int, int]] = {}
        for g in G.arrow_ids:
            self.kappa[g] = (off, R.dC(g))
            off += R.dC(g)
        self.e: dict[str, tuple[int, int]] = {}
        for x in G.objects:
            self.e[x] = (off, R.E[x])
            off += R.E[x]
        self.ambient_dim = off
        off = 0
        self.core: dict[str, tuple[int, int]] = {}
        for x in G.objects:
            self.core[x] = (off, R.C[x])
            off += R.C[x]
        self.core_dim = off

    def encode(self, s: MultSection) -> Vector:
        v = zvec(self.ambient_dim)
        for g, (o, n) in self.kappa.items():
            v[o:o + n] = s.kappa[g]
        for x, (o, n) in self.e.items():
            v[o:o + n] = s.e[x]
        return v

    def decode(self, v) -> MultSection:
        v = vec(v)
        return MultSection({g: v[o:o + n] for g, (o, n) in self.kappa.items()},
                           {x: v[o:o + n] for x, (o, n) in self.e.items()})

    def encode_core(self, c: Mapping[str, Vector]) -> Vector:
        v = zvec(self.core_dim)
        for x, (o, n) in self.core.items():
            v[o:o + n] = c[x]
        return v

    def decode_core(self, v) -> dict[str, Vector]:
        v = vec(v)
        return {x: v[o:o + n] for x, (o, n) in self.core.items()}


def section_violations(s: MultSection, R: RepUTH) -> list[str]:
    """Every failed MultSection condition, by name and witness."""
    G = R.G
    out = []
    for g in G.arrow_ids:
        t = G.tgt(g)
        lhs = mul(R.d(t), s.kappa[g]) + mul(R.deltaE[g], s.e[G.src(g)])
        if not equal(lhs, s.e[t]):
            out.append(f"target {g}")
    for g, h in G.pairs:
        rhs = s.kappa[g] + mul(R.deltaC[g], s.kappa[h]) - mul(R.Om(g, h), s.e[G.src(h)])
        if not equal(s.kappa[G.mul(g, h)], rhs):
            out.append(f"cocycle ({g},{h})")
    for x in G.objects:
        if not is_zero(s.kappa[G.unit[x]]):
            out.append(f"unit {x}")
    return out


def _add_block(row: dict[int, object], off: int, coeffs) -> None:
    for j, a in enumerate(coeffs):
        if a:
            row[off + j] = row.get(off + j, 0) + a


def constraint_rows(R: RepUTH, L: Layout):
    """Rows of the linear system cut out by the target and cocycle conditions."""
    G = R.G
    n = L.ambient_dim
    for g in G.arrow_ids:
        s, t = G.src(g), G.tgt(g)
        ko, _ = L.kappa[g]
        so, _ = L.e[s]
        to, _ = L.e[t]
        dt, de = R.d(t), R.deltaE[g]
        for i in range(R.E[t]):
            row: dict[int, object] = {}
            _add_block(row, ko, dt[i])
            _add_block(row, so, de[i])
            _add_block(row, to, [-1 if j == i else 0 for j in range(R.E[t])])
            yield row, n
    for g, h in G.pairs:
        gh = G.mul(g, h)
        om = R.Om(g, h)
        dc = R.deltaC[g]
        eo, _ = L.e[G.src(h)]
        for i in range(R.C[G.tgt(g)]):
            row = {}
            m = R.C[G.tgt(g)]
            _add_block(row, L.kappa[gh][0], [1 if j == i else 0 for j in range(m)])
            _add_block(row, L.kappa[g][0], [-1 if j == i else 0 for j in range(m)])
            _add_block(row, L.kappa[h][0], -dc[i])
            _add_block(row, eo, om[i])
            yield row, n


@dataclass(frozen=True, eq=False)
class MultSectionSpace:
    rep: RepUTH
    layout: Layout
    space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim

    def basis_sections(self) -> list[MultSection]:
        return [self.layout.decode(b) for b in self.space.basis]

    def contains(self, s: MultSection) -> bool:
        return self.space.contains(self.layout.encode(s))


def solve_mult_sections(R: RepUTH) -> MultSectionSpace:
    L = Layout(R)
    eb = EchelonBasis(L.ambient_dim)
    for row, n in constraint_rows(R, L):
        dense = [0] * n
        for j, a in row.items():
            dense[j] = a
        eb.add(dense)
    space = kernel_from_echelon(eb)
    M = MultSectionSpace(R, L, space)
    for s in M.basis_sections():
        for x in R.G.objects:
            if not is_zero(s.kappa[R.G.unit[x]]):
                raise AssertionError("a multiplicative section is nonzero on a unit arrow")
        for g in R.G.arrow_ids:
            gi = R.G.inv[g]
            if vb_inv(s.arrow(g, R), R) != s.arrow(gi, R):
                raise AssertionError("a multiplicative section does not respect inverses")
    return M


@dataclass(frozen=True, eq=False)
class SectionComplex:
    rep: RepUTH
    deg1: MultSectionSpace
    delta_ambient: Matrix   # Γ(C) coordinates -> ambient coordinates
    delta: Matrix           # Γ(C) coordinates -> Γ_mult coordinates

    @property
    def layout(self) -> Layout:
        return self.deg1.layout

    @property
    def deg0_dim(self) -> int:
        return self.layout.core_dim

    @cached_property
    def complex(self) -> TwoTermComplex:
        return TwoTermComplex(self.delta)

    def coords(self, s: MultSection) -> Vector:
        c = self.deg1.space.coordinates(self.layout.encode(s))
        if c is None:
            raise ValueError("section is not multiplicative")
        return c

    def section(self, coords) -> MultSection:
        return self.layout.decode(mul(self.deg1.space.matrix(), vec(coords)))

    def delta_of(self, c: Mapping[str, Vector]) -> MultSection:
        return delta_section(c, self.rep)


def delta_section(c: Mapping[str, Vector], R: RepUTH) -> MultSection:
    """δ(c) = c^r − c^l: κ(g) = c_{t(g)} − Δ^C_g c_{s(g)}, e(x) = ∂cₓ."""
    G = R.G
    kappa = {g: c[G.tgt(g)] - mul(R.deltaC[g], c[G.src(g)]) for g in G.arrow_ids}
    e = {x: mul(R.d(x), c[x]) for x in G.objects}
    return MultSection(kappa, e)


def build_complex(R: RepUTH, space: MultSectionSpace | None = None) -> SectionComplex:
    M = space or solve_mult_sections(R)
    L = M.layout
    n0 = L.core_dim
    D = zeros(L.ambient_dim, n0)
    Dc = zeros(M.dim, n0)
    for j in range(n0):
        basis_c = zvec(n0)
        basis_c[j] = 1
        s = delta_section(L.decode_core(basis_c), R)
        bad = section_violations(s, R)
        if bad:
            raise AssertionError(f"δ of a core basis section is not multiplicative: {bad[:3]}")
        v = L.encode(s)
        coords = M.space.coordinates(v)
        if coords is None:
            raise AssertionError("δ of a core basis section left the solved section space")
        D[:, j] = v
        Dc[:, j] = coords
    return SectionComplex(R, M, D, Dc)


def invariant_core(R: RepUTH) -> Subspace:
    """{c ∈ Γ(C) : c_{t(g)} = Δ^C_g c_{s(g)} for all g, ∂c = 0}, solved directly."""
    L = Layout(R)
    G = R.G
    eb = EchelonBasis(L.core_dim)
    for g in G.arrow_ids:
        so, sn = L.core[G.src(g)]
        to, tn = L.core[G.tgt(g)]
        for i in range(tn):
            row: dict[int, object] = {}
            _add_block(row, to, [1 if j == i else 0 for j in range(tn)])
            _add_block(row, so, -R.deltaC[g][i])
            eb.add([row.get(j, 0) for j in range(L.core_dim)])
    for x in G.objects:
        o, _ = L.core[x]
        for i in range(R.E[x]):
            row = {}
            _add_block(row, o, R.d(x)[i])
            eb.add([row.get(j, 0) for j in range(L.core_dim)])
    return kernel_from_echelon(eb)


@dataclass(frozen=True, eq=False)
class Cohomology:
    H0: Subspace        # inside Γ(C) coordinates
    H1: Quotient        # quotient of Γ_mult coordinates by im δ
    invariant_core: Subspace

    @property
    def dims(self) -> tuple[int, int]:
        return self.H0.dim, self.H1.dim


def cohomology(K: SectionComplex) -> Cohomology:
    H0 = K.complex.H0
    inv = invariant_core(K.rep)
    if H0 != inv:
        raise AssertionError("ker δ differs from the directly computed invariant core sections")
    return Cohomology(H0, K.complex.H1, inv)


# -- the 2-vector space of sections ----------------------------------------------

@dataclass(frozen=True, eq=False)
class SecMorphism:
    """A morphism from V to V + δ(c0); the side part of τ is the object section of V."""

    c0: Vector         # Γ(C) coordinates
    source: Vector     # ambient coordinates of a multiplicative section


class TwoVectorSpace:
    """Objects are multiplicative sections; morphisms are pairs (c, V)."""

    def __init__(self, K: SectionComplex):
        self.K = K

    def src(self, m: SecMorphism) -> Vector:
        return m.source

    def tgt(self, m: SecMorphism) -> Vector:
        return m.source + mul(self.K.delta_ambient, m.c0)

    def identity(self, V: Vector) -> SecMorphism:
        return SecMorphism(zvec(self.K.deg0_dim), V)

    def compose(self, m1: SecMorphism, m0: SecMorphism) -> SecMorphism:
        """m1 after m0."""
        if not equal(self.tgt(m0), self.src(m1)):
            raise ValueError("morphisms do not compose: target of the first is not the source of the second")
        return SecMorphism(m1.c0 + m0.c0, m0.source)

    def tau(self, m: SecMorphism) -> dict[str, VBArrow]:
        """The natural transformation x ↦ (c0(x), 1ₓ, e0(x))."""
        R = self.K.rep
        c = self.K.layout.decode_core(m.c0)
        e = self.K.layout.decode(m.source).e
        return {x: VBArrow(c[x], R.G.unit[x], e[x]) for x in R.G.objects}

    def from_tau(self, tau: Mapping[str, VBArrow], V: Vector) -> SecMorphism:
        """Read a natural transformation out of V back as a pair (c0, V)."""
        R = self.K.rep
        L = self.K.layout
        e = L.decode(V).e
        for x in R.G.objects:
            if tau[x].g != R.G.unit[x] or not equal(tau[x].e, e[x]):
                raise ValueError(f"component at {x} does not start at V")
        return SecMorphism(L.encode_core({x: tau[x].c for x in R.G.objects}), V)


def is_natural(tau: Mapping[str, VBArrow], V: Mapping[str, VBArrow], W: Mapping[str, VBArrow],
               R: RepUTH) -> bool:
    """τ(t(g))·V(g) = W(g)·τ(s(g)) for every arrow g, with sources and targets matching."""
    G = R.G
    for x in G.objects:
        u = G.unit[x]
        if not equal(vb_source(tau[x]), vb_source(V[u])) or not equal(vb_target(tau[x], R), vb_source(W[u])):
            return False
    for g in G.arrow_ids:
        if vb_mul(tau[G.tgt(g)], V[g], R) != vb_mul(W[g], tau[G.src(g)], R):
            return False
    return True


def vertical_compose(sigma: Mapping[str, VBArrow], tau: Mapping[str, VBArrow], R: RepUTH) -> dict[str, VBArrow]:
    """σ after τ, componentwise in the groupoid of arrows."""
    return {x: vb_mul(sigma[x], tau[x], R) for x in R.G.objects}


def morphism_between(V: MultSection, W: MultSection, K: SectionComplex) -> Vector | None:
    """Some c0 with W = V + δ(c0), or None."""
    L = K.layout
    c0 = solve(K.delta_ambient, L.encode(W) - L.encode(V))
    if c0 is None:
        return None
    R = K.rep
    c = L.decode_core(c0)
    for x in R.G.objects:
        if not equal(W.e[x], V.e[x] + mul(R.d(x), c[x])):
            raise AssertionError("side condition of a section morphism failed")
    return c0


# -- cocycle characterisation -------------------------------------------------------

def is_linear_one_cocycle(s: Mapping[str, VBArrow], R: RepUTH) -> bool:
    """Whether s is a groupoid morphism covering some section of E."""
    G = R.G
    for g in G.arrow_ids:
        a = s[g]
        if a.g != g or len(a.c) != R.dC(g) or len(a.e) != R.dE(g):
            return False
    e = {x: s[G.unit[x]].e for x in G.objects}
    for g in G.arrow_ids:
        if not equal(vb_source(s[g]), e[G.src(g)]) or not equal(vb_target(s[g], R), e[G.tgt(g)]):
            return False
    for g, h in G.pairs:
        if vb_mul(s[g], s[h], R) != s[G.mul(g, h)]:
            return False
    return True


def dual_d0(c: Mapping[str, Vector], R: RepUTH) -> dict[str, VBArrow]:
    """c(t(g))·0_g + 0_g·c(s(g))⁻¹, evaluated through the arrow arithmetic."""
    G = R.G
    out = {}
    for g in G.arrow_ids:
        s, t = G.src(g), G.tgt(g)
        right = vb_mul(core_arrow(t, c[t], R), zero_arrow(g, R), R)
        left = vb_mul(zero_arrow(g, R), vb_inv(core_arrow(s, c[s], R), R), R)
        out[g] = right + left
    return out


def sections_report(K: SectionComplex, H: Cohomology) -> dict:
    from .ratkernel import fmt_rat
    return {
        "dim_Gamma_mult": K.deg1.dim,
        "dim_H0": H.H0.dim,
        "dim_H1": H.H1.dim,
        "H0_basis": [[fmt_rat(x) for x in b] for b in H.H0.rows],
        "H1_reps": [[fmt_rat(x) for x in K.layout.encode(K.section(r))] for r in H.H1.representatives],
    }

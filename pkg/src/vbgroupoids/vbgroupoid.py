"""Split VB-groupoids given by 2-term representations up to homotopy.

A rep over a finite groupoid G carries a core bundle C and a side bundle E,
with ∂ₓ: Cₓ → Eₓ, quasi-actions Δ^C_g, Δ^E_g and a curvature
Ω_{g,h}: E_{s(h)} → C_{t(g)}.  Arrows of the induced VB-groupoid are triples
(c, g, e) with c ∈ C_{t(g)} and e ∈ E_{s(g)}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Generic, Mapping, TypeVar

from .complexes import inverse
from .fingroupoid import FinGroupoid, GroupoidFunctor, Report, validate_functor
from .ratkernel import (
    Matrix,
    Vector,
    block_diag,
    equal,
    eye,
    is_zero,
    mul,
    rank,
    unit_vector,
    zeros,
    zvec,
)

VecBundle = Mapping[str, int]


@dataclass(frozen=True, eq=False)
class RepUTH:
    G: FinGroupoid
    C: Mapping[str, int]
    E: Mapping[str, int]
    partial: Mapping[str, Matrix]
    deltaC: Mapping[str, Matrix]
    deltaE: Mapping[str, Matrix]
    omega: Mapping[tuple[str, str], Matrix] = field(default_factory=dict)

    def dC(self, g: str) -> int:
        """Dimension of C at the target of g."""
        return self.C[self.G.tgt(g)]

    def dE(self, g: str) -> int:
        """Dimension of E at the source of g."""
        return self.E[self.G.src(g)]

    def Om(self, g: str, h: str) -> Matrix:
        m = self.omega.get((g, h))
        if m is None:
            return zeros(self.C[self.G.tgt(g)], self.E[self.G.src(h)])
        return m

    def d(self, x: str) -> Matrix:
        return self.partial[x]


def check_shapes(R: RepUTH) -> None:
    """Raise ValueError on any shape mismatch."""
    G = R.G
    for x in G.objects:
        if x not in R.C or x not in R.E:
            raise ValueError(f"bundle dimension missing at {x}")
        if R.partial[x].shape != (R.E[x], R.C[x]):
            raise ValueError(f"partial at {x} has shape {R.partial[x].shape}")
    for g in G.arrow_ids:
        s, t = G.src(g), G.tgt(g)
        if R.deltaC[g].shape != (R.C[t], R.C[s]):
            raise ValueError(f"deltaC at {g} has shape {R.deltaC[g].shape}")
        if R.deltaE[g].shape != (R.E[t], R.E[s]):
            raise ValueError(f"deltaE at {g} has shape {R.deltaE[g].shape}")
    for (g, h), m in R.omega.items():
        if (g, h) not in G.compose:
            raise ValueError(f"omega given on non-composable pair ({g},{h})")
        if m.shape != (R.C[G.tgt(g)], R.E[G.src(h)]):
            raise ValueError(f"omega at ({g},{h}) has shape {m.shape}")


def validate_rep(R: RepUTH) -> Report:
    check_shapes(R)
    G = R.G
    rep = Report()
    for x in G.objects:
        u = G.unit[x]
        if not equal(R.deltaC[u], eye(R.C[x])):
            rep.fail("deltaC unital", x)
        if not equal(R.deltaE[u], eye(R.E[x])):
            rep.fail("deltaE unital", x)
    for (g, h), m in R.omega.items():
        if (G.is_unit(g) or G.is_unit(h)) and not is_zero(m):
            rep.fail("omega normalized", f"({g},{h})")
    for g in G.arrow_ids:
        s, t = G.src(g), G.tgt(g)
        if not equal(mul(R.deltaE[g], R.d(s)), mul(R.d(t), R.deltaC[g])):
            rep.fail("delta commutes with partial", g)
    for g, h in G.pairs:
        gh = G.mul(g, h)
        s = G.src(h)
        om = R.Om(g, h)
        if not is_zero(mul(R.deltaC[g], R.deltaC[h]) - R.deltaC[gh] + mul(om, R.d(s))):
            rep.fail("deltaC curvature", f"({g},{h})")
        if not is_zero(mul(R.deltaE[g], R.deltaE[h]) - R.deltaE[gh] + mul(R.d(G.tgt(g)), om)):
            rep.fail("deltaE curvature", f"({g},{h})")
    for g1, g2, g3 in G.triples():
        lhs = (mul(R.deltaC[g1], R.Om(g2, g3)) - R.Om(G.mul(g1, g2), g3)
               + R.Om(g1, G.mul(g2, g3)) - mul(R.Om(g1, g2), R.deltaE[g3]))
        if not is_zero(lhs):
            rep.fail("omega cocycle", f"({g1},{g2},{g3})")
    return rep


# -- arithmetic of the induced groupoid ---------------------------------------

@dataclass(frozen=True, eq=False)
class VBArrow:
    c: Vector
    g: str
    e: Vector

    def __add__(self, other: "VBArrow") -> "VBArrow":
        if other.g != self.g:
            raise ValueError("adding arrows over different base arrows")
        return VBArrow(self.c + other.c, self.g, self.e + other.e)

    def __sub__(self, other: "VBArrow") -> "VBArrow":
        return self + other.scale(-1)

    def scale(self, a) -> "VBArrow":
        return VBArrow(self.c * a, self.g, self.e * a)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, VBArrow) and self.g == other.g
                and equal(self.c, other.c) and equal(self.e, other.e))

    def __repr__(self) -> str:
        return f"VBArrow({[str(x) for x in self.c]}, {self.g}, {[str(x) for x in self.e]})"


def vb_source(a: VBArrow) -> Vector:
    return a.e


def vb_target(a: VBArrow, R: RepUTH) -> Vector:
    t = R.G.tgt(a.g)
    return mul(R.d(t), a.c) + mul(R.deltaE[a.g], a.e)


def vb_mul(a1: VBArrow, a2: VBArrow, R: RepUTH) -> VBArrow:
    G = R.G
    if G.src(a1.g) != G.tgt(a2.g):
        raise ValueError(f"base arrows {a1.g}, {a2.g} are not composable")
    if not equal(vb_source(a1), vb_target(a2, R)):
        raise ValueError("source of the first arrow differs from target of the second")
    c = a1.c + mul(R.deltaC[a1.g], a2.c) - mul(R.Om(a1.g, a2.g), a2.e)
    return VBArrow(c, G.mul(a1.g, a2.g), a2.e)


def vb_inv(a: VBArrow, R: RepUTH) -> VBArrow:
    G = R.G
    gi = G.inv[a.g]
    c = -mul(R.deltaC[gi], a.c) + mul(R.Om(gi, a.g), a.e)
    return VBArrow(c, gi, vb_target(a, R))


def vb_unit(x: str, e: Vector, R: RepUTH) -> VBArrow:
    return VBArrow(zvec(R.C[x]), R.G.unit[x], e)


def zero_arrow(g: str, R: RepUTH) -> VBArrow:
    return VBArrow(zvec(R.dC(g)), g, zvec(R.dE(g)))


def core_arrow(x: str, c: Vector, R: RepUTH) -> VBArrow:
    """The core element c ∈ Cₓ as an arrow over the unit at x."""
    return VBArrow(c, R.G.unit[x], zvec(R.E[x]))


def right_invariant(c: Mapping[str, Vector], R: RepUTH) -> dict[str, VBArrow]:
    G = R.G
    return {g: VBArrow(c[G.tgt(g)], g, zvec(R.dE(g))) for g in G.arrow_ids}


def left_invariant(c: Mapping[str, Vector], R: RepUTH) -> dict[str, VBArrow]:
    G = R.G
    return {g: VBArrow(mul(R.deltaC[g], c[G.src(g)]), g, -mul(R.d(G.src(g)), c[G.src(g)]))
            for g in G.arrow_ids}


def fiber_basis(g: str, R: RepUTH) -> list[VBArrow]:
    """Basis of the fiber over g: core directions first, then side directions."""
    nc, ne = R.dC(g), R.dE(g)
    return ([VBArrow(unit_vector(nc, i), g, zvec(ne)) for i in range(nc)]
            + [VBArrow(zvec(nc), g, unit_vector(ne, i)) for i in range(ne)])


def check_induced_groupoid(R: RepUTH) -> Report:
    """Groupoid laws of the arrow arithmetic on basis-decorated composable arrows.

    A composable triple a1, a2, a3 over (g1, g2, g3) is pinned down by the free
    data (c1, c2, c3, e3); since every law is linear in that data, it suffices
    to let one of them run through a basis while the others vanish.
    """
    G = R.G
    rep = Report()

    def law(name, where, check):
        # a failed composability test is itself a broken law (source/target not multiplicative)
        try:
            ok = check()
        except ValueError:
            rep.fail(name + " (arrows not composable)", where)
            return False
        if not ok:
            rep.fail(name, where)
        return ok

    for g in G.arrow_ids:
        s, t = G.src(g), G.tgt(g)
        gi = G.inv[g]
        for a in fiber_basis(g, R):
            law("right unit", g, lambda: vb_mul(a, vb_unit(s, a.e, R), R) == a)
            law("left unit", g, lambda: vb_mul(vb_unit(t, vb_target(a, R), R), a, R) == a)
            ai = vb_inv(a, R)
            law("right inverse", g,
                lambda: ai.g == gi and vb_mul(a, ai, R) == vb_unit(t, vb_target(a, R), R))
            law("left inverse", g, lambda: vb_mul(ai, a, R) == vb_unit(s, a.e, R))
    for g1, g2, g3 in G.triples():
        dims = [R.dC(g1), R.dC(g2), R.dC(g3), R.dE(g3)]
        n = sum(dims)
        if n == 0:
            continue
        # column j of each block is the j-th basis vector of the free data; the
        # arithmetic is linear, so one matrix pass covers the whole basis
        free = eye(n)
        blocks, off = [], 0
        for m in dims:
            blocks.append(free[off:off + m, :])
            off += m
        a3 = VBArrow(blocks[2], g3, blocks[3])
        a2 = VBArrow(blocks[1], g2, vb_target(a3, R))
        a1 = VBArrow(blocks[0], g1, vb_target(a2, R))
        law("associativity", f"({g1},{g2},{g3})",
            lambda: vb_mul(vb_mul(a1, a2, R), a3, R) == vb_mul(a1, vb_mul(a2, a3, R), R))
    return rep


# -- extracting split data from a concretely given VB-groupoid ----------------

T = TypeVar("T")


@dataclass
class TotalArithmetic(Generic[T]):
    """A VB-groupoid over G known only through its arithmetic.

    ``lift(g, e)`` must be a linear splitting of the source map that reduces to
    the unit map at unit arrows; ``core_at(x, c)`` embeds the core at x as
    arrows over the unit; ``core_coords(g, v)`` reads off coordinates of a
    source-zero element v over g in some fixed basis of that kernel.
    Elements must support ``+`` and ``-``.
    """

    G: FinGroupoid
    C: Mapping[str, int]
    E: Mapping[str, int]
    lift: Callable[[str, Vector], T]
    core_at: Callable[[str, Vector], T]
    zero: Callable[[str], T]
    mul: Callable[[T, T], T]
    source: Callable[[T], Vector]
    target: Callable[[T], Vector]
    core_coords: Callable[[str, T], Vector]


def split_from_total(V: TotalArithmetic) -> tuple[RepUTH, Callable]:
    """The rep induced by a horizontal lift, together with the map back to split coordinates.

    Returns ``(R, to_split)`` where ``to_split(g, v)`` gives the VBArrow of R
    corresponding to a total element v over g.
    """
    G = V.G

    def basis(n):
        return [unit_vector(n, i) for i in range(n)]

    def cols(vs, n):
        out = zeros(n, len(vs))
        for j, v in enumerate(vs):
            out[:, j] = v
        return out

    # right translation r_g(c) = c · 0_g, as a matrix from C_{t(g)} to core coordinates over g
    rinv = {}
    for g in G.arrow_ids:
        t = G.tgt(g)
        r = cols([V.core_coords(g, V.mul(V.core_at(t, c), V.zero(g))) for c in basis(V.C[t])], V.C[t])
        rinv[g] = inverse(r)

    def to_split(g, v):
        e = V.source(v)
        k = v - V.lift(g, e)
        if not is_zero(V.source(k)):
            raise ValueError("lift is not a splitting of the source map")
        return VBArrow(mul(rinv[g], V.core_coords(g, k)), g, e)

    partial = {x: cols([V.target(V.core_at(x, c)) for c in basis(V.C[x])], V.E[x]) for x in G.objects}
    deltaE, deltaC = {}, {}
    for g in G.arrow_ids:
        s, t = G.src(g), G.tgt(g)
        deltaE[g] = cols([V.target(V.lift(g, e)) for e in basis(V.E[s])], V.E[t])
        cs = []
        for c in basis(V.C[s]):
            a = to_split(g, V.mul(V.lift(g, mul(partial[s], c)), V.core_at(s, c)))
            if not is_zero(a.e):
                raise ValueError("core translation left the kernel of the source")
            cs.append(a.c)
        deltaC[g] = cols(cs, V.C[t])
    omega = {}
    for g, h in G.pairs:
        if G.is_unit(g) or G.is_unit(h):
            continue
        s = G.src(h)
        cs = []
        for e in basis(V.E[s]):
            prod = V.mul(V.lift(g, mul(deltaE[h], e)), V.lift(h, e))
            a = to_split(G.mul(g, h), prod)
            cs.append(-a.c)
        m = cols(cs, V.C[G.tgt(g)])
        if not is_zero(m):
            omega[(g, h)] = m
    R = RepUTH(G, dict(V.C), dict(V.E), partial, deltaC, deltaE, omega)
    return R, to_split


def resplit(R: RepUTH, sigma: Mapping[str, Matrix]) -> RepUTH:
    """Change of horizontal lift: the new lift over g sends e to (σ_g e, g, e).

    σ_g: E_{s(g)} → C_{t(g)} must vanish on units (omitted entries are zero).
    """
    G = R.G

    def sig(g):
        m = sigma.get(g)
        return zeros(R.dC(g), R.dE(g)) if m is None else m

    for u in G.unit_arrows:
        if not is_zero(sig(u)):
            raise ValueError("lift change must vanish on units")
    V = TotalArithmetic(
        G, R.C, R.E,
        lift=lambda g, e: VBArrow(mul(sig(g), e), g, e),
        core_at=lambda x, c: core_arrow(x, c, R),
        zero=lambda g: zero_arrow(g, R),
        mul=lambda a, b: vb_mul(a, b, R),
        source=vb_source,
        target=lambda a: vb_target(a, R),
        core_coords=lambda g, a: a.c,
    )
    return split_from_total(V)[0]


# -- regular types -------------------------------------------------------------

def type1_pullback(G: FinGroupoid, E: VecBundle) -> RepUTH:
    """Split form of the VB-groupoid whose arrows over g are pairs (e1, e2) ∈ E_{t(g)} × E_{s(g)}.

    Uses the lift e ↦ (0, e) off units, so Δ_g is the identity on units and 0
    elsewhere, and Ω_{g,h} = Δ_{gh} − Δ_g Δ_h.
    """
    C = dict(E)
    partial = {x: eye(E[x]) for x in G.objects}
    delta = {g: (eye(E[G.src(g)]) if G.is_unit(g) else zeros(E[G.tgt(g)], E[G.src(g)]))
             for g in G.arrow_ids}
    omega = {(g, h): eye(E[G.src(h)]) for g, h in G.pairs
             if G.is_unit(G.mul(g, h)) and not G.is_unit(g) and not G.is_unit(h) and E[G.src(h)]}
    return RepUTH(G, C, dict(E), partial, dict(delta), dict(delta), omega)


@dataclass(frozen=True, eq=False)
class PairArrow:
    """Arrow (e1, g, e2) of the VB-groupoid with source e2 and target e1."""

    e1: Vector
    g: str
    e2: Vector

    def __add__(self, o):
        return PairArrow(self.e1 + o.e1, self.g, self.e2 + o.e2)

    def __sub__(self, o):
        return PairArrow(self.e1 - o.e1, self.g, self.e2 - o.e2)


def pair_vb_arithmetic(G: FinGroupoid, E: VecBundle) -> TotalArithmetic:
    """Arithmetic of the VB-groupoid with arrows (e1, g, e2) and (e1,g,e2)(e2,h,e3) = (e1,gh,e3)."""

    def mul_(a, b):
        if not equal(a.e2, b.e1):
            raise ValueError("not composable")
        return PairArrow(a.e1, G.mul(a.g, b.g), b.e2)

    def lift(g, e):
        return PairArrow(e if G.is_unit(g) else zvec(E[G.tgt(g)]), g, e)

    return TotalArithmetic(
        G, dict(E), dict(E), lift=lift,
        core_at=lambda x, c: PairArrow(c, G.unit[x], zvec(E[x])),
        zero=lambda g: PairArrow(zvec(E[G.tgt(g)]), g, zvec(E[G.src(g)])),
        mul=mul_, source=lambda a: a.e2, target=lambda a: a.e1,
        core_coords=lambda g, a: a.e1,
    )


def type0_rep(G: FinGroupoid, C: VecBundle, E: VecBundle, deltaC: Mapping[str, Matrix],
              deltaE: Mapping[str, Matrix], omega: Mapping[tuple[str, str], Matrix] | None = None) -> RepUTH:
    """Rep with ∂ = 0; validate_rep then forces Δ^C and Δ^E to be honest representations."""
    partial = {x: zeros(E[x], C[x]) for x in G.objects}
    return RepUTH(G, dict(C), dict(E), partial, dict(deltaC), dict(deltaE), dict(omega or {}))


def honest_rep(G: FinGroupoid, E: VecBundle, delta: Mapping[str, Matrix]) -> RepUTH:
    """A representation of G on E viewed as a rep with zero core."""
    C = {x: 0 for x in G.objects}
    return type0_rep(G, C, E, {g: zeros(0, 0) for g in G.arrow_ids}, delta)


@dataclass(frozen=True)
class Regularity:
    kind: str            # "type0", "type1", "mixed" or "non-regular"
    ranks: tuple[tuple[str, int], ...]

    def __str__(self) -> str:
        if self.kind == "mixed":
            return "mixed(" + ",".join(f"{x}:{r}" for x, r in self.ranks) + ")"
        return self.kind


def is_regular(R: RepUTH) -> Regularity:
    ranks = {x: rank(R.d(x)) for x in R.G.objects}
    rk = tuple(sorted(ranks.items()))
    for comp in R.G.components:
        if len({ranks[x] for x in comp}) > 1:
            return Regularity("non-regular", rk)
    if all(r == 0 for r in ranks.values()):
        return Regularity("type0", rk)
    if all(R.C[x] == R.E[x] == ranks[x] for x in R.G.objects):
        return Regularity("type1", rk)
    return Regularity("mixed", rk)


def direct_sum(R1: RepUTH, R2: RepUTH) -> RepUTH:
    if R1.G is not R2.G:
        raise ValueError("direct sum needs the same base groupoid")
    G = R1.G
    C = {x: R1.C[x] + R2.C[x] for x in G.objects}
    E = {x: R1.E[x] + R2.E[x] for x in G.objects}
    partial = {x: block_diag(R1.d(x), R2.d(x)) for x in G.objects}
    dC = {g: block_diag(R1.deltaC[g], R2.deltaC[g]) for g in G.arrow_ids}
    dE = {g: block_diag(R1.deltaE[g], R2.deltaE[g]) for g in G.arrow_ids}
    omega = {p: block_diag(R1.Om(*p), R2.Om(*p)) for p in set(R1.omega) | set(R2.omega)}
    return RepUTH(G, C, E, partial, dC, dE, omega)


def constraint_residual(R: RepUTH, c_tilde: Mapping[str, Vector], c: Mapping[str, Vector],
                        c_prime: Mapping[str, Vector], e: Mapping[str, Vector], g: str, h: str) -> Vector:
    """c̃_{t(gh)} − c_{t(g)} − Δ^C_g c′_{t(h)} + Ω_{g,h} e_{s(h)}: the mismatch that a
    multiplicative combination of sections must cancel."""
    G = R.G
    return (c_tilde[G.tgt(G.mul(g, h))] - c[G.tgt(g)] - mul(R.deltaC[g], c_prime[G.tgt(h)])
            + mul(R.Om(g, h), e[G.src(h)]))


# -- morphisms -----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class VBMorphism:
    """Diagonal morphism covering a functor: fiberwise (c, g, e) ↦ (Φ_C c, φ(g), Φ_E e)."""

    source: RepUTH
    target: RepUTH
    base: GroupoidFunctor
    on_C: Mapping[str, Matrix]
    on_E: Mapping[str, Matrix]

    def apply(self, a: VBArrow) -> VBArrow:
        G = self.source.G
        return VBArrow(mul(self.on_C[G.tgt(a.g)], a.c), self.base(a.g), mul(self.on_E[G.src(a.g)], a.e))


def validate_vb_morphism(F: VBMorphism) -> Report:
    R1, R2, phi = F.source, F.target, F.base
    G = R1.G
    rep = Report()
    if phi.source is not G or phi.target is not R2.G:
        raise ValueError("base functor does not match the reps")
    rep.extend(validate_functor(phi), "base ")
    if not rep.ok:
        return rep
    for x in G.objects:
        y = phi.obj(x)
        if F.on_C[x].shape != (R2.C[y], R1.C[x]) or F.on_E[x].shape != (R2.E[y], R1.E[x]):
            raise ValueError(f"fiber map at {x} has the wrong shape")
        if not equal(mul(F.on_E[x], R1.d(x)), mul(R2.d(y), F.on_C[x])):
            rep.fail("partial", x)
    for g in G.arrow_ids:
        s, t = G.src(g), G.tgt(g)
        if not equal(mul(R2.deltaC[phi(g)], F.on_C[s]), mul(F.on_C[t], R1.deltaC[g])):
            rep.fail("deltaC", g)
        if not equal(mul(R2.deltaE[phi(g)], F.on_E[s]), mul(F.on_E[t], R1.deltaE[g])):
            rep.fail("deltaE", g)
    for g, h in G.pairs:
        lhs = mul(R2.Om(phi(g), phi(h)), F.on_E[G.src(h)])
        rhs = mul(F.on_C[G.tgt(g)], R1.Om(g, h))
        if not equal(lhs, rhs):
            rep.fail("omega", f"({g},{h})")
    return rep


def identity_morphism(R: RepUTH) -> VBMorphism:
    from .fingroupoid import identity_functor
    G = R.G
    return VBMorphism(R, R, identity_functor(G), {x: eye(R.C[x]) for x in G.objects},
                      {x: eye(R.E[x]) for x in G.objects})


def projection_to_summand(S: RepUTH, R1: RepUTH, R2: RepUTH, which: int) -> VBMorphism:
    """Block projection S = R1 ⊕ R2 → R1 (which=0) or → R2 (which=1)."""
    from .fingroupoid import identity_functor
    G = S.G
    tgt = (R1, R2)[which]

    def proj(d1, d2):
        m = zeros((d1, d2)[which], d1 + d2)
        off = 0 if which == 0 else d1
        for i in range((d1, d2)[which]):
            m[i, off + i] = 1
        return m

    return VBMorphism(S, tgt, identity_functor(G),
                      {x: proj(R1.C[x], R2.C[x]) for x in G.objects},
                      {x: proj(R1.E[x], R2.E[x]) for x in G.objects})


def compose_vb_morphisms(F2: VBMorphism, F1: VBMorphism) -> VBMorphism:
    from .fingroupoid import compose_functors
    G = F1.source.G
    return VBMorphism(F1.source, F2.target, compose_functors(F2.base, F1.base),
                      {x: mul(F2.on_C[F1.base.obj(x)], F1.on_C[x]) for x in G.objects},
                      {x: mul(F2.on_E[F1.base.obj(x)], F1.on_E[x]) for x in G.objects})


def twist_by_basis_change(R: RepUTH, PC: Mapping[str, Matrix], PE: Mapping[str, Matrix]) -> RepUTH:
    """Transport R along per-object isomorphisms PC_x: C_x → C'_x and PE_x: E_x → E'_x."""
    G = R.G
    iC = {x: inverse(PC[x]) for x in G.objects}
    iE = {x: inverse(PE[x]) for x in G.objects}
    partial = {x: mul(mul(PE[x], R.d(x)), iC[x]) for x in G.objects}
    dC = {g: mul(mul(PC[G.tgt(g)], R.deltaC[g]), iC[G.src(g)]) for g in G.arrow_ids}
    dE = {g: mul(mul(PE[G.tgt(g)], R.deltaE[g]), iE[G.src(g)]) for g in G.arrow_ids}
    omega = {(g, h): mul(mul(PC[G.tgt(g)], m), iE[G.src(h)]) for (g, h), m in R.omega.items()}
    return RepUTH(G, dict(R.C), dict(R.E), partial, dC, dE, omega)

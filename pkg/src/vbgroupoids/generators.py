"""Seeded random instances for the property suites, plus a few fixed families.

Every randomized builder takes a ``random.Random`` and validates its output
before returning, so a caller never sees an invalid instance.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import reduce
from typing import Mapping, Sequence

from .complexes import inverse
from .fingroupoid import (
    FinGroupoid,
    Group,
    action_groupoid,
    cech_groupoid,
    disjoint_union,
    group_as_groupoid,
    group_from_permutations,
    identity_functor,
    pair_groupoid,
    product_groupoid,
    product_projection,
)
from .lagroupoid import (
    LAGroupoid,
    group_action_la,
    lie2_point_la,
    pullback_la,
    resplit_la,
    twist_iso,
    twist_la,
    validate_la,
)
from .liealg import LieAlg, abelian, direct_sum as lie_sum, affine_line, heisenberg, is_morphism, sl2
from .ratkernel import Matrix, Subspace, eye, kernel_basis, mat, mul, unit_vector, zeros
from .vbgroupoid import (
    RepUTH,
    VBMorphism,
    compose_vb_morphisms,
    direct_sum,
    resplit,
    twist_by_basis_change,
    type0_rep,
    type1_pullback,
    validate_rep,
)
from .xmodlinf import (
    XMod,
    XModMorphism,
    acyclic_extension,
    acyclic_xmod,
    central_quotient_xmod,
    compose_xmod_morphisms,
    ideal_xmod,
    module_xmod,
    validate_xmod,
    validate_xmod_morphism,
    xmod_basis_change,
    xmod_direct_sum,
    xmod_to_lie2,
)

MAX_FIBER = 3


# -- permutation groups and their representations ------------------------------------

def perm_of(element: str) -> tuple[int, ...]:
    """The permutation behind a ``group_from_permutations`` element name such as ``p120``."""
    return tuple(int(ch) for ch in element[1:])


def permutation_matrix(p: Sequence[int]) -> Matrix:
    n = len(p)
    m = zeros(n, n)
    for i in range(n):
        m[p[i], i] = 1
    return m


def parity(p: Sequence[int]) -> int:
    inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return -1 if inv % 2 else 1


def trivial_group() -> Group:
    return group_from_permutations([[0]])


def z2() -> Group:
    return group_from_permutations([[1, 0]])


def z3() -> Group:
    return group_from_permutations([[1, 2, 0]])


def s3() -> Group:
    return group_from_permutations([[1, 0, 2], [1, 2, 0]])


def klein4() -> Group:
    return group_from_permutations([[1, 0, 3, 2], [2, 3, 0, 1]])


def group_reps(group: Group) -> list[tuple[str, dict[str, Matrix]]]:
    """Trivial, sign and permutation representations of a permutation group."""
    degree = len(perm_of(group.identity))
    return [
        ("trivial", {a: eye(1) for a in group.elements}),
        ("sign", {a: mat([[parity(perm_of(a))]]) for a in group.elements}),
        ("permutation", {a: permutation_matrix(perm_of(a)) for a in group.elements if degree}),
    ]


# -- base groupoids carrying a functor to a permutation group ---------------------------

@dataclass(frozen=True, eq=False)
class Based:
    """A groupoid G with a functor G → Γ, recorded on arrows."""

    label: str
    G: FinGroupoid
    group: Group
    elem: Mapping[str, str]


def action_on_letters(group: Group, letters: Sequence[str]) -> FinGroupoid:
    def act(a, x):
        return letters[perm_of(a)[letters.index(x)]]
    return action_groupoid(group, letters, act)


def base_families() -> list[Based]:
    out = []
    T = trivial_group()
    for n in (1, 2, 3, 4):
        G = pair_groupoid([f"x{i}" for i in range(n)])
        out.append(Based(f"pair({n})", G, T, {g: T.identity for g in G.arrow_ids}))
    for name, grp in (("Z2", z2()), ("Z3", z3()), ("S3", s3()), ("V4", klein4())):
        G = group_as_groupoid(grp)
        out.append(Based(f"group({name})", G, grp, {g: g for g in G.arrow_ids}))
    swap_ab = group_from_permutations([[1, 0, 2]])
    for name, grp in (("Z2", swap_ab), ("Z3", z3()), ("S3", s3())):
        G = action_on_letters(grp, ["a", "b", "c"])
        out.append(Based(f"action({name})", G, grp, {g: g.split(".")[0] for g in G.arrow_ids}))
    G = cech_groupoid({"u": "m", "v": "m", "w": "n"})
    out.append(Based("cech", G, T, {g: T.identity for g in G.arrow_ids}))
    Z = z2()
    G = product_groupoid(pair_groupoid(["x", "y"]), group_as_groupoid(Z))
    out.append(Based("pair(2)xZ2", G, Z, {g: g.split("|")[1] for g in G.arrow_ids}))
    G = disjoint_union(group_as_groupoid(Z), pair_groupoid(["x", "y"]))
    out.append(Based("Z2+pair(2)", G, Z,
                     {g: (g[2:] if g.startswith("0:") else Z.identity) for g in G.arrow_ids}))
    return out


# -- random matrices ----------------------------------------------------------------------

def random_invertible(rng: random.Random, n: int) -> Matrix:
    """A product of elementary matrices with small integer entries, occasionally a scaling by 2."""
    m = eye(n)
    for _ in range(2 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i != j:
            m[i, :] = m[i, :] + rng.choice((-1, 1, 2)) * m[j, :]
        elif rng.random() < 0.3:
            m[i, :] = rng.choice((-1, 2)) * m[i, :]
    return m


def random_matrix(rng: random.Random, r: int, c: int, density: float = 0.5) -> Matrix:
    return mat([[rng.choice((-1, 1, 2)) if rng.random() < density else 0 for _ in range(c)]
                for _ in range(r)], (r, c))


# -- random representations up to homotopy ----------------------------------------------

def _pulled(B: Based, rho: Mapping[str, Matrix]) -> dict[str, Matrix]:
    return {g: rho[B.elem[g]] for g in B.G.arrow_ids}


def _piece(rng: random.Random, B: Based, room_c: int, room_e: int) -> RepUTH | None:
    G = B.G
    reps = [(n, r) for n, r in group_reps(B.group) if r]
    kind = rng.choice(("type0", "iso", "type1"))
    if kind == "type1":
        return type1_pullback(G, {x: 1 for x in G.objects}) if room_c and room_e else None
    if kind == "iso":
        fits = [r for _, r in reps if r[B.group.identity].shape[0] <= min(room_c, room_e)]
        if not fits:
            return None
        rho = _pulled(B, rng.choice(fits))
        d = next(iter(rho.values())).shape[0]
        return RepUTH(G, {x: d for x in G.objects}, {x: d for x in G.objects},
                      {x: eye(d) for x in G.objects}, rho, dict(rho), {})
    fits_e = [r for _, r in reps if r[B.group.identity].shape[0] <= room_e]
    fits_c = [r for _, r in reps if r[B.group.identity].shape[0] <= room_c]
    if not fits_e:
        return None
    rE = _pulled(B, rng.choice(fits_e))
    if fits_c and rng.random() < 0.6:
        rC = _pulled(B, rng.choice(fits_c))
    else:
        rC = {g: zeros(0, 0) for g in G.arrow_ids}
    dC = next(iter(rC.values())).shape[0]
    dE = next(iter(rE.values())).shape[0]
    return type0_rep(G, {x: dC for x in G.objects}, {x: dE for x in G.objects}, rC, rE)


def random_rep(rng: random.Random, base: Based | None = None, twist: bool = True,
               max_fiber: int = MAX_FIBER) -> RepUTH:
    """Direct sums of honest, identity-differential and type-1 pieces, then a random
    per-object change of basis and a random change of horizontal lift.

    C and E have rank at most ``max_fiber`` at every object.
    """
    B = base if base is not None else rng.choice(base_families())
    G = B.G
    pieces: list[RepUTH] = []
    used_c = used_e = 0
    for _ in range(rng.randint(1, 3)):
        p = _piece(rng, B, max_fiber - used_c, max_fiber - used_e)
        if p is None:
            continue
        pieces.append(p)
        x0 = G.objects[0]
        used_c += p.C[x0]
        used_e += p.E[x0]
    if not pieces:
        pieces.append(type1_pullback(G, {x: 1 for x in G.objects}))
    R = reduce(direct_sum, pieces)
    if twist:
        R = twist_by_basis_change(R, {x: random_invertible(rng, R.C[x]) for x in G.objects},
                                  {x: random_invertible(rng, R.E[x]) for x in G.objects})
        sigma = {g: random_matrix(rng, R.dC(g), R.dE(g), 0.3) for g in G.arrow_ids
                 if not G.is_unit(g) and rng.random() < 0.5}
        R = resplit(R, sigma)
    rep = validate_rep(R)
    if not rep.ok:
        raise AssertionError(f"generator produced an invalid rep over {B.label}: {rep.lines()[:3]}")
    return R


@dataclass(frozen=True, eq=False)
class Mutation:
    rep: RepUTH
    field: str
    where: str


def mutate(rng: random.Random, R: RepUTH) -> Mutation | None:
    """Perturb one block of Δ^C, Δ^E or Ω off the units; None when no block has room."""
    G = R.G
    options = []
    for g in G.arrow_ids:
        if G.is_unit(g):
            continue
        if R.dC(g) and R.C[G.src(g)]:
            options.append(("deltaC", g))
        if R.E[G.tgt(g)] and R.dE(g):
            options.append(("deltaE", g))
    for g, h in G.pairs:
        if not (G.is_unit(g) or G.is_unit(h)) and R.C[G.tgt(g)] and R.E[G.src(h)]:
            options.append(("omega", (g, h)))
    if not options:
        return None
    field, key = rng.choice(options)
    dC, dE, omega = dict(R.deltaC), dict(R.deltaE), dict(R.omega)
    if field == "deltaC":
        m = dC[key]
        dC[key] = m + _nonzero(rng, *m.shape)
    elif field == "deltaE":
        m = dE[key]
        dE[key] = m + _nonzero(rng, *m.shape)
    else:
        m = R.Om(*key)
        omega[key] = m + _nonzero(rng, *m.shape)
    where = key if isinstance(key, str) else f"{key[0]}|{key[1]}"
    return Mutation(RepUTH(G, R.C, R.E, R.partial, dC, dE, omega), field, where)


def _nonzero(rng: random.Random, r: int, c: int) -> Matrix:
    m = random_matrix(rng, r, c, 0.4)
    m[rng.randrange(r), rng.randrange(c)] = rng.choice((-1, 1, 2))
    return m


# -- crossed modules -------------------------------------------------------------------------

def _span(n: int, *idx: int) -> Subspace:
    return Subspace.span([unit_vector(n, i) for i in idx], n)


def small_xmods() -> list[tuple[str, XMod]]:
    """Crossed modules with dim g + dim h ≤ 5, covering every cohomology pattern."""
    aff = affine_line()
    H = heisenberg()
    return [
        ("acyclic(ab1)", acyclic_xmod(abelian(1))),
        ("acyclic(aff)", acyclic_xmod(aff)),
        ("module(ab1,2)", module_xmod(abelian(1), [mat([[2]])])),
        ("module(aff,char)", module_xmod(aff, [mat([[1]]), mat([[0]])])),
        ("ideal(aff,y)", ideal_xmod(aff, _span(2, 1))),
        ("ideal(heis,z)", ideal_xmod(H, _span(3, 2))),
        ("quotient(heis,z)", central_quotient_xmod(H, _span(3, 2))),
        ("lie(aff)", XMod(abelian(0), aff, zeros(2, 0), (zeros(0, 0), zeros(0, 0)))),
        ("sum", xmod_direct_sum(acyclic_xmod(abelian(1)), module_xmod(abelian(1), [mat([[1]])]))),
    ]


def random_xmod(rng: random.Random, max_total: int = 5) -> XMod:
    choices = [X for _, X in small_xmods() if X.g.dim + X.h.dim <= max_total]
    X = rng.choice(choices)
    if rng.random() < 0.6:
        X, _ = xmod_basis_change(X, random_invertible(rng, X.g.dim), random_invertible(rng, X.h.dim))
    rep = validate_xmod(X)
    if not rep.ok:
        raise AssertionError(f"generator produced an invalid crossed module: {rep.lines()[:3]}")
    return X


def _character(rng: random.Random, h: LieAlg) -> list:
    """A random linear functional on h vanishing on [h, h]."""
    B = h.basis()
    derived = Subspace.span([h.bracket(x, y) for x in B for y in B], h.dim)
    ann = kernel_basis(derived.matrix().T) if derived.dim else Subspace.full(h.dim)
    lam = [0] * h.dim
    for v in ann.basis:
        c = rng.choice((0, 1, -1, 2))
        lam = [a + c * b for a, b in zip(lam, v)]
    return lam


def random_qiso(rng: random.Random) -> XModMorphism:
    """A quasi-isomorphism of crossed modules: an acyclic extension's projection or
    inclusion, wrapped in random changes of basis at both ends."""
    X = random_xmod(rng, 4)
    a = rng.choice((abelian(1), affine_line()))
    lam = _character(rng, X.h)
    D = eye(1) if a.dim == 1 else a.ad(unit_vector(2, 0))
    psi = [c * D for c in lam]
    ext = acyclic_extension(X, a, psi)
    F = ext.projection if rng.random() < 0.5 else ext.inclusion
    S, T = F.source, F.target
    S2, iS = xmod_basis_change(S, random_invertible(rng, S.g.dim), random_invertible(rng, S.h.dim))
    T2, iT = xmod_basis_change(T, random_invertible(rng, T.g.dim), random_invertible(rng, T.h.dim))
    back = XModMorphism(S2, S, inverse(iS.f1), inverse(iS.f2))
    F = compose_xmod_morphisms(iT, compose_xmod_morphisms(F, back))
    rep = validate_xmod_morphism(F)
    if not rep.ok:
        raise AssertionError(f"generator produced an invalid morphism: {rep.lines()[:3]}")
    return F


# -- LA-groupoids ----------------------------------------------------------------------------

def involutions() -> list[tuple[str, LieAlg, Matrix]]:
    """Involutive automorphisms θ of small Lie algebras."""
    return [
        ("sl2 chevalley", sl2(), mat([[0, -1, 0], [-1, 0, 0], [0, 0, -1]])),
        ("heis swap", heisenberg(), mat([[0, 1, 0], [1, 0, 0], [0, 0, -1]])),
        ("heis flip", heisenberg(), mat([[-1, 0, 0], [0, -1, 0], [0, 0, 1]])),
        ("aff y", affine_line(), mat([[1, 0], [0, -1]])),
        ("ab2 swap", abelian(2), mat([[0, 1], [1, 0]])),
    ]


def swap_blocks(n: int, k: int = 2) -> list[Matrix]:
    """Cyclic shift of k blocks of size n, and its powers."""
    out = []
    for s in range(k):
        m = zeros(n * k, n * k)
        for b in range(k):
            tb = (b + s) % k
            m[tb * n:(tb + 1) * n, b * n:(b + 1) * n] = eye(n)
        out.append(m)
    return out


def _orbit_points(kind: str) -> tuple[list[str], dict]:
    if kind == "point":
        return ["p"], {}
    if kind == "free":
        return ["a", "b"], {"a": "b", "b": "a"}
    return ["a", "b", "c"], {"a": "b", "b": "a"}


def z2_action_la(X: XMod, theta: tuple[Matrix, Matrix], points: str = "free") -> LAGroupoid:
    """ℤ/2 acting on a set of points and on X by the involutive automorphism θ = (α, β)."""
    Z = z2()
    pts, flip = _orbit_points(points)
    one, r = Z.identity, next(a for a in Z.elements if a != Z.identity)
    autos = {one: (eye(X.g.dim), eye(X.h.dim)), r: theta}
    return group_action_la(Z, pts, lambda a, x: x if a == one else flip.get(x, x), X, autos)


def swap_la(X: XMod, points: str = "free") -> LAGroupoid:
    """ℤ/2 swapping the summands of X ⊕ X."""
    XX = xmod_direct_sum(X, X)
    return z2_action_la(XX, (swap_blocks(X.g.dim)[1], swap_blocks(X.h.dim)[1]), points)


def cyclic3_la(L: LieAlg) -> LAGroupoid:
    """ℤ/3 rotating the three copies of L over a free orbit of three points, with g = 0."""
    grp = z3()
    letters = ["a", "b", "c"]
    E = XMod(abelian(0), lie_sum(L, L, L), zeros(3 * L.dim, 0), tuple(zeros(0, 0) for _ in range(3 * L.dim)))
    rot = swap_blocks(L.dim, 3)
    autos = {}
    for a in grp.elements:
        p = perm_of(a)
        k = p[0]          # rotation by k sends block b to block b + k
        autos[a] = (zeros(0, 0), rot[k])
    return group_action_la(grp, letters, lambda a, x: letters[perm_of(a)[letters.index(x)]], E, autos)


def semidirect_family(rng: random.Random) -> LAGroupoid:
    """Γ ⋉ E: a group acting on a Lie algebra bundle (g = 0)."""
    kind = rng.choice(("involution", "involution", "rotation"))
    if kind == "rotation":
        return cyclic3_la(rng.choice((affine_line(), abelian(1))))
    _, L, th = rng.choice(involutions())
    E = XMod(abelian(0), L, zeros(L.dim, 0), tuple(zeros(0, 0) for _ in range(L.dim)))
    return z2_action_la(E, (zeros(0, 0), th), rng.choice(("point", "free", "mixed")))


def random_twist(rng: random.Random, L: LAGroupoid) -> LAGroupoid:
    R = L.rep
    G = R.G
    out = twist_la(L, {x: random_invertible(rng, R.C[x]) for x in G.objects},
                   {x: random_invertible(rng, R.E[x]) for x in G.objects})
    if rng.random() < 0.6:
        sigma = {g: random_matrix(rng, R.dC(g), R.dE(g), 0.3) for g in G.arrow_ids if not G.is_unit(g)}
        out = resplit_la(out, sigma)
    return out


def random_la(rng: random.Random) -> tuple[str, LAGroupoid]:
    """One LA-groupoid from the group-action and Lie-2-algebra-over-a-point families."""
    family = rng.choice(("swap", "theta", "semidirect", "point", "point"))
    if family == "swap":
        X = random_xmod(rng, 3)
        L = swap_la(X, rng.choice(("point", "free", "mixed")))
    elif family == "theta":
        _, a, th = rng.choice(involutions())
        L = z2_action_la(acyclic_xmod(a), (th, th), rng.choice(("point", "free")))
    elif family == "semidirect":
        L = semidirect_family(rng)
    else:
        L = lie2_point_la(xmod_to_lie2(random_xmod(rng)))
    if rng.random() < 0.5:
        L = random_twist(rng, L)
    rep = validate_la(L)
    if not rep.ok:
        raise AssertionError(f"generator produced an invalid LA-groupoid ({family}): {rep.lines()[:3]}")
    return family, L


def check_involution(L: LieAlg, th: Matrix) -> bool:
    return is_morphism(th, L, L) and mul(th, th).tolist() == eye(L.dim).tolist()


@dataclass(frozen=True, eq=False)
class MoritaSpan:
    """LA-Morita maps Φ: W → V and Ψ = T∘Φ: W → V′ for a twist isomorphism T: V → V′."""

    W: LAGroupoid
    V: LAGroupoid
    V2: LAGroupoid
    phi: VBMorphism
    psi: VBMorphism
    twist: VBMorphism


def morita_span(rng: random.Random, V: LAGroupoid, copies: int = 2) -> MoritaSpan:
    """W is the pullback of V along G × Pair(copies) → G, twisted on every object."""
    G = V.rep.G
    P = pair_groupoid([f"k{i}" for i in range(copies)])
    GW = product_groupoid(G, P)
    pb = pullback_la(V, product_projection(G, P, GW))
    W0 = pb.la
    R0 = W0.rep
    PC = {x: random_invertible(rng, R0.C[x]) for x in GW.objects}
    PE = {x: random_invertible(rng, R0.E[x]) for x in GW.objects}
    W = twist_la(W0, PC, PE)
    back = VBMorphism(W.rep, W0.rep, identity_functor(GW),
                      {x: inverse(m) for x, m in PC.items()}, {x: inverse(m) for x, m in PE.items()})
    phi = _retarget(compose_vb_morphisms(pb.projection(), back), W.rep, V.rep)
    QC = {x: random_invertible(rng, V.rep.C[x]) for x in G.objects}
    QE = {x: random_invertible(rng, V.rep.E[x]) for x in G.objects}
    V2 = twist_la(V, QC, QE)
    T = twist_iso(V, V2, QC, QE)
    psi = _retarget(compose_vb_morphisms(T, phi), W.rep, V2.rep)
    return MoritaSpan(W, V, V2, phi, psi, T)


def _retarget(F: VBMorphism, S: RepUTH, T: RepUTH) -> VBMorphism:
    return VBMorphism(S, T, F.base, F.on_C, F.on_E)

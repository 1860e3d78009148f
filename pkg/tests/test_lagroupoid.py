import random

import numpy as np
import pytest

from vbgroupoids.fingroupoid import identity_functor
from vbgroupoids.generators import (
    involutions,
    morita_span,
    random_la,
    random_xmod,
    semidirect_family,
    swap_la,
    z2_action_la,
)
from vbgroupoids.lagroupoid import (
    LAError,
    LAGroupoid,
    H_lie_algebras,
    core_bracket,
    crossed_module,
    derivation_D,
    direct_sum_la,
    invariant_side_subalgebra,
    la_morita_zigzag,
    lie2_bracket,
    lie2_point_la,
    section_side_values,
    type1_la,
    validate_la,
)
from vbgroupoids.liealg import LieAlg, abelian, affine_line, is_abelian, is_morphism
from vbgroupoids.ratkernel import equal, eye, is_zero, unit_vector, zeros, zvec
from vbgroupoids.sections import build_complex
from vbgroupoids.vbgroupoid import VBMorphism, identity_morphism
from vbgroupoids.xmodlinf import XMod, acyclic_xmod, lie2_to_xmod, module_xmod, validate_xmod, xmod_to_lie2


def bundle(L: LieAlg) -> XMod:
    """g = 0 over h = L."""
    return XMod(abelian(0), L, zeros(L.dim, 0), tuple(zeros(0, 0) for _ in range(L.dim)))


def test_validation_examples():
    ab = swap_la(acyclic_xmod(abelian(2)), "free")
    assert validate_la(ab).ok
    for name, L, th in involutions():
        assert validate_la(z2_action_la(bundle(L), (zeros(0, 0), th), "mixed")).ok, name
    # corrupt one structure constant over a non-unit arrow
    L = z2_action_la(bundle(affine_line()), (zeros(0, 0), involutions()[3][2]), "free")
    G = L.rep.G
    g = next(a for a in G.arrow_ids if not G.is_unit(a))
    consts = L.fiber_bracket[g].consts.copy()
    consts[0, 1] = consts[0, 1] + unit_vector(2, 0)
    consts[1, 0] = consts[1, 0] - unit_vector(2, 0)
    bad = LAGroupoid(L.rep, L.side_bracket, {**L.fiber_bracket, g: LieAlg(consts)})
    rep = validate_la(bad)
    assert not rep.ok and any(w.startswith(g) or f"({g}," in w or f",{g})" in w for _, w in rep.violations)
    with pytest.raises(LAError):
        crossed_module(bad)


def test_core_bracket_examples():
    ab = swap_la(acyclic_xmod(abelian(2)), "point")
    assert is_abelian(core_bracket(ab))
    Gam = semidirect_family(random.Random(1))
    assert core_bracket(Gam).dim == 0
    rng = random.Random(2)
    for _ in range(5):
        X = random_xmod(rng)
        L = lie2_point_la(xmod_to_lie2(X))
        assert equal(core_bracket(L).consts, X.g.consts)


def test_derivation_examples():
    rng = random.Random(3)
    for _ in range(8):
        _, L = random_la(rng)
        K = build_complex(L.rep)
        zero = K.section(zvec(K.deg1.dim))
        assert is_zero(derivation_D(L, zero, K))
        X = crossed_module(L)
        for j in range(X.g.dim):
            b = unit_vector(X.g.dim, j)
            assert equal(derivation_D(L, K.delta_of(K.layout.decode_core(b)), K), X.g.ad(b))


def test_point_round_trips():
    rng = random.Random(4)
    for _ in range(8):
        X = random_xmod(rng)
        L2 = xmod_to_lie2(X)
        X2 = crossed_module(lie2_point_la(L2))
        assert X2.same_as(X)
        back = lie2_bracket(X2)
        assert back.V1 == L2.V1 and back.V0 == L2.V0 and equal(back.s, L2.s) and equal(back.t, L2.t)
        assert lie2_to_xmod(L2).same_as(X)


def test_semidirect_bracket_formula():
    X = module_xmod(affine_line(), [eye(1), zeros(1, 1)])      # the character x ↦ 1, y ↦ 0
    assert validate_xmod(X).ok
    L2 = lie2_bracket(X)
    n = X.g.dim
    for i in range(X.h.dim):
        Xi = unit_vector(X.h.dim, i)
        a = np.concatenate([zvec(n), Xi])
        b = np.concatenate([unit_vector(n, 0), zvec(X.h.dim)])
        expected = np.concatenate([X.act(Xi) @ unit_vector(n, 0), zvec(X.h.dim)])
        assert equal(L2.V1.bracket(a, b), expected)
    zero_action = module_xmod(abelian(2), [zeros(1, 1), zeros(1, 1)])
    assert is_abelian(lie2_bracket(zero_action).V1)


def test_gamma_semidirect_h1_is_invariant_subalgebra():
    for name, L, th in involutions():
        LA = z2_action_la(bundle(L), (zeros(0, 0), th), "point")
        X = crossed_module(LA)
        H = H_lie_algebras(X)
        assert is_abelian(H.H0)
        inv, inv_alg = invariant_side_subalgebra(LA)
        K = X.sections
        reps = X.complex.H1.representatives
        cols = np.empty((inv.ambient_dim, len(reps)), dtype=object)
        for j, r in enumerate(reps):
            cols[:, j] = section_side_values(K, r)
        coords = inv.coordinate_matrix(cols)
        assert coords.shape == (inv_alg.dim, H.H1.dim)
        assert is_morphism(coords, H.H1, inv_alg), name


def test_type1_summand_changes_nothing():
    rng = random.Random(5)
    for _ in range(4):
        _, L = random_la(rng)
        G = L.rep.G
        T = type1_la(G, {x: affine_line() for x in G.objects})
        assert validate_la(T).ok
        S = direct_sum_la(L, T)
        assert validate_la(S).ok
        HS, HL = H_lie_algebras(crossed_module(S)), H_lie_algebras(crossed_module(L))
        assert (HS.H0.dim, HS.H1.dim) == (HL.H0.dim, HL.H1.dim)


def test_zigzag_examples():
    rng = random.Random(6)
    _, L = random_la(rng)
    I = identity_morphism(L.rep)
    res = la_morita_zigzag(I, I, L, L, L)
    assert equal(res.h0, eye(res.h0.shape[0])) and equal(res.h1, eye(res.h1.shape[0]))
    for _ in range(3):
        S = morita_span(rng, semidirect_family(rng))
        res = la_morita_zigzag(S.phi, S.psi, S.W, S.V, S.V2)
        assert is_morphism(res.h1, res.H_source.H1, res.H_target.H1)
        assert res.H_source.H1.dim == invariant_side_subalgebra(S.V)[1].dim


def test_non_morita_span_is_rejected():
    # ∂ = 0, so the zero map kills H at every object
    L = swap_la(module_xmod(abelian(1), [zeros(1, 1)]), "free")
    R = L.rep
    G = R.G
    Z = VBMorphism(R, R, identity_functor(G), {x: zeros(R.C[x], R.C[x]) for x in G.objects},
                   {x: zeros(R.E[x], R.E[x]) for x in G.objects})
    with pytest.raises(LAError):
        la_morita_zigzag(Z, identity_morphism(R), L, L, L)

import random

import pytest

from oracles import rep_equation_residuals
from vbgroupoids.fingroupoid import group_as_groupoid, pair_groupoid
from vbgroupoids.generators import base_families, group_reps, random_invertible, random_matrix, random_rep, s3, z2
from vbgroupoids.ratkernel import eye, equal, mat, mul, unit_vector, vec, zeros, zvec
from vbgroupoids.sections import build_complex
from vbgroupoids.vbgroupoid import (
    RepUTH,
    VBArrow,
    VBMorphism,
    check_induced_groupoid,
    direct_sum,
    honest_rep,
    identity_morphism,
    is_regular,
    left_invariant,
    pair_vb_arithmetic,
    projection_to_summand,
    resplit,
    right_invariant,
    split_from_total,
    twist_by_basis_change,
    type0_rep,
    type1_pullback,
    validate_rep,
    validate_vb_morphism,
    vb_inv,
    vb_mul,
    vb_source,
    vb_target,
    vb_unit,
)

SWAP = mat([[0, 1], [1, 0]])


def swap_rep():
    G = group_as_groupoid(z2())
    return honest_rep(G, {"*": 2}, {"p01": eye(2), "p10": SWAP})


def test_validation_examples():
    assert validate_rep(swap_rep()).ok
    G = pair_groupoid(["a", "b"])
    zero = RepUTH(G, {x: 0 for x in G.objects}, {x: 0 for x in G.objects}, {x: zeros(0, 0) for x in G.objects},
                  {g: zeros(0, 0) for g in G.arrow_ids}, {g: zeros(0, 0) for g in G.arrow_ids})
    assert validate_rep(zero).ok
    # flat actions with a nonzero Ω on non-unit pairs of S3
    grp = s3()
    G = group_as_groupoid(grp)
    rng = random.Random(5)
    omega = {(g, h): random_matrix(rng, 1, 1, 1.0) + 1 for g, h in G.pairs
             if not G.is_unit(g) and not G.is_unit(h)}
    R = type0_rep(G, {"*": 1}, {"*": 1}, {g: eye(1) for g in G.arrow_ids}, {g: eye(1) for g in G.arrow_ids}, omega)
    rep = validate_rep(R)
    assert not rep.ok and rep_equation_residuals(R)
    assert any(w.startswith("(") for _, w in rep.violations)


def test_validate_rejects_bad_shapes():
    R = swap_rep()
    bad = RepUTH(R.G, R.C, R.E, R.partial, R.deltaC, {**R.deltaE, "p10": eye(3)}, {})
    with pytest.raises(ValueError):
        validate_rep(bad)


def test_source_target_and_unit_laws():
    R = swap_rep()
    e = vec([1, 2])
    u = vb_unit("*", e, R)
    assert equal(vb_source(u), e) and equal(vb_target(u, R), e)
    a = VBArrow(zvec(0), "p10", e)
    assert equal(vb_target(a, R), vec([2, 1]))
    rng = random.Random(11)
    for _ in range(20):
        R = random_rep(rng)
        G = R.G
        g = rng.choice(G.arrow_ids)
        a = VBArrow(random_matrix(rng, R.dC(g), 1, 0.7)[:, 0], g, random_matrix(rng, R.dE(g), 1, 0.7)[:, 0])
        t = G.tgt(g)
        assert vb_mul(vb_unit(t, vb_target(a, R), R), a, R) == a
        assert vb_mul(a, vb_unit(G.src(g), a.e, R), R) == a
        assert vb_mul(a, vb_inv(a, R), R) == vb_unit(t, vb_target(a, R), R)
        assert vb_mul(vb_inv(a, R), a, R) == vb_unit(G.src(g), a.e, R)


def test_flat_product_formula():
    G = group_as_groupoid(z2())
    R = type0_rep(G, {"*": 2}, {"*": 2}, {"p01": eye(2), "p10": SWAP}, {"p01": eye(2), "p10": SWAP})
    a1 = VBArrow(vec([1, 0]), "p10", vec([5, 7]))
    a2 = VBArrow(vec([3, 4]), "p10", vec([7, 5]))
    prod = vb_mul(a1, a2, R)
    assert prod.g == "p01" and equal(prod.c, vec([1 + 4, 0 + 3]))
    with pytest.raises(ValueError):
        vb_mul(a1, VBArrow(vec([0, 0]), "p10", vec([1, 1])), R)


def test_invariant_sections_formulas():
    rng = random.Random(2)
    R = random_rep(rng, base_families()[1])
    G = R.G
    c = {x: random_matrix(rng, R.C[x], 1, 0.8)[:, 0] for x in G.objects}
    r, l = right_invariant(c, R), left_invariant(c, R)
    for g in G.arrow_ids:
        s, t = G.src(g), G.tgt(g)
        assert equal(r[g].c, c[t]) and equal(r[g].e, zvec(R.E[s]))
        assert equal(l[g].c, mul(R.deltaC[g], c[s])) and equal(l[g].e, -mul(R.d(s), c[s]))


def test_regularity_examples():
    assert is_regular(swap_rep()).kind == "type0"
    G = pair_groupoid(["a", "b"])
    assert is_regular(type1_pullback(G, {"a": 2, "b": 2})).kind == "type1"
    d = {"a": mat([[1, 0], [0, 0]]), "b": zeros(2, 2)}
    R = RepUTH(G, {"a": 2, "b": 2}, {"a": 2, "b": 2}, d, {g: eye(2) for g in G.arrow_ids},
               {g: eye(2) for g in G.arrow_ids})
    assert is_regular(R).kind == "non-regular"
    mixed = direct_sum(type0_rep(G, {"a": 1, "b": 1}, {"a": 1, "b": 1}, {g: eye(1) for g in G.arrow_ids},
                                 {g: eye(1) for g in G.arrow_ids}), type1_pullback(G, {"a": 1, "b": 1}))
    reg = is_regular(mixed)
    assert reg.kind == "mixed" and dict(reg.ranks) == {"a": 1, "b": 1}


def test_type1_matches_pair_arithmetic():
    """The split encoding of the pair VB-groupoid, extracted from its arithmetic alone."""
    for B in base_families()[:6]:
        E = {x: 2 for x in B.G.objects}
        R, to_split = split_from_total(pair_vb_arithmetic(B.G, E))
        T = type1_pullback(B.G, E)
        assert validate_rep(R).ok and check_induced_groupoid(T).ok
        for g in B.G.arrow_ids:
            assert equal(R.deltaC[g], T.deltaC[g]) and equal(R.deltaE[g], T.deltaE[g])
        for g, h in B.G.pairs:
            assert equal(R.Om(g, h), T.Om(g, h))
        # structure maps: source e2, target e1
        for g in B.G.arrow_ids:
            a = VBArrow(unit_vector(2, 0), g, unit_vector(2, 1))
            assert equal(vb_target(a, T), unit_vector(2, 0) + mul(T.deltaE[g], unit_vector(2, 1)))


def test_direct_sums():
    rng = random.Random(4)
    for B in base_families()[:8]:
        R1, R2 = random_rep(rng, B), random_rep(rng, B)
        G = B.G
        Z = RepUTH(G, {x: 0 for x in G.objects}, {x: 0 for x in G.objects}, {x: zeros(0, 0) for x in G.objects},
                   {g: zeros(0, 0) for g in G.arrow_ids}, {g: zeros(0, 0) for g in G.arrow_ids})
        S0 = direct_sum(R1, Z)
        assert all(equal(S0.deltaC[g], R1.deltaC[g]) and equal(S0.deltaE[g], R1.deltaE[g]) for g in G.arrow_ids)
        S = direct_sum(R1, R2)
        assert validate_rep(S).ok
        assert build_complex(S).deg1.dim == build_complex(R1).deg1.dim + build_complex(R2).deg1.dim


def test_morphism_validation():
    rng = random.Random(8)
    R1 = random_rep(rng, base_families()[5])
    R2 = type1_pullback(R1.G, {x: 1 for x in R1.G.objects})
    assert validate_vb_morphism(identity_morphism(R1)).ok
    P = projection_to_summand(direct_sum(R1, R2), R1, R2, 0)
    assert validate_vb_morphism(P).ok
    x = R1.G.objects[0]
    on_E = dict(P.on_E)
    on_E[x] = on_E[x] + mat([[1] * on_E[x].shape[1]] + [[0] * on_E[x].shape[1]] * (on_E[x].shape[0] - 1))
    bad = VBMorphism(P.source, P.target, P.base, P.on_C, on_E)
    rep = validate_vb_morphism(bad)
    assert not rep.ok and any(w == x or x in w for _, w in rep.violations)


def test_twist_and_resplit_preserve_validity():
    rng = random.Random(6)
    for _ in range(15):
        R = random_rep(rng, twist=False)
        G = R.G
        T = twist_by_basis_change(R, {x: random_invertible(rng, R.C[x]) for x in G.objects},
                                  {x: random_invertible(rng, R.E[x]) for x in G.objects})
        sigma = {g: random_matrix(rng, R.dC(g), R.dE(g), 0.5) for g in G.arrow_ids if not G.is_unit(g)}
        S = resplit(T, sigma)
        assert validate_rep(T).ok and validate_rep(S).ok
        assert not rep_equation_residuals(S)
        assert build_complex(S).deg1.dim == build_complex(R).deg1.dim


def test_group_reps_are_representations():
    for B in base_families():
        for name, rho in group_reps(B.group):
            for a in B.group.elements:
                for b in B.group.elements:
                    assert equal(mul(rho[a], rho[b]), rho[B.group.mul(a, b)]), (B.label, name)

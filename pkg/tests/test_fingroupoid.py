import random
from dataclasses import replace

import pytest

from vbgroupoids.fingroupoid import (
    GroupoidFunctor,
    action_groupoid,
    cech_groupoid,
    compose_functors,
    cyclic_group,
    discrete_groupoid,
    disjoint_union,
    functor_to_point,
    group_as_groupoid,
    groupoid_from_doc,
    groupoid_to_doc,
    identity_functor,
    is_weak_equivalence,
    make_group,
    pair_groupoid,
    point_groupoid,
    product_groupoid,
    product_projection,
    surjectivity_profile,
    validate_functor,
    validate_groupoid,
    weak_fibre_product,
)
from vbgroupoids.generators import base_families


def test_generators_are_valid_with_expected_sizes():
    assert validate_groupoid(point_groupoid()).ok
    for n in (1, 2, 3, 4):
        G = pair_groupoid([f"x{i}" for i in range(n)])
        assert validate_groupoid(G).ok and len(G.arrow_ids) == n * n
    Z2 = cyclic_group(2)
    G = group_as_groupoid(Z2)
    assert (len(G.objects), len(G.arrow_ids)) == (1, 2)
    A = action_groupoid(Z2, ["a", "b"], lambda g, x: x if g == "r0" else {"a": "b", "b": "a"}[x])
    assert (len(A.objects), len(A.arrow_ids)) == (2, 4) and validate_groupoid(A).ok
    C = cech_groupoid({"u": "m", "v": "m", "w": "n"})
    assert validate_groupoid(C).ok and len(C.arrow_ids) == 5
    for B in base_families():
        assert validate_groupoid(B.G).ok, B.label


def test_broken_associativity_names_the_triple():
    G = group_as_groupoid(cyclic_group(3))
    compose = dict(G.compose)
    compose[("r1", "r1")] = "r0"      # units untouched, so the unit law still holds
    rep = validate_groupoid(replace(G, compose=compose))
    assert ("associativity", "(r1,r1,r2)") in rep.violations


def test_invalid_group_table_rejected():
    with pytest.raises(ValueError):
        make_group(["e", "a"], {("e", "e"): "e", ("e", "a"): "a", ("a", "e"): "a", ("a", "a"): "a"})


def test_weak_equivalence_examples():
    G = pair_groupoid(["1", "2"])
    assert is_weak_equivalence(identity_functor(G))[0]
    assert is_weak_equivalence(functor_to_point(G))[0]
    D2, D1 = discrete_groupoid(["1", "2"]), discrete_groupoid(["*"])
    F = GroupoidFunctor(D2, D1, {"1": "*", "2": "*"}, {"11": "1*", "12": "1*"})
    assert validate_functor(F).ok
    assert not is_weak_equivalence(F)[0]


def test_surjectivity_examples():
    G = pair_groupoid(["1", "2"])
    assert surjectivity_profile(identity_functor(G)).all
    one = pair_groupoid(["1"])
    inc = GroupoidFunctor(one, G, {"1": "1"}, {one.unit["1"]: G.unit["1"]})
    p = surjectivity_profile(inc)
    assert (p.on_objects, p.on_arrows, p.on_pairs) == (False, False, False)


def test_weak_fibre_product_examples():
    T = point_groupoid()
    w = weak_fibre_product(identity_functor(T), identity_functor(T))
    assert (len(w.groupoid.objects), len(w.groupoid.arrow_ids)) == (1, 1)
    # point ×_Γ point: objects are group elements, and the result is equivalent to the point
    Z2 = group_as_groupoid(cyclic_group(2))
    pt = point_groupoid()
    inc = GroupoidFunctor(pt, Z2, {"*": "*"}, {pt.unit["*"]: Z2.unit["*"]})
    w = weak_fibre_product(inc, inc)
    assert validate_groupoid(w.groupoid).ok
    # only unit arrows upstairs, so the result is Γ as a discrete groupoid: the homotopy fibre
    assert len(w.groupoid.objects) == 2 and len(w.groupoid.arrow_ids) == 2
    assert len(w.groupoid.components) == 2
    assert not is_weak_equivalence(functor_to_point(w.groupoid, pt))[0]
    # with the group itself as second leg the product collapses to one object
    w2 = weak_fibre_product(inc, identity_functor(Z2))
    assert len(w2.groupoid.objects) == 2 and len(w2.groupoid.components) == 1
    assert is_weak_equivalence(functor_to_point(w2.groupoid, pt))[0]


def test_weak_fibre_product_of_weak_equivalence():
    for B in base_families()[:9]:
        P = pair_groupoid(["a", "b"])
        GW = product_groupoid(B.G, P)
        F = product_projection(B.G, P, GW)
        assert is_weak_equivalence(F)[0]
        w = weak_fibre_product(F, identity_functor(B.G))
        assert validate_groupoid(w.groupoid).ok
        assert is_weak_equivalence(w.proj2)[0] and surjectivity_profile(w.proj2).all


def test_weak_equivalences_compose():
    rng = random.Random(3)
    for _ in range(10):
        n = rng.randint(1, 3)
        G = pair_groupoid([f"x{i}" for i in range(n)])
        P = pair_groupoid(["a", "b"])
        GP = product_groupoid(G, P)
        F1 = product_projection(G, P, GP)
        F2 = functor_to_point(G)
        if is_weak_equivalence(F1)[0] and is_weak_equivalence(F2)[0]:
            assert is_weak_equivalence(compose_functors(F2, F1))[0]


def test_disjoint_union_and_doc_round_trip():
    G = disjoint_union(group_as_groupoid(cyclic_group(2)), pair_groupoid(["x", "y"]))
    assert validate_groupoid(G).ok and len(G.arrow_ids) == 6
    H = groupoid_from_doc(groupoid_to_doc(G))
    assert H.objects == G.objects and dict(H.arrows) == dict(G.arrows)
    assert dict(H.compose) == dict(G.compose) and dict(H.inv) == dict(G.inv)

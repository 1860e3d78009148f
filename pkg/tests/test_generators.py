import random

from vbgroupoids.fingroupoid import validate_groupoid
from vbgroupoids.generators import (
    MAX_FIBER,
    base_families,
    check_involution,
    group_reps,
    involutions,
    mutate,
    random_la,
    random_rep,
    small_xmods,
    z2,
    s3,
)
from vbgroupoids.lagroupoid import validate_la
from vbgroupoids.vbgroupoid import validate_rep
from vbgroupoids.xmodlinf import validate_xmod


def test_bases_are_groupoids():
    for B in base_families():
        assert validate_groupoid(B.G).ok, B.label
        assert set(B.elem) == set(B.G.arrow_ids)


def test_random_reps_respect_limits():
    rng = random.Random(11)
    for cap in (1, 2, MAX_FIBER):
        for _ in range(12):
            R = random_rep(rng, max_fiber=cap)
            assert validate_rep(R).ok
            assert all(R.C[x] <= cap and R.E[x] <= cap for x in R.G.objects)


def test_mutants_break_the_rep():
    rng = random.Random(12)
    hits = 0
    while hits < 10:
        m = mutate(rng, random_rep(rng))
        if m is None:
            continue
        rep = validate_rep(m.rep)
        # a perturbation can land on another valid rep; when it does not, the report names it
        if not rep.ok:
            hits += 1
            assert rep.violations


def test_group_reps_cover_the_standard_list():
    for grp in (z2(), s3()):
        names = [n for n, _ in group_reps(grp)]
        assert {"trivial", "sign", "permutation"} <= set(names)


def test_involutions_and_xmods():
    for name, L, th in involutions():
        assert check_involution(L, th), name
    for name, X in small_xmods():
        assert validate_xmod(X).ok, name


def test_random_la_valid():
    rng = random.Random(13)
    for _ in range(8):
        name, L = random_la(rng)
        assert validate_rep(L.rep).ok and validate_la(L).ok, name

import random

import pytest

from vbgroupoids.ratkernel import (
    Q,
    Subspace,
    eye,
    image_basis,
    is_zero,
    kernel_basis,
    mat,
    mul,
    quotient_data,
    rank,
    solve,
    vec,
    zeros,
)


def span(*vs, n):
    return Subspace.span([vec(v) for v in vs], n)


def test_kernel_examples():
    assert kernel_basis(mat([[1, 0], [0, 1]])).dim == 0
    assert kernel_basis(mat([[1, -1]])) == span((1, 1), n=2)
    assert kernel_basis(mat([[2, 4], [1, 2]])) == span((-2, 1), n=2)


def test_image_examples():
    assert image_basis(eye(3)) == Subspace.full(3)
    assert image_basis(zeros(2, 3)).dim == 0
    assert image_basis(mat([[1, 2], [2, 4]])) == span((1, 2), n=2)


def test_quotient_examples():
    full = Subspace.full(2)
    assert quotient_data(full, full).dim == 0
    q = quotient_data(full, Subspace.zero(2))
    assert q.dim == 2 and q.project.tolist() == eye(2).tolist()
    assert quotient_data(Subspace.full(3), span((1, 1, 0), n=3)).dim == 2


def test_quotient_rejects_non_subspace():
    with pytest.raises(ValueError):
        quotient_data(span((1, 0), n=2), span((0, 1), n=2))


def test_solve_examples():
    b = vec([3, Q("1/2")])
    assert solve(eye(2), b).tolist() == b.tolist()
    assert solve(zeros(2, 2), vec([1, 0])) is None
    assert solve(mat([[1, 1]]), vec([2])).tolist() == [2, 0]


def test_q_is_exact():
    assert Q("1/3") * 3 == 1
    with pytest.raises((TypeError, ValueError)):
        Q(0.1)


def test_random_rank_nullity_and_quotient():
    rng = random.Random(7)
    for _ in range(60):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        A = mat([[rng.choice((0, 0, 1, -1, 2, Q("1/2"))) for _ in range(c)] for _ in range(r)])
        K = kernel_basis(A)
        assert all(is_zero(mul(A, v)) for v in K.basis)
        assert K.dim + rank(A) == c
        # canonical form does not depend on the spanning set
        assert Subspace.span(list(K.basis)[::-1], c) == K
        Im = image_basis(A)
        q = quotient_data(Subspace.full(r), Im)
        assert q.dim == r - Im.dim
        for u in Im.basis:
            assert is_zero(q.classify(u))
        for i, rep in enumerate(q.representatives):
            assert q.classify(rep).tolist() == [1 if j == i else 0 for j in range(q.dim)]

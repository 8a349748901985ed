"""Exact linear algebra over F_{p^k}: RREF, kernels, subspace lattice."""

import random

import numpy as np
import pytest

from qcoh.exactla import (
    Matrix,
    Subspace,
    kernel_array,
    matmul,
    rref,
    rref_array,
    subspace_ops,
)
from qcoh.ff import make_extension


def random_matrix(ctx, rows, cols, rng):
    q = ctx.p**ctx.k
    return np.array(
        [[rng.randrange(q) for _ in range(cols)] for _ in range(rows)],
        dtype=np.int64,
    )


@pytest.mark.parametrize("p,k", [(3, 1), (5, 1), (3, 2), (5, 2)])
def test_rref_canonical_and_idempotent(p, k):
    ctx = make_extension(p, k)
    rng = random.Random(p * 10 + k)
    for _ in range(20):
        a = random_matrix(ctx, 5, 7, rng)
        r, piv = rref_array(ctx, a)
        r2, piv2 = rref_array(ctx, r)
        assert np.array_equal(r, r2) and piv == piv2
        one = ctx.of_int(1)
        for i, j in enumerate(piv):
            assert r[i, j] == one
            assert all(r[t, j] == 0 for t in range(r.shape[0]) if t != i)


def test_rref_preserves_rowspace():
    ctx = make_extension(3, 1)
    rng = random.Random(9)
    for _ in range(10):
        a = random_matrix(ctx, 4, 6, rng)
        r, piv = rref_array(ctx, a)
        s1 = Subspace.span(ctx, 6, a)
        s2 = Subspace.span(ctx, 6, r[: len(piv)])
        assert s1 == s2


@pytest.mark.parametrize("p,k", [(3, 1), (3, 2), (5, 2)])
def test_kernel_rank_nullity(p, k):
    ctx = make_extension(p, k)
    rng = random.Random(p + k)
    for _ in range(15):
        a = random_matrix(ctx, 6, 8, rng)
        _, npiv = rref_array(ctx, a)
        ker = kernel_array(ctx, a)
        assert ker.shape[0] == 8 - len(npiv)
        for v in ker:
            img = matmul(ctx, a, v.reshape(-1, 1))
            assert not img.any()


def test_matrix_class_and_rref_wrapper():
    ctx = make_extension(5, 1)
    m = Matrix(ctx, [[1, 2, 3], [2, 4, 2], [0, 0, 0]])
    r, rank, piv = rref(m)
    assert rank == 2 and piv == (0, 2)
    ident = Matrix.identity(ctx, 3)
    assert (ident @ m) == m


def brute_force_vectors(ctx, basis):
    """All vectors in the span (small fields only)."""
    q = ctx.p**ctx.k
    vecs = set()
    n = basis.shape[0]
    for mask in range(q**n):
        coeffs = []
        m = mask
        for _ in range(n):
            coeffs.append(m % q)
            m //= q
        v = np.zeros(basis.shape[1], dtype=np.int64)
        for c, row in zip(coeffs, basis):
            v = ctx.vadd(v, ctx.vmul(np.int64(c), row))
        vecs.add(tuple(int(x) for x in v))
    return vecs


def test_sum_intersect_against_brute_force():
    ctx = make_extension(3, 1)
    rng = random.Random(4)
    for _ in range(8):
        u = Subspace.span(ctx, 5, random_matrix(ctx, 2, 5, rng))
        w = Subspace.span(ctx, 5, random_matrix(ctx, 2, 5, rng))
        inter = u.intersect(w)
        tot = u.sum(w)
        # dim(U+W) + dim(U∩W) = dim U + dim W
        assert tot.dim + inter.dim == u.dim + w.dim
        uv = brute_force_vectors(ctx, u.basis)
        wv = brute_force_vectors(ctx, w.basis)
        iv = brute_force_vectors(ctx, inter.basis)
        assert iv == (uv & wv)
        assert tot.contains(u) and tot.contains(w)
        assert u.contains(inter) and w.contains(inter)


def test_subspace_membership_and_reduce():
    ctx = make_extension(5, 2)
    rng = random.Random(11)
    basis = random_matrix(ctx, 3, 6, rng)
    s = Subspace.span(ctx, 6, basis)
    for row in basis:
        assert s.contains_vector(row)
        assert not s.reduce_vector(row).any()
    outside = np.zeros(6, dtype=np.int64)
    if s.dim < 6:
        free = [j for j in range(6) if j not in s.pivots]
        outside[free[0]] = ctx.of_int(1)
        red = s.reduce_vector(outside)
        assert red.any()


def test_quotient_dim_and_lattice_ops():
    ctx = make_extension(3, 1)
    full = Subspace.full(ctx, 4)
    zero = Subspace.zero(ctx, 4)
    line = Subspace.span(ctx, 4, np.array([[1, 1, 0, 0]], dtype=np.int64))
    assert full.quotient_dim(line) == 3
    assert line.quotient_dim(zero) == 1
    assert subspace_ops(full, line, "intersect") == line
    assert subspace_ops(line, zero, "sum") == line
    assert hash(line) == hash(Subspace.span(ctx, 4, np.array([[2, 2, 0, 0]])))


def test_matmul_extension_field_associativity():
    ctx = make_extension(3, 2)
    rng = random.Random(21)
    a = random_matrix(ctx, 3, 4, rng)
    b = random_matrix(ctx, 4, 5, rng)
    c = random_matrix(ctx, 5, 2, rng)
    left = matmul(ctx, matmul(ctx, a, b), c)
    right = matmul(ctx, a, matmul(ctx, b, c))
    assert np.array_equal(left, right)

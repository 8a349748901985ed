"""Finite field arithmetic tests.

Frozen polynomial constants were re-derived by an independent brute
force (search all monic polys in lex order, test irreducibility by
trial division against all lower-degree monic polys).
"""

import random

import pytest

from qcoh.ff import (
    FieldElem,
    artin_schreier_roots,
    make_extension,
    poly_is_irreducible,
    square_roots,
)


def brute_irreducible(coeffs, p):
    # trial division by every monic poly of degree 1..deg//2
    def pmul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
        return out

    def pmod(a, f):
        a = list(a)
        while len(a) >= len(f) and any(a):
            while a and a[-1] == 0:
                a.pop()
            if len(a) < len(f):
                break
            c = a[-1]
            shift = len(a) - len(f)
            for i, fc in enumerate(f):
                a[shift + i] = (a[shift + i] - c * fc) % p
        return [x % p for x in a]

    deg = len(coeffs) - 1
    for d in range(1, deg // 2 + 1):
        for n in range(p**d):
            div = []
            m = n
            for _ in range(d):
                div.append(m % p)
                m //= p
            div.append(1)
            r = pmod(coeffs, div)
            if not any(r):
                return False
    return True


KNOWN_POLYS = {
    (3, 2): (1, 0, 1),
    (3, 3): (1, 0, 2, 1),
    (5, 2): (1, 1, 1),
    (7, 2): (1, 0, 1),
}


@pytest.mark.parametrize("p,k", sorted(KNOWN_POLYS))
def test_lex_least_irreducible_poly(p, k):
    ctx = make_extension(p, k)
    assert ctx.poly == KNOWN_POLYS[(p, k)]
    assert brute_irreducible(list(ctx.poly), p)
    # nothing earlier in the scan order (c_0 most significant) is irreducible
    import itertools

    for tail in itertools.product(range(p), repeat=k):
        if tail == ctx.poly[:k]:
            break
        coeffs = list(tail) + [1]
        assert not brute_irreducible(coeffs, p)
        assert not poly_is_irreducible(tuple(coeffs), p)


@pytest.mark.parametrize("p,k", [(3, 1), (3, 2), (5, 2), (3, 3), (7, 1)])
def test_field_axioms_random(p, k):
    ctx = make_extension(p, k)
    rng = random.Random(17)
    q = p**k
    for _ in range(200):
        a, b, c = (rng.randrange(q) for _ in range(3))
        assert ctx.add(a, b) == ctx.add(b, a)
        assert ctx.mul(a, b) == ctx.mul(b, a)
        assert ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c))
        assert ctx.sub(ctx.add(a, b), b) == a
        if a:
            assert ctx.mul(a, ctx.inv(a)) == ctx.of_int(1)
    # multiplicative group order
    for a in range(1, q):
        assert ctx.pow(a, q - 1) == ctx.of_int(1)


def test_pow_and_frobenius():
    ctx = make_extension(3, 2)
    for a in range(9):
        assert ctx.frobenius(a) == ctx.pow(a, 3)
    # fixed field of Frobenius is the prime field
    fixed = [a for a in range(9) if ctx.frobenius(a) == a]
    assert sorted(fixed) == sorted(ctx.of_int(i) for i in range(3))


def test_field_elem_operators():
    ctx = make_extension(5, 2)
    x = ctx.elem(ctx.encode([2, 3]))
    y = ctx.elem(ctx.encode([4, 1]))
    assert (x + y) - y == x
    assert (x * y) / y == x
    assert -(-x) == x
    assert x**24 == ctx.elem(ctx.of_int(1))
    assert bool(ctx.elem(0)) is False


@pytest.mark.parametrize("p,k", [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1)])
def test_artin_schreier(p, k):
    ctx = make_extension(p, k)
    q = p**k
    hits = 0
    for c in range(q):
        roots = artin_schreier_roots(FieldElem(ctx, c))
        if roots:
            hits += 1
            assert len(roots) == p
            for r in roots:
                assert ctx.sub(ctx.pow(r.val, p), r.val) == c
    # x -> x^p - x is p-to-1 onto its image
    assert hits == q // p


@pytest.mark.parametrize("p,k", [(3, 1), (7, 1), (3, 2), (5, 2), (3, 3)])
def test_square_roots_everywhere(p, k):
    ctx = make_extension(p, k)
    q = p**k
    n_squares = 0
    for s in range(q):
        roots = square_roots(FieldElem(ctx, s))
        for r in roots:
            assert ctx.mul(r.val, r.val) == s
        if roots:
            n_squares += 1
            assert len(roots) == (1 if s == 0 else 2)
    assert n_squares == (q + 1) // 2


def test_vectorized_ops_match_scalar():
    import numpy as np

    ctx = make_extension(3, 2)
    rng = random.Random(3)
    a = np.array([rng.randrange(9) for _ in range(50)], dtype=np.int64)
    b = np.array([rng.randrange(9) for _ in range(50)], dtype=np.int64)
    assert all(ctx.vadd(a, b)[i] == ctx.add(int(a[i]), int(b[i])) for i in range(50))
    assert all(ctx.vmul(a, b)[i] == ctx.mul(int(a[i]), int(b[i])) for i in range(50))
    assert all(ctx.vsub(a, b)[i] == ctx.sub(int(a[i]), int(b[i])) for i in range(50))
    assert all(ctx.vneg(a)[i] == ctx.neg(int(a[i])) for i in range(50))


def test_frobenius_matrix_is_linear_rep():
    import numpy as np

    ctx = make_extension(3, 3)
    fm = ctx.frobenius_matrix()
    for a in range(27):
        coeffs = np.array(ctx.decode(a), dtype=np.int64)
        img = (fm @ coeffs) % 3
        assert ctx.encode([int(c) for c in img]) == ctx.frobenius(a)


def test_json_roundtrip_fields():
    ctx = make_extension(5, 2)
    d = ctx.to_json_dict()
    assert d["p"] == 5 and d["k"] == 2 and tuple(d["poly"]) == ctx.poly

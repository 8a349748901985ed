"""The queer Lie superalgebra q(2) from its 4x4 matrix realization.

The eight basis elements are fixed, in this order, everywhere in the
package:

    index  0   1   2  3  4   5   6  7
    name   h1  h2  e  f  H1  H2  E  F

with parities (0,0,0,0,1,1,1,1) and weights (0,0) for h/H, (1,-1) for
e/E and (-1,1) for f/F.  Structure constants and the p-th power map are
computed from the matrices, never transcribed by hand, which makes the
super-Jacobi validator an independent check on the whole table.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exactla import matmul, rref_array
from .ff import FieldCtx

BASIS_NAMES = ("h1", "h2", "e", "f", "H1", "H2", "E", "F")
PARITIES = (0, 0, 0, 0, 1, 1, 1, 1)
WEIGHTS = ((0, 0), (0, 0), (1, -1), (-1, 1), (0, 0), (0, 0), (1, -1), (-1, 1))

# cell pairs (i, j) of the 4x4 realization carrying each basis element;
# the 16 cells are disjoint, so re-expansion in the basis is a lookup
_SUPPORTS = (
    ((0, 0), (2, 2)),  # h1
    ((1, 1), (3, 3)),  # h2
    ((0, 1), (2, 3)),  # e
    ((1, 0), (3, 2)),  # f
    ((0, 2), (2, 0)),  # H1
    ((1, 3), (3, 1)),  # H2
    ((0, 3), (2, 1)),  # E
    ((1, 2), (3, 0)),  # F
)


@dataclass
class SuperAlgebra:
    """Parity-graded basis with structure constants and a p-mapping."""

    ctx: FieldCtx
    basis_names: tuple = BASIS_NAMES
    parities: tuple = PARITIES
    weights: tuple = WEIGHTS
    # sc[x, y, z]: coefficient of basis z in [x_x, x_y], encoded
    sc: np.ndarray = field(default=None)
    # p_map[x]: coefficient vector of x^[p] for even x, rows 0..3
    p_map: np.ndarray = field(default=None)

    @property
    def dim(self):
        return len(self.basis_names)

    def index(self, name: str) -> int:
        return self.basis_names.index(name)

    def bracket_coeffs(self, x: int, y: int) -> np.ndarray:
        return self.sc[x, y]

    def even_indices(self):
        return [i for i, par in enumerate(self.parities) if par == 0]

    def to_json_dict(self):
        return {
            "field": self.ctx.to_json_dict(),
            "basis": list(self.basis_names),
            "parities": list(self.parities),
            "weights": [list(w) for w in self.weights],
            "structure_constants": self.sc.tolist(),
            "p_map": self.p_map.tolist(),
        }


def _basis_matrices(ctx: FieldCtx):
    mats = []
    one = 1 % ctx.q
    for cells in _SUPPORTS:
        m = np.zeros((4, 4), dtype=np.int64)
        for i, j in cells:
            m[i, j] = one
        mats.append(m)
    return mats


def _expand(ctx: FieldCtx, m: np.ndarray) -> np.ndarray:
    """Coefficients of m in the 8-element basis; raises if m leaves the span."""
    coeffs = np.zeros(8, dtype=np.int64)
    for idx, cells in enumerate(_SUPPORTS):
        (i1, j1), (i2, j2) = cells
        if m[i1, j1] != m[i2, j2]:
            raise ValueError("matrix does not lie in the span of the q(2) basis")
        coeffs[idx] = m[i1, j1]
    return coeffs


def build_q2(ctx: FieldCtx) -> SuperAlgebra:
    """q(2) over ctx: brackets are matrix supercommutators, the p-mapping
    is the ordinary p-th matrix power of the even elements."""
    mats = _basis_matrices(ctx)
    sc = np.zeros((8, 8, 8), dtype=np.int64)
    for x in range(8):
        for y in range(8):
            xy = matmul(ctx, mats[x], mats[y])
            yx = matmul(ctx, mats[y], mats[x])
            if PARITIES[x] and PARITIES[y]:
                br = ctx.vadd(xy, yx)
            else:
                br = ctx.vsub(xy, yx)
            sc[x, y] = _expand(ctx, br)
    p_map = np.zeros((4, 8), dtype=np.int64)
    for x in range(4):
        acc = np.eye(4, dtype=np.int64) % ctx.q
        for _ in range(ctx.p):
            acc = matmul(ctx, acc, mats[x])
        p_map[x] = _expand(ctx, acc)
    return SuperAlgebra(ctx=ctx, sc=sc, p_map=p_map)


def even_combo_p_power(alg: SuperAlgebra, coeffs) -> np.ndarray:
    """(sum_i coeffs_i x_i)^[p] for even basis x_i, expanded in the basis."""
    ctx = alg.ctx
    mats = _basis_matrices(ctx)
    m = np.zeros((4, 4), dtype=np.int64)
    for i, c in enumerate(coeffs):
        m = ctx.vadd(m, ctx.vmul(np.int64(c), mats[i]))
    acc = np.eye(4, dtype=np.int64) % ctx.q
    for _ in range(ctx.p):
        acc = matmul(ctx, acc, m)
    return _expand(ctx, acc)


def validate_super_jacobi(alg: SuperAlgebra):
    """Graded Jacobi identity on all ordered basis triples.

    Returns (ok, first_violation) where the violation is a name triple.
    """
    ctx = alg.ctx
    par = alg.parities

    def ad(x, v):
        # bracket of basis x with coefficient vector v
        out = np.zeros(8, dtype=np.int64)
        for j in np.nonzero(v)[0]:
            out = ctx.vadd(out, ctx.vmul(np.int64(v[j]), alg.sc[x, j]))
        return out

    for x in range(8):
        for y in range(8):
            for z in range(8):
                t1 = ad(x, alg.sc[y, z])
                t2 = ad(y, alg.sc[z, x])
                t3 = ad(z, alg.sc[x, y])
                s1 = (-1) ** (par[x] * par[z])
                s2 = (-1) ** (par[y] * par[x])
                s3 = (-1) ** (par[z] * par[y])
                total = np.zeros(8, dtype=np.int64)
                for sgn, t in ((s1, t1), (s2, t2), (s3, t3)):
                    total = ctx.vadd(total, t if sgn == 1 else ctx.vneg(t))
                if np.any(total):
                    names = alg.basis_names
                    return False, (names[x], names[y], names[z])
    return True, None


def validate_weight_grading(alg: SuperAlgebra):
    """[g_a, g_b] lands in g_{a+b} for every basis pair."""
    for x in range(alg.dim):
        for y in range(alg.dim):
            target = (
                alg.weights[x][0] + alg.weights[y][0],
                alg.weights[x][1] + alg.weights[y][1],
            )
            for z in np.nonzero(alg.sc[x, y])[0]:
                if alg.weights[z] != target:
                    return False, (alg.basis_names[x], alg.basis_names[y])
    return True, None


def validate_restrictedness(alg: SuperAlgebra):
    """[x^[p], y] == ad(x)^p y for every even basis x and every basis y."""
    ctx = alg.ctx

    def ad_vec(xcoeffs, v):
        out = np.zeros(8, dtype=np.int64)
        for i in np.nonzero(xcoeffs)[0]:
            for j in np.nonzero(v)[0]:
                out = ctx.vadd(
                    out, ctx.vmul(np.int64(ctx.mul(int(xcoeffs[i]), int(v[j]))), alg.sc[i, j])
                )
        return out

    for x in range(4):
        xp = alg.p_map[x]
        ex = np.zeros(8, dtype=np.int64)
        ex[x] = 1
        for y in range(8):
            ey = np.zeros(8, dtype=np.int64)
            ey[y] = 1
            lhs = ad_vec(xp, ey)
            rhs = ey
            for _ in range(ctx.p):
                rhs = ad_vec(ex, rhs)
            if np.any(ctx.vsub(lhs, rhs)):
                return False, (alg.basis_names[x], alg.basis_names[y])
    return True, None


def abelianization_sdim(alg: SuperAlgebra):
    """sdim of g/[g,g], parity-split.

    Brackets of homogeneous elements are homogeneous, so the derived
    subalgebra splits along parity and the two ranks can be taken on the
    parity-restricted coordinate blocks.
    """
    ctx = alg.ctx
    even_idx = [i for i, p in enumerate(alg.parities) if p == 0]
    odd_idx = [i for i, p in enumerate(alg.parities) if p == 1]
    rows = [alg.sc[x, y] for x in range(alg.dim) for y in range(alg.dim)]
    rows = np.array(rows, dtype=np.int64).reshape(-1, alg.dim)
    even_rows = rows[:, even_idx]
    odd_rows = rows[:, odd_idx]
    _, piv_e = rref_array(ctx, even_rows)
    _, piv_o = rref_array(ctx, odd_rows)
    return (len(even_idx) - len(piv_e), len(odd_idx) - len(piv_o))

"""Dense exact linear algebra and subspace calculus over a FieldCtx.

Matrices are numpy int64 grids of encoded field values (see ff).
Subspaces are kept in reduced row-echelon form at all times, so equality
of subspaces is equality of basis matrices and every certificate that
leaves this module is canonical.
"""

from __future__ import annotations

import numpy as np

from .ff import FieldCtx, FieldElem


def rref_array(ctx: FieldCtx, a: np.ndarray):
    """Reduced row-echelon form of an encoded array.

    Returns (rref, pivot_columns).  Pivot selection is deterministic:
    leftmost column first, first nonzero row within it.
    """
    a = np.array(a, dtype=np.int64)
    rows, cols = a.shape
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        piv_inv = ctx.inv(int(a[r, c]))
        a[r] = ctx.vmul(a[r], piv_inv)
        col = a[:, c].copy()
        col[r] = 0
        mask = col != 0
        if mask.any():
            a[mask] = ctx.vsub(a[mask], ctx.vmul(col[mask][:, None], a[r][None, :]))
        pivots.append(c)
        r += 1
    return a, pivots


def matmul(ctx: FieldCtx, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if ctx.k == 1:
        # entries < p <= 7 and dimensions stay small, so int64 cannot overflow
        return (a @ b) % ctx.p
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for j in range(a.shape[1]):
        col = a[:, j]
        nz = np.nonzero(col)[0]
        if nz.size:
            out[nz] = ctx.vadd(out[nz], ctx.vmul(col[nz][:, None], b[j][None, :]))
    return out


def matvec(ctx: FieldCtx, a: np.ndarray, v: np.ndarray) -> np.ndarray:
    return matmul(ctx, a, v.reshape(-1, 1))[:, 0]


class Matrix:
    """Dense matrix over a FieldCtx."""

    def __init__(self, ctx: FieldCtx, data):
        self.ctx = ctx
        a = np.array(data, dtype=np.int64)
        if a.ndim != 2:
            raise ValueError("matrix data must be 2-dimensional")
        self.a = a

    @classmethod
    def from_elems(cls, ctx, rows):
        data = [[e.val if isinstance(e, FieldElem) else ctx.of_int(e) for e in row] for row in rows]
        return cls(ctx, data)

    @classmethod
    def zeros(cls, ctx, rows, cols):
        return cls(ctx, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, ctx, n):
        return cls(ctx, np.eye(n, dtype=np.int64))

    @property
    def rows(self):
        return self.a.shape[0]

    @property
    def cols(self):
        return self.a.shape[1]

    def __getitem__(self, ij):
        return FieldElem(self.ctx, int(self.a[ij]))

    def __matmul__(self, other):
        return Matrix(self.ctx, matmul(self.ctx, self.a, other.a))

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.ctx == other.ctx
            and self.a.shape == other.a.shape
            and bool((self.a == other.a).all())
        )

    def __repr__(self):
        return f"Matrix({self.ctx}, {self.a.tolist()})"


def rref(m: Matrix):
    """(reduced matrix, rank, pivot columns)."""
    r, pivots = rref_array(m.ctx, m.a)
    return Matrix(m.ctx, r), len(pivots), tuple(pivots)


def kernel_array(ctx: FieldCtx, a: np.ndarray) -> np.ndarray:
    """Canonical basis (RREF rows) of the right null space."""
    red, pivots = rref_array(ctx, a)
    cols = a.shape[1]
    free = [c for c in range(cols) if c not in set(pivots)]
    if not free:
        return np.zeros((0, cols), dtype=np.int64)
    vecs = np.zeros((len(free), cols), dtype=np.int64)
    for i, fc in enumerate(free):
        vecs[i, fc] = 1 % ctx.q
        for ri, pc in enumerate(pivots):
            vecs[i, pc] = ctx.neg(int(red[ri, fc]))
    out, _ = rref_array(ctx, vecs)
    return out


class Subspace:
    """A subspace of F^ambient, stored as a canonical RREF basis."""

    def __init__(self, ctx: FieldCtx, ambient_dim: int, basis: np.ndarray, canonical=False):
        self.ctx = ctx
        self.ambient_dim = ambient_dim
        basis = np.asarray(basis, dtype=np.int64).reshape(-1, ambient_dim)
        if not canonical:
            red, pivots = rref_array(ctx, basis)
            basis = red[: len(pivots)]
        self.basis = basis
        self.pivots = tuple(int(np.nonzero(row)[0][0]) for row in basis)

    @classmethod
    def zero(cls, ctx, ambient_dim):
        return cls(ctx, ambient_dim, np.zeros((0, ambient_dim), dtype=np.int64), canonical=True)

    @classmethod
    def full(cls, ctx, ambient_dim):
        return cls(ctx, ambient_dim, np.eye(ambient_dim, dtype=np.int64), canonical=True)

    @classmethod
    def span(cls, ctx, ambient_dim, vectors):
        if len(vectors) == 0:
            return cls.zero(ctx, ambient_dim)
        return cls(ctx, ambient_dim, np.array(vectors, dtype=np.int64))

    @property
    def dim(self):
        return self.basis.shape[0]

    def contains_vector(self, v: np.ndarray) -> bool:
        return not np.any(self.reduce_vector(v))

    def reduce_vector(self, v: np.ndarray) -> np.ndarray:
        """Residue of v after elimination against the basis rows."""
        v = np.array(v, dtype=np.int64)
        for row, piv in zip(self.basis, self.pivots):
            c = int(v[piv])
            if c:
                v = self.ctx.vsub(v, self.ctx.vmul(row, c))
        return v

    def contains(self, other: "Subspace") -> bool:
        return all(self.contains_vector(row) for row in other.basis)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_compat(other)
        stacked = np.concatenate([self.basis, other.basis], axis=0)
        return Subspace(self.ctx, self.ambient_dim, stacked)

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus block construction."""
        self._check_compat(other)
        n = self.ambient_dim
        top = np.concatenate([self.basis, self.basis], axis=1)
        bot = np.concatenate([other.basis, np.zeros_like(other.basis)], axis=1)
        red, pivots = rref_array(self.ctx, np.concatenate([top, bot], axis=0))
        inter_rows = [
            red[i, n:]
            for i in range(len(pivots))
            if not np.any(red[i, :n])
        ]
        if not inter_rows:
            return Subspace.zero(self.ctx, n)
        return Subspace(self.ctx, n, np.array(inter_rows, dtype=np.int64))

    def quotient_dim(self, other: "Subspace") -> int:
        self._check_compat(other)
        if not self.contains(other):
            raise ValueError("quotient_dim requires the second subspace to be contained in the first")
        return self.dim - other.dim

    def _check_compat(self, other):
        if self.ctx != other.ctx or self.ambient_dim != other.ambient_dim:
            raise ValueError("subspaces live in different ambient spaces")

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ctx == other.ctx
            and self.ambient_dim == other.ambient_dim
            and self.basis.shape == other.basis.shape
            and bool((self.basis == other.basis).all())
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis.tobytes()))

    def to_json_dict(self):
        return {
            "ambient": self.ambient_dim,
            "basis": [[list(self.ctx.decode(int(v))) for v in row] for row in self.basis],
        }

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def kernel_basis(m: Matrix) -> Subspace:
    return Subspace(m.ctx, m.cols, kernel_array(m.ctx, m.a), canonical=True)


def subspace_ops(a: Subspace, b: Subspace, mode: str):
    """Dispatch helper: mode in {sum, intersect, contains, quotient_dim}."""
    if mode == "sum":
        return a.sum(b)
    if mode == "intersect":
        return a.intersect(b)
    if mode == "contains":
        return a.contains(b)
    if mode == "quotient_dim":
        return a.quotient_dim(b)
    raise ValueError(f"unknown subspace mode {mode!r}")

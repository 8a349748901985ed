"""Baby Verma modules and simple quotients of q(2).

A GModule is eight action matrices plus per-basis-vector parity and
weight metadata.  Verma modules are compiled from the published action
tables; the module-axiom validator (bracket compatibility on all 64
generator pairs) is the arbiter of transcription faults, and a failed
check aborts construction with the offending formula named.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .exactla import Subspace, matmul, matvec, rref_array
from .ff import FieldCtx, FieldElem, artin_schreier_roots, square_roots
from .qsuper import BASIS_NAMES, SuperAlgebra, even_combo_p_power


class ModuleAxiomError(ValueError):
    """Raised when compiled action matrices violate bracket compatibility."""


class BudgetExceeded(RuntimeError):
    """Raised when a projective weight-space enumeration is too large."""


DEFAULT_BUDGET = 10 ** 6


@dataclass(frozen=True)
class PChar:
    """A p-character, given by a representative of its conjugacy type.

    chi(e) = 0 always; f_val = chi(f); h_vals = (chi(h1), chi(h2)),
    stored as mod-p integers.
    """

    kind: str  # zero | nilpotent | semisimple | mixed
    f_val: int = 0
    h_vals: tuple = (0, 0)

    @classmethod
    def zero(cls):
        return cls("zero")

    @classmethod
    def nilpotent(cls):
        return cls("nilpotent", f_val=1)

    @classmethod
    def semisimple(cls, a, b):
        if (a, b) == (0, 0):
            return cls.zero()
        return cls("semisimple", h_vals=(a, b))

    @classmethod
    def mixed(cls, a):
        if a == 0:
            raise ValueError("mixed p-character needs a nonzero diagonal value")
        return cls("mixed", f_val=1, h_vals=(a, a))

    def value(self, name: str, ctx: FieldCtx) -> int:
        """chi on an even basis element, encoded in ctx."""
        if name == "h1":
            return ctx.of_int(self.h_vals[0])
        if name == "h2":
            return ctx.of_int(self.h_vals[1])
        if name == "f":
            return ctx.of_int(self.f_val)
        if name == "e":
            return 0
        raise ValueError(f"chi is only defined on even basis elements, got {name}")

    def is_trivial(self):
        return self.f_val == 0 and self.h_vals == (0, 0)

    def describe(self):
        if self.kind == "semisimple":
            return f"semisimple:{self.h_vals[0]},{self.h_vals[1]}"
        if self.kind == "mixed":
            return f"mixed:{self.h_vals[0]}"
        return self.kind


@dataclass(frozen=True)
class Weight:
    """A highest weight (lambda1, lambda2), encoded in a FieldCtx."""

    ctx: FieldCtx
    l1: int
    l2: int

    @classmethod
    def of_ints(cls, ctx, a, b):
        return cls(ctx, ctx.of_int(a), ctx.of_int(b))

    def in_lambda_chi(self, pchar: PChar) -> bool:
        ctx = self.ctx
        for lam, name in ((self.l1, "h1"), (self.l2, "h2")):
            chi = pchar.value(name, ctx)
            if ctx.sub(ctx.pow(lam, ctx.p), lam) != ctx.pow(chi, ctx.p):
                return False
        return True

    def is_zero(self):
        return self.l1 == 0 and self.l2 == 0

    def as_fp_ints(self):
        """(l1, l2) as plain integers when both lie in F_p, else None."""
        if self.ctx.k == 1:
            return (self.l1, self.l2)
        c1, c2 = self.ctx.decode(self.l1), self.ctx.decode(self.l2)
        if any(c1[1:]) or any(c2[1:]):
            return None
        return (c1[0], c2[0])

    def describe(self):
        ctx = self.ctx
        if ctx.k == 1:
            return f"({self.l1},{self.l2})"
        return f"({list(ctx.decode(self.l1))},{list(ctx.decode(self.l2))})"


def lambda_set(pchar: PChar, ctx: FieldCtx):
    """All weights in Lambda_chi inside ctx, sorted by encoded value."""
    roots = []
    for name in ("h1", "h2"):
        chi = pchar.value(name, ctx)
        c = FieldElem(ctx, ctx.pow(chi, ctx.p))
        rs = artin_schreier_roots(c)
        if not rs:
            return []
        roots.append(sorted(r.val for r in rs))
    return [Weight(ctx, a, b) for a in roots[0] for b in roots[1]]


@dataclass
class GModule:
    """A finite-dimensional q(2)-module given by explicit action matrices."""

    alg: SuperAlgebra
    labels: list  # (a, j, k) tuples
    parities: np.ndarray
    weights: list  # per basis vector, encoded (w1, w2)
    actions: dict  # basis name -> dim x dim encoded matrix
    pchar: PChar
    lam: Weight
    kind: str  # verma | simple | quotient | trivial
    label_style: str = "paren"  # paren: f^a F^j H1^k; bracket: f^a F^j H2^k
    case: Optional[int] = None
    mu: Optional[int] = None
    parent: Optional["GModule"] = None
    kernel: Optional[Subspace] = None

    @property
    def ctx(self) -> FieldCtx:
        return self.alg.ctx

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index_of(self, label) -> int:
        return self.labels.index(tuple(label))

    def basis_vector(self, label) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[self.index_of(label)] = 1
        return v

    def coset_vector(self, label) -> np.ndarray:
        """Coordinates of the coset of an ambient basis label; for quotient
        modules the label may be any label of the parent module."""
        if self.kernel is None:
            return self.basis_vector(label)
        amb = self.parent.basis_vector(label)
        red = self.kernel.reduce_vector(amb)
        keep = [i for i in range(self.parent.dim) if i not in set(self.kernel.pivots)]
        return red[keep]

    def weight_spaces(self):
        """Map (w1, w2) -> list of basis indices, insertion-ordered."""
        out = {}
        for i, w in enumerate(self.weights):
            out.setdefault(w, []).append(i)
        return out

    def parity_indices(self, parity: int):
        return [i for i in range(self.dim) if self.parities[i] == parity]

    def sdim(self):
        return (len(self.parity_indices(0)), len(self.parity_indices(1)))

    def stacked_action(self) -> np.ndarray:
        return np.concatenate([self.actions[n] for n in BASIS_NAMES], axis=0)

    def label_str(self, label) -> str:
        a, j, k = label
        if self.label_style == "bracket":
            return f"[{a},{j},{k}]"
        return f"({a},{j},{k})"

    def to_json_dict(self):
        return {
            "field": self.ctx.to_json_dict(),
            "kind": self.kind,
            "chi": self.pchar.describe(),
            "lambda": [list(self.ctx.decode(self.lam.l1)), list(self.ctx.decode(self.lam.l2))],
            "dim": self.dim,
            "labels": [self.label_str(l) for l in self.labels],
            "parities": [int(x) for x in self.parities],
            "weights": [
                [list(self.ctx.decode(int(w1))), list(self.ctx.decode(int(w2)))]
                for w1, w2 in self.weights
            ],
            "actions": {n: m.tolist() for n, m in self.actions.items()},
        }


# ---------------------------------------------------------------------------
# Verma module construction


def _verma_labels(p: int, full: bool):
    ks = (0, 1) if full else (0,)
    return [(a, j, k) for a in range(p) for j in (0, 1) for k in ks]


def dispatch_case(ctx: FieldCtx, lam: Weight) -> int:
    """Which of the four action-table cases applies; case 4 is checked
    first so lambda = 0 always lands there."""
    l1, l2 = lam.l1, lam.l2
    if l2 == ctx.neg(l1):
        return 4
    if l1 == 0:
        return 1
    if l2 == 0:
        return 2
    return 3


def mu_squared(ctx: FieldCtx, lam: Weight) -> int:
    """The square of the case-3 constant: -1 when lambda1 = lambda2,
    else -lambda1/lambda2."""
    if lam.l1 == lam.l2:
        return ctx.neg(1)
    return ctx.neg(ctx.mul(lam.l1, ctx.inv(lam.l2)))


def choose_mu(ctx: FieldCtx, lam: Weight) -> int:
    roots = square_roots(FieldElem(ctx, mu_squared(ctx, lam)))
    if not roots:
        raise ValueError(
            "no valid mu in the ambient field; enlarge the field (k -> 2k)"
        )
    return min(r.val for r in roots)


def build_verma(
    pchar: PChar, lam: Weight, ctx: FieldCtx, mu: Optional[int] = None, validate=True
) -> GModule:
    """Baby Verma module with the printed g-action, dimension 2p for
    lambda = 0 and 4p otherwise."""
    if lam.ctx != ctx:
        raise ValueError("weight not defined over the given field")
    if not lam.in_lambda_chi(pchar):
        raise ValueError(
            f"lambda {lam.describe()} is not compatible with chi ({pchar.describe()})"
        )
    p = ctx.p
    l1, l2 = lam.l1, lam.l2
    case = dispatch_case(ctx, lam)
    full = not lam.is_zero()
    labels = _verma_labels(p, full)
    index = {lab: i for i, lab in enumerate(labels)}
    dim = len(labels)
    one = 1
    chi_f_p = ctx.pow(pchar.value("f", ctx), p)

    def F(n: int) -> int:
        return ctx.of_int(n)

    def neg(v):
        return ctx.neg(v)

    def sgn_i(i):  # (-1)^i
        return F(1) if i % 2 == 0 else F(-1)

    # -- shared actions -----------------------------------------------------

    def act_F(a, j, k):
        if j == 0:
            return [((a, 1, k), one)]
        return []

    def act_f(a, j, k):
        if a != p - 1:
            return [((a + 1, j, k), one)]
        if chi_f_p:
            return [((0, j, k), chi_f_p)]
        return []

    def lower_tail(a, j, k):
        # delta_{a != p-1}(a+1, 0, k) + delta_{a = p-1} chi(f)^p (0, 0, k)
        if a != p - 1:
            return [((a + 1, 0, k), one)]
        if chi_f_p:
            return [((0, 0, k), chi_f_p)]
        return []

    # -- per-case e, E, H1, H2 ----------------------------------------------

    if case == 1:
        # lambda = (0, lambda2), basis f^a F^j H2^k v
        def c_lam(k):
            return one if k == 0 else l2

        def act_e(a, j, k):
            out = []
            if a:
                coef = neg(ctx.mul(F(a), ctx.add(F(a - (-1) ** j), l2)))
                out.append(((a - 1, j, k), coef))
            if (j, k) == (1, 0):
                out.append(((a, 0, 1), F(-1)))
            if (j, k) == (1, 1):
                out.append(((a, 0, 0), neg(l2)))
            return out

        def act_E(a, j, k):
            out = []
            if j == 1:
                if a:
                    out.append(((a - 1, 1, 1 - k), ctx.mul(F(a), c_lam(k))))
                out.append(((a, 0, k), l2))
            else:
                if a:
                    out.append(((a - 1, 0, 1 - k), neg(ctx.mul(F(a), c_lam(k)))))
                if a >= 2:
                    out.append(((a - 2, 1, k), neg(F(a * (a - 1)))))
            return out

        def act_H(i):
            def act(a, j, k):
                out = []
                if j == 0:
                    if a:
                        out.append(((a - 1, 1, k), ctx.mul(sgn_i(i), F(a))))
                    if i == 2:
                        out.append(((a, 0, 1 - k), c_lam(k)))
                else:
                    out.extend(lower_tail(a, j, k))
                    if i == 2:
                        out.append(((a, 1, 1 - k), neg(c_lam(k))))
                return out

            return act

    elif case == 2:
        # lambda = (lambda1, 0), basis f^a F^j H1^k v
        def c_lam(k):
            return one if k == 0 else l1

        def act_e(a, j, k):
            out = []
            if a:
                coef = ctx.mul(F(a), ctx.sub(l1, F(a - (-1) ** j)))
                out.append(((a - 1, j, k), coef))
            if (j, k) == (1, 0):
                out.append(((a, 0, 1), one))
            if (j, k) == (1, 1):
                out.append(((a, 0, 0), l1))
            return out

        def act_E(a, j, k):
            out = []
            if j == 1:
                if a:
                    out.append(((a - 1, 1, 1 - k), neg(ctx.mul(F(a), c_lam(k)))))
                out.append(((a, 0, k), l1))
            else:
                if a:
                    out.append(((a - 1, 0, 1 - k), ctx.mul(F(a), c_lam(k))))
                if a >= 2:
                    out.append(((a - 2, 1, k), neg(F(a * (a - 1)))))
            return out

        def act_H(i):
            def act(a, j, k):
                out = []
                if j == 0:
                    if a:
                        out.append(((a - 1, 1, k), ctx.mul(sgn_i(i), F(a))))
                    if i == 1:
                        out.append(((a, 0, 1 - k), c_lam(k)))
                else:
                    out.extend(lower_tail(a, j, k))
                    if i == 1:
                        out.append(((a, 1, 1 - k), neg(c_lam(k))))
                return out

            return act

    elif case == 3:
        # lambda1 = lambda2 != 0, or both nonzero with distinct squares
        if mu is None:
            mu = choose_mu(ctx, lam)
        mu_inv = ctx.inv(mu)

        def c1(k):  # delta_{k=0} + lambda1 delta_{k=1}
            return one if k == 0 else l1

        def c2(k):  # delta_{k=0} mu^-1 + mu lambda2 delta_{k=1}
            return mu_inv if k == 0 else ctx.mul(mu, l2)

        def cE(k):  # delta_{k=0}(1 + mu^-1) + (lambda1 + mu lambda2) delta_{k=1}
            return ctx.add(one, mu_inv) if k == 0 else ctx.add(l1, ctx.mul(mu, l2))

        def act_e(a, j, k):
            out = []
            if (j, k) == (1, 1):
                out.append(((a, 0, 0), ctx.add(l1, ctx.mul(mu, l2))))
            if (j, k) == (1, 0):
                out.append(((a, 0, 1), ctx.add(one, mu_inv)))
            if a:
                coef = ctx.mul(F(a), ctx.add(ctx.sub(l1, l2), F(-(a - (-1) ** j))))
                out.append(((a - 1, j, k), coef))
            return out

        def act_E(a, j, k):
            out = []
            if j == 1:
                if a:
                    out.append(((a - 1, 1, 1 - k), neg(ctx.mul(F(a), cE(k)))))
                out.append(((a, 0, k), ctx.add(l1, l2)))
            else:
                if a:
                    out.append(((a - 1, 0, 1 - k), ctx.mul(F(a), cE(k))))
                if a >= 2:
                    out.append(((a - 2, 1, k), neg(F(a * (a - 1)))))
            return out

        def act_H(i):
            def act(a, j, k):
                out = []
                if j == 0:
                    if a:
                        out.append(((a - 1, 1, k), ctx.mul(sgn_i(i), F(a))))
                    if i == 1:
                        out.append(((a, 0, 1 - k), c1(k)))
                    else:
                        out.append(((a, 0, 1 - k), neg(c2(k))))
                else:
                    out.extend(lower_tail(a, j, k))
                    if i == 1:
                        out.append(((a, 1, 1 - k), neg(c1(k))))
                    else:
                        out.append(((a, 1, 1 - k), c2(k)))
                return out

            return act

    else:
        # case 4: lambda = (lambda1, -lambda1), including lambda = 0
        if full:

            def act_e(a, j, k):
                out = []
                if a:
                    coef = ctx.mul(
                        F(a), ctx.add(ctx.mul(F(2), l1), F(-(a - (-1) ** j)))
                    )
                    out.append(((a - 1, j, k), coef))
                if (j, k) == (1, 0):
                    out.append(((a, 0, 1), F(2)))
                return out

            def act_E(a, j, k):
                out = []
                if (j, k) != (1, 1):
                    if k == 0 and a:
                        out.append(((a - 1, j, 1), ctx.mul(sgn_i(j), F(2 * a))))
                    if j == 0 and a >= 2:
                        out.append(((a - 2, 1, k), neg(F(a * (a - 1)))))
                return out

            def act_H(i):
                def act(a, j, k):
                    out = []
                    if j == 1:
                        coef = sgn_i(i) if k == 0 else neg(l1)
                        out.append(((a, 1, 1 - k), coef))
                        out.extend(lower_tail(a, j, k))
                    else:
                        coef = neg(sgn_i(i)) if k == 0 else l1
                        out.append(((a, 0, 1 - k), coef))
                        if a:
                            out.append(((a - 1, 1, k), ctx.mul(sgn_i(i), F(a))))
                    return out

                return act

        else:
            # lambda = 0, basis {(a, j, 0)}
            def act_e(a, j, k):
                if a:
                    return [((a - 1, j, 0), neg(F(a * (a - (-1) ** j))))]
                return []

            def act_E(a, j, k):
                if j == 0 and a >= 2:
                    return [((a - 2, 1, 0), neg(F(a * (a - 1))))]
                return []

            def act_H(i):
                def act(a, j, k):
                    if j == 1:
                        return lower_tail(a, j, k)
                    if a:
                        return [((a - 1, 1, 0), ctx.mul(sgn_i(i), F(a)))]
                    return []

                return act

    # -- assemble matrices --------------------------------------------------

    builders = {
        "e": act_e,
        "f": act_f,
        "E": act_E,
        "F": act_F,
        "H1": act_H(1),
        "H2": act_H(2),
    }
    actions = {}
    for name, fn in builders.items():
        m = np.zeros((dim, dim), dtype=np.int64)
        for lab, col in index.items():
            for tgt, coef in fn(*lab):
                if coef:
                    m[index[tgt], col] = ctx.add(int(m[index[tgt], col]), coef)
        actions[name] = m

    weights = [
        (ctx.sub(l1, F(a + j)), ctx.add(l2, F(a + j))) for (a, j, k) in labels
    ]
    for name, i in (("h1", 0), ("h2", 1)):
        m = np.zeros((dim, dim), dtype=np.int64)
        for col in range(dim):
            m[col, col] = weights[col][i]
        actions[name] = m

    alg = _algebra_for(ctx)
    mod = GModule(
        alg=alg,
        labels=labels,
        parities=np.array([(j + k) % 2 for (a, j, k) in labels], dtype=np.int64),
        weights=weights,
        actions=actions,
        pchar=pchar,
        lam=lam,
        kind="verma",
        label_style="bracket" if case == 1 else "paren",
        case=case,
        mu=mu if case == 3 else None,
    )
    if validate:
        ok, fault = validate_module_axiom(mod)
        if not ok:
            raise ModuleAxiomError(
                f"bracket compatibility fails on generator pair {fault} "
                f"(case {case}, chi={pchar.describe()}, lambda={lam.describe()})"
            )
    return mod


_ALG_CACHE = {}


def _algebra_for(ctx: FieldCtx) -> SuperAlgebra:
    from .qsuper import build_q2

    alg = _ALG_CACHE.get(ctx)
    if alg is None:
        alg = build_q2(ctx)
        _ALG_CACHE[ctx] = alg
    return alg


# ---------------------------------------------------------------------------
# validators


def validate_module_axiom(m: GModule):
    """A_[x,y] == A_x A_y - (-1)^{|x||y|} A_y A_x on all 64 ordered pairs."""
    ctx = m.ctx
    alg = m.alg
    mats = [m.actions[n] for n in alg.basis_names]
    for x in range(8):
        for y in range(8):
            lhs = np.zeros((m.dim, m.dim), dtype=np.int64)
            for z in np.nonzero(alg.sc[x, y])[0]:
                lhs = ctx.vadd(lhs, ctx.vmul(np.int64(alg.sc[x, y, z]), mats[z]))
            rhs = matmul(ctx, mats[x], mats[y])
            yx = matmul(ctx, mats[y], mats[x])
            if alg.parities[x] and alg.parities[y]:
                rhs = ctx.vadd(rhs, yx)
            else:
                rhs = ctx.vsub(rhs, yx)
            if np.any(ctx.vsub(lhs, rhs)):
                return False, (alg.basis_names[x], alg.basis_names[y])
    return True, None


def validate_grading(m: GModule):
    """Action matrices must respect both the parity and the weight grading."""
    ctx = m.ctx
    for t, name in enumerate(m.alg.basis_names):
        mat = m.actions[name]
        wx = m.alg.weights[t]
        px = m.alg.parities[t]
        for col in range(m.dim):
            tgt_w = (
                ctx.add(m.weights[col][0], ctx.of_int(wx[0])),
                ctx.add(m.weights[col][1], ctx.of_int(wx[1])),
            )
            tgt_p = (m.parities[col] + px) % 2
            for row in np.nonzero(mat[:, col])[0]:
                if m.weights[row] != tgt_w or m.parities[row] != tgt_p:
                    return False, (name, m.labels[col])
    return True, None


def validate_p_character(m: GModule, trials=20, seed=0):
    """x^p - x^[p] - chi(x)^p acts as zero, for basis x and random even x."""
    ctx = m.ctx
    rng = random.Random(seed)
    combos = [tuple(1 if i == t else 0 for i in range(4)) for t in range(4)]
    combos += [tuple(rng.randrange(ctx.q) for _ in range(4)) for _ in range(trials)]
    even_names = ("h1", "h2", "e", "f")
    for coeffs in combos:
        a_x = np.zeros((m.dim, m.dim), dtype=np.int64)
        chi_x = 0
        for c, name in zip(coeffs, even_names):
            if c:
                a_x = ctx.vadd(a_x, ctx.vmul(np.int64(c), m.actions[name]))
                chi_x = ctx.add(chi_x, ctx.mul(c, m.pchar.value(name, ctx)))
        a_pow = np.eye(m.dim, dtype=np.int64)
        for _ in range(ctx.p):
            a_pow = matmul(ctx, a_pow, a_x)
        xp = even_combo_p_power(m.alg, coeffs)
        for z in np.nonzero(xp)[0]:
            a_pow = ctx.vsub(
                a_pow, ctx.vmul(np.int64(xp[z]), m.actions[m.alg.basis_names[z]])
            )
        chi_term = ctx.pow(chi_x, ctx.p)
        if chi_term:
            a_pow = ctx.vsub(a_pow, ctx.vmul(np.int64(chi_term), np.eye(m.dim, dtype=np.int64)))
        if np.any(a_pow):
            return False, coeffs
    return True, None


# ---------------------------------------------------------------------------
# submodules, spinning, simple quotients


def spin(m: GModule, seed_vectors) -> Subspace:
    """Smallest action-closed subspace containing the seeds."""
    ctx = m.ctx
    mats = [m.actions[n] for n in m.alg.basis_names]
    space = Subspace.zero(ctx, m.dim)
    queue = []
    for v in seed_vectors:
        res = space.reduce_vector(np.asarray(v, dtype=np.int64))
        if np.any(res):
            space = space.sum(Subspace(ctx, m.dim, res.reshape(1, -1)))
            queue.append(res)
    while queue:
        v = queue.pop()
        for mat in mats:
            img = matvec(ctx, mat, v)
            res = space.reduce_vector(img)
            if np.any(res):
                space = space.sum(Subspace(ctx, m.dim, res.reshape(1, -1)))
                queue.append(res)
    return space


def is_action_closed(m: GModule, s: Subspace) -> bool:
    for name in m.alg.basis_names:
        for row in s.basis:
            if not s.contains_vector(matvec(m.ctx, m.actions[name], row)):
                return False
    return True


def _underline(v: int, p: int) -> int:
    return v % p


def prop_submodule(m: GModule, which: str) -> Subspace:
    """The printed submodules M1 / M2 / M3 of a case-4 Verma module."""
    ctx = m.ctx
    p = ctx.p
    fp = m.lam.as_fp_ints()
    if m.kind != "verma" or m.case != 4:
        raise ValueError("printed submodules exist only for case-4 Verma modules")
    if fp is None:
        raise ValueError("printed submodules require lambda in F_p^2")
    l1 = fp[0]
    vecs = []
    if which == "M1":
        if m.pchar.kind != "zero" or l1 == 0:
            raise ValueError("M1 requires chi = 0 and lambda1 != 0")
        u = _underline(2 * l1, p)
        for a in range(p):
            vecs.append(m.basis_vector((a, 1, 1)))
        for c in range(u + 1, p):
            vecs.append(m.basis_vector((c, 0, 0)))
            vecs.append(m.basis_vector((c, 0, 1)))
            vecs.append(m.basis_vector((c, 1, 0)))
        for b in range(u):
            v = m.basis_vector(((b + 1) % p, 0, 1))
            v = ctx.vsub(v, ctx.vmul(np.int64(m.lam.l1), m.basis_vector((b, 1, 0))))
            vecs.append(v)
        vecs.append(m.basis_vector((u, 1, 0)))
    elif which == "M2":
        if m.pchar.kind != "nilpotent" or l1 == 0:
            raise ValueError("M2 requires nilpotent chi and lambda1 != 0")
        for a in range(p):
            vecs.append(m.basis_vector((a, 1, 1)))
            v = m.basis_vector(((a + 1) % p, 0, 1))
            v = ctx.vsub(v, ctx.vmul(np.int64(m.lam.l1), m.basis_vector((a, 1, 0))))
            vecs.append(v)
    elif which == "M3":
        if not m.lam.is_zero() or m.pchar.kind != "zero":
            raise ValueError("M3 requires lambda = 0 and chi = 0")
        for a in range(1, p):
            vecs.append(m.basis_vector((a, 0, 0)))
            vecs.append(m.basis_vector((a, 1, 0)))
        vecs.append(m.basis_vector((0, 1, 0)))
    else:
        raise ValueError(f"unknown submodule {which!r}")
    sub = Subspace(ctx, m.dim, np.array(vecs, dtype=np.int64))
    if not is_action_closed(m, sub):
        raise ValueError(f"printed basis of {which} does not span a submodule")
    return sub


def maximal_submodule(m: GModule, budget: int = DEFAULT_BUDGET) -> Subspace:
    """Span of all weight vectors that fail to generate the module.

    Every weight space is enumerated projectively; refuses with
    BudgetExceeded when a single space has more than `budget` lines.
    """
    ctx = m.ctx
    gen_target = m.basis_vector((0, 0, 0)) if m.kind == "verma" else None
    if gen_target is None:
        raise ValueError("generic maximal submodule needs a cyclic highest-weight module")
    non_gen = []
    for wt, idxs in sorted(m.weight_spaces().items()):
        d = len(idxs)
        n_lines = (ctx.q ** d - 1) // (ctx.q - 1)
        if n_lines > budget:
            raise BudgetExceeded(
                f"weight space {wt} has {n_lines} projective points (> {budget})"
            )
        for coords in _projective_points(ctx, d):
            v = np.zeros(m.dim, dtype=np.int64)
            for i, c in zip(idxs, coords):
                v[i] = c
            if not spin(m, [v]).contains_vector(gen_target):
                non_gen.append(v)
    if not non_gen:
        return Subspace.zero(ctx, m.dim)
    sub = Subspace(ctx, m.dim, np.array(non_gen, dtype=np.int64))
    if not is_action_closed(m, sub):
        raise RuntimeError("non-generating span is not action-closed")
    if sub.dim == m.dim:
        raise RuntimeError("maximal submodule computation returned the whole module")
    return sub


def _projective_points(ctx, d):
    """Representatives of lines in F^d: first nonzero coordinate is 1."""
    for lead in range(d):
        for tail in _all_tuples(ctx.q, d - lead - 1):
            yield (0,) * lead + (1,) + tail


def _all_tuples(q, n):
    if n == 0:
        yield ()
        return
    for head in range(q):
        for tail in _all_tuples(q, n - 1):
            yield (head,) + tail


def quotient_module(m: GModule, sub: Subspace, kind="quotient") -> GModule:
    """Quotient with coset representatives at the non-pivot coordinates."""
    ctx = m.ctx
    keep = [i for i in range(m.dim) if i not in set(sub.pivots)]
    qdim = len(keep)
    actions = {}
    for name in m.alg.basis_names:
        mat = m.actions[name]
        qm = np.zeros((qdim, qdim), dtype=np.int64)
        for col, i in enumerate(keep):
            img = sub.reduce_vector(mat[:, i])
            qm[:, col] = img[keep]
        actions[name] = qm
    return GModule(
        alg=m.alg,
        labels=[m.labels[i] for i in keep],
        parities=m.parities[keep],
        weights=[m.weights[i] for i in keep],
        actions=actions,
        pchar=m.pchar,
        lam=m.lam,
        kind=kind,
        label_style=m.label_style,
        case=m.case,
        mu=m.mu,
        parent=m,
        kernel=sub,
    )


def check_quotient_simple(m: GModule, budget: int = DEFAULT_BUDGET) -> bool:
    """Every nonzero weight vector generates the whole module."""
    ctx = m.ctx
    for wt, idxs in sorted(m.weight_spaces().items()):
        d = len(idxs)
        n_lines = (ctx.q ** d - 1) // (ctx.q - 1)
        if n_lines > budget:
            raise BudgetExceeded(
                f"weight space {wt} has {n_lines} projective points (> {budget})"
            )
        for coords in _projective_points(ctx, d):
            v = np.zeros(m.dim, dtype=np.int64)
            for i, c in zip(idxs, coords):
                v[i] = c
            if spin(m, [v]).dim != m.dim:
                return False
    return True


def simple_module(
    pchar: PChar,
    lam: Weight,
    ctx: FieldCtx,
    route: str = "proposition",
    budget: int = DEFAULT_BUDGET,
    validate=True,
) -> GModule:
    """The unique simple quotient of the Verma module.

    route=proposition uses the printed M1/M2/M3 kernels (case-4 weights
    in F_p^2 only); route=generic enumerates weight spaces; route=both
    runs both and requires identical kernels.
    """
    z = build_verma(pchar, lam, ctx, validate=validate)
    kern_prop = kern_gen = None
    if route in ("proposition", "both"):
        kern_prop = _proposition_kernel(z)
        if kern_prop is None and route == "proposition":
            raise ValueError(
                "proposition route applies only to lambda = (l, -l) in F_p^2 "
                "with chi zero or nilpotent"
            )
    if route in ("generic", "both"):
        kern_gen = maximal_submodule(z, budget=budget)
    if route == "both":
        if kern_prop is None:
            kern = kern_gen
        elif kern_prop != kern_gen:
            raise RuntimeError(
                "proposition and generic maximal-submodule routes disagree"
            )
        else:
            kern = kern_prop
    else:
        kern = kern_prop if route == "proposition" else kern_gen
    if kern.dim == 0:
        z.kind = "simple"
        return z
    quo = quotient_module(z, kern, kind="simple")
    if validate:
        ok, fault = validate_module_axiom(quo)
        if not ok:
            raise ModuleAxiomError(f"quotient module violates brackets at {fault}")
    return quo


def _proposition_kernel(z: GModule):
    if z.case != 4 or z.lam.as_fp_ints() is None:
        return None
    l1 = z.lam.as_fp_ints()[0]
    if z.pchar.kind == "zero":
        return prop_submodule(z, "M1") if l1 else prop_submodule(z, "M3")
    if z.pchar.kind == "nilpotent":
        if l1:
            return prop_submodule(z, "M2")
        return Subspace.zero(z.ctx, z.dim)
    return None


def target_weight_spaces(m: GModule):
    """Parity-split dimensions of the weight spaces at weights 0, (1,-1)
    and (-1,1), read from the basis metadata."""
    ctx = m.ctx
    out = {}
    for alpha in ((0, 0), (1, -1), (-1, 1)):
        key = (ctx.of_int(alpha[0]), ctx.of_int(alpha[1]))
        even = odd = 0
        for i, w in enumerate(m.weights):
            if w == key:
                if m.parities[i] == 0:
                    even += 1
                else:
                    odd += 1
        out[alpha] = (even, odd)
    return out


def trivial_module(ctx: FieldCtx, even_dim=1, odd_dim=0) -> GModule:
    """A module with all eight actions zero (coefficients of rank tests)."""
    dim = even_dim + odd_dim
    zero = np.zeros((dim, dim), dtype=np.int64)
    return GModule(
        alg=_algebra_for(ctx),
        labels=[(i, 0, 0) for i in range(dim)],
        parities=np.array([0] * even_dim + [1] * odd_dim, dtype=np.int64),
        weights=[(0, 0)] * dim,
        actions={n: zero.copy() for n in BASIS_NAMES},
        pchar=PChar.zero(),
        lam=Weight.of_ints(ctx, 0, 0),
        kind="trivial",
    )

"""Exact arithmetic in F_p and F_{p^k} for odd p.

Field elements are encoded as integers in [0, p^k): the residue-class
polynomial c_0 + c_1 x + ... + c_{k-1} x^{k-1} is stored as the base-p
integer c_0 + c_1 p + ... + c_{k-1} p^{k-1}.  A FieldCtx owns the modulus
polynomial and provides both scalar arithmetic and vectorized numpy
arithmetic on arrays of encoded values.

The defining polynomial of F_{p^k} is always the lexicographically least
monic irreducible of degree k (coefficients compared low-degree-first),
so two contexts with the same (p, k) are interchangeable.
"""

from __future__ import annotations

import functools
import itertools

import numpy as np

# Above this order, extension fields fall back to polynomial arithmetic
# instead of log/exp tables (memory/startup cost).
TABLE_LIMIT = 2 ** 21


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# dense polynomial helpers over F_p (coefficient lists, constant term first)

def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pmod(a, f, p):
    a = list(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df and a:
        if a[-1] == 0:
            a.pop()
            continue
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        a.pop()
    return _ptrim(a)


def _pgcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _pmod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def _ppowmod(base, e, f, p):
    result = [1]
    base = _pmod(base, f, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        e >>= 1
    return result


def poly_is_irreducible(coeffs, p) -> bool:
    """Distinct-degree test for a monic polynomial over F_p.

    f of degree k is irreducible iff x^(p^k) == x (mod f) and
    gcd(x^(p^(k/l)) - x, f) = 1 for every prime l dividing k.
    """
    f = list(coeffs)
    k = len(f) - 1
    if k < 1:
        return False
    x = [0, 1]
    xq = _ppowmod(x, p ** k, f, p)
    if _ptrim([(a - b) % p for a, b in itertools.zip_longest(xq, x, fillvalue=0)]):
        return False
    for ell in _prime_divisors(k):
        xd = _ppowmod(x, p ** (k // ell), f, p)
        diff = _ptrim([(a - b) % p for a, b in itertools.zip_longest(xd, x, fillvalue=0)])
        if len(_pgcd(f, diff, p)) != 1:
            return False
    return True


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------


class FieldCtx:
    """Ambient field F_{p^k} with a fixed monic defining polynomial."""

    def __init__(self, p: int, k: int, poly):
        if not is_prime(p) or p < 3:
            raise ValueError(f"p must be an odd prime, got {p}")
        if k < 1:
            raise ValueError(f"extension degree must be >= 1, got {k}")
        poly = tuple(int(c) % p for c in poly)
        if len(poly) != k + 1 or poly[-1] != 1:
            raise ValueError("defining polynomial must be monic of degree k")
        if k > 1 and not poly_is_irreducible(poly, p):
            raise ValueError("defining polynomial is reducible")
        self.p = p
        self.k = k
        self.q = p ** k
        self.poly = poly
        self._exp = None
        self._log = None
        if k > 1:
            # x^i mod poly for i in [k, 2k-2], as length-k coefficient rows
            self._red = np.zeros((k - 1, k), dtype=np.int64)
            for i in range(k, 2 * k - 1):
                r = _pmod([0] * i + [1], list(poly), p)
                for j, c in enumerate(r):
                    self._red[i - k, j] = c
            if self.q <= TABLE_LIMIT:
                self._build_tables()

    # -- encoding -----------------------------------------------------------

    def encode(self, coeffs) -> int:
        val = 0
        for c in reversed(list(coeffs)):
            val = val * self.p + int(c) % self.p
        return val

    def decode(self, val: int):
        out = []
        for _ in range(self.k):
            val, r = divmod(val, self.p)
            out.append(r)
        return tuple(out)

    def of_int(self, n: int) -> int:
        return n % self.p

    def elem(self, v) -> "FieldElem":
        if isinstance(v, FieldElem):
            return v
        if isinstance(v, int):
            return FieldElem(self, self.of_int(v))
        return FieldElem(self, self.encode(v))

    # -- scalar arithmetic on encoded values --------------------------------

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        return self.encode(
            (x + y) % self.p for x, y in zip(self.decode(a), self.decode(b))
        )

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return self.encode((-x) % self.p for x in self.decode(a))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return int(self._exp[(self._log[a] + self._log[b]) % (self.q - 1)])
        prod = _pmul(list(self.decode(a)), list(self.decode(b)), self.p)
        return self._reduce_poly(prod)

    def _reduce_poly(self, prod) -> int:
        coeffs = list(prod) + [0] * (2 * self.k - 1 - len(prod))
        out = list(coeffs[: self.k])
        for i in range(self.k, 2 * self.k - 1):
            c = coeffs[i]
            if c:
                row = self._red[i - self.k]
                for j in range(self.k):
                    out[j] = (out[j] + c * int(row[j])) % self.p
        return self.encode(out)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        if self._exp is not None:
            return int(self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)])
        return self.pow(a, self.q - 2)

    def pow(self, a: int, e: int) -> int:
        e = e % (self.q - 1) if a != 0 else e
        result = 1 if self.k > 1 else 1 % self.p
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    # -- log/exp tables -----------------------------------------------------

    def _build_tables(self):
        order_factors = _prime_divisors(self.q - 1)
        gen = None
        for g in range(2, self.q):
            if all(self._slow_pow(g, (self.q - 1) // ell) != 1 for ell in order_factors):
                gen = g
                break
        exp = np.zeros(self.q - 1, dtype=np.int64)
        log = np.zeros(self.q, dtype=np.int64)
        cur = 1
        for i in range(self.q - 1):
            exp[i] = cur
            log[cur] = i
            cur = self._reduce_poly(
                _pmul(list(self.decode(cur)), list(self.decode(gen)), self.p)
            )
        self._exp = exp
        self._log = log
        self.generator = gen

    def _slow_pow(self, a, e):
        result = 1
        base = a
        while e:
            if e & 1:
                result = self._reduce_poly(
                    _pmul(list(self.decode(result)), list(self.decode(base)), self.p)
                )
            base = self._reduce_poly(
                _pmul(list(self.decode(base)), list(self.decode(base)), self.p)
            )
            e >>= 1
        return result

    # -- vectorized arithmetic on numpy arrays of encoded values ------------

    def vadd(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        out = np.zeros(a.shape, dtype=np.int64)
        pw = 1
        ra, rb = a.copy(), b.copy()
        for _ in range(self.k):
            ra, da = np.divmod(ra, self.p)
            rb, db = np.divmod(rb, self.p)
            out += ((da + db) % self.p) * pw
            pw *= self.p
        return out

    def vneg(self, a):
        if self.k == 1:
            return (-np.asarray(a)) % self.p
        a = np.asarray(a)
        out = np.zeros(a.shape, dtype=np.int64)
        pw = 1
        ra = a.copy()
        for _ in range(self.k):
            ra, da = np.divmod(ra, self.p)
            out += ((-da) % self.p) * pw
            pw *= self.p
        return out

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b):
        if self.k == 1:
            return (np.asarray(a) * np.asarray(b)) % self.p
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        if self._exp is not None:
            out = np.zeros(a.shape, dtype=np.int64)
            nz = (a != 0) & (b != 0)
            out[nz] = self._exp[(self._log[a[nz]] + self._log[b[nz]]) % (self.q - 1)]
            return out
        flat = np.array(
            [self.mul(int(x), int(y)) for x, y in zip(a.ravel(), b.ravel())],
            dtype=np.int64,
        )
        return flat.reshape(a.shape)

    # -- misc ---------------------------------------------------------------

    def frobenius_matrix(self) -> np.ndarray:
        """Matrix of x -> x^p on the F_p-coordinate space, columns = images
        of the power basis, entries mod-p integers."""
        m = np.zeros((self.k, self.k), dtype=np.int64)
        for j in range(self.k):
            img = self.decode(self.frobenius(self.p ** j if self.k > 1 else 1))
            if self.k == 1:
                img = (1,)
            for i, c in enumerate(img):
                m[i, j] = c
        return m

    def elements(self):
        return range(self.q)

    def to_json_dict(self):
        return {"p": self.p, "k": self.k, "poly": list(self.poly)}

    def __repr__(self):
        return f"FieldCtx(p={self.p}, k={self.k})"

    def __eq__(self, other):
        return (
            isinstance(other, FieldCtx)
            and (self.p, self.k, self.poly) == (other.p, other.k, other.poly)
        )

    def __hash__(self):
        return hash((self.p, self.k, self.poly))


class FieldElem:
    """An element of F_{p^k}, tied to its ambient FieldCtx."""

    __slots__ = ("ctx", "val")

    def __init__(self, ctx: FieldCtx, val: int):
        self.ctx = ctx
        self.val = int(val) % ctx.q

    @property
    def coeffs(self):
        return self.ctx.decode(self.val)

    def _other(self, other):
        if isinstance(other, FieldElem):
            if other.ctx != self.ctx:
                raise ValueError("field elements from different contexts")
            return other.val
        if isinstance(other, int):
            return self.ctx.of_int(other)
        return NotImplemented

    def __add__(self, other):
        v = self._other(other)
        return FieldElem(self.ctx, self.ctx.add(self.val, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._other(other)
        return FieldElem(self.ctx, self.ctx.sub(self.val, v))

    def __rsub__(self, other):
        v = self._other(other)
        return FieldElem(self.ctx, self.ctx.sub(v, self.val))

    def __mul__(self, other):
        v = self._other(other)
        return FieldElem(self.ctx, self.ctx.mul(self.val, v))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg(self.val))

    def __pow__(self, e):
        return FieldElem(self.ctx, self.ctx.pow(self.val, e))

    def inverse(self):
        return FieldElem(self.ctx, self.ctx.inv(self.val))

    def __truediv__(self, other):
        v = self._other(other)
        return FieldElem(self.ctx, self.ctx.mul(self.val, self.ctx.inv(v)))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.val == self.ctx.of_int(other)
        return isinstance(other, FieldElem) and self.ctx == other.ctx and self.val == other.val

    def __hash__(self):
        return hash((self.val, self.ctx.p, self.ctx.k))

    def __bool__(self):
        return self.val != 0

    def __repr__(self):
        if self.ctx.k == 1:
            return f"F{self.ctx.p}({self.val})"
        return f"F{self.ctx.p}^{self.ctx.k}{list(self.coeffs)}"


@functools.lru_cache(maxsize=None)
def make_extension(p: int, k: int) -> FieldCtx:
    """Context for F_{p^k} with the lex-least monic irreducible modulus.

    Coefficient tuples (c_0, ..., c_{k-1}) of candidate moduli
    x^k + c_{k-1} x^{k-1} + ... + c_0 are scanned in lexicographic order
    (low-degree coefficient most significant), keeping the first
    irreducible.  Deterministic across runs by construction.
    """
    if not is_prime(p) or p < 3:
        raise ValueError(f"p must be an odd prime, got {p}")
    if k < 1:
        raise ValueError(f"extension degree must be >= 1, got {k}")
    if k == 1:
        return FieldCtx(p, 1, (0, 1))
    for tail in itertools.product(range(p), repeat=k):
        cand = tuple(tail) + (1,)
        if poly_is_irreducible(cand, p):
            return FieldCtx(p, k, cand)
    raise RuntimeError("no irreducible polynomial found")  # unreachable


def artin_schreier_roots(c: FieldElem) -> set:
    """All x in the ambient field of c with x^p - x = c.

    Solved as an affine F_p-linear system for the matrix of the map
    x -> x^p - x on the coefficient space; the solution set is empty or
    has exactly p elements (a coset of F_p).
    """
    ctx = c.ctx
    p, k = ctx.p, ctx.k
    # columns: (basis_j)^p - basis_j in coordinates
    m = np.zeros((k, k), dtype=np.int64)
    for j in range(k):
        bj = ctx.p ** j if k > 1 else 1
        img = ctx.sub(ctx.frobenius(bj), bj)
        for i, cc in enumerate(ctx.decode(img)):
            m[i, j] = cc
    rhs = np.array(ctx.decode(c.val), dtype=np.int64)
    sol = _solve_affine_mod_p(m, rhs, p)
    if sol is None:
        return set()
    base = ctx.encode(sol)
    roots = set()
    for t in range(p):
        # base + t, where t is the constant polynomial t
        roots.add(FieldElem(ctx, ctx.add(base, t)))
    assert len(roots) == p
    return roots


def _solve_affine_mod_p(m, rhs, p):
    """One particular solution of m x = rhs over F_p, or None."""
    k = m.shape[0]
    aug = np.concatenate([m % p, rhs.reshape(-1, 1) % p], axis=1)
    r = 0
    pivots = []
    for col in range(k):
        nz = np.nonzero(aug[r:, col])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        aug[[r, pr]] = aug[[pr, r]]
        aug[r] = (aug[r] * pow(int(aug[r, col]), p - 2, p)) % p
        for rr in range(aug.shape[0]):
            if rr != r and aug[rr, col]:
                aug[rr] = (aug[rr] - aug[rr, col] * aug[r]) % p
        pivots.append(col)
        r += 1
    for rr in range(r, k):
        if aug[rr, k]:
            return None
    sol = np.zeros(k, dtype=np.int64)
    for i, col in enumerate(pivots):
        sol[col] = aug[i, k]
    return sol


def square_roots(s: FieldElem) -> set:
    """{+r, -r} if s is a nonzero square, {0} if s == 0, else empty.

    Uses the exponent shortcut for q = 3 mod 4 and Tonelli-Shanks
    otherwise; every result is verified by squaring before return.
    """
    ctx = s.ctx
    q = ctx.q
    if s.val == 0:
        return {FieldElem(ctx, 0)}
    if ctx.pow(s.val, (q - 1) // 2) != 1:
        return set()
    if q % 4 == 3:
        r = ctx.pow(s.val, (q + 1) // 4)
    else:
        r = _tonelli_shanks(ctx, s.val)
    assert ctx.mul(r, r) == s.val
    return {FieldElem(ctx, r), FieldElem(ctx, ctx.neg(r))}


def _tonelli_shanks(ctx, n):
    q = ctx.q
    s, m = q - 1, 0
    while s % 2 == 0:
        s //= 2
        m += 1
    # deterministic scan for a non-residue
    z = None
    for cand in range(2, q):
        if ctx.pow(cand, (q - 1) // 2) != 1:
            z = cand
            break
    c = ctx.pow(z, s)
    t = ctx.pow(n, s)
    r = ctx.pow(n, (s + 1) // 2)
    while t != 1:
        t2 = t
        i = 0
        while t2 != 1:
            t2 = ctx.mul(t2, t2)
            i += 1
        b = ctx.pow(c, 1 << (m - i - 1))
        m = i
        c = ctx.mul(b, b)
        t = ctx.mul(t, c)
        r = ctx.mul(r, b)
    return r

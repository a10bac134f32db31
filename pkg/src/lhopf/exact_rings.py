"""Exact arithmetic over GF(p^n) and (Z/p^a)[u]/(u^b).

Elements are tuples of integer coefficients in the monomial basis of the
ring ({x^i} for a field, {u^i} for a truncated ring).  Everything linear is
ultimately done over the prime ring Z/p^a (a = 1 for fields), which is a
chain ring, so Smith normal form with valuation pivoting works there.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

import numpy as np


class RingError(ValueError):
    pass


def is_prime(p):
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


# polynomials over GF(p) as coefficient lists, lowest degree first

def _ptrim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmod(f, g, p):
    f = [c % p for c in f]
    g = _ptrim([c % p for c in g])
    inv = pow(g[-1], -1, p)
    f = _ptrim(f)
    while len(f) >= len(g):
        c = f[-1] * inv % p
        shift = len(f) - len(g)
        for i, gi in enumerate(g):
            f[shift + i] = (f[shift + i] - c * gi) % p
        f = _ptrim(f)
    return f


def is_irreducible(modulus, p):
    """Trial division by every monic polynomial of degree <= n/2."""
    f = _ptrim([c % p for c in modulus])
    n = len(f) - 1
    if n < 1:
        return False
    for d in range(1, n // 2 + 1):
        for tail in product(range(p), repeat=d):
            g = list(tail) + [1]
            if not _pmod(f, g, p):
                return False
    return True


BUILTIN_MODULI = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (3, 2): (1, 0, 1),
    (5, 2): (2, 0, 1),
}


def find_modulus(p, n):
    if n == 1:
        return (0, 1)
    if (p, n) in BUILTIN_MODULI:
        return BUILTIN_MODULI[(p, n)]
    for tail in product(range(p), repeat=n):
        f = tail + (1,)
        if f[0] != 0 and is_irreducible(f, p):
            return f
    raise RingError(f"no irreducible polynomial of degree {n} over GF({p})")


class CoefficientRing:
    """Common interface of FiniteField and TruncatedRing.

    Subclasses set p, a (prime ring is Z/p^a), dim (rank over the prime ring)
    and implement mul.
    """

    p: int
    a: int
    dim: int
    is_field: bool

    @property
    def q(self):
        return self.p ** self.a

    @property
    def size(self):
        return self.q ** self.dim

    def zero(self):
        return (0,) * self.dim

    def one(self):
        return (1,) + (0,) * (self.dim - 1)

    def from_int(self, c):
        return (c % self.q,) + (0,) * (self.dim - 1)

    def element(self, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) > self.dim:
            raise RingError(f"too many coefficients for {self}")
        coeffs += [0] * (self.dim - len(coeffs))
        return tuple(c % self.q for c in coeffs)

    def gen(self):
        """x for GF(p^n), u for a truncated ring; None if the ring is prime."""
        if self.dim == 1:
            return None
        return (0, 1) + (0,) * (self.dim - 2)

    def add(self, x, y):
        q = self.q
        return tuple((s + t) % q for s, t in zip(x, y))

    def sub(self, x, y):
        q = self.q
        return tuple((s - t) % q for s, t in zip(x, y))

    def neg(self, x):
        q = self.q
        return tuple(-s % q for s in x)

    def scale(self, c, x):
        q = self.q
        return tuple(c * s % q for s in x)

    def is_zero(self, x):
        return not any(x)

    def pow(self, x, e):
        result = self.one()
        while e:
            if e & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            e >>= 1
        return result

    def sum(self, xs):
        total = self.zero()
        for x in xs:
            total = self.add(total, x)
        return total

    def elements(self):
        for coeffs in product(range(self.q), repeat=self.dim):
            yield tuple(coeffs)

    def mul_matrix(self, x):
        """Matrix (over Z/q) of y -> x*y in the monomial basis."""
        return _mul_matrix(self, x)

    def evaluate(self, coeffs, image, mul, add, one, zero):
        """Evaluate sum coeffs[i] * image^i in another structure.

        coeffs are prime-ring integers; used to push ring maps along the
        generator (e.g. right units).
        """
        total = zero
        power = one
        for i, c in enumerate(coeffs):
            if c:
                total = add(total, c, power)
            if i + 1 < len(coeffs):
                power = mul(power, image)
        return total


@lru_cache(maxsize=None)
def _mul_matrix(ring, x):
    d = ring.dim
    mat = np.zeros((d, d), dtype=np.int64)
    basis = [tuple(int(i == j) for i in range(d)) for j in range(d)]
    for j, e in enumerate(basis):
        mat[:, j] = ring.mul(x, e)
    return mat


@dataclass(frozen=True)
class FiniteField(CoefficientRing):
    p: int
    n: int = 1
    modulus: tuple = None
    a: int = field(default=1, init=False)
    is_field: bool = field(default=True, init=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise RingError(f"{self.p} is not prime")
        if self.n < 1:
            raise RingError("extension degree must be >= 1")
        mod = self.modulus
        if mod is None:
            mod = find_modulus(self.p, self.n)
        mod = tuple(c % self.p for c in mod)
        if len(mod) != self.n + 1 or mod[-1] != 1:
            raise RingError(f"modulus must be monic of degree {self.n}")
        if not is_irreducible(mod, self.p):
            raise RingError(f"modulus {mod} is reducible over GF({self.p})")
        object.__setattr__(self, "modulus", mod)

    @property
    def dim(self):
        return self.n

    def __str__(self):
        return describe_ring(self)

    def mul(self, x, y):
        p, n = self.p, self.n
        if n == 1:
            return ((x[0] * y[0]) % p,)
        prod = [0] * (2 * n - 1)
        for i, s in enumerate(x):
            if s:
                for j, t in enumerate(y):
                    prod[i + j] += s * t
        mod = self.modulus
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k] % p
            if c:
                for i in range(n):
                    prod[k - n + i] -= c * mod[i]
        return tuple(c % p for c in prod[:n])

    def is_unit(self, x):
        return any(x)

    def inv(self, x):
        if not any(x):
            raise ZeroDivisionError("zero is not invertible")
        return self.pow(x, self.p ** self.n - 2)

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    @property
    def residue_field(self):
        return self


@dataclass(frozen=True)
class TruncatedRing(CoefficientRing):
    """(Z/p^a)[u]/(u^b), local with maximal ideal (p, u)."""

    p: int
    a: int = 1
    b: int = 1
    is_field: bool = field(default=False, init=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise RingError(f"{self.p} is not prime")
        if self.a < 1 or self.b < 1:
            raise RingError("exponents must be >= 1")

    @property
    def dim(self):
        return self.b

    def __str__(self):
        return describe_ring(self)

    def mul(self, x, y):
        b, q = self.b, self.q
        prod = [0] * b
        for i, s in enumerate(x):
            if s:
                for j in range(b - i):
                    prod[i + j] += s * y[j]
        return tuple(c % q for c in prod)

    def is_unit(self, x):
        return x[0] % self.p != 0

    def inv(self, x):
        if not self.is_unit(x):
            raise ZeroDivisionError(f"{x} is not a unit")
        # Newton iteration y <- y(2 - xy) doubles precision in (p, u)
        y = self.from_int(pow(x[0], -1, self.q))
        two = self.from_int(2)
        for _ in range((self.a + self.b).bit_length() + 1):
            y = self.mul(y, self.sub(two, self.mul(x, y)))
        return y

    @property
    def residue_field(self):
        return FiniteField(self.p, 1)

    def monomial(self, i, j):
        """p^i u^j."""
        if j >= self.b:
            return self.zero()
        e = [0] * self.b
        e[j] = pow(self.p, i, self.q) if i < self.a else 0
        return tuple(e)


def describe_ring(ring):
    if ring.is_field:
        mod = ",".join(str(c) for c in ring.modulus)
        return f"gf({ring.p},{ring.n};modulus={mod})"
    return f"trunc({ring.p},{ring.a},{ring.b})"


_GF = re.compile(r"^gf\((\d+),(\d+)(?:;modulus=([\d,]+))?\)$")
_TR = re.compile(r"^trunc\((\d+),(\d+),(\d+)\)$")


def parse_ring(text):
    s = text.replace(" ", "")
    m = _GF.match(s)
    if m:
        p, n = int(m.group(1)), int(m.group(2))
        mod = tuple(int(c) for c in m.group(3).split(",")) if m.group(3) else None
        return FiniteField(p, n, mod)
    m = _TR.match(s)
    if m:
        return TruncatedRing(*(int(g) for g in m.groups()))
    raise RingError(f"unrecognised ring descriptor {text!r}")


def frobenius(x, ring):
    if not ring.is_field:
        raise RingError("frobenius needs a finite field")
    return ring.pow(x, ring.p)


def residue(x, ring):
    """Reduction modulo (p, u) into the residue field GF(p)."""
    if ring.is_field:
        return x
    return (x[0] % ring.p,)


def fixed_points(ring, automorphism):
    return [x for x in ring.elements() if automorphism(x) == x]


# ---------------------------------------------------------------------------
# linear algebra over the chain ring Z/p^a


def _mulmod(A, B, q):
    A = np.asarray(A)
    B = np.asarray(B)
    if A.shape[-1] == 0:
        return np.zeros(A.shape[:-1] + B.shape[1:], dtype=np.int64)
    if q * q * A.shape[-1] < 2 ** 62:
        return (A.astype(np.int64) @ B.astype(np.int64)) % q
    return ((A.astype(object) @ B.astype(object)) % q).astype(np.int64)


def valuations(A, p, a):
    """Entrywise p-adic valuation, capped at a (zero entries get a)."""
    v = np.zeros(A.shape, dtype=np.int64)
    nz = A != 0
    pk = 1
    for _ in range(1, a):
        pk *= p
        v += (A % pk == 0) & nz
    v[~nz] = a
    return v


@dataclass
class SmithForm:
    """S @ A @ T == diag(p^vals) (mod p^a), S and T invertible."""

    vals: list
    S: np.ndarray
    T: np.ndarray
    p: int
    a: int

    @property
    def rank(self):
        return len(self.vals)


def smith_form(A, p, a, want_S=True):
    q = p ** a
    A = np.array(A, dtype=np.int64).reshape(np.shape(A)) % q
    m, n = A.shape
    S = np.eye(m, dtype=np.int64) if want_S else None
    T = np.eye(n, dtype=np.int64)
    vals = []
    for t in range(min(m, n)):
        sub = A[t:, t:]
        if not sub.any():
            break
        v = valuations(sub, p, a)
        i, j = np.unravel_index(np.argmin(v), v.shape)
        val = int(v[i, j])
        i += t
        j += t
        if i != t:
            A[[t, i]] = A[[i, t]]
            if want_S:
                S[[t, i]] = S[[i, t]]
        if j != t:
            A[:, [t, j]] = A[:, [j, t]]
            T[:, [t, j]] = T[:, [j, t]]
        pv = p ** val
        winv = pow(int(A[t, t]) // pv, -1, q)
        A[t] = A[t] * winv % q
        if want_S:
            S[t] = S[t] * winv % q
        f = A[t + 1:, t] // pv
        if f.any():
            A[t + 1:] = (A[t + 1:] - _outer(f, A[t], q)) % q
            if want_S:
                S[t + 1:] = (S[t + 1:] - _outer(f, S[t], q)) % q
        g = A[t, t + 1:] // pv
        if g.any():
            T[:, t + 1:] = (T[:, t + 1:] - _outer(T[:, t], g, q)) % q
            A[t, t + 1:] = 0
        vals.append(val)
    return SmithForm(vals, S, T, p, a)


def _outer(x, y, q):
    if q * q < 2 ** 62:
        return np.outer(x, y) % q
    return (np.outer(x.astype(object), y.astype(object)) % q).astype(np.int64)


def zq_kernel(A, p, a):
    """Columns generating {x : A x = 0} over Z/p^a."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    sf = smith_form(A, p, a, want_S=False)
    q = p ** a
    cols = []
    for i, v in enumerate(sf.vals):
        if v > 0:
            cols.append(sf.T[:, i] * p ** (a - v) % q)
    for j in range(sf.rank, n):
        cols.append(sf.T[:, j])
    if not cols:
        return np.zeros((n, 0), dtype=np.int64)
    return np.array(cols, dtype=np.int64).T


def zq_solve(A, b, p, a):
    """Some x with A x = b over Z/p^a, or None."""
    q = p ** a
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64) % q
    m, n = A.shape
    if m == 0:
        return np.zeros(n, dtype=np.int64)
    sf = smith_form(A, p, a)
    c = _mulmod(sf.S, b, q)
    y = np.zeros(n, dtype=np.int64)
    for i, v in enumerate(sf.vals):
        pv = p ** v
        if c[i] % pv:
            return None
        y[i] = c[i] // pv
    if c[sf.rank:].any():
        return None
    return _mulmod(sf.T, y, q)


def zq_order(G, p, a):
    """log_p of the order of the subgroup spanned by the columns of G."""
    G = np.asarray(G, dtype=np.int64)
    if G.size == 0:
        return 0
    sf = smith_form(G, p, a, want_S=False)
    return sum(a - v for v in sf.vals)


def zq_span_basis(G, p, a):
    """Smith-reduced generators of the column span: (generators, orders).

    Column i of the result has additive order p^orders[i]; the span is the
    direct sum of the cyclic groups they generate.
    """
    G = np.asarray(G, dtype=np.int64)
    N = G.shape[0]
    if G.size == 0:
        return np.zeros((N, 0), dtype=np.int64), []
    q = p ** a
    sf = smith_form(G, p, a)
    Sinv = zq_inverse(sf.S, p, a)
    cols, orders = [], []
    for i, v in enumerate(sf.vals):
        cols.append(Sinv[:, i] * p ** v % q)
        orders.append(a - v)
    if not cols:
        return np.zeros((N, 0), dtype=np.int64), []
    return np.array(cols, dtype=np.int64).T, orders


def zq_inverse(A, p, a):
    q = p ** a
    A = np.asarray(A, dtype=np.int64) % q
    n = A.shape[0]
    M = np.concatenate([A, np.eye(n, dtype=np.int64)], axis=1)
    for t in range(n):
        piv = next((i for i in range(t, n) if M[i, t] % p), None)
        if piv is None:
            raise RingError("matrix is not invertible")
        M[[t, piv]] = M[[piv, t]]
        M[t] = M[t] * pow(int(M[t, t]), -1, q) % q
        f = M[:, t].copy()
        f[t] = 0
        M = (M - _outer(f, M[t], q)) % q
    return M[:, n:]


def zq_contains(G, v, p, a):
    G = np.asarray(G, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64) % p ** a
    if not v.any():
        return True
    if G.size == 0:
        return False
    return zq_solve(G, v, p, a) is not None


def zq_quotient_invariants(K, I, p, a):
    """Exponents e_i with K/I = sum Z/p^e_i; K, I column generators, I <= K."""
    K = np.asarray(K, dtype=np.int64)
    I = np.asarray(I, dtype=np.int64)
    k = K.shape[1] if K.ndim == 2 else 0
    if k == 0:
        return []
    big = np.concatenate([K, I], axis=1) if I.size else K
    rel = zq_kernel(big, p, a)[:k]
    if rel.shape[1] == 0:
        return [a] * k
    sf = smith_form(rel, p, a, want_S=False)
    out = [min(v, a) for v in sf.vals if v > 0]
    out += [a] * (k - sf.rank)
    return sorted(out, reverse=True)


# ---------------------------------------------------------------------------
# matrices over a coefficient ring


@dataclass(frozen=True)
class Matrix:
    ring: CoefficientRing
    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        if rows and len({len(r) for r in rows}) != 1:
            raise RingError("ragged matrix")
        for r in rows:
            for x in r:
                if len(x) != self.ring.dim:
                    raise RingError(f"entry {x} does not belong to {self.ring}")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_ints(cls, ring, rows):
        return cls(ring, [[ring.from_int(c) for c in row] for row in rows])

    @property
    def shape(self):
        if not self.entries:
            return (0, 0)
        return (len(self.entries), len(self.entries[0]))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j):
        return [row[j] for row in self.entries]

    def apply(self, v):
        R = self.ring
        return [R.sum(R.mul(x, y) for x, y in zip(row, v)) for row in self.entries]


def restrict_matrix(ring, rows, ncols=None):
    """Block matrix over Z/q of an R-matrix given as a list of rows."""
    m = len(rows)
    n = len(rows[0]) if rows else (ncols or 0)
    d = ring.dim
    out = np.zeros((m * d, n * d), dtype=np.int64)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            if any(x):
                out[i * d:(i + 1) * d, j * d:(j + 1) * d] = ring.mul_matrix(x)
    return out


def restrict_vector(ring, v):
    if not v:
        return np.zeros(0, dtype=np.int64)
    return np.array([c for x in v for c in x], dtype=np.int64)


def unrestrict_vector(ring, arr):
    d = ring.dim
    arr = [int(c) % ring.q for c in arr]
    return [tuple(arr[i:i + d]) for i in range(0, len(arr), d)]


def _as_rows(ring, A):
    if isinstance(A, Matrix):
        if A.ring != ring:
            raise RingError("mixed rings")
        return [list(r) for r in A.entries], A.shape[1]
    return [list(r) for r in A], (len(A[0]) if A else 0)


def solve_linear(A, b, ring=None):
    """Some x with A x = b, or None."""
    if ring is None:
        ring = A.ring
    rows, n = _as_rows(ring, A)
    b = list(b)
    if len(b) != len(rows):
        raise RingError("dimension mismatch")
    for x in b:
        if len(x) != ring.dim:
            raise RingError("mixed rings")
    if ring.is_field and ring.n > 1:
        return _field_solve(ring, rows, n, b)
    x = zq_solve(restrict_matrix(ring, rows, n), restrict_vector(ring, b), ring.p, ring.a)
    return None if x is None else unrestrict_vector(ring, x)


def kernel_basis(A, ring=None):
    """Kernel of A: a basis over a field, a generating set over a truncated ring."""
    if ring is None:
        ring = A.ring
    rows, n = _as_rows(ring, A)
    if ring.is_field:
        return _field_kernel(ring, rows, n)
    R = restrict_matrix(ring, rows, n) if rows else np.zeros((0, n * ring.dim), dtype=np.int64)
    gens = zq_kernel(R, ring.p, ring.a)
    out, span = [], np.zeros((n * ring.dim, 0), dtype=np.int64)
    order = 0
    for j in range(gens.shape[1]):
        v = unrestrict_vector(ring, gens[:, j])
        cand = np.concatenate([span, restrict_matrix(ring, [[x] for x in v])], axis=1)
        new = zq_order(cand, ring.p, ring.a)
        if new > order:
            out.append(v)
            span, order = cand, new
    return out


def _rref(ring, rows, n):
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if any(rows[i][c])), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = ring.inv(rows[r][c])
        rows[r] = [ring.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and any(rows[i][c]):
                f = rows[i][c]
                rows[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _field_kernel(ring, rows, n):
    red, pivots = _rref(ring, rows, n)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [ring.zero()] * n
        v[f] = ring.one()
        for row, c in zip(red, pivots):
            v[c] = ring.neg(row[f])
        basis.append(v)
    return basis


def _field_solve(ring, rows, n, b):
    aug = [list(r) + [x] for r, x in zip(rows, b)]
    red, pivots = _rref(ring, aug, n + 1)
    if n in pivots:
        return None
    x = [ring.zero()] * n
    for row, c in zip(red, pivots):
        x[c] = row[n]
    return x


def field_rank(ring, rows, n):
    return len(_rref(ring, rows, n)[1])

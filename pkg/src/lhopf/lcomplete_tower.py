"""Tor, towers and derived completion over R = Z_p[[u]] at finite precision.

Free complexes over R are written as matrices of integer polynomials in
P and U.  Tensoring with a finite R-module M turns each entry into an
operator on M (p acts by multiplication, u by a fixed matrix), so every
homology group below is a subquotient of a finite abelian p-group and is
computed exactly over Z/p^a.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exact_rings import (
    TruncatedRing,
    _mulmod,
    kernel_basis,
    restrict_matrix,
    zq_contains,
    zq_kernel,
    zq_order,
    zq_quotient_invariants,
)


class TowerError(ValueError):
    pass


# ---------------------------------------------------------------------------
# polynomials in P, U with integer coefficients: {(i, j): c} = sum c P^i U^j


def pmono(i, j, c=1):
    return {(i, j): c} if c else {}


def padd(f, g, sign=1):
    out = dict(f)
    for k, v in g.items():
        out[k] = out.get(k, 0) + sign * v
        if out[k] == 0:
            del out[k]
    return out


def pmul(f, g):
    out = {}
    for (a, b), c in f.items():
        for (s, t), d in g.items():
            key = (a + s, b + t)
            out[key] = out.get(key, 0) + c * d
    return {k: v for k, v in out.items() if v}


def matmul_poly(X, Y):
    rows, inner = len(X), len(Y)
    cols = len(Y[0]) if Y else 0
    out = [[{} for _ in range(cols)] for _ in range(rows)]
    for i in range(rows):
        for k in range(inner):
            if X[i][k]:
                for j in range(cols):
                    if Y[k][j]:
                        out[i][j] = padd(out[i][j], pmul(X[i][k], Y[k][j]))
    return out


def is_zero_poly_matrix(X):
    return all(not e for row in X for e in row)


@dataclass
class FreeComplex:
    """0 -> F_2 -> F_1 -> F_0 with d[s]: F_s -> F_{s-1} (r_{s-1} x r_s matrices)."""

    ranks: list
    diffs: dict
    degrees: list = None  # generator degrees per position (for homogeneous lifting)
    label: str = ""

    def check(self):
        for s in range(2, len(self.ranks)):
            if not is_zero_poly_matrix(matmul_poly(self.diffs[s - 1], self.diffs[s])):
                return False
        return True


def koszul_complex(c, d):
    """Koszul complex on (p^c, u^d)."""
    f, g = pmono(c, 0), pmono(0, d)
    d1 = [[f, g]]
    d2 = [[g], [{k: -v for k, v in f.items()}]]
    return FreeComplex([1, 2, 1], {1: d1, 2: d2}, [[0], [c, d], [c + d]], f"koszul(p^{c},u^{d})")


def power_ideal_complex(k):
    """0 -> R^k -> R^(k+1) -> R resolving R/m^k."""
    if k < 1:
        raise TowerError("k must be >= 1")
    d1 = [[pmono(k - j, j) for j in range(k + 1)]]
    d2 = [[{} for _ in range(k)] for _ in range(k + 1)]
    for j in range(k):
        d2[j][j] = pmono(0, 1)
        d2[j + 1][j] = pmono(1, 0, -1)
    return FreeComplex([1, k + 1, k], {1: d1, 2: d2}, [[0], [k] * (k + 1), [k + 1] * k], f"res(m^{k})")


# ---------------------------------------------------------------------------
# finite modules


@dataclass(frozen=True)
class PresentedModule:
    """R^n / relations, viewed over the truncation ring (Z/p^a)[u]/(u^b)."""

    ring: TruncatedRing
    ngens: int
    relations: tuple = ()
    label: str = ""
    free_over_R: bool = False  # symbolic free R-module (never materialized)

    def __post_init__(self):
        object.__setattr__(self, "relations", tuple(tuple(tuple(x) for x in v) for v in self.relations))
        for v in self.relations:
            if len(v) != self.ngens:
                raise TowerError("relation has the wrong length")

    @property
    def p(self):
        return self.ring.p

    @property
    def N(self):
        return self.ngens * self.ring.dim

    def rel_span(self):
        R = self.ring
        if not self.relations:
            return np.zeros((self.N, 0), dtype=np.int64)
        return restrict_matrix(R, [list(c) for c in zip(*self.relations)])

    def u_matrix(self):
        R = self.ring
        block = R.mul_matrix(R.gen()) if R.dim > 1 else np.zeros((1, 1), dtype=np.int64)
        return np.kron(np.eye(self.ngens, dtype=np.int64), block)

    def log_size(self):
        R = self.ring
        return self.N * R.a - zq_order(self.rel_span(), R.p, R.a)

    def invariants(self):
        R = self.ring
        return zq_quotient_invariants(np.eye(self.N, dtype=np.int64), self.rel_span(), R.p, R.a)

    def __str__(self):
        return self.label or f"module({self.ngens} gens over {self.ring})"


def quot_module(p, c, d, ring=None):
    """R/(p^c, u^d)."""
    ring = ring or TruncatedRing(p, c, d)
    if ring.a < c or ring.b < d:
        raise TowerError("ambient truncation too small")
    rels = []
    if c < ring.a:
        rels.append((ring.monomial(c, 0),))
    if d < ring.b:
        rels.append((ring.monomial(0, d),))
    return PresentedModule(ring, 1, tuple(rels), f"quot(p^{c},u^{d})")


def mk_module(p, k, ring=None):
    """R/m^k."""
    ring = ring or TruncatedRing(p, k, k)
    if ring.a < k or ring.b < k:
        raise TowerError("ambient truncation too small")
    rels = [(ring.monomial(k - j, j),) for j in range(k + 1) if any(ring.monomial(k - j, j))]
    return PresentedModule(ring, 1, tuple(rels), f"mk({k})")


def free_module(ring, r=1):
    return PresentedModule(ring, r, (), f"free({r})")


def symbolic_free(p, r=1):
    return PresentedModule(TruncatedRing(p, 1, 1), r, (), f"R^{r}", free_over_R=True)


_QUOT = re.compile(r"^quot\(\s*p(?:\^(\d+))?\s*,\s*u(?:\^(\d+))?\s*\)$")
_MK = re.compile(r"^mk\(\s*(\d+)\s*\)$")
_FREE = re.compile(r"^free(?:\((\d+)\))?$")


def parse_module(text, p):
    text = text.strip()
    m = _QUOT.match(text)
    if m:
        c = int(m.group(1) or 1)
        d = int(m.group(2) or 1)
        if c < 1 or d < 1:
            raise TowerError("exponents must be >= 1")
        return quot_module(p, c, d)
    m = _MK.match(text)
    if m:
        k = int(m.group(1))
        if k < 1:
            raise TowerError("k must be >= 1")
        return mk_module(p, k)
    m = _FREE.match(text)
    if m:
        return symbolic_free(p, int(m.group(1) or 1))
    raise TowerError(f"unknown module descriptor {text!r}; use quot(p^c,u^d), mk(k) or free")


def describe_module(M):
    return M.label


def _exponents(M):
    """(c, d) with M = R/(p^c, u^d), for the cyclic family."""
    m = _QUOT.match(M.label)
    if m:
        return "quot", (int(m.group(1) or 1), int(m.group(2) or 1))
    m = _MK.match(M.label)
    if m:
        return "mk", (int(m.group(1)),)
    return None, None


def resolution_of(M):
    kind, ex = _exponents(M)
    if kind == "quot":
        return koszul_complex(*ex)
    if kind == "mk":
        return power_ideal_complex(*ex)
    if M.free_over_R:
        return FreeComplex([M.ngens], {}, [[0] * M.ngens], "free")
    raise TowerError(f"no certified resolution for {M}")


# ---------------------------------------------------------------------------
# subquotients of finite abelian groups


@dataclass
class Subquotient:
    K: np.ndarray  # generators of the cycles, relations included
    I: np.ndarray  # generators of the boundaries, relations included
    p: int
    a: int

    @property
    def ambient(self):
        return self.K.shape[0]

    def log_size(self):
        return zq_order(self.K, self.p, self.a) - zq_order(self.I, self.p, self.a)

    def invariants(self):
        return zq_quotient_invariants(self.K, self.I, self.p, self.a)

    @property
    def is_zero(self):
        return self.log_size() == 0

    def elements_nonzero(self):
        """Columns of K that are nonzero in the quotient."""
        return [j for j in range(self.K.shape[1])
                if not zq_contains(self.I, self.K[:, j], self.p, self.a)]


def _zero_cols(n):
    return np.zeros((n, 0), dtype=np.int64)


def _cat(*mats):
    return np.concatenate(mats, axis=1)


def _blockdiag(block, r):
    n, m = block.shape
    out = np.zeros((n * r, m * r), dtype=np.int64)
    for i in range(r):
        out[i * n:(i + 1) * n, i * m:(i + 1) * m] = block
    return out


def operator(M, poly):
    """Matrix of sum c p^i u^j acting on M's prime coordinates."""
    R = M.ring
    q = R.q
    U = M.u_matrix()
    out = np.zeros((M.N, M.N), dtype=np.int64)
    for (i, j), c in poly.items():
        if i >= R.a:
            continue
        term = np.linalg.matrix_power(U, j) % q if j else np.eye(M.N, dtype=np.int64)
        out = (out + (c * pow(R.p, i, q)) % q * term) % q
    return out


def evaluate(M, X):
    """Block matrix of a polynomial matrix acting on M^cols -> M^rows."""
    rows, cols = len(X), len(X[0]) if X else 0
    N = M.N
    out = np.zeros((rows * N, cols * N), dtype=np.int64)
    for i in range(rows):
        for j in range(cols):
            if X[i][j]:
                out[i * N:(i + 1) * N, j * N:(j + 1) * N] = operator(M, X[i][j])
    return out


def homology(F, M, s):
    """H_s(F (x) M)."""
    R = M.ring
    p, a, N = R.p, R.a, M.N
    rel = M.rel_span()
    ranks = F.ranks
    if s < 0 or s >= len(ranks):
        return Subquotient(_zero_cols(0), _zero_cols(0), p, a)
    r = ranks[s]
    relr = _blockdiag(rel, r) if rel.shape[1] else _zero_cols(r * N)
    if s == 0:
        K = np.eye(r * N, dtype=np.int64)
    else:
        D = evaluate(M, F.diffs[s])
        rel_prev = _blockdiag(rel, ranks[s - 1]) if rel.shape[1] else _zero_cols(ranks[s - 1] * N)
        ker = zq_kernel(_cat(D, rel_prev), p, a)[: r * N]
        K = ker
    K = _cat(K, relr)
    if s + 1 < len(ranks):
        I = _cat(evaluate(M, F.diffs[s + 1]), relr)
    else:
        I = relr
    return Subquotient(K % R.q, I % R.q, p, a)


def tor(F, M):
    return [homology(F, M, s) for s in range(len(F.ranks))]


def induced_map(S, T, matrix):
    """Image data of the map S -> T induced by an integer matrix."""
    q = T.p ** T.a
    FK = _mulmod(matrix, S.K, q) if S.K.size else _zero_cols(T.ambient)
    img = zq_order(_cat(FK, T.I), T.p, T.a) - zq_order(T.I, T.p, T.a)
    return img


@dataclass
class KoszulTor:
    groups: list  # Subquotients Tor_0, Tor_1, Tor_2
    log_sizes: list
    residue_dims: list  # log sizes / log |k|; equals GF(p)-dimensions when p kills the group
    invariants: list
    notes: list = field(default_factory=list)


def koszul_tor(c, d, K):
    if K.free_over_R:
        return KoszulTor([], [0, 0, 0], [0, 0, 0], [[], [], []], ["free over R: Tor_0 = K/(p^c,u^d)K symbolic"])
    F = koszul_complex(c, d)
    groups = tor(F, K)
    sizes = [g.log_size() for g in groups]
    inv = [g.invariants() for g in groups]
    notes = []
    R = K.ring
    kills = (c >= R.a or _kills(K, pmono(c, 0))) and (d >= R.b or _kills(K, pmono(0, d)))
    if kills:
        notes.append(
            "(p^c,u^d) kills K: Tor_0 = K, Tor_1 = K+K, Tor_2 = K; the degree-1 group is two copies of K"
        )
    return KoszulTor(groups, sizes, sizes, inv, notes)


def _kills(M, poly):
    R = M.ring
    op = operator(M, poly)
    img = _mulmod(op, np.eye(M.N, dtype=np.int64), R.q)
    rel = M.rel_span()
    return all(zq_contains(rel, img[:, j], R.p, R.a) for j in range(M.N))


# ---------------------------------------------------------------------------
# resolutions of m^k


@dataclass
class ResolutionCertificate:
    k: int
    ranks: list
    composite_zero: bool
    working_ring: str
    homology_log_sizes: list
    expected_log_sizes: list

    @property
    def ok(self):
        return self.composite_zero and self.homology_log_sizes == self.expected_log_sizes

    def __bool__(self):
        return self.ok


def power_ideal_resolution(k, p=2):
    """The complex resolving R/m^k and its exactness certificate.

    Tensoring with W = R/(p^(k+2), u^(k+2)) must give Tor_*(R/m^k, W), which
    the Koszul complex on (p^(k+2), u^(k+2)) computes as
    (R/m^k, (R/m^k)^2, R/m^k); any failure of exactness would show up as a
    different homology.
    """
    F = power_ideal_complex(k)
    W = TruncatedRing(p, k + 2, k + 2)
    M = free_module(W)
    sizes = [g.log_size() for g in tor(F, M)]
    base = k * (k + 1) // 2
    cert = ResolutionCertificate(k, list(F.ranks), F.check(), str(W), sizes, [base, 2 * base, base])
    return F, cert


# ---------------------------------------------------------------------------
# chain-map lifting


def _monomials(deg):
    return [(i, deg - i) for i in range(deg + 1)] if deg >= 0 else []


def _solve_rational(rows, nvars, order):
    """Particular solution of sparse rational equations; free variables zero."""
    eqs = [(dict(coefs), Fraction(rhs)) for coefs, rhs in rows if coefs or rhs]
    pivots = {}
    for coefs, rhs in eqs:
        coefs = {k: Fraction(v) for k, v in coefs.items() if v}
        for var, (pc, prhs) in pivots.items():
            if var in coefs:
                f = coefs[var]
                for k, v in pc.items():
                    coefs[k] = coefs.get(k, 0) - f * v
                    if coefs[k] == 0:
                        del coefs[k]
                rhs -= f * prhs
        if not coefs:
            if rhs != 0:
                return None
            continue
        var = min(coefs, key=order.index)
        f = coefs[var]
        coefs = {k: v / f for k, v in coefs.items()}
        rhs = rhs / f
        for ov, (pc, prhs) in list(pivots.items()):
            if var in pc:
                g = pc[var]
                npc = dict(pc)
                for k, v in coefs.items():
                    npc[k] = npc.get(k, 0) - g * v
                    if npc[k] == 0:
                        del npc[k]
                pivots[ov] = (npc, prhs - g * rhs)
        pivots[var] = (coefs, rhs)
    sol = [Fraction(0)] * nvars
    for var, (coefs, rhs) in pivots.items():
        sol[var] = rhs
    return sol


def lift_chain_map(src, tgt, phi0=None, reverse=False):
    """Homogeneous chain map src -> tgt extending phi0 (default identity on F_0).

    Entries of phi_s are integer polynomials of degree deg(src gen) - deg(tgt gen),
    found by solving the linear conditions d_tgt phi_s = phi_{s-1} d_src
    over Q.  reverse=True eliminates variables in the opposite order, giving
    a (possibly) different lift.
    """
    if phi0 is None:
        phi0 = [[pmono(0, 0)]]
    phis = [phi0]
    for s in range(1, min(len(src.ranks), len(tgt.ranks))):
        rt, rs = tgt.ranks[s], src.ranks[s]
        var_index = {}
        for i in range(rt):
            for j in range(rs):
                deg = src.degrees[s][j] - tgt.degrees[s][i]
                for mono in _monomials(deg):
                    var_index[(i, j, mono)] = len(var_index)
        nv = len(var_index)
        rhs = matmul_poly(phis[-1], src.diffs[s])
        dt = tgt.diffs[s]
        eqs = {}
        for (i, j, mono), v in var_index.items():
            for a in range(len(dt)):
                for (x, y), c in dt[a][i].items():
                    key = (a, j, (x + mono[0], y + mono[1]))
                    eqs.setdefault(key, {})
                    eqs[key][v] = eqs[key].get(v, 0) + c
        for a in range(len(rhs)):
            for j in range(rs):
                for mono in rhs[a][j]:
                    eqs.setdefault((a, j, mono), {})
        rows = []
        for key in sorted(eqs):
            a, j, mono = key
            rows.append((eqs[key], rhs[a][j].get(mono, 0)))
        order = list(range(nv))
        if reverse:
            order.reverse()
        sol = _solve_rational(rows, nv, order)
        if sol is None:
            raise TowerError(f"chain-map lift infeasible in degree {s}")
        phi = [[{} for _ in range(rs)] for _ in range(rt)]
        for (i, j, mono), v in var_index.items():
            if sol[v]:
                if sol[v].denominator != 1:
                    raise TowerError("non-integral lift")
                phi[i][j][mono] = int(sol[v])
        # certify
        lhs = matmul_poly(dt, phi)
        for a in range(len(lhs)):
            for j in range(rs):
                if padd(lhs[a][j], rhs[a][j], -1):
                    raise TowerError("lift does not commute")
        phis.append(phi)
    return phis


# ---------------------------------------------------------------------------
# towers


@dataclass
class Tower:
    """Stages M_first, ..., M_last with maps f_n: M_{n+1} -> M_n (integer matrices)."""

    stages: list  # Subquotients
    maps: list  # maps[i]: stages[i+1] -> stages[i]
    first: int = 0
    label: str = ""

    @property
    def T(self):
        return self.first + len(self.stages) - 1

    def composite(self, n, m):
        """Matrix of M_m -> M_n (n <= m)."""
        i, j = n - self.first, m - self.first
        S = self.stages[i]
        if i == j:
            return np.eye(S.ambient, dtype=np.int64)
        q = S.p ** S.a
        out = self.maps[i]
        for t in range(i + 1, j):
            out = _mulmod(out, self.maps[t], q)
        return out

    def image_size(self, n, m):
        return induced_map(self.stages[m - self.first], self.stages[n - self.first], self.composite(n, m))

    def is_iso(self, n):
        """Is f_n: M_{n+1} -> M_n an isomorphism?"""
        s = self.stages[n + 1 - self.first].log_size()
        t = self.stages[n - self.first].log_size()
        return s == t == self.image_size(n, n + 1)


def tor_tower(s, M, T):
    """Tower n -> Tor_s(R/m^n, M) for 1 <= n <= T."""
    if M.free_over_R:
        raise TowerError("towers need a finite module")
    stages, maps = [], []
    complexes = [power_ideal_complex(n) for n in range(1, T + 1)]
    for F in complexes:
        stages.append(homology(F, M, s) if s < 3 else Subquotient(_zero_cols(0), _zero_cols(0), M.p, M.ring.a))
    for n in range(1, T):
        if s >= 3:
            maps.append(np.zeros((0, 0), dtype=np.int64))
            continue
        phis = lift_chain_map(complexes[n], complexes[n - 1])
        maps.append(evaluate(M, phis[s]) % M.ring.q)
    return Tower(stages, maps, 1, f"Tor_{s}(R/m^n, {M})")


def inclusion_tower(p, T):
    """M_n = p^n Z / p^T Z with inclusions, n = 0..T."""
    stages = []
    for n in range(T + 1):
        K = np.array([[pow(p, n, p ** T) if n < T else 0]], dtype=np.int64)
        stages.append(Subquotient(K, _zero_cols(1), p, T))
    maps = [np.eye(1, dtype=np.int64) for _ in range(T)]
    return Tower(stages, maps, 0, f"p^n Z/p^{T}")


def constant_tower(S, T, zero_maps=False):
    n = S.ambient
    m = np.zeros((n, n), dtype=np.int64) if zero_maps else np.eye(n, dtype=np.int64)
    return Tower([S] * (T + 1), [m] * T, 0, "constant")


@dataclass
class LimResult:
    lim_log_size: int
    lim_invariants: list
    lim1_log_size: int
    stabilized: bool
    reason: str
    stable_from: int = None

    def describe(self):
        return (f"lim: log_p size {self.lim_log_size} {self.lim_invariants}; "
                f"lim1: log_p size {self.lim1_log_size}; "
                f"{'stabilized' if self.stabilized else 'stage-T approximation'} ({self.reason})")


def lim_lim1(tower, window=None):
    """lim and lim^1 of a finite tower, exact when it visibly stabilizes.

    Two stabilization patterns are recognized: all maps from some stage on
    are isomorphisms (lim = that stage, lim^1 = 0), or the tower is pro-zero
    within a window w (every w-fold composite vanishes; lim = lim^1 = 0).
    Otherwise lim is approximated by the image of M_T in M_first.
    """
    first, T = tower.first, tower.T
    n0 = None
    for n in range(T - 1, first - 1, -1):
        if tower.is_iso(n):
            n0 = n
        else:
            break
    if n0 is not None and n0 < T:
        S = tower.stages[n0 - first]
        return LimResult(S.log_size(), S.invariants(), 0, True, f"isomorphisms from stage {n0}", n0)
    if all(S.is_zero for S in tower.stages):
        return LimResult(0, [], 0, True, "all stages zero", first)
    max_w = window or max(1, (T - first) // 2)
    for w in range(1, max_w + 1):
        if all(tower.image_size(n, n + w) == 0 for n in range(first, T - w + 1)):
            return LimResult(0, [], 0, True, f"pro-zero with window {w}", first)
    img = tower.image_size(first, T)
    return LimResult(img, [], 0, False, f"no stabilization visible by stage {T}")


@dataclass
class DerivedCompletion:
    s: int
    log_size: int
    invariants: list
    stabilized: bool
    lim: LimResult = None
    lim1: LimResult = None
    diagnostics: str = ""

    @property
    def is_zero(self):
        return self.log_size == 0


def derived_completion(M, s, T=8):
    """L_s M from 0 -> lim^1 Tor_{s+1} -> L_s M -> lim Tor_s -> 0."""
    if s > 2:
        return DerivedCompletion(s, 0, [], True, diagnostics="L_s = 0 above the dimension 2")
    lim = lim_lim1(tor_tower(s, M, T))
    lim1 = lim_lim1(tor_tower(s + 1, M, T)) if s + 1 <= 2 else LimResult(0, [], 0, True, "Tor vanishes")
    size = lim.lim_log_size + lim1.lim1_log_size
    stab = lim.stabilized and lim1.stabilized
    inv = lim.lim_invariants if lim1.lim1_log_size == 0 else []
    diag = "" if stab else f"lim: {lim.reason}; lim1: {lim1.reason}"
    return DerivedCompletion(s, size, inv, stab, lim, lim1, diag)


# ---------------------------------------------------------------------------
# lim^1 witness for the family M_n = p^n Z_p


@dataclass
class WitnessReport:
    p: int
    T: int
    precision: int
    identities_checked: int
    identities_ok: bool
    c0: list  # c_{0k}, k = 0..T
    nonzero_c0: int
    failing_index: int = None
    certificate: str = ""

    @property
    def ok(self):
        return self.identities_ok and self.failing_index is None and self.nonzero_c0 == self.T + 1

    def __bool__(self):
        return self.ok


def lim1_witness(p=2, T=16, overrides=None):
    """Check b_nk = c_nk - f(c_{n+1,k}) for c_nk = f^(k-n)(a_k) at precision p^(T+2)."""
    overrides = overrides or {}
    q = p ** (T + 2)
    a = [overrides.get(k, p ** k) % q for k in range(T + 1)]
    for k, x in enumerate(a):
        if x % p ** k:
            raise TowerError(f"a_{k} does not lie in p^{k} Z_p")

    def c(n, k):
        return a[k] if n <= k else 0  # f is the inclusion, so f^(k-n) is the identity on values

    checked, ok = 0, True
    for n in range(T + 1):
        for k in range(T + 1):
            b = a[k] if n == k else 0
            if (c(n, k) - c(n + 1, k) - b) % q:
                ok = False
            if c(n, k) % p ** n:
                ok = False
            checked += 1
    c0 = [c(0, k) for k in range(T + 1)]
    nonzero = sum(1 for x in c0 if x % q)
    failing = next((k for k, x in enumerate(c0) if x % q == 0), None)
    cert = ("lim p^n Z_p = 0 and lim^1 = 0: the tower is the kernel of Z_p -> Z/p^n, "
            "whose constant term has lim^1 = 0 and whose lim map Z_p -> Z_p is onto")
    return WitnessReport(p, T, T + 2, checked, ok, c0, nonzero, failing, cert)


# ---------------------------------------------------------------------------
# Tor_2 reduction


@dataclass
class ReductionReport:
    n: int
    nonzero: bool
    witness: list  # prime coordinates of a cycle in Tor_2(R/m^n, K) with nonzero image
    source_log_size: int
    target_log_size: int
    image_log_size: int
    notes: list = field(default_factory=list)

    def __bool__(self):
        return self.nonzero


def tor2_reduction_nonzero(n, K):
    """The map Tor_2(R/m^n, K) -> Tor_2(R/m, K) and a witness of its nonvanishing."""
    R = K.ring
    if not (_kills(K, pmono(n, 0)) and _kills(K, pmono(0, n))):
        raise TowerError(f"K is not annihilated by (p^{n}, u^{n})")
    Fn, F1 = power_ideal_complex(n), power_ideal_complex(1)
    S, T = homology(Fn, K, 2), homology(F1, K, 2)
    if n == 1:
        phi2 = np.eye(S.ambient, dtype=np.int64)
    else:
        phi2 = evaluate(K, lift_chain_map(Fn, F1)[2]) % R.q
    img = induced_map(S, T, phi2)
    witness = []
    if img:
        FK = _mulmod(phi2, S.K, R.q)
        for j in range(S.K.shape[1]):
            if not zq_contains(T.I, FK[:, j], R.p, R.a):
                witness = [int(x) for x in S.K[:, j]]
                break
    notes = []
    kt = koszul_tor(n, n, K)
    notes.extend(kt.notes)
    return ReductionReport(n, img > 0, witness, S.log_size(), T.log_size(), img, notes)


# ---------------------------------------------------------------------------
# structural predicates


@dataclass
class Predicates:
    nakayama: bool  # M = mM implies M = 0 (holds on this M)
    m_times_m_equals_m: bool
    divisible: dict  # s-label -> (sM == M)
    free_via_tor: bool
    tor1_log_size: int


def _submodule_image(M, ops):
    R = M.ring
    cols = [M.rel_span()]
    for op in ops:
        cols.append(op % R.q)
    return _cat(*cols)


def structural_predicates(M):
    R = M.ring
    p, a = R.p, R.a
    total = M.log_size()
    base = zq_order(M.rel_span(), p, a)
    P = operator(M, pmono(1, 0))
    U = operator(M, pmono(0, 1))
    mM = zq_order(_submodule_image(M, [P, U]), p, a) - base
    equal = mM == total
    nak = (not equal) or total == 0
    div = {}
    for label, op in (("p", P), ("u", U)):
        div[label] = zq_order(_submodule_image(M, [op]), p, a) - base == total
    # Tor_1^W(W/m, M) from the W-syzygies of (p, u)
    gens = [R.from_int(p)] + ([R.gen()] if R.dim > 1 else [])
    syz = kernel_basis([gens], R)
    N = M.N
    rel = M.rel_span()
    g = len(gens)
    D1 = np.concatenate([operator(M, pmono(1, 0))] + ([operator(M, pmono(0, 1))] if R.dim > 1 else []), axis=1)
    relg = _blockdiag(rel, g) if rel.shape[1] else _zero_cols(g * N)
    K = _cat(zq_kernel(_cat(D1, rel), p, a)[: g * N], relg)
    cols = []
    for v in syz:
        block = []
        for x in v:
            poly = {}
            for j, cj in enumerate(x):
                if cj:
                    poly[(0, j)] = cj
            block.append(operator(M, poly))
        cols.append(np.concatenate(block, axis=0))
    I = _cat(*cols, relg) if cols else relg
    tor1 = Subquotient(K % R.q, I % R.q, p, a).log_size()
    return Predicates(nak, equal, div, tor1 == 0, tor1)


# ---------------------------------------------------------------------------
# balanced Tor


@dataclass
class BalancedReport:
    left: list  # log sizes of Tor_s(M, N) resolving M
    right: list  # log sizes of Tor_s(N, M) resolving N
    left_invariants: list
    right_invariants: list

    @property
    def agree(self):
        return self.left == self.right and self.left_invariants == self.right_invariants

    def __bool__(self):
        return self.agree


def _common_ring(M, N):
    p = M.p
    a = max(M.ring.a, N.ring.a)
    b = max(M.ring.b, N.ring.b)
    return TruncatedRing(p, a, b)


def _rebuild(M, ring):
    kind, ex = _exponents(M)
    if kind == "quot":
        return quot_module(M.p, *ex, ring=ring)
    if kind == "mk":
        return mk_module(M.p, *ex, ring=ring)
    raise TowerError(f"module {M} is outside the supported cyclic family")


def _tor_sizes(F, N, smax):
    sizes, invs = [], []
    for s in range(smax + 1):
        if s < len(F.ranks):
            h = homology(F, N, s)
            sizes.append(h.log_size())
            invs.append(h.invariants())
        else:
            sizes.append(0)
            invs.append([])
    return sizes, invs


def tor_balanced_check(M, N, smax=2):
    if M.p != N.p:
        raise TowerError("modules over different primes")
    if M.free_over_R or N.free_over_R:
        fin = N if M.free_over_R else M
        if fin.free_over_R:
            raise TowerError("at least one module must be finite")
        fin = _rebuild(fin, fin.ring)
        zero = [0] * smax
        inv0 = fin.invariants()
        size0 = fin.log_size()
        return BalancedReport([size0] + zero, [size0] + zero, [inv0] + [[]] * smax, [inv0] + [[]] * smax)
    ring = _common_ring(M, N)
    M2, N2 = _rebuild(M, ring), _rebuild(N, ring)
    left, linv = _tor_sizes(resolution_of(M2), N2, smax)
    right, rinv = _tor_sizes(resolution_of(N2), M2, smax)
    return BalancedReport(left, right, linv, rinv)

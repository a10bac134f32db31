"""Galois descent for finite fields, twisted group rings and unicursal comodules."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .comodule_lab import (
    Comodule,
    _cat,
    _gspan,
    _span,
    primitives,
    random_comodule,
)
from .exact_rings import (
    FiniteField,
    RingError,
    restrict_matrix,
    restrict_vector,
    solve_linear,
    zq_contains,
    zq_inverse,
    zq_kernel,
    zq_order,
)
from .graded_linalg import GradedModule
from .hopf_core import (
    GroupAction,
    HopfError,
    SubfieldCoordinates,
    associated_hopf_algebra,
    galois_action,
)


@dataclass
class GaloisDatum:
    action: GroupAction  # G acting on A by automorphisms
    k_degree: int = 1  # k = GF(p^k_degree) inside A

    @property
    def A(self):
        return self.action.ring

    @property
    def G(self):
        return self.action.group

    @classmethod
    def frobenius(cls, p, n):
        A = FiniteField(p, n)
        return cls(galois_action(A, 1), 1)


@dataclass
class GaloisReport:
    ok: bool
    axiom: str = ""
    witness: str = ""
    inverse: object = None  # inverse of the comparison map (prime-ring matrix)
    fixed_dim: int = 0

    def __bool__(self):
        return self.ok


def _fixed_space(A, action):
    """GF(p)-basis (columns) of A^G."""
    n = A.dim
    blocks = [(action.matrix(g) - np.eye(n, dtype=np.int64)) % A.p for g in range(action.group.order)]
    return zq_kernel(np.concatenate(blocks, axis=0), A.p, 1)


def verify_galois(d):
    A, G, act = d.A, d.G, d.action
    act.check()
    sc = SubfieldCoordinates(A, d.k_degree)
    for g in range(G.order):
        for b in sc.dbasis:
            if act.act(g, b) != b:
                return GaloisReport(False, "fixes k", f"{G.names[g]} moves {b}")
    fixed = zq_order(_fixed_space(A, act), A.p, 1)
    if fixed != d.k_degree:
        return GaloisReport(False, "fixed field", f"dim A^G = {fixed} over GF({A.p}), expected {d.k_degree}",
                            fixed_dim=fixed)
    # A (x)_k A -> prod_G A, 1 (x) x^i -> (g x^i)_g, A-linear in the left factor
    m = sc.m
    if m != G.order:
        return GaloisReport(False, "comparison", f"[A:k] = {m} but |G| = {G.order}", fixed_dim=fixed)
    rows = [[act.act(g, sc.xpowers[i]) for i in range(m)] for g in range(G.order)]
    P = restrict_matrix(A, rows)
    try:
        inv = zq_inverse(P, A.p, 1)
    except RingError:
        return GaloisReport(False, "comparison", "A (x)_k A -> prod A is not injective", fixed_dim=fixed)
    return GaloisReport(True, inverse=inv, fixed_dim=fixed)


# ---------------------------------------------------------------------------
# twisted group ring


@dataclass
class TwistedGroupRing:
    datum: GaloisDatum
    twisted: bool = True

    @property
    def A(self):
        return self.datum.A

    @property
    def G(self):
        return self.datum.G

    def one(self):
        A = self.A
        return tuple(A.one() if g == 0 else A.zero() for g in range(self.G.order))

    def mul(self, x, y):
        A, G, act = self.A, self.G, self.datum.action
        out = [A.zero()] * G.order
        for g, a in enumerate(x):
            if not any(a):
                continue
            for h, b in enumerate(y):
                if not any(b):
                    continue
                bb = act.act(g, b) if self.twisted else b
                gh = G.mul(g, h)
                out[gh] = A.add(out[gh], A.mul(a, bb))
        return tuple(out)

    def prime_basis(self):
        """GF(p)-basis x^t * g."""
        A, G = self.A, self.G
        out = []
        for g in range(G.order):
            for t in range(A.dim):
                e = tuple(int(i == t) for i in range(A.dim))
                out.append(tuple(e if h == g else A.zero() for h in range(G.order)))
        return out

    @property
    def k_dimension(self):
        return self.A.dim // self.datum.k_degree * self.G.order


def operator_matrix(T, x):
    """GF(p)-matrix of v -> sum_g a_g * (g v) on A."""
    A, act = T.A, T.datum.action
    n = A.dim
    cols = []
    for t in range(n):
        v = tuple(int(i == t) for i in range(n))
        w = A.zero()
        for g, a in enumerate(x):
            if any(a):
                w = A.add(w, A.mul(a, act.act(g, v)))
        cols.append(w)
    return np.array(cols, dtype=np.int64).T % A.p


@dataclass
class EndomorphismReport:
    ok: bool
    homomorphism: bool
    injective: bool
    bijective: bool
    witness: str = ""

    def __bool__(self):
        return self.ok


def twisted_to_endomorphisms(T):
    """a*g -> (v -> a * g(v)); certify multiplicativity and bijectivity onto End_k(A)."""
    A, p = T.A, T.A.p
    basis = T.prime_basis()
    mats = [operator_matrix(T, b) for b in basis]
    hom, witness = True, ""
    for i, x in enumerate(basis):
        for j, y in enumerate(basis):
            lhs = operator_matrix(T, T.mul(x, y))
            rhs = mats[i] @ mats[j] % p
            if not np.array_equal(lhs, rhs):
                hom = False
                witness = f"phi(b{i} b{j}) != phi(b{i}) phi(b{j})"
                break
        if not hom:
            break
    flat = np.array([m.reshape(-1) for m in mats], dtype=np.int64).T
    rank = zq_order(flat, p, 1)
    injective = rank == len(basis)
    m = A.dim // T.datum.k_degree
    end_dim = T.datum.k_degree * m * m  # dim over GF(p) of End_k(A)
    bijective = injective and rank == end_dim
    return EndomorphismReport(hom and bijective, hom, injective, bijective, witness)


# ---------------------------------------------------------------------------
# semilinear modules


@dataclass
class SemilinearModule:
    """A^m with g.v = P_g * g(v); a module over the twisted group ring."""

    datum: GaloisDatum
    matrices: tuple  # matrices[g] = m x m matrix over A (rows of ring elements)

    def __post_init__(self):
        self.matrices = tuple(tuple(tuple(row) for row in P) for P in self.matrices)
        A, G, act = self.datum.A, self.datum.G, self.datum.action
        m = self.rank
        ident = tuple(tuple(A.one() if i == j else A.zero() for j in range(m)) for i in range(m))
        if self.matrices[0] != ident:
            raise HopfError("not a module: identity must act trivially")
        for g in range(G.order):
            for h in range(G.order):
                lhs = self.matrices[G.mul(g, h)]
                twisted = [[act.act(g, x) for x in row] for row in self.matrices[h]]
                rhs = _matmul(A, self.matrices[g], twisted)
                if tuple(tuple(r) for r in rhs) != lhs:
                    raise HopfError(f"not a module: cocycle fails at ({G.names[g]}, {G.names[h]})")

    @property
    def rank(self):
        return len(self.matrices[0])

    def act(self, g, v):
        A, act = self.datum.A, self.datum.action
        w = [act.act(g, x) for x in v]
        return tuple(A.sum(A.mul(P, x) for P, x in zip(row, w)) for row in self.matrices[g])

    def prime_matrix(self, g):
        A = self.datum.A
        cols = []
        for i in range(self.rank):
            for t in range(A.dim):
                v = [A.zero()] * self.rank
                v[i] = tuple(int(s == t) for s in range(A.dim))
                cols.append(restrict_vector(A, self.act(g, v)))
        return np.array(cols, dtype=np.int64).T


def _matmul(A, X, Y):
    return [[A.sum(A.mul(X[i][k], Y[k][j]) for k in range(len(Y))) for j in range(len(Y[0]))]
            for i in range(len(X))]


def standard_module(d, m):
    A = d.A
    ident = tuple(tuple(A.one() if i == j else A.zero() for j in range(m)) for i in range(m))
    return SemilinearModule(d, tuple(ident for _ in range(d.G.order)))


def regular_module(d):
    """The twisted group ring acting on itself by left multiplication."""
    A, G = d.A, d.G
    r = G.order
    mats = []
    for g in range(r):
        mats.append(tuple(tuple(A.one() if i == G.mul(g, j) else A.zero() for j in range(r)) for i in range(r)))
    return SemilinearModule(d, tuple(mats))


def _random_invertible(A, m, rng):
    elems = list(A.elements())
    while True:
        Q = [[rng.choice(elems) for _ in range(m)] for _ in range(m)]
        try:
            Qi = zq_inverse(restrict_matrix(A, Q), A.p, 1)
        except RingError:
            continue
        inv = [[tuple(int(c) for c in Qi[i * A.dim:(i + 1) * A.dim, j * A.dim]) for j in range(m)]
               for i in range(m)]
        return Q, inv


def random_module(d, m, rng):
    """A^m with the standard action conjugated by a random invertible matrix."""
    A, G, act = d.A, d.G, d.action
    Q, Qi = _random_invertible(A, m, rng)
    mats = []
    for g in range(G.order):
        gQi = [[act.act(g, x) for x in row] for row in Qi]
        mats.append(_matmul(A, Q, gQi))
    return SemilinearModule(d, tuple(mats))


@dataclass
class Decomposition:
    invariants: list  # GF(p)-basis of V^G (vectors in A^m)
    k_dim: int  # dim_k V^G
    iso_certified: bool


def decompose_module(V):
    """V^G and the isomorphism A (x)_k V^G -> V, x (x) v -> x v."""
    d = V.datum
    A, G = d.A, d.G
    N = V.rank * A.dim
    blocks = [(V.prime_matrix(g) - np.eye(N, dtype=np.int64)) % A.p for g in range(G.order)]
    ker = zq_kernel(np.concatenate(blocks, axis=0), A.p, 1)
    inv = []
    for col in ker.T:
        v = [tuple(int(c) for c in col[i * A.dim:(i + 1) * A.dim]) for i in range(V.rank)]
        inv.append(tuple(v))
    gp_dim = zq_order(ker, A.p, 1)
    # image of A (x) V^G spans V?
    span = _span(A, inv, V.rank)
    onto = zq_order(span, A.p, 1) == N
    dims_match = (A.dim // d.k_degree) * gp_dim == N
    if not (onto and dims_match):
        raise HopfError(
            f"not a module / Galois hypothesis violated: dim V^G = {gp_dim}, image rank {zq_order(span, A.p, 1)}, dim V = {N}"
        )
    return Decomposition(inv, gp_dim // d.k_degree, True)


# ---------------------------------------------------------------------------
# comodules over Map(G, A)  <->  twisted group ring modules


def comodule_to_module(C, d):
    """g.e_i = sum_k g(c^i_{g^-1, k}) e_k."""
    A, G, act = d.A, d.G, d.action
    m = C.rank
    if C.module.relations:
        raise HopfError("only free comodules are supported")
    mats = []
    for g in range(G.order):
        gi = G.inv(g)
        P = [[A.zero()] * m for _ in range(m)]
        for i in range(m):
            for (j, k), c in C.coaction[i].items():
                if j == gi:
                    P[k][i] = A.add(P[k][i], act.act(g, c))
        mats.append(P)
    return SemilinearModule(d, tuple(mats))


def module_to_comodule(V, H):
    """Inverse construction: c^i_{gamma, k} = gamma((P_{gamma^-1})_{k, i})."""
    d = V.datum
    A, G, act = d.A, d.G, d.action
    m = V.rank
    coaction = []
    for i in range(m):
        c = {}
        for gam in range(G.order):
            P = V.matrices[G.inv(gam)]
            for k in range(m):
                x = act.act(gam, P[k][i])
                if any(x):
                    c[(gam, k)] = x
        coaction.append(c)
    M = GradedModule.free(A, [f"e{i}" for i in range(m)])
    return Comodule(H, M, tuple(coaction), name="from-module")


def comodule_module_equivalence(C, d):
    """Module attached to C, plus round-trip and invariants checks."""
    V = comodule_to_module(C, d)
    back = module_to_comodule(V, C.H)
    round_trip = back.coaction == C.coaction
    P = primitives(C)
    dec = decompose_module(V)
    return V, {
        "round_trip": round_trip,
        "primitives_log": P.log_order,
        "invariants_log": dec.k_dim * d.k_degree,
        "match": P.log_order == dec.k_dim * d.k_degree,
    }


# ---------------------------------------------------------------------------
# unicursal decomposition


@dataclass
class UnicursalCertificate:
    primitive_dim: int  # over GF(p)
    module_dim: int  # over GF(p)
    extension_degree: int  # [A : D]
    surjective: bool
    dimensions_match: bool
    comodule_map: bool

    @property
    def ok(self):
        return self.surjective and self.dimensions_match and self.comodule_map

    def __bool__(self):
        return self.ok


def unicursal_decompose(C):
    """Certify M = A (x)_D (A box_Psi M) for a comodule over A (x)_D A."""
    H = C.H
    A = H.ring
    sc = getattr(H, "subfield", None)
    if sc is None:
        raise HopfError("unicursal_decompose needs a comodule over a unicursal Hopf algebroid")
    P = primitives(C)
    total = C.log_size()
    span = _cat(C._mod_span, _span(A, P.vectors, C.rank))
    surj = zq_order(span, A.p, 1) - zq_order(C._mod_span, A.p, 1) == total
    match = sc.m * P.log_order == total
    comap = all(
        zq_contains(C._rel_span,
                    restrict_vector(A, tuple(A.sub(s, t) for s, t in zip(C.rho(z), C.one_tensor(z)))),
                    A.p, 1)
        for z in P.vectors
    )
    cert = UnicursalCertificate(P.log_order, total, sc.m, surj, match, comap)
    if not cert.ok:
        raise AssertionError(f"unicursal decomposition failed: {cert}")
    return cert


# ---------------------------------------------------------------------------
# extension identifications


def _pushforward_comodule(C, data):
    """M as a comodule over Gamma' via the projection."""
    H = C.H
    G2 = data.gamma_prime
    A = H.ring
    coaction = []
    for i in range(C.rank):
        c = {}
        for (j, k), v in C.coaction[i].items():
            for l, w in enumerate(data.project(H, H.scale(v, H.basis_vector(j)))):
                if any(w):
                    c[(l, k)] = A.add(c.get((l, k), A.zero()), w)
        coaction.append(c)
    return Comodule(G2, C.module, tuple(coaction), name=f"{C.name}'")


@dataclass
class ExtensionReport:
    d_degree: int
    phi_rank: int
    gamma_prime_rank: int
    phi_inside_gamma: bool
    lhs_dim: int  # A box_Gamma M over GF(p)
    rhs_dim: int  # A box_Phi (A box_Gamma' M) over GF(p)
    middle_dim: int  # A box_Gamma' M over GF(p)
    iso_certified: bool
    nonvanishing: bool
    notes: list = field(default_factory=list)

    @property
    def ok(self):
        return self.phi_inside_gamma and self.iso_certified and self.nonvanishing

    def __bool__(self):
        return self.ok


def extension_identifications(H, C, data=None):
    A = H.ring
    data = data or associated_hopf_algebra(H)
    phi = data.phi
    r = H.rank
    # Phi inside Gamma: A box_Gamma' Gamma equals the A-span of eta_R(x^i)
    reg = Comodule(H, H.carrier, tuple(dict(c) for c in H.coproduct), name="Gamma")
    reg2 = _pushforward_comodule(reg, data)
    phi_prims = primitives(reg2)
    xs = phi.subfield.xpowers
    images = [H.eta_r(x) for x in xs]
    img_span = _span(A, images, r)
    prim_span = _gspan(A, phi_prims.vectors, r)
    inside = (zq_order(img_span, A.p, 1) == phi_prims.log_order == zq_order(
        _cat(img_span, prim_span), A.p, 1))
    # left side
    lhs = primitives(C)
    # middle: N = A box_Gamma' M, an A-subspace of M
    C2 = _pushforward_comodule(C, data)
    N = primitives(C2)
    # A-basis of N
    nbasis, order = [], zq_order(C._mod_span, A.p, 1)
    span = C._mod_span
    for v in N.vectors:
        cand = _cat(span, _span(A, [v], C.rank))
        new = zq_order(cand, A.p, 1)
        if new > order:
            nbasis.append(v)
            span, order = cand, new
    # coaction of N in Phi-coordinates: rho(n) = sum c_it eta_R(x^i) (x) n_t
    cols = [C.tensor_vec(im, nt) for im in images for nt in nbasis] + list(C._rel_gens)
    m, s = len(images), len(nbasis)
    coaction = []
    if nbasis:
        mat = [[col[i] for col in cols] for i in range(r * C.rank)]
        for nt in nbasis:
            sol = solve_linear(mat, list(C.rho(nt)), A)
            if sol is None:
                raise AssertionError("A box_Gamma' M is not a Phi-comodule")
            coaction.append({(i, t): sol[i * s + t] for i in range(m) for t in range(s) if any(sol[i * s + t])})
    Nmod = GradedModule.free(A, [f"n{t}" for t in range(s)])
    CN = Comodule(phi, Nmod, tuple(coaction), name="A box_Gamma' M")
    rhs = primitives(CN) if s else None
    rhs_dim = rhs.log_order if rhs else 0
    # the map A box_Phi N -> M lands in A box_Gamma M and is injective
    image = []
    for z in (rhs.vectors if rhs else []):
        v = [A.zero()] * C.rank
        for c, nt in zip(z, nbasis):
            v = [A.add(a, A.mul(c, b)) for a, b in zip(v, nt)]
        image.append(tuple(v))
    lands = all(
        zq_contains(C._rel_span,
                    restrict_vector(A, tuple(A.sub(a, b) for a, b in zip(C.rho(v), C.one_tensor(v)))), A.p, 1)
        for v in image
    )
    inj = zq_order(_cat(C._mod_span, _gspan(A, image, C.rank)), A.p, 1) - zq_order(C._mod_span, A.p, 1) == rhs_dim
    iso = lands and inj and rhs_dim == lhs.log_order
    nonvanishing = N.is_zero or not lhs.is_zero
    notes = []
    if s:
        unicursal_decompose(CN)
        notes.append("A box_Gamma' M decomposed over Phi")
    return ExtensionReport(data.d_degree, phi.rank, data.gamma_prime.rank, inside,
                           lhs.log_order, rhs_dim, N.log_order, iso, nonvanishing, notes)


# ---------------------------------------------------------------------------
# end-to-end harness


def unipotence_harness(H, rng, count=10, max_length=6):
    """Sample comodules; count those with no primitives (must be 0 when Gamma' is unipotent)."""
    from .comodule_lab import is_unipotent_finite

    if isinstance(rng, int):
        rng = random.Random(rng)
    data = associated_hopf_algebra(H)
    unip = is_unipotent_finite(data.gamma_prime)
    empty = 0
    for _ in range(count):
        C = random_comodule(H, rng, max_length)
        if primitives(C).is_zero:
            empty += 1
    return {"gamma_prime_unipotent": unip, "samples": count, "without_primitives": empty}

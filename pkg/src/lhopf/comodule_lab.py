"""Comodules over finite Hopf algebroids: primitives, filtrations, unipotence.

A comodule is a presented left R-module M = R^n / Rel with a coaction
rho(e_i) = sum c * g_j (x) e_k.  Elements of Gamma (x)_R M are vectors of
length rank(Gamma) * n indexed by (j, k) -> j * n + k, modulo the left
R-span of the normalized tensors g_j (x) rel.

Most computations run over the prime ring Z/p^a: primitives are only
linear over the equalizer of the two units, so they are found as kernels
of additive maps.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .exact_rings import (
    kernel_basis,
    restrict_matrix,
    restrict_vector,
    solve_linear,
    zq_contains,
    zq_kernel,
    zq_order,
)
from .graded_linalg import Grading, GradedModule
from .hopf_core import HopfError, Report, mod_invariant_ideal, maximal_ideal


def _span(R, vecs, length):
    """Prime-ring columns spanning the left R-span of vecs."""
    if not vecs:
        return np.zeros((length * R.dim, 0), dtype=np.int64)
    return restrict_matrix(R, [list(c) for c in zip(*vecs)])


def _gspan(R, vecs, length):
    """Prime-ring columns spanning the additive group generated by vecs."""
    if not vecs:
        return np.zeros((length * R.dim, 0), dtype=np.int64)
    return np.array([restrict_vector(R, v) for v in vecs], dtype=np.int64).T


def _cat(*mats):
    return np.concatenate(mats, axis=1)


def _ring_basis(R):
    return [tuple(int(i == t) for i in range(R.dim)) for t in range(R.dim)]


@dataclass(eq=False, repr=False)
class Comodule:
    H: object
    module: GradedModule
    coaction: tuple  # coaction[i] = {(j, k): c}
    name: str = ""

    def __post_init__(self):
        H, M = self.H, self.module
        if M.ring != H.ring:
            raise HopfError("comodule and Hopf algebroid live over different rings")
        if len(self.coaction) != M.rank:
            raise HopfError("one coaction entry per generator is required")
        for c in self.coaction:
            for j, k in c:
                if not (0 <= j < H.rank and 0 <= k < M.rank):
                    raise HopfError("coaction index out of range")
        R = H.ring
        self.coaction = tuple({key: v for key, v in sorted(c.items()) if any(v)} for c in self.coaction)
        self._rel_gens = [self.tensor_vec(H.basis_vector(j), rel)
                          for j in range(H.rank) for rel in M.relations]
        self._rel_span = _span(R, self._rel_gens, H.rank * M.rank)
        self._mod_span = _span(R, list(M.relations), M.rank)

    def __repr__(self):
        return f"Comodule({self.name or '?'}, rank={self.rank}, over {self.H.name})"

    @property
    def ring(self):
        return self.H.ring

    @property
    def rank(self):
        return self.module.rank

    def zero(self):
        R = self.ring
        return tuple(R.zero() for _ in range(self.rank))

    def basis_vector(self, i):
        R = self.ring
        return tuple(R.one() if k == i else R.zero() for k in range(self.rank))

    def rho(self, x):
        R, n = self.ring, self.rank
        out = [R.zero()] * (self.H.rank * n)
        for i, s in enumerate(x):
            if any(s):
                for (j, k), c in self.coaction[i].items():
                    out[j * n + k] = R.add(out[j * n + k], R.mul(s, c))
        return tuple(out)

    def tensor_vec(self, g, x):
        """Normal form of g (x) x for g in Gamma, x in M."""
        H, R, n = self.H, self.ring, len(x)
        out = [R.zero()] * (H.rank * n)
        for k, s in enumerate(x):
            if any(s):
                for j, c in enumerate(H.mul(g, H.eta_r(s))):
                    if any(c):
                        out[j * n + k] = R.add(out[j * n + k], c)
        return tuple(out)

    def one_tensor(self, x):
        return self.tensor_vec(self.H.unit, x)

    def log_size(self):
        """log_p |M|."""
        R = self.ring
        return self.rank * R.dim * R.a - zq_order(self._mod_span, R.p, R.a)

    def in_module_span(self, gens, v):
        """Is v in the R-span of gens plus the relations?"""
        R = self.ring
        big = _cat(self._mod_span, _span(R, gens, self.rank))
        return zq_contains(big, restrict_vector(R, v), R.p, R.a)

    def image_of_tensor(self, gens):
        """Prime columns for the image of Gamma (x) span(gens), relations included."""
        H = self.H
        vecs = [self.tensor_vec(H.basis_vector(j), g) for j in range(H.rank) for g in gens]
        return _cat(self._rel_span, _span(self.ring, vecs, H.rank * self.rank))

    def right_factors(self, x):
        """m_l with rho(x) = sum chi(g_l) (x) m_l (chi(g_l) is a right basis)."""
        H, R, n = self.H, self.ring, self.rank
        ms = [[R.zero()] * n for _ in range(H.rank)]
        v = self.rho(x)
        for j in range(H.rank):
            for k in range(n):
                c = v[j * n + k]
                if any(c):
                    for l, a in enumerate(H.chi(H.scale(c, H.basis_vector(j)))):
                        if any(a):
                            ms[l][k] = R.add(ms[l][k], a)
        return [tuple(m) for m in ms]


def verify_comodule(C):
    H, R, n = C.H, C.ring, C.rank
    r = H.rank
    checked = []
    p, a = R.p, R.a
    names = C.module.names
    for rel in C.module.relations:
        if not zq_contains(C._rel_span, restrict_vector(R, C.rho(rel)), p, a):
            return Report(False, "well defined", f"rho does not preserve relation {rel}", checked)
    checked.append("well defined")
    for i in range(n):
        out = [R.zero()] * n
        for (j, k), c in C.coaction[i].items():
            out[k] = R.add(out[k], R.mul(c, H.counit[j]))
        diff = [R.sub(x, y) for x, y in zip(out, C.basis_vector(i))]
        if not zq_contains(C._mod_span, restrict_vector(R, diff), p, a):
            return Report(False, "counit", f"(eps(x)id)rho({names[i]}) != {names[i]}", checked)
    checked.append("counit")
    # Gamma (x) Gamma (x) M relations: normalized g_l (x) X for X a Gamma (x) M relation
    triple_rels = []
    for X in C._rel_gens:
        for l in range(r):
            triple_rels.append(_lift_left(C, H.basis_vector(l), X))
    trel = _span(R, triple_rels, r * r * n)
    for i in range(n):
        lhs = [R.zero()] * (r * r * n)
        rhs = [R.zero()] * (r * r * n)
        for (j, k), c in C.coaction[i].items():
            for (s, t), d in H.coproduct[j].items():
                idx = (s * r + t) * n + k
                lhs[idx] = R.add(lhs[idx], R.mul(c, d))
            gj = H.scale(c, H.basis_vector(j))
            for (s, t), d in C.coaction[k].items():
                for m, e in enumerate(H.mul(gj, H.eta_r(d))):
                    if any(e):
                        idx = (m * r + s) * n + t
                        rhs[idx] = R.add(rhs[idx], e)
        diff = [R.sub(x, y) for x, y in zip(lhs, rhs)]
        if not zq_contains(trel, restrict_vector(R, diff), p, a):
            return Report(False, "coassociativity", f"at generator {names[i]}", checked)
    checked.append("coassociativity")
    return Report(True, checked=checked)


def _lift_left(C, g, X):
    """g (x) X in Gamma (x) Gamma (x) M for X in Gamma (x) M (normalized)."""
    H, R, n = C.H, C.ring, C.rank
    r = H.rank
    out = [R.zero()] * (r * r * n)
    for j in range(r):
        for k in range(n):
            c = X[j * n + k]
            if any(c):
                for m, e in enumerate(H.mul(g, H.eta_r(c))):
                    if any(e):
                        idx = (m * r + j) * n + k
                        out[idx] = R.add(out[idx], e)
    return out


# ---------------------------------------------------------------------------
# constructors


def trivial_comodule(H, module):
    coaction = []
    for i in range(module.rank):
        coaction.append({(j, i): c for j, c in enumerate(H.unit) if any(c)})
    return Comodule(H, module, tuple(coaction), name="trivial")


def regular_comodule(H):
    """Gamma itself with coaction psi."""
    return Comodule(H, H.carrier, tuple(dict(c) for c in H.coproduct), name=f"{H.name} (regular)")


def cofree(H, s=1):
    """Gamma (x) R^s with coaction psi (x) id."""
    r = H.rank
    names = [f"{nm}.{t}" for nm in H.names for t in range(s)] if s > 1 else list(H.names)
    degs = [d for d in H.degrees for _ in range(s)]
    M = GradedModule.free(H.ring, names, degs, H.grading)
    coaction = []
    for i in range(r):
        for t in range(s):
            coaction.append({(a, b * s + t): c for (a, b), c in H.coproduct[i].items()})
    return Comodule(H, M, tuple(coaction), name=f"cofree({s})")


def group_rep_comodule(H, group, matrices, names=None):
    """Comodule over Map(G, R) (trivial action) from a left G-representation on R^n."""
    R = H.ring
    n = len(matrices[0])
    names = names or [f"e{i}" for i in range(n)]
    M = GradedModule.free(R, names)
    coaction = []
    for k in range(n):
        c = {}
        for g in range(group.order):
            col = [row[k] for row in matrices[group.inv(g)]]
            for i, x in enumerate(col):
                if x % R.q:
                    c[(g, i)] = R.from_int(x)
        coaction.append(c)
    return Comodule(H, M, tuple(coaction), name="rep")


def _homogeneous_degree(C, v):
    degs = {C.module.degrees[i] for i, x in enumerate(v) if any(x)}
    return degs.pop() if len(degs) == 1 else None


def restrict_comodule(C, gens, names=None):
    """The comodule structure on the R-span of gens (assumed to be a subcomodule)."""
    H, R, n = C.H, C.ring, C.rank
    m = len(gens)
    rels = list(C.module.relations)
    rows = [[g[i] for g in gens] + [rel[i] for rel in rels] for i in range(n)]
    syz = []
    if rows and (not R.is_field or rels):
        for v in kernel_basis(rows, R):
            part = tuple(v[:m])
            if any(any(x) for x in part):
                syz.append(part)
    names = names or [f"w{i}" for i in range(m)]
    degs = [_homogeneous_degree(C, g) for g in gens]
    if C.module.grading.kind != "trivial" and all(d is not None for d in degs):
        module = GradedModule(R, tuple(zip(names, degs)), C.module.grading, tuple(syz))
    else:
        module = GradedModule(R, tuple(zip(names, [0] * m)), Grading(), tuple(syz))
    cols = [C.tensor_vec(H.basis_vector(j), g) for j in range(H.rank) for g in gens]
    cols += list(C._rel_gens)
    A = [[col[i] for col in cols] for i in range(H.rank * n)]
    coaction = []
    for g in gens:
        sol = solve_linear(A, list(C.rho(g)), R) if cols else None
        if sol is None:
            raise HopfError("generators do not span a subcomodule")
        coaction.append({(j, t): sol[j * m + t] for j in range(H.rank) for t in range(m)
                         if any(sol[j * m + t])})
    return Comodule(H, module, tuple(coaction), name=f"sub({C.name})")


def generated_subcomodule(C, gens):
    """Smallest subcomodule containing gens, as a list of generators in M."""
    found = []
    queue = [tuple(g) for g in gens]
    while queue:
        v = queue.pop(0)
        if not any(any(x) for x in v) or C.in_module_span(found, v):
            continue
        found.append(v)
        queue.extend(C.right_factors(v))
    return found


def is_subcomodule(C, gens):
    big = C.image_of_tensor(gens)
    R = C.ring
    return all(zq_contains(big, restrict_vector(R, C.rho(g)), R.p, R.a) for g in gens)


def quotient_comodule(C, gens):
    M = C.module
    module = GradedModule(M.ring, M.basis, M.grading, M.relations + tuple(tuple(g) for g in gens))
    return Comodule(C.H, module, C.coaction, name=f"quot({C.name})")


# ---------------------------------------------------------------------------
# primitives


@dataclass
class Primitives:
    vectors: list  # additive generators, independent modulo the relations
    log_order: int  # log_p of the number of primitives

    @property
    def is_zero(self):
        return self.log_order == 0


def primitives(C, within=None, modulo=None):
    """{x : rho(x) = 1 (x) x}, optionally restricted to the additive span of within.

    modulo: extra generators of a subcomodule N; then primitives of M/N are
    computed inside M (x counts as primitive if rho(x) - 1(x)x lies in Gamma (x) N).
    """
    R, n = C.ring, C.rank
    if within is None:
        within = [tuple(b if k == i else R.zero() for k in range(n))
                  for i in range(n) for b in _ring_basis(R)]
    within = [tuple(w) for w in within]
    modulo = list(modulo or [])
    if not within:
        return Primitives([], 0)
    L = _gspan(R, [tuple(R.sub(x, y) for x, y in zip(C.rho(w), C.one_tensor(w))) for w in within],
               C.H.rank * n)
    rel = C.image_of_tensor(modulo) if modulo else C._rel_span
    ker = zq_kernel(_cat(L, rel), R.p, R.a)[:len(within)]
    base = _cat(C._mod_span, _span(R, modulo, n))
    q = R.q
    order0 = zq_order(base, R.p, R.a)
    order = order0
    span = base
    vecs = []
    for col in ker.T:
        x = [R.zero()] * n
        for w, c in zip(within, col):
            if c % q:
                x = [R.add(s, R.scale(int(c), t)) for s, t in zip(x, w)]
        x = tuple(x)
        cand = _cat(span, _gspan(R, [x], n))
        new = zq_order(cand, R.p, R.a)
        if new > order:
            vecs.append(x)
            span, order = cand, new
    return Primitives(vecs, order - order0)


# ---------------------------------------------------------------------------
# ideal chains and their associated graded comodules


def _chain_vectors(H, step):
    return [H.basis_vector(s) if isinstance(s, int) else tuple(s) for s in step]


def lemma34_check(H, chain, multiplicative=False):
    """Check psi(H_n) in sum_i H_i (x) H_{n-i} along an exhausting chain."""
    R, r = H.ring, H.rank
    if not R.is_field:
        raise HopfError("chains are only supported over a field")
    chain = [_chain_vectors(H, s) for s in chain]
    p = R.p
    unit_span = _span(R, [H.unit], r)
    first = _span(R, chain[0], r)
    if zq_order(first, p, 1) != zq_order(unit_span, p, 1) or not all(
        zq_contains(unit_span, restrict_vector(R, v), p, 1) for v in chain[0]
    ):
        raise HopfError("chain must start at span{1}")
    spans = [_span(R, s, r) for s in chain]
    for k in range(1, len(chain)):
        for v in chain[k - 1]:
            if not zq_contains(spans[k], restrict_vector(R, v), p, 1):
                return Report(False, "increasing", f"H_{k - 1} not inside H_{k}")
    if zq_order(spans[-1], p, 1) != r * R.dim:
        raise HopfError("chain does not exhaust the carrier")
    checked = []
    for k, step in enumerate(chain):
        target = [H.tensor_vector(H.tensor(a, b))
                  for i in range(k + 1) for a in chain[i] for b in chain[k - i]]
        tspan = _span(R, target, r * r)
        for v in step:
            X = H.tensor_vector(H.psi(v))
            if not zq_contains(tspan, restrict_vector(R, X), p, 1):
                from .hopf_core import _fmt

                return Report(False, "coproduct filtration",
                              f"psi({_fmt(H, v)}) not in sum H_i(x)H_{k}-i", checked)
    checked.append("coproduct filtration")
    if multiplicative:
        top = len(chain) - 1
        for s in range(len(chain)):
            for t in range(len(chain)):
                tgt = spans[min(s + t, top)]
                for a in chain[s]:
                    for b in chain[t]:
                        if not zq_contains(tgt, restrict_vector(R, H.mul(a, b)), p, 1):
                            return Report(False, "multiplicative", f"H_{s}H_{t} not in H_{s + t}", checked)
        checked.append("multiplicative")
    return Report(True, checked=checked)


@dataclass
class Filtration:
    comodule: Comodule
    steps: list  # steps[k] = generators (vectors in M) of the k-th filtration piece
    chosen: list = field(default_factory=list)  # element added at each step

    @property
    def length(self):
        return len(self.steps)

    def orders(self):
        C = self.comodule
        R = C.ring
        base = zq_order(C._mod_span, R.p, R.a)
        return [zq_order(_cat(C._mod_span, _span(R, s, C.rank)), R.p, R.a) - base for s in self.steps]

    def certify(self, residue_quotients=True):
        """Re-check every step: subcomodule, strict growth, and (optionally)
        quotients of R-length one with trivial coaction."""
        C = self.comodule
        R = C.ring
        prev = []
        prev_order = 0
        orders = self.orders()
        res = R.residue_field.n if R.is_field else 1
        for k, step in enumerate(self.steps):
            if not is_subcomodule(C, step):
                return Report(False, "subcomodule", f"step {k + 1}")
            if orders[k] <= prev_order:
                return Report(False, "strict", f"step {k + 1}")
            if residue_quotients:
                if orders[k] - prev_order != res:
                    return Report(False, "residue quotient", f"step {k + 1} has log order {orders[k] - prev_order}")
                big = C.image_of_tensor(prev)
                x = self.chosen[k]
                d = tuple(R.sub(s, t) for s, t in zip(C.rho(x), C.one_tensor(x)))
                if not zq_contains(big, restrict_vector(R, d), R.p, R.a):
                    return Report(False, "trivial quotient", f"step {k + 1}")
            prev, prev_order = step, orders[k]
        if prev_order != C.log_size():
            return Report(False, "exhaustive", "last step is not the whole module")
        return Report(True, checked=["subcomodule", "strict", "exhaustive"])

    def describe(self, names=None):
        C = self.comodule
        lines = []
        for k, x in enumerate(self.chosen or [None] * self.length):
            gens = self.steps[k]
            lines.append(f"M{k + 1} = M{k} + R.({_vec_str(C, x)})" if x is not None
                         else f"W{k}: " + ", ".join(_vec_str(C, g) for g in gens))
        return lines


def _vec_str(C, v):
    names = C.module.names
    terms = []
    for nm, c in zip(names, v):
        if any(c):
            coef = str(c[0]) if len(c) == 1 else "(" + ",".join(map(str, c)) + ")"
            terms.append(nm if coef == "1" else f"{coef}*{nm}")
    return " + ".join(terms) or "0"


def lemma34_comodule_filtration(C, chain):
    """W_k = rho^-1(H_k (x) W) for an exhausting chain H_0 <= H_1 <= ..."""
    H, R, n = C.H, C.ring, C.rank
    chain = [_chain_vectors(H, s) for s in chain]
    within = [tuple(b if k == i else R.zero() for k in range(n)) for i in range(n) for b in _ring_basis(R)]
    L = _gspan(R, [C.rho(w) for w in within], H.rank * n)
    total = C.log_size()
    steps = []
    last = -1
    base = zq_order(C._mod_span, R.p, R.a)
    for Hk in chain:
        img = _span(R, [C.tensor_vec(h, C.basis_vector(i)) for h in Hk for i in range(n)], H.rank * n)
        ker = zq_kernel(_cat(L, img, C._rel_span), R.p, R.a)[:len(within)]
        gens = []
        span, order = C._mod_span, base
        for col in ker.T:
            x = [R.zero()] * n
            for w, c in zip(within, col):
                if c % R.q:
                    x = [R.add(s, R.scale(int(c), t)) for s, t in zip(x, w)]
            cand = _cat(span, _gspan(R, [tuple(x)], n))
            new = zq_order(cand, R.p, R.a)
            if new > order:
                gens.append(tuple(x))
                span, order = cand, new
        size = order - base
        if size > last:
            if not is_subcomodule(C, gens):
                raise HopfError("preimage is not a subcomodule")
            steps.append(gens)
            last = size
        if size == total:
            break
    if last != total:
        raise HopfError("the chain does not exhaust the comodule")
    return Filtration(C, steps)


# ---------------------------------------------------------------------------
# unipotence


def dual_algebra(H):
    """Structure constants of H*: (f_a f_b) = sum_k psi_k[a, b] f_k."""
    r = H.rank
    consts = {}
    for k in range(r):
        for (a, b), c in H.coproduct[k].items():
            consts.setdefault((a, b), {})[k] = c
    return consts


def is_unipotent_finite(H):
    """True iff the augmentation ideal of the dual algebra is nilpotent."""
    R = H.ring
    if not R.is_field:
        raise HopfError("needs a Hopf algebra over a field")
    if not H.is_hopf_algebra:
        raise HopfError("not a Hopf algebra: eta_L != eta_R")
    r = H.rank
    consts = dual_algebra(H)

    def prod(f, g):
        out = [R.zero()] * r
        for (a, b), cs in consts.items():
            if any(f[a]) and any(g[b]):
                c = R.mul(f[a], g[b])
                for k, v in cs.items():
                    out[k] = R.add(out[k], R.mul(c, v))
        return tuple(out)

    # augmentation ideal: functionals vanishing on 1
    ideal = kernel_basis([list(H.unit)], R)
    ideal = [tuple(v) for v in ideal]
    power = ideal
    rank = len(ideal)
    for _ in range(r + 1):
        if not power:
            return True
        nxt = [prod(f, g) for f in power for g in ideal]
        nxt = [v for v in nxt if any(any(x) for x in v)]
        if nxt:
            from .exact_rings import _rref

            rows, _ = _rref(R, [list(v) for v in nxt], r)
            nxt = [tuple(v) for v in rows]
        if len(nxt) == rank and nxt:
            return False
        power, rank = nxt, len(nxt)
    return not power


# ---------------------------------------------------------------------------
# composition length and Landweber filtrations


def _ideal_power_gens(C, j, gens=None):
    """Generators of m^j N for N the R-span of gens (default all of M)."""
    R = C.ring
    gens = gens if gens is not None else [C.basis_vector(i) for i in range(C.rank)]
    if R.is_field:
        return list(gens) if j == 0 else []
    out = []
    for i in range(j + 1):
        mono = R.monomial(i, j - i)
        if any(mono):
            out.extend(tuple(R.mul(mono, x) for x in g) for g in gens)
    return out


def composition_length(module):
    """R-length of a presented module, by repeated socle counting."""
    R = module.ring
    n = module.rank
    rels = list(module.relations)
    res = R.n if R.is_field else 1
    length = 0
    p, a = R.p, R.a
    for _ in range(n * R.dim * R.a + 1):
        relspan = _span(R, rels, n)
        total = n * R.dim * R.a - zq_order(relspan, p, a)
        if total == 0:
            return length
        if R.is_field:
            return length + total // res
        within = [tuple(b if k == i else R.zero() for k in range(n)) for i in range(n) for b in _ring_basis(R)]
        blocks = []
        for g in maximal_ideal(R):
            blocks.append(_gspan(R, [tuple(R.mul(g, x) for x in w) for w in within], n))
        L = np.concatenate(blocks, axis=0)
        big_rel = np.zeros((L.shape[0], relspan.shape[1] * len(blocks)), dtype=np.int64)
        for t in range(len(blocks)):
            big_rel[t * n * R.dim:(t + 1) * n * R.dim, t * relspan.shape[1]:(t + 1) * relspan.shape[1]] = relspan
        ker = zq_kernel(_cat(L, big_rel), p, a)[:len(within)]
        soc = []
        for col in ker.T:
            x = [R.zero()] * n
            for w, c in zip(within, col):
                if c % R.q:
                    x = [R.add(s, R.scale(int(c), t)) for s, t in zip(x, w)]
            soc.append(tuple(x))
        grown = zq_order(_cat(relspan, _gspan(R, soc, n)), p, a) - zq_order(relspan, p, a)
        length += grown // res
        rels = rels + soc
    raise RuntimeError("socle series did not terminate")


@dataclass
class NonUnipotentWitness:
    comodule: Comodule  # quotient with no primitives in its bottom layer
    layer: list  # generators of the layer m^(k-1) Q searched for primitives
    steps: list  # filtration built before getting stuck

    def __bool__(self):
        return False


def landweber_filtration(C, cert=None):
    """Filtration 0 < M_1 < ... < M_l = M by subcomodules with quotients the residue field."""
    H, R = C.H, C.ring
    if cert is None:
        _, cert = mod_invariant_ideal(H, maximal_ideal(R))
    # discreteness: some power of m kills M
    k = 0
    while True:
        if all(C.in_module_span([], g) for g in _ideal_power_gens(C, k)):
            break
        k += 1
        if k > R.a + R.dim + 1:
            raise HopfError("not discrete")
    chosen, steps = [], []
    total = C.log_size()
    for _ in range(total + 1):
        Q = quotient_comodule(C, chosen)
        if Q.log_size() == 0:
            filt = Filtration(C, steps, chosen)
            return filt
        k0 = 0
        while not all(Q.in_module_span([], g) for g in _ideal_power_gens(Q, k0)):
            k0 += 1
        layer = _ideal_power_gens(Q, k0 - 1)
        within = [tuple(R.mul(b, x) for x in g) for g in layer for b in _ring_basis(R)]
        P = primitives(C, within=within, modulo=chosen)
        if P.is_zero:
            return NonUnipotentWitness(Q, layer, steps)
        x = P.vectors[0]
        chosen.append(x)
        steps.append(list(chosen))
    raise RuntimeError("filtration did not terminate")


# ---------------------------------------------------------------------------
# random comodules


def random_comodule(H, rng, max_length=6, tries=60):
    """Random subquotient of a small cofree comodule; deterministic given rng."""
    if isinstance(rng, int):
        rng = random.Random(rng)
    R = H.ring
    elems = list(R.elements())
    for _ in range(tries):
        s = rng.choice([1, 1, 2])
        F = cofree(H, s)
        x = [R.zero()] * F.rank
        for pos in rng.sample(range(F.rank), min(F.rank, rng.choice([1, 1, 2]))):
            x[pos] = rng.choice(elems[1:])
        gens = generated_subcomodule(F, [tuple(x)])
        if not gens:
            continue
        S = restrict_comodule(F, gens)
        length = composition_length(S.module)
        if rng.random() < 0.5 and length > 1:
            y = [R.zero()] * S.rank
            y[rng.randrange(S.rank)] = rng.choice(elems[1:])
            sub = generated_subcomodule(S, [tuple(y)])
            if sub and S.log_size() > zq_order(_cat(S._mod_span, _span(R, sub, S.rank)), R.p, R.a) - zq_order(S._mod_span, R.p, R.a):
                S = quotient_comodule(S, sub)
                length = composition_length(S.module)
        if 0 < length <= max_length:
            S.name = f"random({H.name})"
            return S
    raise HopfError("could not sample a small comodule")

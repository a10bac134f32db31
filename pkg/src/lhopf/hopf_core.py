"""Hopf algebroids of finite rank over a coefficient ring.

Gamma is stored as a free left R-module (left structure = eta_L) with a
distinguished basis.  Tensors Gamma (x)_R Gamma are kept in normal form
sum c_ij g_i (x) g_j with every scalar moved onto the left factor, using
x (x) r*y = x*eta_R(r) (x) y.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from math import comb

import numpy as np

from .exact_rings import (
    FiniteField,
    RingError,
    TruncatedRing,
    _rref,
    restrict_matrix,
    restrict_vector,
    zq_contains,
    zq_kernel,
    zq_order,
)
from .graded_linalg import Grading, GradedModule


class HopfError(ValueError):
    pass


class UnsupportedError(HopfError):
    pass


@dataclass
class Report:
    ok: bool
    axiom: str = ""
    witness: str = ""
    checked: list = field(default_factory=list)

    def __bool__(self):
        return self.ok

    def summary(self):
        if self.ok:
            return f"pass ({len(self.checked)} axiom groups)"
        return f"FAIL {self.axiom}: {self.witness}"


@dataclass(eq=False, repr=False)
class HopfAlgebroid:
    ring: object
    carrier: GradedModule
    unit: tuple
    mult: tuple  # mult[i][j] = vector of g_i * g_j
    eta_r_gen: tuple  # vector eta_R(generator of R), None for prime rings
    counit: tuple  # counit[i] = eps(g_i)
    coproduct: tuple  # coproduct[k] = {(i, j): c}
    antipode: tuple  # antipode[i] = vector of chi(g_i)
    name: str = ""

    def __post_init__(self):
        r = self.carrier.rank
        R = self.ring
        if self.carrier.ring != R:
            raise RingError("mixed rings")
        ok = (
            len(self.unit) == r
            and len(self.mult) == r
            and all(len(row) == r and all(len(v) == r for v in row) for row in self.mult)
            and len(self.counit) == r
            and len(self.coproduct) == r
            and len(self.antipode) == r
            and all(len(v) == r for v in self.antipode)
            and all(0 <= i < r and 0 <= j < r for c in self.coproduct for i, j in c)
        )
        if not ok:
            raise HopfError("structure constants have inconsistent dimensions")
        if (R.dim == 1) != (self.eta_r_gen is None):
            raise HopfError("eta_R must be given on the ring generator exactly when R has one")
        self.unit = tuple(self.unit)
        self.mult = tuple(tuple(tuple(v) for v in row) for row in self.mult)
        self.counit = tuple(self.counit)
        self.coproduct = tuple(
            {k: v for k, v in sorted(c.items()) if any(v)} for c in self.coproduct
        )
        self.antipode = tuple(tuple(v) for v in self.antipode)
        if self.eta_r_gen is not None:
            self.eta_r_gen = tuple(self.eta_r_gen)
        powers = [self.unit]
        for _ in range(1, R.dim):
            powers.append(self.mul(powers[-1], self.eta_r_gen))
        self._eta_r_powers = powers
        # over a prime ring eta_R(c) = c.1, so x (x) cy = c(x (x) y) once 1 is a right unit
        self._scalar_tensor = R.dim == 1 and all(
            self.mul(self.basis_vector(i), self.unit) == self.basis_vector(i) for i in range(self.rank)
        )

    def __repr__(self):
        return f"HopfAlgebroid({self.name or '?'}, rank={self.rank}, ring={self.ring})"

    # -- basic arithmetic in Gamma -------------------------------------

    @property
    def rank(self):
        return self.carrier.rank

    @property
    def names(self):
        return self.carrier.names

    @property
    def degrees(self):
        return self.carrier.degrees

    @property
    def grading(self):
        return self.carrier.grading

    def zero(self):
        return tuple(self.ring.zero() for _ in range(self.rank))

    def basis_vector(self, i):
        R = self.ring
        return tuple(R.one() if j == i else R.zero() for j in range(self.rank))

    def add(self, x, y):
        R = self.ring
        return tuple(R.add(s, t) for s, t in zip(x, y))

    def sub(self, x, y):
        R = self.ring
        return tuple(R.sub(s, t) for s, t in zip(x, y))

    def scale(self, c, x):
        R = self.ring
        return tuple(R.mul(c, s) for s in x)

    def is_zero(self, x):
        return not any(any(s) for s in x)

    def mul(self, x, y):
        R = self.ring
        out = [R.zero()] * self.rank
        for i, s in enumerate(x):
            if not any(s):
                continue
            for j, t in enumerate(y):
                if not any(t):
                    continue
                c = R.mul(s, t)
                for k, m in enumerate(self.mult[i][j]):
                    if any(m):
                        out[k] = R.add(out[k], R.mul(c, m))
        return tuple(out)

    def eta_l(self, r):
        return self.scale(r, self.unit)

    def eta_r(self, r):
        R = self.ring
        out = self.zero()
        for t, c in enumerate(r):
            if c:
                out = self.add(out, self.scale(R.from_int(c), self._eta_r_powers[t]))
        return out

    def eps(self, x):
        R = self.ring
        return R.sum(R.mul(s, e) for s, e in zip(x, self.counit))

    def chi(self, x):
        out = self.zero()
        for i, s in enumerate(x):
            if any(s):
                out = self.add(out, self.mul(self.eta_r(s), self.antipode[i]))
        return out

    # -- tensors --------------------------------------------------------

    def tensor(self, x, y):
        """Normal form of x (x) y in Gamma (x)_R Gamma."""
        out = {}
        if self._scalar_tensor:
            R = self.ring
            for i, s in enumerate(x):
                if any(s):
                    for j, t in enumerate(y):
                        if any(t):
                            out[(i, j)] = R.mul(s, t)
            return _clean(out)
        for j, s in enumerate(y):
            if any(s):
                v = self.mul(x, self.eta_r(s))
                for i, c in enumerate(v):
                    if any(c):
                        _acc(self.ring, out, (i, j), c)
        return _clean(out)

    def _sparse_mult(self):
        if getattr(self, "_sparse", None) is None:
            self._sparse = [[[(k, m) for k, m in enumerate(v) if any(m)] for v in row] for row in self.mult]
        return self._sparse

    def tensor_add(self, X, Y, sign=1):
        R = self.ring
        out = dict(X)
        for k, v in Y.items():
            _acc(R, out, k, v if sign == 1 else R.neg(v))
        return _clean(out)

    def tensor_scale(self, c, X):
        R = self.ring
        return _clean({k: R.mul(c, v) for k, v in X.items()})

    def tensor_mul(self, X, Y):
        R = self.ring
        out = {}
        if self._scalar_tensor:
            sparse = self._sparse_mult()
            for (i, j), c in X.items():
                for (k, l), d in Y.items():
                    cd = R.mul(c, d)
                    for a, m1 in sparse[i][k]:
                        e = R.mul(cd, m1)
                        for b, m2 in sparse[j][l]:
                            _acc(R, out, (a, b), R.mul(e, m2))
            return _clean(out)
        for (i, j), c in X.items():
            for (k, l), d in Y.items():
                left = self.scale(R.mul(c, d), self.mult[i][k])
                for key, v in self.tensor(left, self.mult[j][l]).items():
                    _acc(R, out, key, v)
        return _clean(out)

    def psi(self, x):
        R = self.ring
        out = {}
        for k, s in enumerate(x):
            if any(s):
                for key, v in self.coproduct[k].items():
                    _acc(R, out, key, R.mul(s, v))
        return _clean(out)

    def psi_left(self, X):
        """(psi (x) id) X as a triple tensor."""
        R = self.ring
        out = {}
        for (i, j), c in X.items():
            for (a, b), d in self.coproduct[i].items():
                _acc(R, out, (a, b, j), R.mul(c, d))
        return _clean(out)

    def psi_right(self, X):
        """(id (x) psi) X as a triple tensor."""
        R = self.ring
        out = {}
        for (i, j), c in X.items():
            gi = self.scale(c, self.basis_vector(i))
            for (a, b), d in self.coproduct[j].items():
                for m, e in enumerate(self.mul(gi, self.eta_r(d))):
                    if any(e):
                        _acc(R, out, (m, a, b), e)
        return _clean(out)

    def tensor_vector(self, X):
        """Flatten a Gamma (x) Gamma element to a vector in R^(r*r)."""
        R = self.ring
        r = self.rank
        v = [R.zero()] * (r * r)
        for (i, j), c in X.items():
            v[i * r + j] = c
        return v

    @property
    def is_hopf_algebra(self):
        if self.eta_r_gen is None:
            return True
        return self.eta_l(self.ring.gen()) == self.eta_r_gen

    def right_unit_of_gen(self):
        R = self.ring
        return self.eta_r(R.gen()) if R.gen() else None


def _acc(R, d, key, v):
    if key in d:
        d[key] = R.add(d[key], v)
    else:
        d[key] = v


def _clean(d):
    return {k: v for k, v in sorted(d.items()) if any(v)}


def _fmt(H, x):
    terms = []
    for i, c in enumerate(x):
        if any(c):
            terms.append(f"{_fmt_elem(c)}*{H.names[i]}")
    return " + ".join(terms) or "0"


def _fmt_elem(c):
    return str(c[0]) if len(c) == 1 else "(" + ",".join(map(str, c)) + ")"


def _fmt_tensor(H, X):
    terms = []
    for key, c in X.items():
        terms.append(f"{_fmt_elem(c)}*" + "(x)".join(H.names[i] for i in key))
    return " + ".join(terms) or "0"


# ---------------------------------------------------------------------------
# verification


def verify_hopf_algebroid(H):
    """Check the cogroupoid identities; stop at the first failure."""
    R = H.ring
    r = H.rank
    checked = []
    idx = range(r)
    e = [H.basis_vector(i) for i in idx]

    def fail(axiom, witness):
        return Report(False, axiom, witness, checked)

    # commutative, unital, associative
    for i in idx:
        if H.mul(H.unit, e[i]) != e[i]:
            return fail("unit", f"1*{H.names[i]} != {H.names[i]}")
    checked.append("unit")
    for i in idx:
        for j in idx:
            if H.mult[i][j] != H.mult[j][i]:
                return fail("commutativity", f"{H.names[i]}*{H.names[j]}")
    checked.append("commutativity")
    for i in idx:
        for j in idx:
            ij = H.mult[i][j]
            for k in idx:
                if H.mul(ij, e[k]) != H.mul(e[i], H.mult[j][k]):
                    return fail("associativity", f"({H.names[i]},{H.names[j]},{H.names[k]})")
    checked.append("associativity")

    # right unit is a ring map
    g = R.gen()
    if g is not None:
        if R.is_field:
            val = H.zero()
            power = H.unit
            for c in R.modulus:
                val = H.add(val, H.scale(R.from_int(c), power))
                power = H.mul(power, H.eta_r_gen)
            if not H.is_zero(val):
                return fail("eta_R ring map", "modulus(eta_R(x)) != 0")
        else:
            power = H.unit
            for _ in range(R.b):
                power = H.mul(power, H.eta_r_gen)
            if not H.is_zero(power):
                return fail("eta_R ring map", "eta_R(u)^b != 0")
    checked.append("eta_R ring map")

    # counit
    if H.eps(H.unit) != R.one():
        return fail("counit algebra map", "eps(1) != 1")
    for i in idx:
        for j in idx:
            if H.eps(H.mult[i][j]) != R.mul(H.counit[i], H.counit[j]):
                return fail("counit algebra map", f"eps({H.names[i]}*{H.names[j]})")
    if g is not None and H.eps(H.eta_r_gen) != g:
        return fail("counit algebra map", "eps(eta_R(gen)) != gen")
    checked.append("counit algebra map")

    for k in idx:
        X = H.coproduct[k]
        left = H.zero()
        right = H.zero()
        for (i, j), c in X.items():
            left = H.add(left, H.scale(R.mul(c, H.counit[i]), e[j]))
            right = H.add(right, H.mul(H.scale(c, e[i]), H.eta_r(H.counit[j])))
        if left != e[k]:
            return fail("counitality", f"(eps(x)id)psi({H.names[k]}) = {_fmt(H, left)}")
        if right != e[k]:
            return fail("counitality", f"(id(x)eps)psi({H.names[k]}) = {_fmt(H, right)}")
    checked.append("counitality")

    # coproduct is an algebra map
    if H.psi(H.unit) != H.tensor(H.unit, H.unit):
        return fail("coproduct algebra map", "psi(1) != 1(x)1")
    if g is not None and H.psi(H.eta_r_gen) != H.tensor(H.unit, H.eta_r_gen):
        return fail("coproduct algebra map", "psi(eta_R(gen)) != 1(x)eta_R(gen)")
    for i in idx:
        for j in range(i, r):
            lhs = H.psi(H.mult[i][j])
            rhs = H.tensor_mul(H.coproduct[i], H.coproduct[j])
            if lhs != rhs:
                return fail("coproduct algebra map", f"psi({H.names[i]}*{H.names[j]})")
    checked.append("coproduct algebra map")

    for k in idx:
        a = H.psi_left(H.coproduct[k])
        b = H.psi_right(H.coproduct[k])
        if a != b:
            key = next(key for key in sorted(set(a) | set(b)) if a.get(key) != b.get(key))
            return fail(
                "coassociativity",
                f"{H.names[k]} at " + "(x)".join(H.names[t] for t in key),
            )
    checked.append("coassociativity")

    # antipode
    if H.chi(H.unit) != H.unit:
        return fail("antipode", "chi(1) != 1")
    if g is not None and H.chi(H.eta_r_gen) != H.eta_l(g):
        return fail("antipode", "chi(eta_R) != eta_L")
    for i in idx:
        if H.chi(H.antipode[i]) != e[i]:
            return fail("antipode involution", f"chi(chi({H.names[i]}))")
    for i in idx:
        for j in range(i, r):
            if H.chi(H.mult[i][j]) != H.mul(H.antipode[i], H.antipode[j]):
                return fail("antipode algebra map", f"chi({H.names[i]}*{H.names[j]})")
    for k in idx:
        left = H.zero()
        right = H.zero()
        for (i, j), c in H.coproduct[k].items():
            left = H.add(left, H.mul(H.mul(H.eta_r(c), H.antipode[i]), e[j]))
            right = H.add(right, H.mul(H.scale(c, e[i]), H.antipode[j]))
        if left != H.eta_r(H.counit[k]):
            return fail("antipode identity", f"mu(chi(x)id)psi({H.names[k]}) = {_fmt(H, left)}")
        if right != H.eta_l(H.counit[k]):
            return fail("antipode identity", f"mu(id(x)chi)psi({H.names[k]}) = {_fmt(H, right)}")
    checked.append("antipode")

    if H.grading.kind != "trivial":
        gr = H.grading
        deg = H.degrees
        for i in idx:
            for j in idx:
                for k, c in enumerate(H.mult[i][j]):
                    if any(c) and deg[k] != gr.add(deg[i], deg[j]):
                        return fail("grading", f"{H.names[i]}*{H.names[j]} hits {H.names[k]}")
            for (a, b) in H.coproduct[i]:
                if gr.add(deg[a], deg[b]) != deg[i]:
                    return fail("grading", f"psi({H.names[i]}) hits {H.names[a]}(x){H.names[b]}")
            for k, c in enumerate(H.antipode[i]):
                if any(c) and deg[k] != deg[i]:
                    return fail("grading", f"chi({H.names[i]}) hits {H.names[k]}")
            if any(H.counit[i]) and deg[i] != 0:
                return fail("grading", f"eps({H.names[i]}) in nonzero degree")
        checked.append("grading")

    # finite rank and free over a complete (finite) ring by construction
    checked.append("finite free carrier")
    return Report(True, checked=checked)


def mutate(H, part, index, delta=None):
    """Copy of H with one structure constant shifted by delta (default 1).

    part is 'mult' (index (i, j, k)), 'coproduct' (index (k, i, j)),
    'antipode' (index (i, j)) or 'counit' (index i).
    """
    R = H.ring
    delta = delta or R.one()
    if part == "mult":
        i, j, k = index
        rows = [list(map(list, row)) for row in H.mult]
        rows[i][j][k] = R.add(rows[i][j][k], delta)
        return replace(H, mult=rows, name=H.name + "*")
    if part == "coproduct":
        k, i, j = index
        cop = [dict(c) for c in H.coproduct]
        cop[k][(i, j)] = R.add(cop[k].get((i, j), R.zero()), delta)
        return replace(H, coproduct=cop, name=H.name + "*")
    if part == "antipode":
        i, j = index
        ant = [list(v) for v in H.antipode]
        ant[i][j] = R.add(ant[i][j], delta)
        return replace(H, antipode=ant, name=H.name + "*")
    if part == "counit":
        cu = list(H.counit)
        cu[index] = R.add(cu[index], delta)
        return replace(H, counit=cu, name=H.name + "*")
    raise ValueError(part)


# ---------------------------------------------------------------------------
# builders


def trivial_hopf_algebroid(R):
    one = R.one()
    carrier = GradedModule.free(R, ["1"])
    return HopfAlgebroid(
        R, carrier, (one,), (((one,),),), None if R.dim == 1 else (R.gen(),),
        (one,), ({(0, 0): one},), ((one,),), name=f"trivial({R})",
    )


def _from_prime_tables(R, names, degrees, grading, unit, mult, counit, coproduct, antipode, name):
    """Assemble a Hopf algebra over a prime field from integer tables."""
    f = R.from_int
    r = len(names)
    return HopfAlgebroid(
        R,
        GradedModule.free(R, names, degrees, grading),
        tuple(f(c) for c in unit),
        tuple(tuple(tuple(f(c) for c in mult[i][j]) for j in range(r)) for i in range(r)),
        None,
        tuple(f(c) for c in counit),
        tuple({k: f(v) for k, v in c.items()} for c in coproduct),
        tuple(tuple(f(c) for c in v) for v in antipode),
        name=name,
    )


def steenrod_truncated(p, m=1, cap=1, caps=None):
    """P_* = GF(p)[zeta_1..zeta_m] modulo zeta_k^(p^cap).

    caps = (c_1, ..., c_m) truncates zeta_k at p^c_k instead. Only some
    profiles give a Hopf quotient; the verifier decides, not this builder.
    """
    if cap < 1 or m < 1:
        raise HopfError("need m >= 1 and cap >= 1")
    caps = tuple(caps) if caps is not None else (cap,) * m
    if len(caps) != m or min(caps) < 1:
        raise HopfError("caps needs one positive exponent per generator")
    R = FiniteField(p, 1)
    tops = [p ** c for c in caps]
    zdeg = [2 * (p ** k - 1) for k in range(1, m + 1)]
    monos = sorted(
        itertools.product(*(range(t) for t in tops)),
        key=lambda e: (sum(a * d for a, d in zip(e, zdeg)), e[::-1]),
    )
    index = {e: i for i, e in enumerate(monos)}
    r = len(monos)
    zero_e = (0,) * m

    def mono_mul(e, f):
        s = tuple(a + b for a, b in zip(e, f))
        return s if all(a < t for a, t in zip(s, tops)) else None

    def poly_mul(A, B):
        out = {}
        for e, c in A.items():
            for f, d in B.items():
                s = mono_mul(e, f)
                if s is not None:
                    out[s] = (out.get(s, 0) + c * d) % p
        return {k: v for k, v in out.items() if v}

    def tens_mul(A, B):
        out = {}
        for (e1, e2), c in A.items():
            for (f1, f2), d in B.items():
                s1, s2 = mono_mul(e1, f1), mono_mul(e2, f2)
                if s1 is not None and s2 is not None:
                    out[(s1, s2)] = (out.get((s1, s2), 0) + c * d) % p
        return {k: v for k, v in out.items() if v}

    def zeta_power(k, e):
        if k == 0:
            return zero_e
        if e >= tops[k - 1]:
            return None
        return tuple(e if i == k - 1 else 0 for i in range(m))

    psi_gen = []
    for n in range(1, m + 1):
        terms = {}
        for r_ in range(n + 1):
            left = zeta_power(r_, 1)
            right = zeta_power(n - r_, p ** r_)
            if left is not None and right is not None:
                terms[(left, right)] = (terms.get((left, right), 0) + 1) % p
        psi_gen.append(terms)

    chi_gen = [{zero_e: 1}]
    for n in range(1, m + 1):
        total = {}
        for r_ in range(n):
            rest = zeta_power(n - r_, p ** r_)
            if rest is None:
                continue
            for mono, c in poly_mul(chi_gen[r_], {rest: 1}).items():
                total[mono] = (total.get(mono, 0) - c) % p
        chi_gen.append({k: v for k, v in total.items() if v})

    mult = [[[0] * r for _ in range(r)] for _ in range(r)]
    for e in monos:
        for f in monos:
            s = mono_mul(e, f)
            if s is not None:
                mult[index[e]][index[f]][index[s]] = 1
    coproduct, antipode = [], []
    for e in monos:
        X = {(zero_e, zero_e): 1}
        C = {zero_e: 1}
        for k, a in enumerate(e):
            for _ in range(a):
                X = tens_mul(X, psi_gen[k])
                C = poly_mul(C, chi_gen[k + 1])
        coproduct.append({(index[a], index[b]): c for (a, b), c in X.items()})
        v = [0] * r
        for mono, c in C.items():
            v[index[mono]] = c
        antipode.append(v)

    def mono_name(e):
        parts = [f"z{k + 1}" + (f"^{a}" if a > 1 else "") for k, a in enumerate(e) if a]
        return "".join(parts) or "1"

    names = [mono_name(e) for e in monos]
    degrees = [sum(a * d for a, d in zip(e, zdeg)) for e in monos]
    unit = [int(i == 0) for i in range(r)]
    counit = unit
    return _from_prime_tables(
        R, names, degrees, Grading("integer"), unit, mult, counit, coproduct, antipode,
        f"steenrod(p={p},m={m},cap={cap})" if len(set(caps)) == 1 and caps[0] == cap
        else f"steenrod(p={p},caps={','.join(map(str, caps))})",
    )


def gamma_n_truncated(p, n, m=1):
    """GF(p)[t1]/(t1^(p^n) - t1), t1 primitive, Z/2(p^n-1)-graded (v_n = 1)."""
    if m != 1:
        raise UnsupportedError("unsupported: supply structure constants for t_k with k >= 2")
    R = FiniteField(p, 1)
    top = p ** n
    r = top

    def reduce_exp(e):
        while e >= top:
            e -= top - 1
        return e

    mult = [[[0] * r for _ in range(r)] for _ in range(r)]
    for i in range(r):
        for j in range(r):
            mult[i][j][reduce_exp(i + j)] = 1
    coproduct = [{(i, j - i): comb(j, i) % p for i in range(j + 1) if comb(j, i) % p} for j in range(r)]
    antipode = [[((-1) ** j) % p if k == j else 0 for k in range(r)] for j in range(r)]
    grading = Grading.morava(p, n)
    degrees = [2 * j * (p - 1) for j in range(r)]
    names = ["1"] + [f"t1^{j}" if j > 1 else "t1" for j in range(1, r)]
    unit = [int(i == 0) for i in range(r)]
    return _from_prime_tables(
        R, names, degrees, grading, unit, mult, unit, coproduct, antipode,
        f"gamma(p={p},n={n})",
    )


# groups and actions


@dataclass(frozen=True)
class FiniteGroup:
    table: tuple  # table[g][h] = index of g*h; element 0 is the identity
    names: tuple = None

    def __post_init__(self):
        n = len(self.table)
        if self.names is None:
            object.__setattr__(self, "names", tuple(f"g{i}" for i in range(n)))
        for i in range(n):
            if self.table[0][i] != i or self.table[i][0] != i:
                raise HopfError("element 0 must be the identity")

    @property
    def order(self):
        return len(self.table)

    def mul(self, g, h):
        return self.table[g][h]

    def inv(self, g):
        return next(h for h in range(self.order) if self.table[g][h] == 0)


def cyclic_group(m):
    return FiniteGroup(tuple(tuple((i + j) % m for j in range(m)) for i in range(m)),
                       tuple(f"c{i}" for i in range(m)))


def klein_group():
    return FiniteGroup(tuple(tuple(i ^ j for j in range(4)) for i in range(4)),
                       ("e", "a", "b", "ab"))


@dataclass(frozen=True)
class GroupAction:
    """G acting on R by ring automorphisms, each given by the image of the generator."""

    ring: object
    group: FiniteGroup
    images: tuple  # images[g] = image of R.gen() (ignored for prime rings)

    def act(self, g, x):
        R = self.ring
        if R.dim == 1:
            return x
        img = self.images[g]
        out = R.zero()
        power = R.one()
        for c in x:
            if c:
                out = R.add(out, R.scale(c, power))
            power = R.mul(power, img)
        return out

    def matrix(self, g):
        R = self.ring
        d = R.dim
        basis = [tuple(int(i == j) for i in range(d)) for j in range(d)]
        return np.array([self.act(g, e) for e in basis], dtype=np.int64).T

    def check(self):
        R = self.ring
        G = self.group
        if R.dim == 1:
            return
        from .exact_rings import zq_inverse

        for g in range(G.order):
            img = self.images[g]
            if R.is_field:
                val = R.zero()
                power = R.one()
                for c in R.modulus:
                    val = R.add(val, R.scale(c, power))
                    power = R.mul(power, img)
                if any(val):
                    raise HopfError(f"image of x under {G.names[g]} is not a root of the modulus")
            else:
                if any(R.pow(img, R.b)) or img[0] % R.p:
                    raise HopfError(f"image of u under {G.names[g]} is not in the maximal ideal")
            try:
                zq_inverse(self.matrix(g), R.p, R.a)
            except RingError:
                raise HopfError(f"{G.names[g]} does not act bijectively") from None
        for g in range(G.order):
            for h in range(G.order):
                gh = G.mul(g, h)
                if self.act(g, self.act(h, R.gen())) != self.act(gh, R.gen()):
                    raise HopfError(f"action is not a homomorphism at ({G.names[g]}, {G.names[h]})")
        if R.gen() is not None and self.images[0] != R.gen():
            raise HopfError("identity must act trivially")


def trivial_action(R, G):
    return GroupAction(R, G, tuple(R.gen() for _ in range(G.order)))


def galois_action(A, k_degree=1):
    """Gal(A / GF(p^k_degree)) acting by powers of Frobenius^k_degree."""
    n = A.n
    if n % k_degree:
        raise HopfError("subfield degree must divide the extension degree")
    m = n // k_degree
    G = cyclic_group(m)
    images = []
    x = A.gen() if A.gen() is not None else A.one()
    for i in range(m):
        images.append(A.pow(x, A.p ** (k_degree * i)) if A.gen() is not None else None)
    return GroupAction(A, G, tuple(images))


def dual_group_algebroid(action):
    """(A, Map(G, A)) with eta_R(a)(g) = g.a."""
    action.check()
    A = action.ring
    G = action.group
    r = G.order
    one, zero = A.one(), A.zero()
    names = [f"d_{G.names[g]}" for g in range(r)]
    carrier = GradedModule.free(A, names)
    unit = tuple(one for _ in range(r))
    mult = tuple(
        tuple(tuple(one if (k == i == j) else zero for k in range(r)) for j in range(r))
        for i in range(r)
    )
    eta_r_gen = None
    if A.gen() is not None:
        eta_r_gen = tuple(action.act(g, A.gen()) for g in range(r))
    counit = tuple(one if g == 0 else zero for g in range(r))
    coproduct = []
    for g in range(r):
        coproduct.append({(a, b): one for a in range(r) for b in range(r) if G.mul(a, b) == g})
    antipode = tuple(tuple(one if k == G.inv(g) else zero for k in range(r)) for g in range(r))
    return HopfAlgebroid(A, carrier, unit, mult, eta_r_gen, counit, tuple(coproduct), antipode,
                         name=f"Map(G{r},{A})")


class SubfieldCoordinates:
    """Coordinates of A = GF(p^n) over its subfield D = GF(p^e) in the basis 1, x, .., x^(n/e-1)."""

    def __init__(self, A, e):
        if A.n % e:
            raise HopfError(f"GF({A.p}^{e}) is not a subfield of {A}")
        self.A, self.e, self.m = A, e, A.n // e
        frob = [A.pow(tuple(int(i == j) for i in range(A.n)), A.p ** e) for j in range(A.n)]
        M = (np.array(frob, dtype=np.int64).T - np.eye(A.n, dtype=np.int64)) % A.p
        ker = zq_kernel(M, A.p, 1)
        dbasis = []
        order = 0
        for j in range(ker.shape[1]):
            cand = dbasis + [tuple(int(c) for c in ker[:, j])]
            new = zq_order(np.array(cand, dtype=np.int64).T, A.p, 1)
            if new > order:
                dbasis, order = cand, new
        if len(dbasis) != e:
            raise HopfError("fixed field has the wrong dimension")
        self.dbasis = dbasis
        x = A.gen() if A.gen() is not None else A.one()
        self.xpowers = [A.pow(x, k) for k in range(self.m)]
        cols = [A.mul(d, xp) for xp in self.xpowers for d in dbasis]
        self.change = np.array(cols, dtype=np.int64).T
        from .exact_rings import zq_inverse

        self.inverse = zq_inverse(self.change, A.p, 1)

    def coords(self, a):
        A = self.A
        c = self.inverse @ np.array(a, dtype=np.int64) % A.p
        out = []
        for k in range(self.m):
            d = A.zero()
            for s, db in enumerate(self.dbasis):
                d = A.add(d, A.scale(int(c[k * self.e + s]), db))
            out.append(d)
        return out

    def in_subfield(self, a):
        return self.A.pow(a, self.A.p ** self.e) == a


def unicursal(A, d_degree=1):
    """A (x)_D A for D = GF(p^d_degree) inside A."""
    if not A.is_field:
        raise HopfError("unicursal needs a finite field")
    sc = SubfieldCoordinates(A, d_degree)
    m = sc.m
    one, zero = A.one(), A.zero()
    names = ["1"] + [f"1(x)x^{k}" if k > 1 else "1(x)x" for k in range(1, m)]
    carrier = GradedModule.free(A, names)
    unit = tuple(one if k == 0 else zero for k in range(m))
    mult = tuple(
        tuple(tuple(sc.coords(A.mul(sc.xpowers[i], sc.xpowers[j]))) for j in range(m))
        for i in range(m)
    )
    eta_r_gen = tuple(sc.coords(A.gen())) if A.gen() is not None else None
    counit = tuple(sc.xpowers)
    coproduct = tuple({(0, i): one} for i in range(m))
    antipode = tuple(tuple(sc.xpowers[i] if k == 0 else zero for k in range(m)) for i in range(m))
    H = HopfAlgebroid(A, carrier, unit, mult, eta_r_gen, counit, coproduct, antipode,
                      name=f"unicursal({A}/GF({A.p}^{d_degree}))")
    H.subfield = sc
    return H


def tensor_with_hopf_algebra(H, H0):
    """Gamma (x)_{GF(p)} H0 for a Hopf algebra H0 over the prime field of H's ring."""
    A = H.ring
    if H0.ring.dim != 1 or H0.ring.p != A.p or H0.ring.a != 1 or A.a != 1:
        raise HopfError("second factor must be a Hopf algebra over GF(p)")
    r1, r0 = H.rank, H0.rank
    lift = lambda c: A.from_int(c[0])

    def idx(i, j):
        return i * r0 + j

    r = r1 * r0
    names = [f"{a}.{b}" if b != "1" else a for a in H.names for b in H0.names]
    names = [nm if names.count(nm) == 1 else f"{a}.{b}" for nm, (a, b) in
             zip(names, itertools.product(H.names, H0.names))]
    grading = H0.grading if H.grading.kind == "trivial" else H.grading
    degrees = [grading.add(da, db) for da in H.degrees for db in H0.degrees]
    carrier = GradedModule.free(A, names, degrees, grading)

    def pair(v, w):
        out = [A.zero()] * r
        for i, s in enumerate(v):
            if any(s):
                for j, t in enumerate(w):
                    if any(t):
                        out[idx(i, j)] = A.add(out[idx(i, j)], A.mul(s, lift(t)))
        return tuple(out)

    unit = pair(H.unit, H0.unit)
    mult = [[None] * r for _ in range(r)]
    for i, j in itertools.product(range(r1), range(r0)):
        for k, l in itertools.product(range(r1), range(r0)):
            mult[idx(i, j)][idx(k, l)] = pair(H.mult[i][k], H0.mult[j][l])
    eta_r_gen = pair(H.eta_r_gen, H0.unit) if H.eta_r_gen is not None else None
    counit = tuple(A.mul(H.counit[i], lift(H0.counit[j])) for i in range(r1) for j in range(r0))
    coproduct = []
    for i, j in itertools.product(range(r1), range(r0)):
        X = {}
        for (a, b), c in H.coproduct[i].items():
            for (s, t), d in H0.coproduct[j].items():
                _acc(A, X, (idx(a, s), idx(b, t)), A.mul(c, lift(d)))
        coproduct.append(_clean(X))
    antipode = [pair(H.antipode[i], H0.antipode[j]) for i in range(r1) for j in range(r0)]
    return HopfAlgebroid(A, carrier, unit, mult, eta_r_gen, counit, tuple(coproduct),
                         antipode, name=f"{H.name}(x){H0.name}")


def group_likes(H, limit=1 << 16):
    """All x != 0 with psi(x) = x (x) x, by enumeration."""
    R = H.ring
    if R.size ** H.rank > limit:
        raise HopfError("too many elements to enumerate")
    elems = list(R.elements())
    found = []
    for x in itertools.product(elems, repeat=H.rank):
        if H.is_zero(x):
            continue
        if H.psi(x) == H.tensor(x, x):
            found.append(tuple(x))
    return found


# ---------------------------------------------------------------------------
# associated Hopf algebra


@dataclass
class AssociatedData:
    d_degree: int
    d_basis: list  # GF(p)-basis of D inside A
    phi: HopfAlgebroid
    gamma_prime: HopfAlgebroid
    keep: list  # basis indices of Gamma surviving in Gamma'
    ideal_rows: list  # A-basis of the ideal J (reduced rows)
    pivots: list

    def project(self, H, v):
        """Image in Gamma' of a vector of Gamma."""
        R = H.ring
        v = list(v)
        for row, c in zip(self.ideal_rows, self.pivots):
            f = v[c]
            if any(f):
                v = [R.sub(x, R.mul(f, y)) for x, y in zip(v, row)]
        return tuple(v[i] for i in self.keep)


def equalizer_subfield(H):
    """GF(p)-basis of {a in A : eta_L(a) = eta_R(a)}."""
    A = H.ring
    if not A.is_field:
        raise HopfError("the coefficient ring must be a field")
    n = A.n
    cols = []
    for t in range(n):
        e = tuple(int(i == t) for i in range(n))
        diff = H.sub(H.eta_r(e), H.eta_l(e))
        cols.append([c for x in diff for c in x])
    M = np.array(cols, dtype=np.int64).T
    ker = zq_kernel(M, A.p, 1)
    basis, order = [], 0
    for j in range(ker.shape[1]):
        cand = basis + [tuple(int(c) for c in ker[:, j])]
        new = zq_order(np.array(cand, dtype=np.int64).T, A.p, 1)
        if new > order:
            basis, order = cand, new
    return basis


def associated_hopf_algebra(H):
    A = H.ring
    d_basis = equalizer_subfield(H)
    e = len(d_basis)
    if A.n % e:
        raise HopfError("equalizer is not a subfield")
    phi = unicursal(A, e)
    r = H.rank
    gens = []
    for t in range(A.n):
        a = tuple(int(i == t) for i in range(A.n))
        g = H.sub(H.eta_r(a), H.eta_l(a))
        for j in range(r):
            gens.append(list(H.mul(g, H.basis_vector(j))))
    rows, pivots = _rref(A, gens, r) if gens else ([], [])
    keep = [i for i in range(r) if i not in pivots]
    data = AssociatedData(e, d_basis, phi, None, keep, rows, pivots)
    proj = lambda v: data.project(H, v)
    carrier = GradedModule(A, tuple(H.carrier.basis[i] for i in keep), H.grading)
    # every element of J kills the structure maps
    for row in rows:
        if any(any(x) for x in proj(H.chi(row))):
            raise HopfError(f"antipode not defined on the quotient: {_fmt(H, row)}")
        if any(H.eps(row)):
            raise HopfError(f"counit not defined on the quotient: {_fmt(H, row)}")
    unit = proj(H.unit)
    mult = [[proj(H.mult[i][j]) for j in keep] for i in keep]
    eta_r_gen = proj(H.eta_r_gen) if H.eta_r_gen is not None else None
    counit = tuple(H.counit[i] for i in keep)
    antipode = [proj(H.antipode[i]) for i in keep]
    shell = HopfAlgebroid(A, carrier, unit, mult, eta_r_gen, counit,
                          tuple({} for _ in keep), antipode, name=f"{H.name}'")

    def project_tensor(X):
        out = {}
        for (i, j), c in X.items():
            left = shell.scale(c, proj(H.basis_vector(i)))
            for key, v in shell.tensor(left, proj(H.basis_vector(j))).items():
                _acc(A, out, key, v)
        return _clean(out)

    for row in rows:
        if project_tensor(H.psi(row)):
            raise HopfError(f"coproduct not defined on the quotient: {_fmt(H, row)}")
    coproduct = tuple(project_tensor(H.coproduct[i]) for i in keep)
    data.gamma_prime = replace(shell, coproduct=coproduct)
    data.project_tensor = project_tensor
    return data


# ---------------------------------------------------------------------------
# invariant ideals


@dataclass
class InvariantIdealCertificate:
    generators: list
    witnesses: list  # (description, coordinates)
    quotient_ring: object


def _ideal_span(R, gens):
    if not gens:
        return np.zeros((R.dim, 0), dtype=np.int64)
    return restrict_matrix(R, [[g for g in gens]])


def _quotient_ring(R, gens):
    """R/I for I = (p^c, u^d), recognised by comparing spans."""
    span = _ideal_span(R, gens)
    size = zq_order(span, R.p, R.a)
    for c in range(0, R.a + 1):
        for d in range(0, R.b + 1):
            cand = [R.from_int(R.p ** c) if c < R.a else R.zero(), R.monomial(0, d)]
            cs = _ideal_span(R, cand)
            if zq_order(np.concatenate([cs, span], axis=1), R.p, R.a) == size == zq_order(cs, R.p, R.a):
                c_, d_ = min(c, R.a), min(d, R.b)
                if c_ == 0 or d_ == 0:
                    raise HopfError("ideal is not contained in the maximal ideal")
                if c_ == d_ == 1:
                    return FiniteField(R.p, 1), (c_, d_)
                return TruncatedRing(R.p, c_, d_), (c_, d_)
    raise UnsupportedError("only ideals of the form (p^c, u^d) are supported")


def mod_invariant_ideal(H, gens):
    """Reduce H modulo an invariant ideal I of a truncated ring."""
    R = H.ring
    if R.is_field:
        if any(any(g) for g in gens):
            raise HopfError("a field has no proper nonzero ideals")
        return H, InvariantIdealCertificate([], [], R)
    gens = [g for g in gens if any(g)]
    if not gens:
        return H, InvariantIdealCertificate([], [], R)
    Q, (c, d) = _quotient_ring(R, gens)
    span = _ideal_span(R, gens)
    r = H.rank
    witnesses = []
    # Gamma I inside I Gamma: every coordinate of g_j eta_R(g) lies in I
    right = []
    for g in gens:
        eg = H.eta_r(g)
        for j in range(r):
            v = H.mul(H.basis_vector(j), eg)
            right.append(v)
            for k, x in enumerate(v):
                if not zq_contains(span, np.array(x), R.p, R.a):
                    raise HopfError(
                        f"ideal not invariant: {H.names[j]}*eta_R({_fmt_elem(g)}) = {_fmt(H, v)} not in I*Gamma"
                    )
            witnesses.append((f"{H.names[j]}*eta_R{_fmt_elem(g)} in I.Gamma", v))
    # I Gamma inside Gamma I
    rspan = restrict_matrix(R, [list(col) for col in zip(*right)])
    for g in gens:
        for j in range(r):
            v = H.scale(g, H.basis_vector(j))
            if not zq_contains(rspan, restrict_vector(R, v), R.p, R.a):
                raise HopfError(f"ideal not invariant: {_fmt_elem(g)}*{H.names[j]} not in Gamma*I")
            witnesses.append((f"{_fmt_elem(g)}*{H.names[j]} in Gamma.I", v))

    def red(x):
        if Q.is_field:
            return (x[0] % Q.p,)
        return tuple(x[i] % Q.q for i in range(Q.b))

    rv = lambda v: tuple(red(x) for x in v)
    carrier = GradedModule(Q, H.carrier.basis, H.grading)
    eta = rv(H.eta_r_gen) if (H.eta_r_gen is not None and Q.dim > 1) else None
    reduced = HopfAlgebroid(
        Q, carrier, rv(H.unit),
        [[rv(v) for v in row] for row in H.mult],
        eta,
        rv(H.counit),
        tuple({k: red(v) for k, v in X.items()} for X in H.coproduct),
        [rv(v) for v in H.antipode],
        name=f"{H.name}/I",
    )
    return reduced, InvariantIdealCertificate(gens, witnesses, Q)


def maximal_ideal(R):
    if R.is_field:
        return []
    gens = [R.from_int(R.p)]
    if R.b > 1:
        gens.append(R.gen())
    return gens

"""Graded free/presented modules over a coefficient ring, and their maps."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exact_rings import (
    RingError,
    _rref,
    kernel_basis,
    restrict_matrix,
    zq_contains,
)


@dataclass(frozen=True)
class Grading:
    kind: str = "trivial"  # trivial | integer | cyclic
    modulus: int = 0

    def __post_init__(self):
        if self.kind not in ("trivial", "integer", "cyclic"):
            raise ValueError(f"unknown grading {self.kind!r}")
        if self.kind == "cyclic" and (self.modulus <= 0 or self.modulus % 2):
            raise ValueError("cyclic gradings need a positive even modulus")

    @classmethod
    def morava(cls, p, n):
        return cls("cyclic", 2 * (p ** n - 1))

    def normalize(self, d):
        if self.kind == "trivial":
            return 0
        if self.kind == "cyclic":
            return d % self.modulus
        return d

    def check(self, d):
        if self.kind == "trivial":
            return 0
        if d % 2:
            raise ValueError(f"odd degree {d}: only even-degree generators are supported")
        return self.normalize(d)

    def add(self, d, e):
        return self.normalize(d + e)

    def __str__(self):
        if self.kind == "cyclic":
            return f"cyclic:{self.modulus}"
        return self.kind


def nu_pairing(i, j, m):
    """(-1)^(ij) on Z/m; well defined because m is even."""
    if m <= 0 or m % 2:
        raise ValueError("nu pairing needs a positive even modulus")
    return -1 if (i % m) * (j % m) % 2 else 1


@dataclass(frozen=True)
class GradedModule:
    ring: object
    basis: tuple  # ((name, degree), ...)
    grading: Grading = field(default_factory=Grading)
    relations: tuple = ()  # vectors in R^rank; module is the cokernel

    def __post_init__(self):
        basis = tuple((str(nm), self.grading.check(d)) for nm, d in self.basis)
        names = [nm for nm, _ in basis]
        if len(set(names)) != len(names):
            raise ValueError("basis names must be unique")
        rels = tuple(tuple(v) for v in self.relations)
        for v in rels:
            if len(v) != len(basis):
                raise RingError("relation has the wrong length")
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "relations", rels)

    @classmethod
    def free(cls, ring, names, degrees=None, grading=None):
        degrees = degrees or [0] * len(names)
        return cls(ring, tuple(zip(names, degrees)), grading or Grading())

    @property
    def rank(self):
        return len(self.basis)

    @property
    def names(self):
        return [nm for nm, _ in self.basis]

    @property
    def degrees(self):
        return [d for _, d in self.basis]

    def relation_span(self):
        """Prime-ring generators of the relation submodule (columns)."""
        R = self.ring
        if not self.relations:
            return np.zeros((self.rank * R.dim, 0), dtype=np.int64)
        return restrict_matrix(R, [list(c) for c in zip(*self.relations)])

    def contains_relation(self, v):
        return zq_contains(self.relation_span(), _flat(self.ring, v), self.ring.p, self.ring.a)


def _flat(ring, v):
    return np.array([c for x in v for c in x], dtype=np.int64)


@dataclass(frozen=True)
class GradedMap:
    source: GradedModule
    target: GradedModule
    matrix: tuple  # target.rank rows, source.rank columns
    shift: int = 0

    def __post_init__(self):
        R = self.source.ring
        if self.target.ring != R:
            raise RingError("mixed rings")
        rows = tuple(tuple(r) for r in self.matrix)
        if len(rows) != self.target.rank or any(len(r) != self.source.rank for r in rows):
            raise RingError("dimension mismatch")
        object.__setattr__(self, "matrix", rows)
        g = self.source.grading
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                if any(x) and g.add(self.source.degrees[j], self.shift) != self.target.degrees[i]:
                    raise ValueError(
                        f"map does not respect grading at ({self.target.names[i]}, {self.source.names[j]})"
                    )
        for rel in self.source.relations:
            if not self.target.contains_relation(self.apply(rel)):
                raise ValueError("map is not well defined on relations")

    def apply(self, v):
        R = self.source.ring
        return [R.sum(R.mul(x, y) for x, y in zip(row, v)) for row in self.matrix]

    def compose(self, other):
        """self after other."""
        cols = [self.apply(list(c)) for c in zip(*other.matrix)] if other.matrix else []
        rows = [list(r) for r in zip(*cols)] if cols else [[] for _ in range(self.target.rank)]
        return GradedMap(other.source, self.target, rows, self.shift + other.shift)


def identity_map(M):
    R = M.ring
    rows = [[R.one() if i == j else R.zero() for j in range(M.rank)] for i in range(M.rank)]
    return GradedMap(M, M, rows)


def zero_map(M, N):
    R = M.ring
    return GradedMap(M, N, [[R.zero()] * M.rank for _ in range(N.rank)])


def tensor(M, N):
    if M.ring != N.ring:
        raise RingError("mixed rings")
    R = M.ring
    g = M.grading
    basis = [(f"{a}*{b}", g.add(da, db)) for a, da in M.basis for b, db in N.basis]
    rels = []
    for rel in M.relations:
        for j in range(N.rank):
            rels.append([rel[i] if jj == j else R.zero() for i in range(M.rank) for jj in range(N.rank)])
    for rel in N.relations:
        for i in range(M.rank):
            rels.append([rel[jj] if ii == i else R.zero() for ii in range(M.rank) for jj in range(N.rank)])
    return GradedModule(R, tuple(basis), g, tuple(tuple(r) for r in rels))


def _graded_pieces(M):
    pieces = {}
    for idx, d in enumerate(M.degrees):
        pieces.setdefault(d, []).append(idx)
    return pieces


def kernel(f):
    """(K, inclusion) with K free on homogeneous generators.

    Over a truncated ring the generators need not be independent; the
    returned module records their syzygies as relations.
    """
    M, N = f.source, f.target
    R = M.ring
    rels = [list(r) for r in N.relations]
    gens, degs = [], []
    for d, idx in sorted(_graded_pieces(M).items()):
        cols = [[row[j] for j in idx] for row in f.matrix]
        aug = [c + [rel[i] for rel in rels] for i, c in enumerate(cols)]
        for v in kernel_basis(aug, R) if aug else []:
            full = [R.zero()] * M.rank
            for j, x in zip(idx, v[:len(idx)]):
                full[j] = x
            if any(any(x) for x in full) and not M.contains_relation(full):
                gens.append(full)
                degs.append(d)
    names = [f"k{i}" for i in range(len(gens))]
    incl_rows = [[g[i] for g in gens] for i in range(M.rank)]
    kr = []
    if not R.is_field or M.relations:
        back = [list(r) for r in zip(*gens)] if gens else []
        aug = [row + [rel[i] for rel in M.relations] for i, row in enumerate(back)] if back else []
        for v in kernel_basis(aug, R) if aug else []:
            kr.append(tuple(v[:len(gens)]))
    K = GradedModule(R, tuple(zip(names, degs)), M.grading, tuple(kr))
    return K, GradedMap(K, M, incl_rows)


def quotient(M, S):
    """(M/S, projection) for S a list of homogeneous vectors in M."""
    R = M.ring
    for v in S:
        if len(v) != M.rank:
            raise RingError("dimension mismatch")
        degs = {M.degrees[i] for i, x in enumerate(v) if any(x)}
        if len(degs) > 1:
            raise ValueError("submodule generators must be homogeneous")
    if not R.is_field or M.relations:
        Q = GradedModule(R, M.basis, M.grading, M.relations + tuple(tuple(v) for v in S))
        return Q, identity_map_between(M, Q)
    red, pivots = _rref(R, [list(v) for v in S], M.rank) if S else ([], [])
    keep = [i for i in range(M.rank) if i not in pivots]
    Q = GradedModule(R, tuple(M.basis[i] for i in keep), M.grading)
    rows = []
    for i in keep:
        row = []
        for j in range(M.rank):
            if j == i:
                row.append(R.one())
            elif j in pivots:
                row.append(R.neg(red[pivots.index(j)][i]))
            else:
                row.append(R.zero())
        rows.append(row)
    return Q, GradedMap(M, Q, rows)


def identity_map_between(M, Q):
    R = M.ring
    rows = [[R.one() if i == j else R.zero() for j in range(M.rank)] for i in range(Q.rank)]
    return GradedMap(M, Q, rows)


def field_rank(f):
    R = f.source.ring
    if not R.is_field:
        raise RingError("rank is only defined over a field")
    return len(_rref(R, [list(r) for r in f.matrix], f.source.rank)[1])

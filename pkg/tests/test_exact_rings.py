import itertools

import pytest

from lhopf.exact_rings import (
    FiniteField,
    RingError,
    TruncatedRing,
    describe_ring,
    fixed_points,
    frobenius,
    kernel_basis,
    parse_ring,
    residue,
    solve_linear,
)

from conftest import brute_kernel, span_of

SMALL = [FiniteField(2), FiniteField(3), FiniteField(2, 2), FiniteField(2, 3), FiniteField(3, 2),
         TruncatedRing(2, 2, 1), TruncatedRing(2, 1, 2), TruncatedRing(2, 2, 2), TruncatedRing(3, 1, 2)]


@pytest.mark.parametrize("R", SMALL, ids=str)
def test_ring_axioms_full_table(R):
    els = list(R.elements())
    assert len(els) == R.size
    zero, one = R.zero(), R.one()
    for x in els:
        assert R.add(x, zero) == x
        assert R.mul(x, one) == x
        assert R.add(x, R.neg(x)) == zero
    for x, y in itertools.product(els, repeat=2):
        assert R.add(x, y) == R.add(y, x)
        assert R.mul(x, y) == R.mul(y, x)
    if R.size <= 16:
        for x, y, z in itertools.product(els, repeat=3):
            assert R.mul(R.mul(x, y), z) == R.mul(x, R.mul(y, z))
            assert R.mul(x, R.add(y, z)) == R.add(R.mul(x, y), R.mul(x, z))


@pytest.mark.parametrize("R", [r for r in SMALL if not r.is_field], ids=str)
def test_truncated_ring_is_local(R):
    els = list(R.elements())
    nonunits = [x for x in els if not R.is_unit(x)]
    for x in els:
        assert R.is_unit(x) == (residue(x, R) != (0,))
        if R.is_unit(x):
            assert R.mul(x, R.inv(x)) == R.one()
    # the non-units form an ideal
    ns = set(nonunits)
    for x, y in itertools.product(nonunits, repeat=2):
        assert R.add(x, y) in ns
    for x, r in itertools.product(nonunits, els):
        assert R.mul(x, r) in ns


def test_field_inverses():
    F = FiniteField(3, 2)
    for x in F.elements():
        if any(x):
            assert F.mul(x, F.inv(x)) == F.one()


def test_reducible_modulus_rejected():
    with pytest.raises(RingError):
        FiniteField(2, 2, (1, 0, 1))
    with pytest.raises(RingError):
        TruncatedRing(4, 1, 1)


def test_descriptor_round_trip():
    for R in SMALL:
        assert parse_ring(describe_ring(R)) == R
    assert parse_ring("gf(2,2)") == FiniteField(2, 2)
    with pytest.raises(RingError):
        parse_ring("zz(2)")


def test_frobenius():
    assert frobenius((1,), FiniteField(2)) == (1,)
    F = FiniteField(2, 2)
    g = F.gen()
    assert frobenius(g, F) == F.mul(g, g)
    assert frobenius(frobenius(g, F), F) == g
    F8 = FiniteField(2, 3)
    assert sorted(fixed_points(F8, lambda x: frobenius(x, F8))) == [(0, 0, 0), (1, 0, 0)]
    with pytest.raises(RingError):
        frobenius((1,), TruncatedRing(2, 1, 2))


@pytest.mark.parametrize("R", [FiniteField(2, 2), FiniteField(3, 2), FiniteField(5)], ids=str)
def test_frobenius_is_an_automorphism(R):
    els = list(R.elements())
    for x, y in itertools.product(els, repeat=2):
        assert frobenius(R.add(x, y), R) == R.add(frobenius(x, R), frobenius(y, R))
        assert frobenius(R.mul(x, y), R) == R.mul(frobenius(x, R), frobenius(y, R))
    assert len(fixed_points(R, lambda x: frobenius(x, R))) == R.p


def test_residue():
    R = TruncatedRing(2, 2, 2)
    assert residue(R.one(), R) == (1,)
    assert residue(R.monomial(1, 0), R) == (0,)
    assert residue(R.monomial(0, 1), R) == (0,)
    assert residue(R.element([1, 1 + 2]), R) == (1,)


def test_solve_identity():
    F = FiniteField(2)
    assert solve_linear([[(1,), (0,)], [(0,), (1,)]], [(1,), (0,)], F) == [(1,), (0,)]


def test_solve_reports_inconsistency():
    R = TruncatedRing(2, 2, 1)
    assert solve_linear([[(2,)]], [(1,)], R) is None
    x = solve_linear([[(2,)]], [(2,)], R)
    assert R.mul((2,), x[0]) == (2,)


def test_kernel_of_p_over_z4():
    R = TruncatedRing(2, 2, 1)
    K = kernel_basis([[(2,)]], R)
    assert span_of(R, K, 1) == {((0,),), ((2,),)}


KERNEL_CASES = [
    (TruncatedRing(2, 2, 2), [["u", "p"]]),
    (TruncatedRing(2, 2, 2), [["p", "p"], ["u", "0"]]),
    (TruncatedRing(2, 1, 2), [["u", "u"]]),
    (TruncatedRing(3, 1, 2), [["u", "1"], ["0", "u"]]),
    (TruncatedRing(2, 2, 1), [["2", "0"], ["0", "0"]]),
    (FiniteField(2, 2), [["1", "x"], ["x", "x2"]]),
    (FiniteField(3), [["1", "2"]]),
]


def _entry(R, s):
    if s == "u":
        return R.monomial(0, 1)
    if s == "p":
        return R.monomial(1, 0)
    if s == "x":
        return R.gen()
    if s == "x2":
        return R.mul(R.gen(), R.gen())
    return R.from_int(int(s))


@pytest.mark.parametrize("R,rows", KERNEL_CASES, ids=lambda v: str(v))
def test_kernel_matches_enumeration(R, rows):
    A = [[_entry(R, s) for s in row] for row in rows]
    n = len(A[0])
    K = kernel_basis(A, R)
    for v in K:
        assert all(not any(R.sum(R.mul(a, x) for a, x in zip(row, v))) for row in A)
    assert span_of(R, K, n) == brute_kernel(R, A, n)

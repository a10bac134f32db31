import random

from hypothesis import given, settings
from hypothesis import strategies as st

from lhopf import comodule_lab as cl
from lhopf import galois_descent as gd
from lhopf import lcomplete_tower as lt
from lhopf.exact_rings import FiniteField, TruncatedRing, kernel_basis, restrict_vector, solve_linear, zq_contains
from lhopf.graded_linalg import nu_pairing
from lhopf.hopf_core import cyclic_group, dual_group_algebroid, steenrod_truncated, trivial_action

RINGS = [FiniteField(5, 2), FiniteField(2, 4), TruncatedRing(3, 2, 3), TruncatedRing(2, 3, 2)]
ring_st = st.sampled_from(RINGS)


def elem(R):
    return st.lists(st.integers(0, R.q - 1), min_size=R.dim, max_size=R.dim).map(R.element)


@given(st.data())
def test_ring_axioms(data):
    R = data.draw(ring_st)
    x, y, z = (data.draw(elem(R)) for _ in range(3))
    assert R.mul(R.mul(x, y), z) == R.mul(x, R.mul(y, z))
    assert R.mul(x, R.add(y, z)) == R.add(R.mul(x, y), R.mul(x, z))
    assert R.mul(x, y) == R.mul(y, x)
    if R.is_unit(x):
        assert R.mul(x, R.inv(x)) == R.one()


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_kernel_and_solve(data):
    R = data.draw(st.sampled_from([TruncatedRing(2, 2, 2), FiniteField(3, 2), TruncatedRing(3, 2, 1)]))
    rows = data.draw(st.integers(1, 3))
    cols = data.draw(st.integers(1, 3))
    A = [[data.draw(elem(R)) for _ in range(cols)] for _ in range(rows)]
    for v in kernel_basis(A, R):
        assert all(not any(R.sum(R.mul(a, x) for a, x in zip(row, v))) for row in A)
    x = [data.draw(elem(R)) for _ in range(cols)]
    b = [R.sum(R.mul(a, s) for a, s in zip(row, x)) for row in A]
    sol = solve_linear(A, b, R)
    assert sol is not None
    assert [R.sum(R.mul(a, s) for a, s in zip(row, sol)) for row in A] == b


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50), st.sampled_from([2, 6, 16, 48]))
def test_nu_is_bilinear_and_periodic(i, i2, j, m):
    assert nu_pairing(i + i2, j, m) == nu_pairing(i, j, m) * nu_pairing(i2, j, m)
    assert nu_pairing(i + m, j, m) == nu_pairing(i, j, m)
    assert nu_pairing(i, j, m) == nu_pairing(j, i, m)


HOSTS = [steenrod_truncated(2, 1, 2), steenrod_truncated(3, 1, 1),
         dual_group_algebroid(trivial_action(TruncatedRing(2, 2, 1), cyclic_group(2)))]


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from(range(len(HOSTS))))
def test_random_comodules_have_certified_landweber_filtrations(seed, h):
    C = cl.random_comodule(HOSTS[h], random.Random(seed))
    assert cl.verify_comodule(C).ok
    R = C.ring
    for x in cl.primitives(C).vectors:
        d = tuple(R.sub(s, t) for s, t in zip(C.rho(x), C.one_tensor(x)))
        assert zq_contains(C._rel_span, restrict_vector(R, d), R.p, R.a)
    F = cl.landweber_filtration(C)
    assert F.certify().ok
    assert F.length == cl.composition_length(C.module)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([(2, 2), (2, 3), (3, 2)]), st.integers(1, 3))
def test_galois_descent_dimension_identity(seed, pn, m):
    d = gd.GaloisDatum.frobenius(*pn)
    V = gd.random_module(d, m, random.Random(seed))
    assert gd.decompose_module(V).k_dim == m


cyclic = st.one_of(
    st.tuples(st.integers(1, 3), st.integers(1, 3)).map(lambda cd: f"quot(p^{cd[0]},u^{cd[1]})"),
    st.integers(1, 3).map(lambda k: f"mk({k})"),
)


@settings(max_examples=15, deadline=None)
@given(cyclic, cyclic, st.sampled_from([2, 3]))
def test_tor_is_balanced(a, b, p):
    assert lt.tor_balanced_check(lt.parse_module(a, p), lt.parse_module(b, p)).agree


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 12))
def test_lim1_witness_mutation_found_at_planted_index(k):
    rep = lt.lim1_witness(2, 12, overrides={k: 0})
    assert rep.failing_index == k and not rep.ok

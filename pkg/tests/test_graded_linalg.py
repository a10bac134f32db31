import itertools

import pytest

from lhopf.exact_rings import FiniteField, RingError, TruncatedRing
from lhopf.graded_linalg import (
    GradedMap,
    GradedModule,
    Grading,
    field_rank,
    identity_map,
    kernel,
    nu_pairing,
    quotient,
    tensor,
    zero_map,
)

F2 = FiniteField(2)


def free(R, n, degs=None, grading=None):
    return GradedModule.free(R, [f"e{i}" for i in range(n)], degs, grading)


def test_tensor_ranks_and_degrees():
    g = Grading("integer")
    M = GradedModule(F2, (("a", 2), ("b", 0)), g)
    N = GradedModule(F2, (("c", 4), ("d", 0), ("e", 2)), g)
    T = tensor(M, N)
    assert T.rank == 6
    assert dict(T.basis)["a*c"] == 6


def test_tensor_unit():
    N = GradedModule(F2, (("c", 4), ("d", 0)), Grading("integer"))
    one = GradedModule(F2, (("1", 0),), Grading("integer"))
    T = tensor(one, N)
    assert [d for _, d in T.basis] == [d for _, d in N.basis]
    assert [nm.split("*")[1] for nm in T.names] == N.names


def test_tensor_mixed_rings():
    with pytest.raises(RingError):
        tensor(free(F2, 1), free(FiniteField(3), 1))


def test_kernel_of_zero_and_identity():
    M = free(F2, 3)
    K, inc = kernel(zero_map(M, free(F2, 2)))
    assert K.rank == 3
    K, inc = kernel(identity_map(M))
    assert K.rank == 0


def test_kernel_of_sum_map():
    M, N = free(F2, 2), free(F2, 1)
    f = GradedMap(M, N, [[(1,), (1,)]])
    K, inc = kernel(f)
    assert K.rank == 1
    assert inc.apply([(1,)]) == [(1,), (1,)]


def test_kernel_composes_to_zero_and_rank_nullity():
    F = FiniteField(3)
    M, N = free(F, 3), free(F, 2)
    f = GradedMap(M, N, [[(1,), (2,), (0,)], [(2,), (1,), (0,)]])
    K, inc = kernel(f)
    comp = f.compose(inc)
    assert all(not any(x) for row in comp.matrix for x in row)
    assert K.rank + field_rank(f) == M.rank


def test_kernel_universal_by_enumeration():
    F = FiniteField(2)
    M, N = free(F, 3), free(F, 2)
    f = GradedMap(M, N, [[(1,), (1,), (0,)], [(0,), (1,), (1,)]])
    K, inc = kernel(f)
    image = set()
    for c in itertools.product(list(F.elements()), repeat=K.rank):
        image.add(tuple(inc.apply(list(c))))
    brute = {v for v in itertools.product(list(F.elements()), repeat=3) if not any(any(x) for x in f.apply(list(v)))}
    assert image == brute


def test_grading_respected():
    g = Grading("integer")
    M = GradedModule(F2, (("a", 0),), g)
    N = GradedModule(F2, (("b", 2),), g)
    with pytest.raises(ValueError):
        GradedMap(M, N, [[(1,)]])
    assert GradedMap(M, N, [[(1,)]], shift=2).apply([(1,)]) == [(1,)]


def test_map_must_respect_relations():
    R = TruncatedRing(2, 2, 1)
    M = GradedModule(R, (("a", 0),), Grading(), (((2,),),))
    N = GradedModule(R, (("b", 0),), Grading())
    with pytest.raises(ValueError):
        GradedMap(M, N, [[(1,)]])
    assert GradedMap(M, N, [[(2,)]])


def test_quotient_over_field():
    M = free(F2, 3)
    Q, pr = quotient(M, [[(1,), (1,), (0,)]])
    assert Q.rank == 2
    assert not any(any(x) for x in pr.apply([(1,), (1,), (0,)]))


def test_quotient_needs_homogeneous_generators():
    g = Grading("integer")
    M = GradedModule(F2, (("a", 0), ("b", 2)), g)
    with pytest.raises(ValueError):
        quotient(M, [[(1,), (1,)]])


def test_odd_degrees_rejected():
    with pytest.raises(ValueError):
        GradedModule(F2, (("a", 1),), Grading("integer"))


def test_cyclic_grading():
    g = Grading.morava(2, 2)
    assert g.modulus == 6
    assert g.add(4, 4) == 2
    with pytest.raises(ValueError):
        Grading("cyclic", 5)


def test_nu_pairing():
    m = 2 * (3 ** 2 - 1)
    for j in range(m):
        assert nu_pairing(0, j, m) == 1
    assert nu_pairing(1, 1, m) == -1
    for i, j in itertools.product(range(m), repeat=2):
        assert nu_pairing(i + m, j, m) == nu_pairing(i, j, m)
        assert nu_pairing(i + 3, j, m) == nu_pairing(i, j, m) * nu_pairing(3, j, m)
    with pytest.raises(ValueError):
        nu_pairing(1, 1, 3)

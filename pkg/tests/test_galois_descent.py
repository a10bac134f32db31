import random

import pytest

from lhopf import galois_descent as gd
from lhopf.comodule_lab import random_comodule, regular_comodule, verify_comodule
from lhopf.exact_rings import FiniteField
from lhopf.hopf_core import (
    HopfError,
    cyclic_group,
    dual_group_algebroid,
    galois_action,
    gamma_n_truncated,
    tensor_with_hopf_algebra,
    trivial_action,
    unicursal,
)

CASES = [(2, 2), (2, 3), (3, 2)]


@pytest.mark.parametrize("p,n", CASES)
def test_galois_and_twisted_group_ring(p, n):
    d = gd.GaloisDatum.frobenius(p, n)
    rep = gd.verify_galois(d)
    assert rep.ok and rep.fixed_dim == 1
    e = gd.twisted_to_endomorphisms(gd.TwistedGroupRing(d))
    assert e.homomorphism and e.injective and e.bijective


def test_untwisted_group_ring_is_not_end():
    d = gd.GaloisDatum.frobenius(2, 2)
    e = gd.twisted_to_endomorphisms(gd.TwistedGroupRing(d, twisted=False))
    assert not e.ok


def test_trivial_action_is_not_galois():
    A = FiniteField(2, 2)
    d = gd.GaloisDatum(trivial_action(A, cyclic_group(2)))
    rep = gd.verify_galois(d)
    assert not rep.ok and rep.axiom == "fixed field"


def test_standard_module_invariants():
    d = gd.GaloisDatum.frobenius(2, 2)
    dec = gd.decompose_module(gd.standard_module(d, 2))
    assert dec.k_dim == 2
    dec = gd.decompose_module(gd.regular_module(d))
    assert dec.k_dim == 2


@pytest.mark.parametrize("p,n", CASES)
def test_random_modules_decompose(p, n):
    d = gd.GaloisDatum.frobenius(p, n)
    rng = random.Random(p * 10 + n)
    for _ in range(10):
        m = rng.randint(1, 3)
        V = gd.random_module(d, m, rng)
        dec = gd.decompose_module(V)
        # dim_GF(p) V = n * dim_GF(p) V^G
        assert n * m == n * dec.k_dim
        assert len(dec.invariants) == dec.k_dim
        for v in dec.invariants:
            for g in range(d.G.order):
                assert V.act(g, v) == v


def test_cocycle_violation_rejected():
    d = gd.GaloisDatum.frobenius(2, 2)
    A = d.A
    # every nonzero scalar has norm 1 in GF(4), so only 0 breaks the cocycle
    with pytest.raises(HopfError, match="not a module"):
        gd.SemilinearModule(d, (((A.one(),),), ((A.zero(),),)))
    gd.SemilinearModule(d, (((A.one(),),), ((A.gen(),),)))


@pytest.mark.parametrize("p,n", CASES)
def test_comodule_module_round_trip(p, n):
    d = gd.GaloisDatum.frobenius(p, n)
    H = dual_group_algebroid(d.action)
    rng = random.Random(1)
    for m in (1, 2):
        V = gd.random_module(d, m, rng)
        C = gd.module_to_comodule(V, H)
        assert verify_comodule(C).ok
        W, info = gd.comodule_module_equivalence(C, d)
        assert info["round_trip"] and info["match"]
        assert W.matrices == V.matrices


@pytest.mark.parametrize("p,n", CASES)
def test_unicursal_decompose_random(p, n):
    H = unicursal(FiniteField(p, n))
    rng = random.Random(5)
    for _ in range(10):
        C = random_comodule(H, rng, max_length=4)
        cert = gd.unicursal_decompose(C)
        assert cert.ok
        assert cert.primitive_dim * n == cert.module_dim


def test_unicursal_decompose_needs_unicursal():
    H = dual_group_algebroid(galois_action(FiniteField(2, 2)))
    with pytest.raises(HopfError):
        gd.unicursal_decompose(regular_comodule(H))


def test_extension_identifications_unicursal():
    H = unicursal(FiniteField(2, 2))
    rep = gd.extension_identifications(H, regular_comodule(H))
    assert rep.gamma_prime_rank == 1
    assert rep.lhs_dim == rep.rhs_dim == 2
    assert rep.iso_certified and rep.nonvanishing and rep.phi_inside_gamma


def test_extension_identifications_product():
    H = tensor_with_hopf_algebra(unicursal(FiniteField(2, 2)), gamma_n_truncated(2, 1))
    rng = random.Random(0)
    for C in [regular_comodule(H)] + [random_comodule(H, rng, 4) for _ in range(4)]:
        rep = gd.extension_identifications(H, C)
        assert rep.d_degree == 1 and rep.phi_rank == 2 and rep.gamma_prime_rank == 2
        assert rep.iso_certified and rep.nonvanishing and rep.phi_inside_gamma
        assert rep.lhs_dim == rep.rhs_dim


def test_unipotence_harness():
    H = tensor_with_hopf_algebra(unicursal(FiniteField(2, 2)), gamma_n_truncated(2, 1))
    out = gd.unipotence_harness(H, 0, count=6)
    assert out["gamma_prime_unipotent"]
    assert out["without_primitives"] == 0

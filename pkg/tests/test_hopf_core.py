import pytest

from lhopf.cli import MUTATIONS, mutation_corpus, shipped_builders
from lhopf.exact_rings import FiniteField, TruncatedRing
from lhopf.graded_linalg import GradedModule
from lhopf.hopf_core import (
    HopfAlgebroid,
    HopfError,
    UnsupportedError,
    associated_hopf_algebra,
    cyclic_group,
    dual_group_algebroid,
    galois_action,
    gamma_n_truncated,
    group_likes,
    klein_group,
    maximal_ideal,
    mod_invariant_ideal,
    mutate,
    steenrod_truncated,
    tensor_with_hopf_algebra,
    trivial_action,
    trivial_hopf_algebroid,
    unicursal,
    verify_hopf_algebroid,
    GroupAction,
)

BUILDERS = shipped_builders()


@pytest.mark.parametrize("label", sorted(BUILDERS))
def test_shipped_builders_verify(label):
    rep = verify_hopf_algebroid(BUILDERS[label]())
    assert rep.ok, rep.summary()
    assert "coassociativity" in rep.checked and "antipode" in rep.checked


def test_trivial_hopf_algebroid():
    for R in (FiniteField(2), TruncatedRing(2, 2, 2), FiniteField(3, 2)):
        H = trivial_hopf_algebroid(R)
        assert H.rank == 1
        assert verify_hopf_algebroid(H).ok


@pytest.mark.parametrize("p", [2, 3])
def test_steenrod_zeta2_coproduct(p):
    H = steenrod_truncated(p, 2, caps=(2, 1))
    z2 = H.names.index("z2")
    got = {(H.names[a], H.names[b]): c for (a, b), c in H.psi(H.basis_vector(z2)).items()}
    assert got == {("z2", "1"): (1,), ("z1", f"z1^{p}"): (1,), ("1", "z2"): (1,)}
    assert verify_hopf_algebroid(H).ok


def test_steenrod_degrees():
    H = steenrod_truncated(3, 1, 1)
    assert H.names == ["1", "z1", "z1^2"]
    assert H.degrees == [0, 4, 8]


def test_zeta1_is_primitive():
    H = steenrod_truncated(2, 1, 2)
    assert H.psi(H.basis_vector(1)) == {(0, 1): (1,), (1, 0): (1,)}


def test_gamma_needs_m_equal_one():
    with pytest.raises(UnsupportedError):
        gamma_n_truncated(2, 2, m=2)


def test_gamma_cyclic_grading():
    H = gamma_n_truncated(3, 2)
    assert H.grading.modulus == 16
    assert verify_hopf_algebroid(H).ok


def test_mutation_corpus_rejected_with_witness():
    corpus = mutation_corpus()
    assert len(corpus) == len(MUTATIONS) == 20
    for label, H in corpus:
        rep = verify_hopf_algebroid(H)
        assert not rep.ok, label
        assert rep.axiom and rep.witness, label


def test_coassociativity_witness_is_localized():
    H = steenrod_truncated(2, 2, caps=(2, 1))
    z2 = H.names.index("z2")
    z1 = H.names.index("z1")
    bad = mutate(H, "coproduct", (z2, z1, H.names.index("z1^2")))
    rep = verify_hopf_algebroid(bad)
    assert not rep.ok
    assert "z2" in rep.witness or "z1" in rep.witness


def test_galois_dual_group_is_not_a_hopf_algebra():
    H = dual_group_algebroid(galois_action(FiniteField(2, 2)))
    assert verify_hopf_algebroid(H).ok
    assert not H.is_hopf_algebra
    g = FiniteField(2, 2).gen()
    assert H.eta_r(g) != H.eta_l(g)


def test_dual_group_over_truncated_ring_with_sign_action():
    R = TruncatedRing(2, 2, 2)
    u = R.gen()
    action = GroupAction(R, cyclic_group(2), (u, R.neg(u)))
    H = dual_group_algebroid(action)
    assert verify_hopf_algebroid(H).ok


@pytest.mark.parametrize("group,R,count", [
    (cyclic_group(2), FiniteField(3), 2),
    (cyclic_group(3), FiniteField(2, 2), 3),
    (klein_group(), FiniteField(3), 4),
])
def test_group_likes_of_dual_group_are_characters(group, R, count):
    H = dual_group_algebroid(trivial_action(R, group))
    assert len(group_likes(H)) == count


@pytest.mark.parametrize("p", [2, 3])
def test_theta0_is_group_like(p):
    A = FiniteField(p, 2)
    H = unicursal(A)
    g = A.gen()
    theta = H.mul(H.eta_l(A.inv(g)), H.eta_r(g))
    assert not H.is_zero(theta)
    assert H.psi(theta) == H.tensor(theta, theta)
    assert H.eps(theta) == A.one()


def test_unicursal_tower_of_fields():
    H = unicursal(FiniteField(2, 4), 2)
    assert H.rank == 2
    assert verify_hopf_algebroid(H).ok


def test_associated_hopf_algebra_of_hopf_algebra_is_itself():
    H = steenrod_truncated(2, 1, 2)
    data = associated_hopf_algebra(H)
    assert data.d_degree == 1
    assert data.gamma_prime.rank == H.rank
    assert data.gamma_prime.coproduct == H.coproduct


def test_associated_hopf_algebra_of_product():
    A = FiniteField(2, 2)
    H = tensor_with_hopf_algebra(unicursal(A), gamma_n_truncated(2, 1))
    assert verify_hopf_algebroid(H).ok
    data = associated_hopf_algebra(H)
    assert data.phi.rank == 2
    assert data.gamma_prime.rank == 2
    assert verify_hopf_algebroid(data.gamma_prime).ok


def test_mod_invariant_ideal_reduces_to_residue_field():
    R = TruncatedRing(2, 2, 1)
    H = dual_group_algebroid(trivial_action(R, cyclic_group(2)))
    Hbar, cert = mod_invariant_ideal(H, maximal_ideal(R))
    assert cert.quotient_ring == FiniteField(2)
    assert verify_hopf_algebroid(Hbar).ok


def _toy():
    # R = GF(2)[u]/u^2, Gamma = R + R.y with eta_R(u) = y
    R = TruncatedRing(2, 1, 2)
    z, one, u = R.zero(), R.one(), R.gen()
    carrier = GradedModule.free(R, ["1", "y"])
    mult = [[[one, z], [z, one]], [[z, one], [z, z]]]
    return HopfAlgebroid(R, carrier, (one, z), mult, (z, one), (one, u),
                         ({(0, 0): one}, {(0, 1): one}), [(one, z), (u, z)], name="toy")


def test_toy_is_a_hopf_algebroid():
    assert verify_hopf_algebroid(_toy()).ok


def test_non_invariant_ideal_rejected():
    H = _toy()
    with pytest.raises(HopfError, match="not invariant"):
        mod_invariant_ideal(H, [H.ring.gen()])


def test_eta_r_must_match_ring():
    H = steenrod_truncated(2, 1, 1)
    with pytest.raises(HopfError):
        HopfAlgebroid(H.ring, H.carrier, H.unit, H.mult, (H.unit,), H.counit, H.coproduct, H.antipode)

import random

import pytest

from lhopf import comodule_lab as cl
from lhopf.cli import LANDWEBER_HOSTS, landweber_corpus
from lhopf.exact_rings import FiniteField, TruncatedRing
from lhopf.graded_linalg import GradedModule
from lhopf.hopf_core import (
    HopfError,
    cyclic_group,
    dual_group_algebroid,
    gamma_n_truncated,
    steenrod_truncated,
    trivial_action,
)


def xy_comodule(H=None):
    H = H or steenrod_truncated(2, 1, 1)
    one = H.ring.one()
    M = GradedModule(H.ring, (("x", 0), ("y", 2)), H.grading)
    return cl.Comodule(H, M, ({(0, 0): one}, {(0, 1): one, (1, 0): one}), name="xy")


def z3_rep():
    G = cyclic_group(3)
    H = dual_group_algebroid(trivial_action(FiniteField(2), G))
    return cl.group_rep_comodule(H, G, [[[1, 0], [0, 1]], [[0, 1], [1, 1]], [[1, 1], [1, 0]]])


def test_xy_comodule_verifies():
    assert cl.verify_comodule(xy_comodule()).ok


def test_broken_coaction_fails_coassociativity():
    H = steenrod_truncated(2, 1, 2)
    one = H.ring.one()
    M = GradedModule(H.ring, (("x", 0), ("y", 6)), H.grading)
    # z1^3 is not primitive, so 1(x)y + z1^3(x)x is not coassociative
    C = cl.Comodule(H, M, ({(0, 0): one}, {(0, 1): one, (3, 0): one}))
    rep = cl.verify_comodule(C)
    assert not rep.ok
    assert rep.axiom == "coassociativity" and "y" in rep.witness


def test_primitives_of_xy():
    C = xy_comodule()
    P = cl.primitives(C)
    assert P.log_order == 1
    assert P.vectors == [((1,), (0,))]


def test_primitives_of_regular_comodule_are_scalars():
    H = steenrod_truncated(2, 1, 2)
    P = cl.primitives(cl.regular_comodule(H))
    assert P.log_order == 1
    assert P.vectors == [H.unit]


def test_cofree_and_trivial():
    H = steenrod_truncated(3, 1, 1)
    F = cl.cofree(H, 2)
    assert cl.verify_comodule(F).ok
    assert cl.primitives(F).log_order == 2
    T = cl.trivial_comodule(H, GradedModule.free(H.ring, ["a", "b"]))
    assert cl.primitives(T).log_order == 2


def test_subcomodule_and_quotient():
    C = xy_comodule()
    x = ((1,), (0,))
    y = ((0,), (1,))
    assert cl.is_subcomodule(C, [x])
    assert not cl.is_subcomodule(C, [y])
    Q = cl.quotient_comodule(C, [x])
    assert cl.verify_comodule(Q).ok
    assert Q.log_size() == 1
    assert cl.generated_subcomodule(C, [y])


def test_lemma34_chains():
    H = steenrod_truncated(2, 1, 2)
    assert cl.lemma34_check(H, [[0], [0, 1], [0, 1, 2], [0, 1, 2, 3]], multiplicative=True).ok
    G = gamma_n_truncated(3, 2)
    assert cl.lemma34_check(G, [list(range(k + 1)) for k in range(G.rank)]).ok


def test_lemma34_group_like_counterexample():
    H = dual_group_algebroid(trivial_action(FiniteField(3), cyclic_group(2)))
    rep = cl.lemma34_check(H, [[H.unit], [0, 1]])
    assert not rep.ok
    assert rep.axiom == "coproduct filtration"


def test_lemma34_chain_must_start_at_one():
    H = steenrod_truncated(2, 1, 1)
    with pytest.raises(HopfError):
        cl.lemma34_check(H, [[1], [0, 1]])
    with pytest.raises(HopfError):
        cl.lemma34_check(H, [[0]])


def test_lemma34_comodule_filtration():
    C = xy_comodule()
    F = cl.lemma34_comodule_filtration(C, [[0], [0, 1]])
    assert F.orders() == [1, 2]
    assert F.certify(residue_quotients=False).ok


def test_unipotence():
    assert cl.is_unipotent_finite(steenrod_truncated(2, 1, 2))
    for p in (2, 3):
        assert cl.is_unipotent_finite(dual_group_algebroid(trivial_action(FiniteField(p), cyclic_group(p))))
    assert not cl.is_unipotent_finite(dual_group_algebroid(trivial_action(FiniteField(2), cyclic_group(3))))


def test_landweber_xy():
    C = xy_comodule()
    F = cl.landweber_filtration(C)
    assert F.length == 2
    assert F.chosen == [((1,), (0,)), ((0,), (1,))]
    assert F.certify().ok


def test_landweber_trivial_z4():
    R = TruncatedRing(2, 2, 1)
    H = dual_group_algebroid(trivial_action(R, cyclic_group(2)))
    C = cl.trivial_comodule(H, GradedModule.free(R, ["e"]))
    F = cl.landweber_filtration(C)
    assert F.chosen == [((2,),), ((1,),)]
    assert F.certify().ok
    assert cl.composition_length(C.module) == 2


def test_non_unipotent_witness():
    C = z3_rep()
    assert cl.verify_comodule(C).ok
    assert cl.primitives(C).log_order == 0
    res = cl.landweber_filtration(C)
    assert isinstance(res, cl.NonUnipotentWitness)
    assert not res


def test_composition_length_of_truncated_module():
    R = TruncatedRing(2, 2, 2)
    M = GradedModule.free(R, ["a"])
    assert cl.composition_length(M) == 4
    Q = GradedModule(R, (("a", 0),), M.grading, ((R.monomial(0, 1),),))
    assert cl.composition_length(Q) == 2


@pytest.mark.parametrize("label,make", LANDWEBER_HOSTS, ids=[h[0] for h in LANDWEBER_HOSTS])
def test_random_comodules_are_valid(label, make):
    H = make()
    rng = random.Random(7)
    for _ in range(3):
        C = cl.random_comodule(H, rng, max_length=6)
        assert cl.verify_comodule(C).ok
        assert 0 < cl.composition_length(C.module) <= 6


def test_landweber_corpus_is_deterministic():
    a = [(lbl, C.coaction, C.module.relations) for lbl, C in landweber_corpus(3, count=5)]
    b = [(lbl, C.coaction, C.module.relations) for lbl, C in landweber_corpus(3, count=5)]
    assert a == b

"""Build the shipped Hopf algebroids, verify them, and watch the verifier catch mutations."""

from lhopf.hopf_core import (
    associated_hopf_algebra,
    galois_action,
    dual_group_algebroid,
    group_likes,
    mutate,
    steenrod_truncated,
    verify_hopf_algebroid,
)
from lhopf.exact_rings import FiniteField

# the truncated dual Steenrod algebra at p = 3 with profile (2, 1)
H = steenrod_truncated(3, 2, caps=(2, 1))
z2 = H.names.index("z2")
print(H.name, "rank", H.rank)
print("psi(z2) =", {(H.names[a], H.names[b]): c for (a, b), c in H.psi(H.basis_vector(z2)).items()})
print("verify:", verify_hopf_algebroid(H).summary())

# perturb one antipode coefficient: the verifier names the failing axiom and a witness
bad = mutate(steenrod_truncated(2, 1, 2), "antipode", (1, 0))
print("mutated:", verify_hopf_algebroid(bad).summary())

# Map(Gal, GF(4)) is a Hopf algebroid but not a Hopf algebra
G = dual_group_algebroid(galois_action(FiniteField(2, 2)))
print(G.name, verify_hopf_algebroid(G).summary(), "group-likes:", len(group_likes(G)))
A = associated_hopf_algebra(G)
print("Phi:", A.phi.name, "rank", A.phi.rank, "; Gamma' rank", A.gamma_prime.rank)

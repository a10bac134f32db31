"""Comodules, primitives, unipotence and Landweber filtrations."""

import random

from lhopf import comodule_lab as cl
from lhopf.cli import load
from lhopf.hopf_core import steenrod_truncated

# the two-cell comodule shipped as package data
C = load("steenrod_xy.comod", "comodule").comodule
print(C.name, "verify:", cl.verify_comodule(C).summary())
print("primitives have log order", cl.primitives(C).log_order)

F = cl.landweber_filtration(C)
print("Landweber filtration of length", F.length, "chosen", F.chosen, "certified:", F.certify().ok)

# a random comodule over a unipotent Hopf algebra always has one
H = steenrod_truncated(2, 1, 2)
print("unipotent:", cl.is_unipotent_finite(H))
D = cl.random_comodule(H, random.Random(1), 5)
F = cl.landweber_filtration(D)
print("random comodule: length", F.length, "composition length", cl.composition_length(D.module))

# the Z/3 representation over GF(2) has no primitives at all
E = load("z3_rep_gf2.comod", "comodule").comodule
W = cl.landweber_filtration(E)
print("z3 rep: no filtration,", type(W).__name__, "after", len(W.steps), "steps")

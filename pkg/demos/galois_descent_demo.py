"""Galois descent: twisted group rings, semilinear modules and unicursal comodules."""

import random

from lhopf import comodule_lab as cl
from lhopf import galois_descent as gd
from lhopf.exact_rings import FiniteField
from lhopf.hopf_core import unicursal

d = gd.GaloisDatum.frobenius(2, 3)
print("GF(8)/GF(2) Galois:", gd.verify_galois(d).ok)
print("A<G> -> End_k(A) bijective:", gd.twisted_to_endomorphisms(gd.TwistedGroupRing(d)).ok)

# every semilinear module is spanned by its invariants
rng = random.Random(0)
V = gd.random_module(d, 2, rng)
print("random module of A-rank 2 has invariants of k-dimension", gd.decompose_module(V).k_dim)

# comodules over A (x)_D A decompose as A (x)_D (primitives)
H = unicursal(FiniteField(3, 2))
C = cl.random_comodule(H, rng, 4)
print("unicursal certificate:", gd.unicursal_decompose(C))

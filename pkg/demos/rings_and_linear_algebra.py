"""Exact arithmetic over GF(p^n) and truncated rings (Z/p^a)[u]/(u^b)."""

from lhopf.exact_rings import FiniteField, TruncatedRing, frobenius, kernel_basis, residue, solve_linear
from lhopf.graded_linalg import Grading, GradedModule, nu_pairing, tensor

# GF(9) with its Frobenius: x -> x^3 has order 2
F9 = FiniteField(3, 2)
x = F9.gen()
print(F9, "generator", x, "x^3 =", frobenius(x, F9), "x^9 =", frobenius(frobenius(x, F9), F9))

# Z/4[u]/(u^2) is local with residue field GF(2)
R = TruncatedRing(2, 2, 2)
u = R.gen()
print(R, "u^2 =", R.mul(u, u), "residue of 1+u:", residue(R.add(R.one(), u), R))

# kernels and solutions are exact; over Z/4 the kernel of [2] is generated by 2
A = [[(2, 0)]]
print("ker [2] over", R, ":", kernel_basis(A, R))
print("solve [1 u] v = u:", solve_linear([[R.one(), u]], [u], R))

# gradings and the nu pairing used for tensor products
g = Grading("cyclic", 6)
M = GradedModule(F9, (("a", 0), ("b", 2)), g)
print("M (x) M has rank", tensor(M, M).rank, "; nu(1, 1, 2) =", nu_pairing(1, 1, 2))

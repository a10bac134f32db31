"""Tor over (Z/p^a)[u]/(u^b), towers, derived completion and the lim^1 witness."""

from lhopf import lcomplete_tower as lt

# the Koszul complex computes Tor(R/m, k) with residue dimensions 1, 2, 1
print("Koszul:", lt.koszul_tor(1, 1, lt.mk_module(2, 1)).residue_dims)

# minimal resolutions of powers of the maximal ideal
for k in range(1, 4):
    print("m^%d resolution:" % k, lt.power_ideal_resolution(k)[1])

# Tor_2(R/m^n, K) -> Tor_2(R/m, K) is nonzero
print("reduction n=3:", lt.tor2_reduction_nonzero(3, lt.quot_module(2, 3, 3)).nonzero)

# Tor is balanced
M, N = lt.parse_module("mk(1)", 2), lt.parse_module("quot(p^2,u^2)", 2)
print("balanced:", lt.tor_balanced_check(M, N))

# derived completion of a finite module is the module itself in degree 0
for s in range(3):
    L = lt.derived_completion(lt.parse_module("mk(2)", 2), s, 8)
    print("L_%d:" % s, L.log_size, L.invariants, "stabilized" if L.stabilized else "")

# explicit lim^1 witness
W = lt.lim1_witness(2, 16)
print("witness:", W.identities_checked, "identities,", W.nonzero_c0, "nonzero c_0k")

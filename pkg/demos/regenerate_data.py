"""Regenerate the structure files shipped in src/lhopf/data."""

from pathlib import Path

from lhopf import comodule_lab as cl
from lhopf import hopf_core as hc
from lhopf.exact_rings import FiniteField
from lhopf.graded_linalg import GradedModule
from lhopf.structure_file import comodule_file, hopf_file, parse_structure, serialize

DATA = Path(__file__).resolve().parent.parent / "src" / "lhopf" / "data"


def write(name, sf):
    text = serialize(sf)
    assert serialize(parse_structure(text)) == text
    (DATA / name).write_text(text)


write("steenrod_p2_cap2.hopf", hopf_file(hc.steenrod_truncated(2, 1, 2),
      ["# Dual Steenrod algebra at p = 2, truncated to z1^k with k < 4."]))
write("steenrod_p3_cap1.hopf", hopf_file(hc.steenrod_truncated(3, 1, 1),
      ["# Dual Steenrod algebra at p = 3, truncated to z1^k with k < 3."]))
write("gamma_p2_n2.hopf", hopf_file(hc.gamma_n_truncated(2, 2),
      ["# Truncated Morava stabilizer Hopf algebra, p = 2, n = 2, cyclic grading mod 6."]))
write("dual_group_gal_gf4.hopf", hopf_file(hc.dual_group_algebroid(hc.galois_action(FiniteField(2, 2))),
      ["# Map(Gal, GF(4)) with the Galois action: a Hopf algebroid that is not a Hopf algebra."]))
write("unicursal_gf9.hopf", hopf_file(hc.unicursal(FiniteField(3, 2)),
      ["# GF(9) (x)_GF(3) GF(9), the unicursal Hopf algebroid."]))

H = hc.steenrod_truncated(2, 1, 1)
M = GradedModule(H.ring, (("x", 0), ("y", 2)), H.grading)
one = H.ring.one()
C = cl.Comodule(H, M, ({(0, 0): one}, {(0, 1): one, (1, 0): one}), name="xy")
assert cl.verify_comodule(C).ok
write("steenrod_xy.comod", comodule_file(C,
      ["# Two-cell comodule over the p = 2 dual Steenrod algebra: rho(y) = 1(x)y + z1(x)x."]))

G = hc.cyclic_group(3)
H3 = hc.dual_group_algebroid(hc.trivial_action(FiniteField(2), G))
C3 = cl.group_rep_comodule(H3, G, [[[1, 0], [0, 1]], [[0, 1], [1, 1]], [[1, 1], [1, 0]]])
C3.name = "z3_rep"
assert cl.verify_comodule(C3).ok
write("z3_rep_gf2.comod", comodule_file(C3,
      ["# The 2-dimensional irreducible representation of Z/3 over GF(2), as a Map(Z/3, GF(2))-comodule.",
       "# It has no primitives, so no Landweber filtration exists."]))

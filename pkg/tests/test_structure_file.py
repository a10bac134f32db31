from importlib import resources

import pytest

from lhopf.comodule_lab import regular_comodule, verify_comodule
from lhopf.exact_rings import FiniteField, TruncatedRing
from lhopf.hopf_core import (
    cyclic_group,
    dual_group_algebroid,
    gamma_n_truncated,
    steenrod_truncated,
    trivial_action,
    unicursal,
    verify_hopf_algebroid,
)
from lhopf.structure_file import StructureError, comodule_file, hopf_file, parse_structure, serialize

DATA = resources.files("lhopf") / "data"
SHIPPED = sorted(p.name for p in DATA.iterdir() if p.name.endswith((".hopf", ".comod")))


@pytest.mark.parametrize("name", SHIPPED)
def test_shipped_files_round_trip_and_verify(name):
    text = (DATA / name).read_text()
    sf = parse_structure(text)
    assert serialize(sf) == text
    assert sf.header and sf.header[0].startswith("#")
    assert verify_hopf_algebroid(sf.hopf).ok
    if sf.comodule is not None:
        assert verify_comodule(sf.comodule).ok


@pytest.mark.parametrize("H", [
    steenrod_truncated(3, 1, 1),
    gamma_n_truncated(2, 2),
    unicursal(FiniteField(2, 3)),
    dual_group_algebroid(trivial_action(TruncatedRing(2, 2, 2), cyclic_group(2))),
], ids=lambda H: H.name)
def test_builders_round_trip(H):
    text = serialize(hopf_file(H))
    H2 = parse_structure(text).hopf
    assert H2.mult == H.mult and H2.coproduct == H.coproduct and H2.antipode == H.antipode
    assert H2.eta_r_gen == H.eta_r_gen and H2.carrier.basis == H.carrier.basis
    assert serialize(hopf_file(H2)) == text


def test_comodule_round_trip():
    C = regular_comodule(steenrod_truncated(2, 1, 1))
    text = serialize(comodule_file(C, ["# regular"]))
    C2 = parse_structure(text).comodule
    assert C2.coaction == C.coaction


def test_relations_round_trip():
    text = "\n".join([
        "ring trunc(2,2,1)",
        "[hopf]",
        "basis 1:0",
        "unit 0 1",
        "mult 0 0 0 1",
        "counit 0 1",
        "coproduct 0 0 0 1",
        "antipode 0 0 1",
        "[comodule]",
        "generators e:0",
        "relation 0:2",
        "coaction 0 0 0 1",
        "[tower]",
        "module quot(p^2,u^2)",
        "prime 2",
        "stages 8",
        "",
    ])
    sf = parse_structure(text)
    assert sf.comodule.module.relations == (((2,),),)
    assert sf.tower == {"module": "quot(p^2,u^2)", "prime": 2, "stages": 8}
    assert serialize(sf) == text


BAD = [
    ("ring gf(2,1)\n[hopf]\nbasis 1:0\nunit 0 x\n", 4, 8, "bad ring element"),
    ("ring gf(4,1)\n", 1, 6, "not prime"),
    ("ring gf(2,1)\n[hopf]\nbasis 1:0\nmult 0 0 5 1\n", 4, 10, "out of range"),
    ("ring gf(2,1)\n[hopf]\nunit 0 1\n", 3, 1, "basis must come first"),
    ("ring gf(2,1)\n[bogus]\n", 2, 1, "unknown section"),
    ("ring gf(2,2)\n[hopf]\nbasis 1:0\nunit 0 1\n", 4, 8, "2 coordinates"),
    ("[hopf]\nbasis 1:0\n", 2, 1, "ring must be declared"),
    ("ring gf(2,1)\ngrading integer\n[hopf]\nbasis 1:1\n", 3, 1, "odd degree"),
    ("ring gf(2,1)\n[hopf]\nbasis 1:0\nunit 0 1\nunit 0 1\n", 5, 1, "duplicate"),
]


@pytest.mark.parametrize("text,line,col,msg", BAD)
def test_diagnostics_carry_line_and_column(text, line, col, msg):
    with pytest.raises(StructureError) as e:
        parse_structure(text)
    assert (e.value.line, e.value.column) == (line, col)
    assert msg in e.value.message

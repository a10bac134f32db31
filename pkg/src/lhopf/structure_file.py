"""Text format for Hopf algebroids, comodules and towers (.hopf / .comod).

Layout, one directive per line; '#' starts a comment:

    ring gf(2,1;modulus=0,1)
    grading integer
    [hopf]
    name steenrod(p=2,m=1,cap=1)
    basis 1:0 z1:2
    unit 0 1
    mult 0 0 0 1
    eta_r 1 0,1            (coordinates of eta_R of the ring generator)
    counit 0 1
    coproduct 1 0 1 1      (k i j c: coefficient of g_i (x) g_j in psi(g_k))
    antipode 1 1 1         (i j c: coefficient of g_j in chi(g_i))
    [comodule]
    name xy
    generators x:0 y:2
    relation 0:2           (sparse vector, one relation per line)
    coaction 1 1 0 1       (i j k c: coefficient of g_j (x) e_k in rho(e_i))
    [tower]
    module quot(p^2,u^2)
    prime 2
    stages 8

Ring elements with more than one coordinate are written c0,c1,...
Leading comment lines are kept, so canonical files round-trip exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .comodule_lab import Comodule
from .exact_rings import RingError, describe_ring, parse_ring
from .graded_linalg import Grading, GradedModule
from .hopf_core import HopfAlgebroid, HopfError


class StructureError(ValueError):
    def __init__(self, message, line=0, column=0):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column

    def __str__(self):
        return f"line {self.line}, column {self.column}: {self.message}"


@dataclass
class StructureFile:
    ring: object
    grading: Grading
    hopf: HopfAlgebroid = None
    comodule: Comodule = None
    tower: dict = None
    header: list = field(default_factory=list)


def format_elem(R, x):
    if R.dim == 1:
        return str(x[0])
    return ",".join(str(c) for c in x)


def _parse_elem(R, tok, line, col):
    try:
        parts = [int(s) for s in tok.split(",")]
    except ValueError:
        raise StructureError(f"bad ring element {tok!r}", line, col) from None
    if len(parts) != R.dim:
        raise StructureError(f"ring element needs {R.dim} coordinates", line, col)
    return R.element(parts)


def _parse_grading(text, line, col):
    if text in ("trivial", "integer"):
        return Grading(text)
    if text.startswith("cyclic:"):
        try:
            return Grading("cyclic", int(text.split(":", 1)[1]))
        except ValueError as e:
            raise StructureError(str(e), line, col) from None
    raise StructureError(f"unknown grading {text!r}", line, col)


def _tokens(raw):
    """(token, column) pairs, columns 1-based."""
    out = []
    i = 0
    while i < len(raw):
        if raw[i].isspace():
            i += 1
            continue
        j = i
        while j < len(raw) and not raw[j].isspace():
            j += 1
        out.append((raw[i:j], i + 1))
        i = j
    return out


def parse_structure(text):
    lines = text.split("\n")
    header = []
    idx = 0
    while idx < len(lines) and lines[idx].startswith("#"):
        header.append(lines[idx])
        idx += 1
    ring = None
    grading = Grading()
    section = None
    hop = {"name": "", "basis": None, "unit": {}, "mult": {}, "eta_r": {}, "counit": {},
           "coproduct": {}, "antipode": {}}
    com = None
    tower = None
    starts = {}

    def need_int(tok, col, lineno, hi=None):
        try:
            v = int(tok)
        except ValueError:
            raise StructureError(f"expected an integer, got {tok!r}", lineno, col) from None
        if v < 0 or (hi is not None and v >= hi):
            raise StructureError(f"index {v} out of range", lineno, col)
        return v

    def basis_list(toks, lineno):
        out = []
        for tok, col in toks:
            if ":" not in tok:
                raise StructureError("basis entries look like name:degree", lineno, col)
            nm, d = tok.rsplit(":", 1)
            try:
                out.append((nm, int(d)))
            except ValueError:
                raise StructureError(f"bad degree {d!r}", lineno, col) from None
        return out

    for lineno in range(idx + 1, len(lines) + 1):
        raw = lines[lineno - 1].split("#", 1)[0]
        toks = _tokens(raw)
        if not toks:
            continue
        key, kcol = toks[0]
        args = toks[1:]
        if key.startswith("["):
            if key not in ("[hopf]", "[comodule]", "[tower]"):
                raise StructureError(f"unknown section {key}", lineno, kcol)
            section = key[1:-1]
            starts[section] = lineno
            if section == "comodule":
                com = {"name": "", "generators": None, "relations": [], "coaction": {}}
            if section == "tower":
                tower = {}
            continue
        if section is None:
            if key == "ring":
                if len(args) != 1:
                    raise StructureError("ring takes one descriptor", lineno, kcol)
                try:
                    ring = parse_ring(args[0][0])
                except (RingError, ValueError) as e:
                    raise StructureError(str(e), lineno, args[0][1]) from None
            elif key == "grading":
                if len(args) != 1:
                    raise StructureError("grading takes one value", lineno, kcol)
                grading = _parse_grading(args[0][0], lineno, args[0][1])
            else:
                raise StructureError(f"unknown directive {key!r}", lineno, kcol)
            continue
        if section in ("hopf", "comodule") and ring is None:
            raise StructureError("the ring must be declared first", lineno, kcol)
        if section == "hopf":
            r = len(hop["basis"]) if hop["basis"] is not None else None
            arity = {"unit": 2, "mult": 4, "eta_r": 2, "counit": 2, "coproduct": 4, "antipode": 3}
            if key == "name":
                hop["name"] = " ".join(t for t, _ in args)
            elif key == "basis":
                hop["basis"] = basis_list(args, lineno)
            elif key in arity:
                if r is None:
                    raise StructureError("basis must come first", lineno, kcol)
                if len(args) != arity[key]:
                    raise StructureError(f"{key} takes {arity[key]} fields", lineno, kcol)
                ints = tuple(need_int(t, c, lineno, r) for t, c in args[:-1])
                val = _parse_elem(ring, args[-1][0], lineno, args[-1][1])
                if ints in hop[key]:
                    raise StructureError(f"duplicate {key} entry", lineno, kcol)
                hop[key][ints] = val
            else:
                raise StructureError(f"unknown hopf directive {key!r}", lineno, kcol)
        elif section == "comodule":
            n = len(com["generators"]) if com["generators"] is not None else None
            if key == "name":
                com["name"] = " ".join(t for t, _ in args)
            elif key == "generators":
                com["generators"] = basis_list(args, lineno)
            elif key == "relation":
                if n is None:
                    raise StructureError("generators must come first", lineno, kcol)
                vec = [ring.zero()] * n
                for tok, col in args:
                    if ":" not in tok:
                        raise StructureError("relation entries look like index:element", lineno, col)
                    i, e = tok.split(":", 1)
                    vec[need_int(i, col, lineno, n)] = _parse_elem(ring, e, lineno, col)
                com["relations"].append(tuple(vec))
            elif key == "coaction":
                if n is None or hop["basis"] is None:
                    raise StructureError("generators and the hopf basis must come first", lineno, kcol)
                if len(args) != 4:
                    raise StructureError("coaction takes 4 fields", lineno, kcol)
                r = len(hop["basis"])
                i = need_int(args[0][0], args[0][1], lineno, n)
                j = need_int(args[1][0], args[1][1], lineno, r)
                k = need_int(args[2][0], args[2][1], lineno, n)
                val = _parse_elem(ring, args[3][0], lineno, args[3][1])
                if (i, j, k) in com["coaction"]:
                    raise StructureError("duplicate coaction entry", lineno, kcol)
                com["coaction"][(i, j, k)] = val
            else:
                raise StructureError(f"unknown comodule directive {key!r}", lineno, kcol)
        else:
            if key not in ("module", "prime", "stages", "degree") or len(args) != 1:
                raise StructureError(f"bad tower directive {key!r}", lineno, kcol)
            tower[key] = args[0][0] if key == "module" else need_int(args[0][0], args[0][1], lineno)

    if ring is None and (hop["basis"] is not None or com is not None):
        raise StructureError("missing ring declaration", 1, 1)
    H = None
    if hop["basis"] is not None:
        try:
            H = _build_hopf(ring, grading, hop)
        except StructureError as e:
            raise StructureError(e.message, starts.get("hopf", 1), 1) from None
    C = None
    if com is not None:
        if H is None:
            raise StructureError("a comodule needs a [hopf] section", len(lines), 1)
        if com["generators"] is None:
            raise StructureError("comodule without generators", len(lines), 1)
        try:
            M = GradedModule(ring, tuple(com["generators"]), grading, tuple(com["relations"]))
            coaction = [dict() for _ in com["generators"]]
            for (i, j, k), v in com["coaction"].items():
                coaction[i][(j, k)] = v
            C = Comodule(H, M, tuple(coaction), name=com["name"])
        except (HopfError, RingError, ValueError) as e:
            raise StructureError(str(e), starts["comodule"], 1) from None
    return StructureFile(ring, grading, H, C, tower, header)


def _build_hopf(R, grading, hop):
    basis = hop["basis"]
    r = len(basis)
    z = R.zero()
    unit = [hop["unit"].get((i,), z) for i in range(r)]
    mult = [[[hop["mult"].get((i, j, k), z) for k in range(r)] for j in range(r)] for i in range(r)]
    eta = None
    if R.dim > 1:
        eta = [hop["eta_r"].get((i,), z) for i in range(r)]
    elif hop["eta_r"]:
        raise StructureError("eta_r is only allowed for rings with a generator", 0, 0)
    counit = [hop["counit"].get((i,), z) for i in range(r)]
    cop = [dict() for _ in range(r)]
    for (k, i, j), v in hop["coproduct"].items():
        cop[k][(i, j)] = v
    ant = [[hop["antipode"].get((i, j), z) for j in range(r)] for i in range(r)]
    try:
        carrier = GradedModule(R, tuple(basis), grading)
        return HopfAlgebroid(R, carrier, unit, mult, eta, counit, tuple(cop), ant, name=hop["name"])
    except (HopfError, RingError, ValueError) as e:
        raise StructureError(str(e), 0, 0) from None


def serialize(sf):
    R = sf.ring
    out = list(sf.header)
    out.append(f"ring {describe_ring(R)}")
    if sf.grading.kind != "trivial":
        out.append(f"grading {sf.grading}")
    H = sf.hopf
    if H is not None:
        out.append("[hopf]")
        if H.name:
            out.append(f"name {H.name}")
        out.append("basis " + " ".join(f"{nm}:{d}" for nm, d in H.carrier.basis))
        fe = lambda x: format_elem(R, x)
        for i, x in enumerate(H.unit):
            if any(x):
                out.append(f"unit {i} {fe(x)}")
        for i, row in enumerate(H.mult):
            for j, v in enumerate(row):
                for k, x in enumerate(v):
                    if any(x):
                        out.append(f"mult {i} {j} {k} {fe(x)}")
        if H.eta_r_gen is not None:
            for i, x in enumerate(H.eta_r_gen):
                if any(x):
                    out.append(f"eta_r {i} {fe(x)}")
        for i, x in enumerate(H.counit):
            if any(x):
                out.append(f"counit {i} {fe(x)}")
        for k, c in enumerate(H.coproduct):
            for (i, j), x in sorted(c.items()):
                out.append(f"coproduct {k} {i} {j} {fe(x)}")
        for i, v in enumerate(H.antipode):
            for j, x in enumerate(v):
                if any(x):
                    out.append(f"antipode {i} {j} {fe(x)}")
    C = sf.comodule
    if C is not None:
        out.append("[comodule]")
        if C.name:
            out.append(f"name {C.name}")
        out.append("generators " + " ".join(f"{nm}:{d}" for nm, d in C.module.basis))
        for rel in C.module.relations:
            out.append("relation " + " ".join(f"{i}:{format_elem(R, x)}" for i, x in enumerate(rel) if any(x)))
        for i, c in enumerate(C.coaction):
            for (j, k), x in sorted(c.items()):
                out.append(f"coaction {i} {j} {k} {format_elem(R, x)}")
    if sf.tower:
        out.append("[tower]")
        for key in ("module", "prime", "degree", "stages"):
            if key in sf.tower:
                out.append(f"{key} {sf.tower[key]}")
    return "\n".join(out) + "\n"


def hopf_file(H, header=()):
    return StructureFile(H.ring, H.grading, H, None, None, list(header))


def comodule_file(C, header=()):
    return StructureFile(C.ring, C.H.grading, C.H, C, None, list(header))

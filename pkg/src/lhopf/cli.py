"""Command-line front end: lhopf <subcommand> [flags] [file].

Exit codes: 0 pass, 1 the mathematics says no (axiom violation, witness
of non-unipotence, failed certificate), 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from importlib import resources
from pathlib import Path

from . import comodule_lab as cl
from . import galois_descent as gd
from . import hopf_core as hc
from . import lcomplete_tower as lt
from .exact_rings import FiniteField, RingError, TruncatedRing
from .structure_file import StructureError, hopf_file, parse_structure, serialize

PASS, FALSE, BAD = 0, 1, 2


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# shipped registry


def shipped_builders():
    """The Hopf algebroids every release must verify, by label."""
    gf2, gf3 = FiniteField(2), FiniteField(3)
    return {
        "steenrod(2,1,1)": lambda: hc.steenrod_truncated(2, 1, 1),
        "steenrod(2,1,2)": lambda: hc.steenrod_truncated(2, 1, 2),
        "steenrod(3,1,1)": lambda: hc.steenrod_truncated(3, 1, 1),
        "steenrod(3,1,2)": lambda: hc.steenrod_truncated(3, 1, 2),
        "gamma(2,2)": lambda: hc.gamma_n_truncated(2, 2),
        "gamma(3,2)": lambda: hc.gamma_n_truncated(3, 2),
        "Map(Z2,GF3)": lambda: hc.dual_group_algebroid(hc.trivial_action(gf3, hc.cyclic_group(2))),
        "Map(Z3,GF2)": lambda: hc.dual_group_algebroid(hc.trivial_action(gf2, hc.cyclic_group(3))),
        "Map(Z4,GF2)": lambda: hc.dual_group_algebroid(hc.trivial_action(gf2, hc.cyclic_group(4))),
        "Map(V4,GF3)": lambda: hc.dual_group_algebroid(hc.trivial_action(gf3, hc.klein_group())),
        "Map(Gal,GF4)": lambda: hc.dual_group_algebroid(hc.galois_action(FiniteField(2, 2))),
        "Map(Gal,GF9)": lambda: hc.dual_group_algebroid(hc.galois_action(FiniteField(3, 2))),
        "unicursal(GF4/GF2)": lambda: hc.unicursal(FiniteField(2, 2)),
        "unicursal(GF9/GF3)": lambda: hc.unicursal(FiniteField(3, 2)),
    }


# (builder label, part, index): twenty single structure-constant edits
MUTATIONS = [
    ("steenrod(2,1,2)", "mult", (1, 1, 3)),
    ("steenrod(2,1,2)", "mult", (1, 2, 2)),
    ("steenrod(2,1,2)", "coproduct", (2, 1, 1)),
    ("steenrod(2,1,2)", "coproduct", (3, 0, 3)),
    ("steenrod(2,1,2)", "antipode", (1, 0)),
    ("steenrod(2,1,2)", "counit", 1),
    ("steenrod(3,1,1)", "mult", (0, 1, 0)),
    ("steenrod(3,1,1)", "coproduct", (1, 1, 1)),
    ("steenrod(3,1,1)", "antipode", (2, 2)),
    ("steenrod(3,1,1)", "counit", 0),
    ("gamma(2,2)", "mult", (1, 1, 0)),
    ("gamma(2,2)", "coproduct", (1, 0, 0)),
    ("gamma(2,2)", "antipode", (0, 1)),
    ("gamma(3,2)", "coproduct", (2, 1, 1)),
    ("Map(Z3,GF2)", "mult", (0, 1, 1)),
    ("Map(Z3,GF2)", "coproduct", (0, 1, 1)),
    ("Map(Gal,GF4)", "antipode", (1, 1)),
    ("Map(Gal,GF4)", "counit", 1),
    ("unicursal(GF4/GF2)", "mult", (1, 1, 0)),
    ("unicursal(GF9/GF3)", "coproduct", (1, 1, 1)),
]


def mutation_corpus():
    builders = shipped_builders()
    cache = {}
    out = []
    for label, part, index in MUTATIONS:
        if label not in cache:
            cache[label] = builders[label]()
        out.append((f"{label} {part} {index}", hc.mutate(cache[label], part, index)))
    return out


LANDWEBER_HOSTS = [
    ("steenrod(2,1,2)", lambda: hc.steenrod_truncated(2, 1, 2)),
    ("steenrod(3,1,1)", lambda: hc.steenrod_truncated(3, 1, 1)),
    ("Map(Z2,Z/4)", lambda: hc.dual_group_algebroid(hc.trivial_action(TruncatedRing(2, 2, 1), hc.cyclic_group(2)))),
    ("Map(Z2,GF2[u]/u^2)", lambda: hc.dual_group_algebroid(hc.trivial_action(TruncatedRing(2, 1, 2), hc.cyclic_group(2)))),
    ("gamma(3,2)", lambda: hc.gamma_n_truncated(3, 2)),
]


def landweber_corpus(seed=0, count=25):
    """Seeded random comodules over unipotent hosts, cycling through the hosts."""
    rng = random.Random(seed)
    hosts = [(label, make()) for label, make in LANDWEBER_HOSTS]
    out = []
    for i in range(count):
        label, H = hosts[i % len(hosts)]
        out.append((f"{label} #{i}", cl.random_comodule(H, rng, max_length=6)))
    return out


# ---------------------------------------------------------------------------
# file loading


def data_path(name):
    return resources.files("lhopf") / "data" / name


def _read(path):
    p = Path(path)
    if p.is_file():
        return p.read_text()
    fallback = data_path(p.name)
    if fallback.is_file():
        return fallback.read_text()
    raise InputError(f"{path}: no such file")


def load(path, need=None):
    text = _read(path)
    try:
        sf = parse_structure(text)
    except StructureError as e:
        raise InputError(f"{path}:{e.line}:{e.column}: {e.message}") from None
    if need == "hopf" and sf.hopf is None:
        raise InputError(f"{path}: no [hopf] section")
    if need == "comodule" and sf.comodule is None:
        raise InputError(f"{path}: no [comodule] section")
    return sf


# ---------------------------------------------------------------------------
# subcommands; each returns (exit code, record, text lines)


def cmd_build(args):
    name = args.name
    p = args.p or 2
    try:
        if name == "steenrod":
            H = hc.steenrod_truncated(p, args.m, args.cap)
        elif name == "gamma":
            H = hc.gamma_n_truncated(p, args.n, args.m)
        elif name == "dual-group":
            A = FiniteField(p, args.n)
            if args.galois:
                action = hc.galois_action(A)
            else:
                G = hc.klein_group() if args.group == "klein" else hc.cyclic_group(args.order)
                action = hc.trivial_action(A, G)
            H = hc.dual_group_algebroid(action)
        elif name == "unicursal":
            H = hc.unicursal(FiniteField(p, args.n), args.d)
        else:
            raise InputError(f"unknown builder {name!r}")
    except hc.UnsupportedError as e:
        raise InputError(str(e)) from None
    except (hc.HopfError, RingError) as e:
        raise InputError(str(e)) from None
    text = serialize(hopf_file(H, [f"# built by: lhopf build {name}"]))
    if args.output:
        Path(args.output).write_text(text)
        return PASS, {"built": H.name, "output": args.output}, [f"wrote {args.output} ({H.name}, rank {H.rank})"]
    return PASS, {"built": H.name, "file": text}, text.rstrip("\n").split("\n")


def cmd_check_hopf(args):
    sf = load(args.file, "hopf")
    H = sf.hopf
    rep = hc.verify_hopf_algebroid(H)
    rec = {"name": H.name, "rank": H.rank, "ok": rep.ok, "axiom": rep.axiom, "witness": rep.witness,
           "checked": rep.checked, "hopf_algebra": H.is_hopf_algebra}
    lines = [f"{H.name}: rank {H.rank} over {H.ring}", rep.summary()]
    if rep.ok:
        lines.append("checked: " + ", ".join(rep.checked))
    return (PASS if rep.ok else FALSE), rec, lines


def _verified_comodule(path):
    sf = load(path, "comodule")
    C = sf.comodule
    rep = cl.verify_comodule(C)
    return C, rep


def _vec(C, v):
    return cl._vec_str(C, v)


def cmd_primitives(args):
    C, rep = _verified_comodule(args.file)
    if not rep.ok:
        return FALSE, {"ok": False, "axiom": rep.axiom, "witness": rep.witness}, [rep.summary()]
    P = cl.primitives(C)
    gens = [_vec(C, v) for v in P.vectors]
    rec = {"comodule": C.name, "log_order": P.log_order, "generators": gens}
    lines = [f"{C.name}: primitives of log order {P.log_order}"]
    lines += [f"  {g}" for g in gens] or ["  (none)"]
    return PASS, rec, lines


def _landweber(C):
    res = cl.landweber_filtration(C)
    if isinstance(res, cl.NonUnipotentWitness):
        layer = [_vec(res.comodule, v) for v in res.layer]
        rec = {"comodule": C.name, "unipotent": False, "stuck_after": len(res.steps),
               "layer": layer}
        lines = [f"{C.name}: NOT unipotent",
                 f"  after {len(res.steps)} steps the quotient has no primitives in its bottom layer",
                 "  layer: " + ", ".join(layer)]
        return FALSE, rec, lines
    cert = res.certify()
    steps = [[_vec(C, v) for v in s] for s in res.steps]
    rec = {"comodule": C.name, "unipotent": True, "length": res.length,
           "composition_length": cl.composition_length(C.module), "certified": cert.ok,
           "chosen": [_vec(C, v) for v in res.chosen], "steps": steps}
    lines = [f"{C.name}: filtration of length {res.length}"] + ["  " + s for s in res.describe()]
    lines.append(f"  certificate: {cert.summary()}")
    return (PASS if cert.ok else FALSE), rec, lines


def cmd_landweber(args):
    C, rep = _verified_comodule(args.file)
    if not rep.ok:
        return FALSE, {"ok": False, "axiom": rep.axiom, "witness": rep.witness}, [rep.summary()]
    return _landweber(C)


def cmd_unipotence(args):
    sf = load(args.file)
    if sf.comodule is not None:
        rep = cl.verify_comodule(sf.comodule)
        if not rep.ok:
            return FALSE, {"ok": False, "axiom": rep.axiom}, [rep.summary()]
        return _landweber(sf.comodule)
    if sf.hopf is None:
        raise InputError(f"{args.file}: nothing to test")
    H = sf.hopf
    try:
        u = cl.is_unipotent_finite(H)
    except hc.HopfError as e:
        raise InputError(str(e)) from None
    rec = {"name": H.name, "unipotent": u}
    return (PASS if u else FALSE), rec, [f"{H.name}: {'unipotent' if u else 'not unipotent'}"]


GALOIS_CASES = [(2, 2), (2, 3), (3, 2)]


def galois_suite(seed=0, samples=10):
    rng = random.Random(seed)
    rows = []
    for p, n in GALOIS_CASES:
        d = gd.GaloisDatum.frobenius(p, n)
        g = gd.verify_galois(d)
        e = gd.twisted_to_endomorphisms(gd.TwistedGroupRing(d))
        decs = []
        for _ in range(samples):
            m = rng.randint(1, 3)
            V = gd.random_module(d, m, rng)
            dec = gd.decompose_module(V)
            decs.append((m, dec.k_dim, dec.iso_certified))
        A = FiniteField(p, n)
        H = hc.unicursal(A)
        certs = []
        for _ in range(samples):
            C = cl.random_comodule(H, rng, max_length=4)
            certs.append(bool(gd.unicursal_decompose(C)))
        rows.append({
            "p": p, "n": n, "galois": g.ok, "fixed_dim": g.fixed_dim,
            "endomorphisms_bijective": e.bijective,
            "decompositions": [{"dim": m, "invariant_dim": k, "certified": c} for m, k, c in decs],
            "unicursal_certified": certs,
        })
    return rows


def cmd_galois_demo(args):
    rows = galois_suite(args.seed, args.samples)
    lines = []
    ok = True
    for r in rows:
        dec_ok = all(x["certified"] and x["dim"] == x["invariant_dim"] for x in r["decompositions"])
        uni_ok = all(r["unicursal_certified"])
        good = r["galois"] and r["endomorphisms_bijective"] and dec_ok and uni_ok
        ok &= good
        lines.append(f"GF({r['p']}^{r['n']}) / GF({r['p']}): "
                     f"Galois {'ok' if r['galois'] else 'FAILS'}, "
                     f"twisted group ring -> End_k(A) {'bijective' if r['endomorphisms_bijective'] else 'NOT bijective'}")
        for x in r["decompositions"]:
            lines.append(f"  V = A^{x['dim']}: dim_k V^G = {x['invariant_dim']}, "
                         f"A (x)_k V^G -> V {'iso' if x['certified'] else 'NOT iso'}")
        lines.append(f"  unicursal: {sum(r['unicursal_certified'])}/{len(r['unicursal_certified'])} "
                     "comodules certified M = A (x)_D (A box M)")
    return (PASS if ok else FALSE), {"cases": rows, "ok": ok}, lines


def _module(args, text=None):
    p = args.p or 2
    try:
        return lt.parse_module(text or args.module, p)
    except lt.TowerError as e:
        raise InputError(str(e)) from None


def cmd_tor(args):
    M = _module(args)
    N = _module(args, args.against)
    try:
        rep = lt.tor_balanced_check(M, N, smax=2)
    except lt.TowerError as e:
        raise InputError(str(e)) from None
    rec = {"M": M.label, "N": N.label, "p": M.p, "log_sizes": rep.left, "invariants": rep.left_invariants,
           "balanced": rep.agree}
    lines = [f"Tor_s({M.label}, {N.label}) over p = {M.p}"]
    for s, (size, inv) in enumerate(zip(rep.left, rep.left_invariants)):
        lines.append(f"  s={s}: log_p size {size}, invariants {inv}")
    lines.append(f"  balanced (resolving either side): {'yes' if rep.agree else 'NO'}")
    return (PASS if rep.agree else FALSE), rec, lines


def cmd_lcomplete(args):
    M = _module(args)
    if M.free_over_R:
        raise InputError("lcomplete needs a finite module")
    rows = []
    lines = [f"derived completion of {M.label}, p = {M.p}, T = {args.stages}"]
    for s in range(4):
        L = lt.derived_completion(M, s, args.stages)
        rows.append({"s": s, "log_size": L.log_size, "invariants": L.invariants, "stabilized": L.stabilized,
                     "diagnostics": L.diagnostics})
        tag = "stabilized" if L.stabilized else "stage-T approximation: " + L.diagnostics
        lines.append(f"  L_{s}: log_p size {L.log_size} {L.invariants} ({tag})")
    complete = rows[0]["log_size"] == M.log_size() and all(r["log_size"] == 0 for r in rows[1:])
    lines.append(f"  L-complete (L_0 = M, higher L_s = 0): {'yes' if complete else 'no'}")
    return PASS, {"module": M.label, "p": M.p, "T": args.stages, "L": rows, "l_complete": complete}, lines


def cmd_lim1(args):
    rep = lt.lim1_witness(args.p or 2, args.stages)
    rec = {"p": rep.p, "T": rep.T, "precision": rep.precision, "identities_checked": rep.identities_checked,
           "identities_ok": rep.identities_ok, "nonzero_c0": rep.nonzero_c0, "c0": rep.c0,
           "failing_index": rep.failing_index, "ok": rep.ok}
    lines = [f"lim^1 witness, p = {rep.p}, T = {rep.T}, precision p^{rep.precision}",
             f"  identities checked: {rep.identities_checked} ({'all hold' if rep.identities_ok else 'FAIL'})",
             f"  nonzero c_0k: {rep.nonzero_c0} of {rep.T + 1}",
             "  c_0k = " + " ".join(str(x) for x in rep.c0),
             f"  {rep.certificate}"]
    return (PASS if rep.ok else FALSE), rec, lines


def _mutation_row(item):
    label, H = item
    rep = hc.verify_hopf_algebroid(H)
    return {"case": label, "rejected": not rep.ok, "axiom": rep.axiom, "witness": rep.witness}


def _landweber_row(item):
    label, C = item
    res = cl.landweber_filtration(C)
    if isinstance(res, cl.NonUnipotentWitness):
        return {"case": label, "certified": False, "length": None, "composition_length": None}
    return {"case": label, "certified": res.certify().ok, "length": res.length,
            "composition_length": cl.composition_length(C.module)}


def cmd_corpus(args):
    builders = shipped_builders()
    with ThreadPoolExecutor(max_workers=args.jobs) as pool:
        shipped = list(pool.map(lambda kv: (kv[0], hc.verify_hopf_algebroid(kv[1]())), builders.items()))
        muts = list(pool.map(_mutation_row, mutation_corpus()))
        lands = list(pool.map(_landweber_row, landweber_corpus(args.seed)))
    lines = ["shipped builders:"]
    lines += [f"  {label}: {rep.summary()}" for label, rep in shipped]
    lines.append("mutations:")
    lines += [f"  {r['case']}: {'rejected, ' + r['axiom'] + ': ' + r['witness'] if r['rejected'] else 'ACCEPTED'}"
              for r in muts]
    lines.append(f"landweber (seed {args.seed}):")
    lines += [f"  {r['case']}: length {r['length']}, composition length {r['composition_length']}, "
              f"{'certified' if r['certified'] else 'NOT certified'}" for r in lands]
    ok = (all(rep.ok for _, rep in shipped) and all(r["rejected"] for r in muts)
          and all(r["certified"] and r["length"] == r["composition_length"] for r in lands))
    rec = {"shipped": [{"name": label, "ok": rep.ok} for label, rep in shipped], "mutations": muts,
           "landweber": lands, "ok": ok}
    return (PASS if ok else FALSE), rec, lines


# ---------------------------------------------------------------------------


def build_parser():
    ap = argparse.ArgumentParser(prog="lhopf", description=__doc__.split("\n")[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--format", choices=["text", "json"], default="text")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--seed", type=int, default=argparse.SUPPRESS)
        sp.add_argument("--format", choices=["text", "json"], default=argparse.SUPPRESS)
        return sp

    b = common(sub.add_parser("build", help="emit a shipped Hopf algebroid as a .hopf file"))
    b.add_argument("name", choices=["steenrod", "gamma", "dual-group", "unicursal"])
    b.add_argument("--p", type=int)
    b.add_argument("--n", type=int, default=1)
    b.add_argument("--m", type=int, default=1)
    b.add_argument("--cap", type=int, default=1)
    b.add_argument("--d", type=int, default=1, help="degree of the subfield D (unicursal)")
    b.add_argument("--order", type=int, default=2, help="cyclic group order (dual-group)")
    b.add_argument("--group", choices=["cyclic", "klein"], default="cyclic")
    b.add_argument("--galois", action="store_true", help="Galois action of GF(p^n) (dual-group)")
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_build)

    for name, func, helptext in [
        ("check-hopf", cmd_check_hopf, "verify the Hopf algebroid axioms"),
        ("primitives", cmd_primitives, "primitives of a comodule"),
        ("landweber", cmd_landweber, "Landweber filtration of a comodule"),
        ("unipotence", cmd_unipotence, "unipotence of a Hopf algebra or comodule"),
    ]:
        sp = common(sub.add_parser(name, help=helptext))
        sp.add_argument("file")
        sp.set_defaults(func=func)

    g = common(sub.add_parser("galois-demo", help="Galois descent suite"))
    g.add_argument("--samples", type=int, default=10)
    g.set_defaults(func=cmd_galois_demo)

    for name, func, helptext in [
        ("tor", cmd_tor, "Tor over truncations of Z_p[[u]]"),
        ("lcomplete", cmd_lcomplete, "derived completion L_s M"),
        ("lim1-witness", cmd_lim1, "lim^1 witness for p^n Z_p"),
    ]:
        sp = common(sub.add_parser(name, help=helptext))
        sp.add_argument("--p", type=int, default=2)
        sp.add_argument("-T", "--stages", type=int, default=16 if name == "lim1-witness" else 8)
        if name != "lim1-witness":
            sp.add_argument("--module", default="mk(1)")
        if name == "tor":
            sp.add_argument("--against", default="mk(1)")
        sp.set_defaults(func=func)

    c = common(sub.add_parser("corpus", help="run the shipped verification corpus"))
    c.add_argument("--jobs", type=int, default=4)
    c.set_defaults(func=cmd_corpus)
    return ap


def run(argv, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return BAD if e.code else PASS
    p = getattr(args, "p", None)
    if p is not None and (p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1))):
        print("error: --p must be a prime", file=err)
        return BAD
    if getattr(args, "stages", 1) < 1:
        print("error: --stages must be positive", file=err)
        return BAD
    try:
        code, rec, lines = args.func(args)
    except InputError as e:
        print(f"error: {e}", file=err)
        return BAD
    if args.format == "json":
        rec = dict(rec, command=args.command, exit=code)
        out.write(json.dumps(rec, sort_keys=True, indent=2, default=str) + "\n")
    else:
        out.write("\n".join(lines) + "\n")
    return code


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()

"""Command-line front end: ``pbzlat <command> ...``.

Exit status: 0 when the command succeeds and the property holds, 1 when a
property fails or a countermodel is found, 2 on bad input or usage.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import algebra as alg
from . import catalog
from .center import center_boolean_algebra, commutation_report, decompose
from .classify import CLASS_LABELS, classify
from .congruences import all_congruences, structural_predicates
from .enumeration import enumerate_algebras
from .errors import PBZError, PreconditionError, UnknownName, ValidationError
from .ideals import is_congruence, is_p_ideal, is_weak_de_morgan, lattice_ideals, rho, ursini_ideals
from .suite import verify_theorem_suite
from .terms import check_identity, identity_from_text, render_identity


class UsageError(Exception):
    pass


def _mark(v) -> str:
    return "-" if v is None else ("✓" if v else "✗")


def load_algebra(ref: str) -> alg.FiniteAlgebra:
    """A JSON file path, or a catalog name such as ``D4`` or ``D3xD2``."""
    if os.path.exists(ref):
        try:
            return alg.load(ref)
        except json.JSONDecodeError as exc:
            raise UsageError(f"{ref}: not valid JSON ({exc})") from None
    try:
        return catalog.build(ref)
    except UnknownName:
        raise UsageError(f"{ref!r} is neither a file nor a catalog algebra") from None


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        print(text)


def _signature(args, A) -> str:
    if args.signature:
        return args.signature
    if not A.has_tilde:
        raise UsageError(f"{A.name} has no Brouwer complement; pass --signature bi")
    return "bzl"


def _blocks(A, theta) -> str:
    return " ".join("{" + ",".join(A.label(x) for x in b) + "}" for b in theta.blocks)


def _set(A, elems) -> str:
    return "{" + ",".join(A.label(x) for x in elems) + "}"


# -- commands -----------------------------------------------------------------

def cmd_classify(args) -> int:
    A = load_algebra(args.algebra)
    rep = classify(A)
    lines = [f"{A.name} ({A.size} elements)"]
    lines.append("classes:    " + "  ".join(f"{c}{_mark(rep.classes[c])}" for c in CLASS_LABELS))
    lines.append("identities: " + "  ".join(f"{k}{_mark(v)}" for k, v in rep.identities.items()))
    if rep.s_k is not None:
        lines.append(f"S_K = {_set(A, rep.s_k)}  S_◇ = {_set(A, rep.s_diamond)}  S_B = {_set(A, rep.s_b)}")
    _emit(args, rep.to_dict(), "\n".join(lines))
    return 0


def cmd_check(args) -> int:
    A = load_algebra(args.algebra)
    ident = identity_from_text(args.identity)
    res = check_identity(A, ident)
    payload = {"algebra": A.name, "identity": ident.name, "equation": render_identity(ident), "holds": res.holds}
    if res.holds:
        text = f"{ident.name}: {render_identity(ident)} holds in {A.name}"
    else:
        w = res.witness
        named = {k: A.label(v) for k, v in w.assignment.items()}
        payload["witness"] = {"assignment": named, "lhs": A.label(w.lhs), "rhs": A.label(w.rhs)}
        text = (f"{ident.name}: {render_identity(ident)} fails in {A.name} at "
                + ", ".join(f"{k}={v}" for k, v in named.items())
                + f" (lhs={A.label(w.lhs)}, rhs={A.label(w.rhs)})")
    _emit(args, payload, text)
    return 0 if res.holds else 1


def cmd_center(args) -> int:
    A = load_algebra(args.algebra)
    rep = commutation_report(A)
    bad = rep.mismatches()
    payload = rep.to_dict()
    payload["mismatches"] = bad
    lines = [f"{A.name}:"]
    for key in ("C_p", "C_pbz", "C_factor", "C1_C4", "S_K"):
        lines.append(f"  {key:<9}{_set(A, payload[key])}")
    if not bad:
        C = center_boolean_algebra(A, rep)
        payload["centre_size"] = C.size
        lines.append(f"  centre is a {C.size}-element Boolean algebra")
    else:
        lines.append("  disagreements: " + "; ".join(bad))
    _emit(args, payload, "\n".join(lines))
    return 0 if not bad else 1


def cmd_decompose(args) -> int:
    A = load_algebra(args.algebra)
    try:
        a = A.element(args.element)
    except KeyError:
        raise UsageError(f"{args.element!r} is not an element of {A.name}") from None
    d = decompose(A, a)
    X, Y = d.first, d.second
    lines = [
        f"{A.name} at a={A.label(a)}:",
        f"  L1 = [0,{A.label(X.bound)}] = {_set(A, X.elements)}",
        f"  L2 = [0,{A.label(Y.bound)}] = {_set(A, Y.elements)}",
        "  phi: " + ", ".join(f"{A.label(b)}->{d.product.label(p)}" for b, p in enumerate(d.phi)),
        "  verified isomorphism" if d.verified else "  NOT an isomorphism",
    ]
    _emit(args, d.to_dict(), "\n".join(lines))
    return 0 if d.verified else 1


def cmd_congruences(args) -> int:
    A = load_algebra(args.algebra)
    sig = _signature(args, A)
    con = all_congruences(A, sig)
    sp = structural_predicates(A, con, sig)
    payload = {"algebra": A.name, "signature": sig, "congruences": [c.to_list() for c in con],
               "predicates": sp.to_dict()}
    lines = [f"{A.name}: {len(con)} congruences ({sig})"]
    lines += [f"  {_blocks(A, c)}" for c in con]
    lines.append("  " + "  ".join(f"{k}={v}" for k, v in sp.to_dict().items()
                                   if isinstance(v, bool)))
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_ideals(args) -> int:
    A = load_algebra(args.algebra)
    A._need_tilde()
    records = {r.elements: r for r in ursini_ideals(A)}
    rows = []
    for I in lattice_ideals(A):
        p = is_p_ideal(A, I)[0]
        rec = records.get(I)
        wdm = is_weak_de_morgan(A, I)[0] if p else None
        rows.append({
            "elements": list(I), "p_ideal": p, "ursini": rec is not None, "weak_de_morgan": wdm,
            "delta": None if rec is None else rec.delta.to_list(),
            "epsilon": None if rec is None else rec.epsilon.to_list(),
        })
    lines = [f"{A.name}: {len(rows)} lattice ideals"]
    for row in rows:
        extra = ""
        if row["ursini"]:
            rec = records[tuple(row["elements"])]
            extra = f"  δ={_blocks(A, rec.delta)}  ε={_blocks(A, rec.epsilon)}"
        lines.append(f"  {_set(A, row['elements'])}: p-ideal{_mark(row['p_ideal'])} "
                     f"0-class{_mark(row['ursini'])} weak-De-Morgan{_mark(row['weak_de_morgan'])}{extra}")
    _emit(args, {"algebra": A.name, "ideals": rows}, "\n".join(lines))
    return 0


def _parse_ideal(A, text):
    try:
        return tuple(sorted({A.element(t.strip()) for t in text.split(",") if t.strip()}))
    except KeyError as exc:
        raise UsageError(f"unknown element {exc} in --ideal") from None


def _describe_witness(A, w) -> str:
    kind = w[0]
    if kind in ("meet", "join"):
        (x, y), u = w[1], w[2]
        op = "^" if kind == "meet" else "v"
        return (f"{A.label(x)} ~ {A.label(y)} but {A.label(x)} {op} {A.label(u)} and "
                f"{A.label(y)} {op} {A.label(u)} are not related")
    if kind in ("prime", "tilde"):
        x, y = w[1]
        return f"{A.label(x)} ~ {A.label(y)} but their {kind} images are not related"
    return kind + " fails at " + ", ".join(A.label(v) for v in w[1:])


def cmd_rho(args) -> int:
    A = load_algebra(args.algebra)
    I = _parse_ideal(A, args.ideal)
    rel = rho(A, I)
    cong, witness = is_congruence(A, rel)
    pairs = [(a, b) for a, b in rel.sorted_pairs() if a < b]
    payload = {"algebra": A.name, "ideal": list(I), "pairs": rel.sorted_pairs(), "congruence": cong,
               "witness": None if witness is None else list(witness)}
    lines = [f"rho({_set(A, I)}) on {A.name}: "
             + (", ".join(f"({A.label(a)},{A.label(b)})" for a, b in pairs) or "identity")]
    if cong:
        lines.append("  congruence: yes")
    else:
        lines.append("  congruence: no (" + _describe_witness(A, witness) + ")")
    _emit(args, payload, "\n".join(lines))
    return 0 if cong else 1


def cmd_enumerate(args) -> int:
    cls = args.cls.upper()
    algebras = list(enumerate_algebras(args.max_size, cls, min_n=args.min_size))
    if args.dump:
        docs = [alg.to_dict(A) for A in algebras]
        print(json.dumps(docs, sort_keys=True))
        return 0
    payload = {"class": cls, "max_size": args.max_size, "count": len(algebras),
               "algebras": [{"name": A.name, "size": A.size} for A in algebras]}
    counts = {}
    for A in algebras:
        counts[A.size] = counts.get(A.size, 0) + 1
    text = f"{cls} up to {args.max_size} elements: {len(algebras)}\n" + "\n".join(
        f"  n={n}: {c}" for n, c in sorted(counts.items()))
    _emit(args, payload, text)
    return 0


def cmd_catalog(args) -> int:
    if args.name is None:
        rows = []
        for name in catalog.names():
            A = catalog.build(name)
            entry = catalog.CATALOG[name]
            bad = entry.check(A)
            rows.append({"name": name, "size": A.size, "matches": not bad, "mismatches": bad})
        text = "\n".join(f"{r['name']:<10}{r['size']:>3}  {'matches' if r['matches'] else 'MISMATCH'}"
                         for r in rows)
        _emit(args, {"catalog": rows}, text)
        return 0 if all(r["matches"] for r in rows) else 1
    A = load_algebra(args.name)
    if args.dump:
        print(alg.dumps(A))
        return 0
    entry = catalog.CATALOG.get(A.name)
    expected = {} if entry is None else entry.expected
    bad = {} if entry is None else entry.check(A)
    payload = {"name": A.name, "size": A.size, "labels": list(A.labels or []), "expected": expected,
               "mismatches": {k: list(v) for k, v in bad.items()}}
    text = f"{A.name}: {A.size} elements, labels {', '.join(A.labels or [])}"
    if expected:
        text += "\n  expected: " + "  ".join(f"{k}{_mark(v)}" for k, v in expected.items())
        text += "\n  " + ("all expectations reproduced" if not bad else f"MISMATCH {bad}")
    _emit(args, payload, text)
    return 0 if not bad else 1


def cmd_verify(args) -> int:
    report = verify_theorem_suite(args.max_size, catalog_only=args.catalog_only)
    if args.json:
        print(report.to_json())
    else:
        print(report.to_text())
    return 0 if report.ok else 1


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    alg_common = argparse.ArgumentParser(add_help=False, parents=[common])
    alg_common.add_argument("algebra", help="algebra JSON file or catalog name (e.g. D4, D3xD2)")
    alg_common.add_argument("--dump", action="store_true", help="print the loaded algebra as JSON and exit")

    p = argparse.ArgumentParser(prog="pbzlat", description="Finite PBZ*-lattice toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("classify", parents=[alg_common], help="class membership and named identities")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("check", parents=[alg_common], help="check one identity")
    s.add_argument("--identity", required=True, help="catalog name (SK, SDM, ...) or an equation")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("center", parents=[alg_common], help="commutation relations and the centre")
    s.set_defaults(func=cmd_center)

    s = sub.add_parser("decompose", parents=[alg_common], help="split a V(AOL) member along an element")
    s.add_argument("--element", required=True, help="element label or index")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("congruences", parents=[alg_common], help="congruence lattice and structural predicates")
    s.add_argument("--signature", choices=("bi", "bzl"), help="operations congruences must respect")
    s.set_defaults(func=cmd_congruences)

    s = sub.add_parser("ideals", parents=[alg_common], help="lattice ideals, p-ideals and 0-classes")
    s.set_defaults(func=cmd_ideals)

    s = sub.add_parser("rho", parents=[alg_common], help="modal equivalence modulo a p-ideal")
    s.add_argument("--ideal", default="0", help="comma-separated elements of the ideal (default: 0)")
    s.set_defaults(func=cmd_rho)

    s = sub.add_parser("enumerate", parents=[common], help="enumerate algebras up to isomorphism")
    s.add_argument("--max-size", type=int, default=5)
    s.add_argument("--min-size", type=int, default=2)
    s.add_argument("--class", dest="cls", default="PBZSTAR",
                   help="one of " + ", ".join(CLASS_LABELS))
    s.add_argument("--dump", action="store_true", help="print every algebra as JSON")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("catalog", parents=[common], help="list or show catalog algebras")
    s.add_argument("name", nargs="?")
    s.add_argument("--dump", action="store_true", help="print the algebra as JSON")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("verify", parents=[common], help="run the theorem suite")
    s.add_argument("--max-size", type=int, default=5)
    s.add_argument("--catalog-only", action="store_true")
    s.set_defaults(func=cmd_verify)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if getattr(args, "dump", False) and hasattr(args, "algebra"):
            print(alg.dumps(load_algebra(args.algebra)))
            return 0
        if args.command == "enumerate" and args.cls.upper() not in CLASS_LABELS:
            raise UsageError(f"unknown class {args.cls!r}")
        return args.func(args)
    except (UsageError, ValidationError, PreconditionError, UnknownName) as exc:
        print(f"pbzlat: error: {exc}", file=sys.stderr)
        return 2
    except PBZError as exc:
        print(f"pbzlat: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())

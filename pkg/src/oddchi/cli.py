"""Command line: ``oddchi {synthesize,verify,relations,conjugacy,bound,capplan}``.

Exit codes: 0 pass, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import sl2z
from .assembly import relation_certificates, reversed_assembly, verify
from .blocks import BoundaryLabel
from .serialize import FormatError, parse, serialize, to_dot
from .synthesis import (
    INTRO_BOUND_REMARK,
    STATED_SIGMA,
    EvenTarget,
    TargetBelow13,
    build_cap_plan,
    euler_bound,
    synthesize_chi,
    synthesize_chi_sigma,
)

OK, FAIL, USAGE = 0, 1, 2
OUTPUT_DIR_ENV = "ODDCHI_OUTPUT_DIR"


class UsageError(Exception):
    pass


def _out_path(name: str) -> Path:
    p = Path(name)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


def _emit(prose: str, report: dict) -> None:
    print(prose)
    print(json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False))


def _matrix(text: str | list) -> sl2z.Sl2Matrix:
    try:
        vals = [int(x) for x in (text.split(",") if isinstance(text, str) else text)]
    except ValueError:
        raise UsageError(f"matrix entries must be integers: {text!r}") from None
    if len(vals) != 4:
        raise UsageError(f"a matrix needs 4 entries a,b,c,d, got {len(vals)}")
    try:
        return sl2z.Sl2Matrix(*vals)
    except sl2z.NotInSL2Z as e:
        raise UsageError(str(e)) from None


def cmd_synthesize(args) -> int:
    n, s = args.chi, args.sigma
    stated = None
    if s is None:
        try:
            g = synthesize_chi(n)
        except (EvenTarget, TargetBelow13) as e:
            raise UsageError(str(e)) from None
        stated = STATED_SIGMA
    else:
        m2 = n - 13 * abs(s)
        if m2 < 0 or m2 % 2:
            raise UsageError(f"chi must equal 13*|sigma| + 2m with m >= 0; chi={n}, sigma={s} is infeasible")
        g = synthesize_chi_sigma(abs(s), m2 // 2)
        if s < 0:
            g = reversed_assembly(g)
    if args.out:
        _out_path(args.out).write_text(serialize(g))
    if args.dot:
        _out_path(args.dot).write_text(to_dot(g))
    r = verify(g, stated_sigma=stated)
    head = f"synthesized {len(g.instances)} blocks, {len(g.gluings)} gluings"
    if args.out:
        head += f", written to {args.out}"
    report = {"command": "synthesize", "target": {"chi": n, "sigma": s}, **r.to_dict()}
    if s is None:
        report["k"] = (n - 13) // 2
    _emit(head + "\n" + r.render(), report)
    return OK if r.passed else FAIL


def cmd_verify(args) -> int:
    try:
        text = Path(args.file).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {args.file}: {e.strerror}") from None
    try:
        g = parse(text, check=False)
    except FormatError as e:
        raise UsageError(str(e)) from None
    r = verify(g)
    _emit(r.render(), {"command": "verify", "file": args.file, **r.to_dict()})
    return OK if r.passed else FAIL


def cmd_relations(args) -> int:
    certs = relation_certificates()
    prose = "\n".join(f"{k}: {'true' if v else 'false'}" for k, v in certs.items())
    _emit(prose, {"command": "relations", "certificates": dict(certs), "passed": all(certs.values())})
    return OK if all(certs.values()) else FAIL


def cmd_conjugacy(args) -> int:
    A, B = _matrix(args.entries[:4]), _matrix(args.entries[4:])
    ca, pa = sl2z.normal_form(A)
    cb, pb = sl2z.normal_form(B)
    same = ca == cb
    report = {"command": "conjugacy", "conjugate": same, "class_a": str(ca), "class_b": str(cb)}
    if same:
        # B = Q A Q^-1
        Q = pb @ sl2z.invert(pa)
        report["conjugator"] = Q.tolist()
        prose = f"conjugate: {A} ~ {B} via {Q}, class {ca}"
    else:
        prose = f"not conjugate: {A} is {ca}, {B} is {cb}"
    _emit(prose, report)
    return OK if same else FAIL


def cmd_bound(args) -> int:
    M = _matrix(args.matrix)
    eb = euler_bound(BoundaryLabel.torus(M))
    report = {"command": "bound", "matrix": M.tolist(), "class": str(sl2z.classify(M)),
              "bound": eb.bound, "route": eb.route, "remark": INTRO_BOUND_REMARK}
    prose = [eb.describe()]
    ok = eb.bound is not None
    if ok:
        r = verify(eb.witness)
        ok = r.legal and r.connected and len(r.open_slots) == 1 and r.chi_total == eb.bound
        report["witness_verified"] = ok
        report["witness"] = json.loads(serialize(eb.witness))
        prose.append(f"witness: {len(eb.witness.instances)} blocks, chi {r.chi_total}, open slot {r.open_slots[0]}")
    prose.append(f"note: {INTRO_BOUND_REMARK}")
    _emit("\n".join(prose), report)
    return OK if ok else FAIL


def cmd_capplan(args) -> int:
    plan = build_cap_plan()
    report = {
        "command": "capplan",
        "total_before": plan.total_before,
        "total": plan.total,
        "tricks": plan.tricks,
        "pieces": [
            {"name": p.name, "chi_before": p.chi_before, "trick_applied": p.trick_applied,
             "chi_after": p.chi_after, "obstruction": p.obstruction}
            for p in plan.pieces
        ],
        "ledger": list(plan.ledger),
    }
    _emit(plan.table(), report)
    return OK if plan.total == 4 else FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="oddchi", description="Assemble and check aspherical 4-manifold recipes.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("synthesize", help="build a closed assembly with the given chi (and sigma)")
    s.add_argument("--chi", type=int, required=True)
    s.add_argument("--sigma", type=int)
    s.add_argument("--out", help="write the assembly JSON here")
    s.add_argument("--dot", help="write a DOT graph here")
    s.set_defaults(func=cmd_synthesize)

    v = sub.add_parser("verify", help="check an assembly file")
    v.add_argument("file")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("relations", help="check the twist relations")
    r.set_defaults(func=cmd_relations)

    c = sub.add_parser("conjugacy", help="are two SL(2,Z) matrices conjugate")
    c.add_argument("entries", nargs=8, help="a b c d of A, then of B", metavar="N")
    c.set_defaults(func=cmd_conjugacy)

    b = sub.add_parser("bound", help="upper bound on the Euler invariant of a torus bundle")
    b.add_argument("--matrix", required=True, help="a,b,c,d")
    b.set_defaults(func=cmd_bound)

    cp = sub.add_parser("capplan", help="print the cap construction ledger")
    cp.set_defaults(func=cmd_capplan)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"oddchi {args.command}: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())

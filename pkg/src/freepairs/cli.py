"""Command line entry point: ``freepairs run|classify|certify|list``.

Exit status: 0 when every report has its expected verdict and all internal
checks hold, 1 on a mismatch, 2 on invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import FreePairsError
from .freeness import EXACT_PAIR, SUBGROUP_WITNESS, CERTIFIED, certify, parse_matrix, verify_certificate
from .heisenberg import classify_order2
from .places import named_place, place_from_json
from .scenarios import DEFAULT_SEED, SCENARIOS, emit_report, run_heisenberg, run_scenario, run_weyl


def _write(data: bytes, target: str | None) -> None:
    if target is None or target == "-":
        sys.stdout.write(data.decode())
    else:
        Path(target).write_bytes(data)


def _emit(reports, args) -> int:
    ok = True
    for r in reports:
        if args.json:
            _write(emit_report(r, "JSON"), args.json if len(reports) == 1 else None)
        if not args.json or (args.json != "-" and len(reports) == 1):
            sys.stdout.write(emit_report(r, "TEXT").decode() if not args.quiet else f"{r.id}: {r.verdict}\n")
        ok = ok and r.as_expected
    return 0 if ok else 1


def _cmd_run(args) -> int:
    if args.target == "heis":
        reports = [run_heisenberg(args.type, args.m, args.n, args.mode, args.seed)]
    elif args.target == "weyl":
        reports = [run_weyl(args.case, args.seed)]
    elif args.target == "scenario":
        reports = [run_scenario(args.id, args.seed)]
    else:
        reports = [run_scenario(sid, args.seed) for sid in SCENARIOS]
    return _emit(reports, args)


def _parse_int_matrix(text: str):
    parts = [int(p) for p in text.replace(" ", "").split(",")]
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("expected four comma separated integers a,b,c,d")
    return tuple(parts)


def _cmd_classify(args) -> int:
    cls, T = classify_order2(args.matrix)
    print(json.dumps({"matrix": list(args.matrix), "class": cls, "conjugator": list(T)}))
    return 0


def _load_place(path: str):
    data = json.loads(Path(path).read_text())
    if "named" in data:
        return named_place(data["named"])
    return place_from_json(data)


def _cmd_certify(args) -> int:
    pl = _load_place(args.place)
    pair = json.loads(Path(args.input).read_text())
    A = parse_matrix(pair["A"], pl.descriptor)
    B = parse_matrix(pair["B"], pl.descriptor)
    cert = certify(A, B, pl, args.strength)
    out = cert.to_json()
    out["independent_check"] = verify_certificate(cert, A, B, pl)
    print(json.dumps(out, indent=2, sort_keys=True, ensure_ascii=False))
    return 0 if cert.verdict == CERTIFIED and not out["independent_check"] else 1


def _cmd_list(args) -> int:
    width = max(len(s) for s in SCENARIOS)
    for s in SCENARIOS.values():
        print(f"{s.id:<{width}}  {s.expected:<9}  {s.label}: {s.summary}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="freepairs", description="Certify free symmetric and unitary pairs.")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run scenarios and print reports")
    run_sub = run.add_subparsers(dest="target", required=True)

    def common(q):
        q.add_argument("--json", metavar="PATH", help="write the JSON report to PATH ('-' for stdout)")
        q.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED, help="word sampling seed")
        q.add_argument("--quiet", action="store_true", help="print only the verdict line")

    heis = run_sub.add_parser("heis", help="a Heisenberg group-ring case")
    heis.add_argument("--type", required=True, choices=["I", "II", "III", "IV"])
    heis.add_argument("--m", type=int, default=0)
    heis.add_argument("--n", type=int, default=0)
    heis.add_argument("--mode", required=True, type=str.upper, choices=["SYMMETRIC", "UNITARY"])
    common(heis)
    weyl = run_sub.add_parser("weyl", help="a Weyl algebra case")
    weyl.add_argument("--case", type=int, required=True, choices=[1, 2])
    common(weyl)
    by_id = run_sub.add_parser("scenario", help="a scenario by id (see 'list')")
    by_id.add_argument("id")
    common(by_id)
    common(run_sub.add_parser("all", help="every scenario"))
    run.set_defaults(func=_cmd_run)

    cl = sub.add_parser("classify", help="classify an order-two matrix in GL(2, Z)")
    cl.add_argument("--matrix", required=True, type=_parse_int_matrix, help="entries a,b,c,d row by row")
    cl.set_defaults(func=_cmd_classify)

    ce = sub.add_parser("certify", help="check the ping-pong hypotheses for a pair of matrices")
    ce.add_argument("--input", required=True, help='JSON file {"A": [[...]], "B": [[...]]}')
    ce.add_argument("--place", required=True, help='JSON place descriptor or {"named": "P(mu)"}')
    ce.add_argument("--strength", choices=[EXACT_PAIR, SUBGROUP_WITNESS], default=EXACT_PAIR)
    ce.set_defaults(func=_cmd_certify)

    ls = sub.add_parser("list", help="print the scenario table")
    ls.set_defaults(func=_cmd_list)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FreePairsError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 2
    except (OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

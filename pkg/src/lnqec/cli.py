"""Command-line interface: ``qec <command> [options]``.

Exit status is 0 on success, 1 when a verification fails and 2 on usage
errors.  Reports go to stdout (text, or JSON with ``--json``); diagnostics
go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .codes import CATALOG_NAMES, CodeFormatError, catalog_get, ensure_distance, is_mds, resolve_code
from .gf4 import RankDeficientError, element_name
from .noise import IID, Adversarial, NoiseModel, monte_carlo
from .scheme import (
    Scheme,
    SchemeError,
    SyndromeTable,
    build_binary,
    build_quaternary,
    build_syndrome_table,
    check_table_matches,
    dualize,
    ea_parameters,
    singleton_applicable,
    singleton_slack,
)
from .verification import run_all

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def _load_code(spec: str):
    try:
        return resolve_code(spec)
    except (KeyError, OSError, CodeFormatError, RankDeficientError) as exc:
        raise UsageError(f"cannot load code {spec!r}: {exc}") from None


def _scheme(args) -> Scheme:
    code = _load_code(args.code)
    try:
        code = ensure_distance(code)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    variant = args.variant or ("q4" if code.q == 4 else "q2")
    if variant == "dual":
        base = build_quaternary(code) if code.q == 4 else build_binary(code)
        return dualize(base)
    try:
        return build_quaternary(code) if variant == "q4" else build_binary(code)
    except SchemeError as exc:
        raise UsageError(str(exc)) from None


def _matrix_lists(m) -> list[list[str]]:
    return [[element_name(x) for x in row] for row in m.to_lists()]


def _matrix_text(title: str, m) -> str:
    body = "\n".join("  " + " ".join(row) for row in _matrix_lists(m))
    return f"{title}:\n{body}"


def cmd_codes(args) -> int:
    rows = []
    for name in CATALOG_NAMES:
        c = catalog_get(name)
        rows.append({"name": name, "q": c.q, "n": c.n, "k": c.k, "d": c.d, "mds": is_mds(c)})
    if args.json:
        print(_dump({"schema": f"lnqec.codes/{SCHEMA_VERSION}", "codes": rows}))
    else:
        for r in rows:
            mds = "  MDS" if r["mds"] else ""
            print(f"{r['name']:<12} [{r['n']},{r['k']},{r['d']}]_{r['q']}{mds}")
    return 0


def cmd_build(args) -> int:
    s = _scheme(args)
    mats = {
        "H": s.code.H, "H_Q": s.H_Q, "H_Z": s.H_Z, "H_X": s.H_X, "H_Zp": s.H_Zp, "H_Xp": s.H_Xp,
    }
    if args.json:
        print(_dump({
            "schema": f"lnqec.build/{SCHEMA_VERSION}",
            "code": s.code.name,
            "variant": s.variant,
            "n": s.n, "k": s.k, "n_anc": s.n_anc, "n_phys": s.n_phys,
            "col_perm": list(s.code.col_perm),
            "ancilla_basis": s.ancilla_basis,
            "matrices": {k: _matrix_lists(m) for k, m in mats.items()},
        }))
        return 0
    print(f"{s.code} variant={s.variant} qubits: {s.n_anc} ancilla + {s.k} data = {s.n_phys}")
    print(f"column permutation (standard -> original): {list(s.code.col_perm)}")
    for title, m in mats.items():
        print(_matrix_text(title, m))
    return 0


def cmd_verify(args) -> int:
    s = _scheme(args)
    results = run_all(s, seed=args.seed, random_errors=args.random_errors, states=args.states,
                      negative_cases=args.negative_cases)
    ok = all(r.passed for r in results)
    if args.json:
        print(_dump({
            "schema": f"lnqec.verify/{SCHEMA_VERSION}",
            "code": s.code.name, "variant": s.variant, "seed": args.seed, "passed": ok,
            "suites": [r.to_json_dict() for r in results],
        }))
    else:
        for r in results:
            print(r.line())
        print("ALL PASS" if ok else "VERIFICATION FAILED")
    return 0 if ok else 1


def _table_for(s: Scheme, args) -> SyndromeTable:
    if getattr(args, "table", None):
        table = SyndromeTable.from_bytes(Path(args.table).read_bytes())
        try:
            check_table_matches(s, table)
        except SchemeError as exc:
            raise UsageError(str(exc)) from None
        return table
    try:
        return build_syndrome_table(s, getattr(args, "t", None))
    except (SchemeError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def cmd_table(args) -> int:
    s = _scheme(args)
    table = _table_for(s, args)
    if args.out:
        Path(args.out).write_bytes(table.to_bytes())
        print(f"wrote {len(table)} entries to {args.out}", file=sys.stderr)
    if args.json:
        print(_dump({
            "schema": f"lnqec.table/{SCHEMA_VERSION}",
            "code": s.code.name, "variant": s.variant, "t": table.t, "entries": len(table),
        }))
    else:
        print(f"{s.code} variant={s.variant} t={table.t}: {len(table)} syndromes, no collisions")
    return 0


def cmd_simulate(args) -> int:
    s = _scheme(args)
    if args.adversarial is not None:
        kind = Adversarial(args.adversarial)
    elif args.p_data is not None or args.p_anc is not None:
        kind = IID(args.p_data or 0.0, args.p_anc or 0.0)
    else:
        raise UsageError("simulate needs --adversarial T or --p-data/--p-anc")
    table = _table_for(s, args)
    report = monte_carlo(s, table, NoiseModel(kind, args.seed), args.trials, workers=args.workers)
    if args.json:
        print(_dump(report.to_json_dict()))
    else:
        lo, hi = report.wilson_95_interval
        print(
            f"{report.code} {report.variant}: failures={report.failures}/{report.trials} "
            f"rate={report.failure_rate:.6g} ci95=[{lo:.6g}, {hi:.6g}] seed={args.seed}"
        )
    return 0


def cmd_params(args) -> int:
    code = _load_code(args.code)
    try:
        code = ensure_distance(code)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    p = ea_parameters(code)
    slack = singleton_slack(p)
    applicable = singleton_applicable(p)
    if args.json:
        print(_dump({
            "schema": f"lnqec.params/{SCHEMA_VERSION}",
            "code": code.name, "q": code.q, "n": code.n, "k": code.k, "d": code.d,
            "d_source": code.d_source, "mds": is_mds(code),
            "ea": {"n": p.n_e, "k": p.k_e, "d_min": p.d_e, "c": p.c},
            "singleton_slack": slack, "singleton_applicable": applicable, "saturates": slack == 0,
        }))
        return 0
    verdict = "saturates" if slack == 0 else "below bound"
    print(f"{p} slack={slack} ({verdict})")
    if not applicable:
        print(f"note: n_e={p.n_e} < 2(d_e-1)={2 * (p.d_e - 1)}, so the Singleton bound's hypothesis does not hold")
    if code.d_source == "declared":
        print("note: distance is declared, not computed")
    return 0


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    # Subcommand copies must not overwrite values given before the subcommand.
    def default(value):
        return argparse.SUPPRESS if suppress else value

    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=default(0), help="RNG seed (default 0)")
    p.add_argument("--json", action="store_true", default=default(False), help="emit JSON")
    p.add_argument("--code", default=default("catalog:mds4_2_q"), help="code file or catalog:<name>")
    p.add_argument("--variant", choices=("q4", "q2", "dual"), default=default(None),
                   help="scheme variant (default from the code's field)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags(suppress=True)
    parser = argparse.ArgumentParser(
        prog="qec", description=__doc__.splitlines()[0], parents=[_global_flags(suppress=False)]
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("codes", parents=[common], help="list catalog codes")
    sub.add_parser("build", parents=[common], help="print scheme matrices")

    p = sub.add_parser("verify", parents=[common], help="run the algebraic and statevector checks")
    p.add_argument("--random-errors", type=int, default=1000)
    p.add_argument("--states", type=int, default=10)
    p.add_argument("--negative-cases", type=int, default=100)

    p = sub.add_parser("table", parents=[common], help="build a syndrome table")
    p.add_argument("--t", type=int, help="correction radius (default floor((d-1)/2))")
    p.add_argument("--out", help="write the serialized table here")

    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo failure rate")
    p.add_argument("--adversarial", type=int, metavar="T", help="uniform errors of weight <= T")
    p.add_argument("--p-data", type=float, help="per-Pauli data error probability")
    p.add_argument("--p-anc", type=float, help="ancilla error probability (permitted Pauli only)")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--table", help="serialized syndrome table to reuse")
    p.add_argument("--t", type=int, help="table radius when building")

    sub.add_parser("params", parents=[common], help="entanglement-assisted parameters")
    return parser


_COMMANDS = {
    "codes": cmd_codes,
    "build": cmd_build,
    "verify": cmd_verify,
    "table": cmd_table,
    "simulate": cmd_simulate,
    "params": cmd_params,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"qec: error: {exc}", file=sys.stderr)
        return 2


def execute(argv: list[str]) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())

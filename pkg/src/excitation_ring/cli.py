"""Command-line interface.

Every pipeline is exposed as a subcommand with deterministic output: the same
invocation always produces byte-identical stdout.  Verification subcommands
exit 0 when every property holds and 1 when one fails; usage errors and
budget exceedances exit 2.  Progress for long runs goes to stderr only.

Set EXC_BUDGET to a multiplier (e.g. 4) to raise the enumeration and
Fock-space budgets.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import bijections, enumeration, fock, ideal, stdmono
from .bijections import DyckWord, PlanePartition, SSYT
from .errors import BudgetExceeded

EXIT_OK = 0
EXIT_PROPERTY_FAILED = 1
EXIT_USAGE = 2


def _apply_budget_env() -> None:
    raw = os.environ.get("EXC_BUDGET")
    if not raw:
        return
    try:
        mult = float(raw)
    except ValueError:
        raise SystemExit(f"exring: invalid EXC_BUDGET value {raw!r}")
    if mult <= 0:
        raise SystemExit(f"exring: EXC_BUDGET must be positive, got {raw!r}")
    enumeration.DYCK_HALF_LENGTH_BUDGET = int(enumeration.DYCK_HALF_LENGTH_BUDGET * mult)
    enumeration.PP_STATE_BITS_BUDGET = enumeration.PP_STATE_BITS_BUDGET * mult
    fock.BASIS_BUDGET = int(fock.BASIS_BUDGET * mult)


def _read_input(args) -> dict:
    if getattr(args, "infile", None):
        with open(args.infile) as fh:
            return json.load(fh)
    return json.load(sys.stdin)


def _emit(payload, args, text_renderer) -> None:
    if args.format == "json":
        print(json.dumps(payload))
    else:
        print(text_renderer(payload))


def _matrix_text(rows) -> str:
    if not rows:
        return "(empty)"
    return "\n".join(" ".join(str(v) for v in row) if row else "(empty row)" for row in rows)


# -- subcommand handlers -------------------------------------------------------


def _cmd_gens(args) -> int:
    pres = ideal.generators(args.m, args.k)
    payload = {
        "m": args.m,
        "k": args.k,
        "count": len(pres.generators),
        "generators": [
            {"rows": list(label.rows), "cols": list(label.cols), "polynomial": poly.to_text()}
            for label, poly in pres.generators
        ],
    }

    def text(p):
        lines = [f"{p['count']} generators for m={p['m']}, k={p['k']}"]
        for g in p["generators"]:
            rows = ",".join(map(str, g["rows"]))
            cols = ",".join(map(str, g["cols"]))
            lines.append(f"f[{rows}|{cols}] = {g['polynomial']}")
        return "\n".join(lines)

    _emit(payload, args, text)
    return EXIT_OK


def _cmd_groebner(args) -> int:
    last_reported = [0]

    def progress(done, total):
        if done - last_reported[0] >= 50000 or done == total:
            last_reported[0] = done
            print(f"groebner: {done}/{total} pairs", file=sys.stderr)

    report = ideal.buchberger_verify(args.m, args.k, progress=progress if args.progress else None)
    payload = report.to_json_dict()

    def text(p):
        status = "all S-pairs reduced to zero" if p["all_reduced"] else "REDUCTION FAILURE"
        return (
            f"m={p['m']} k={p['k']}: checked {p['checked']} non-coprime pairs, "
            f"skipped {p['coprime_skipped']} coprime pairs: {status}"
        )

    _emit(payload, args, text)
    return EXIT_OK if report.all_reduced else EXIT_PROPERTY_FAILED


def _cmd_stdmono(args) -> int:
    mats = stdmono.enumerate_standard(args.m, args.k)
    if args.count or not args.list:
        payload = {"m": args.m, "k": args.k, "count": len(mats)}
        _emit(payload, args, lambda p: str(p["count"]))
        return EXIT_OK
    payload = {
        "m": args.m,
        "k": args.k,
        "count": len(mats),
        "matrices": [[list(row) for row in mat] for mat in mats],
    }

    def text(p):
        return "\n".join(json.dumps(mat) for mat in p["matrices"])

    _emit(payload, args, text)
    return EXIT_OK


def _cmd_dim(args) -> int:
    value = stdmono.dimension_formula(args.m, args.k)
    _emit({"m": args.m, "k": args.k, "dimension": value}, args, lambda p: str(p["dimension"]))
    return EXIT_OK


def _cmd_rsk(args) -> int:
    data = _read_input(args)
    if args.inverse:
        p = SSYT.from_rows(data["P"], int(data["cols"]))
        q = SSYT.from_rows(data["Q"], int(data["rows"]))
        matrix = bijections.rsk_inverse(p, q)
        payload = {"matrix": [list(r) for r in matrix]}
        _emit(payload, args, lambda pl: _matrix_text(pl["matrix"]))
        return EXIT_OK
    matrix = tuple(tuple(int(v) for v in row) for row in data["matrix"])
    p, q = bijections.rsk(matrix)
    payload = {
        "P": p.to_json(),
        "Q": q.to_json(),
        "rows": q.content_bound,
        "cols": p.content_bound,
        "shape": list(p.shape),
    }

    def text(pl):
        return "P:\n" + _matrix_text(pl["P"]) + "\nQ:\n" + _matrix_text(pl["Q"])

    _emit(payload, args, text)
    return EXIT_OK


def _cmd_pp(args) -> int:
    data = _read_input(args)
    if args.inverse:
        pp = PlanePartition.from_rows(data["entries"], int(data["bound"]))
        p, q = bijections.pp_to_tableaux(pp)
        payload = {
            "P": p.to_json(),
            "Q": q.to_json(),
            "a": p.content_bound,
            "b": q.content_bound,
        }

        def text(pl):
            return "P:\n" + _matrix_text(pl["P"]) + "\nQ:\n" + _matrix_text(pl["Q"])

        _emit(payload, args, text)
        return EXIT_OK
    p = SSYT.from_rows(data["P"], int(data["a"]))
    q = SSYT.from_rows(data["Q"], int(data["b"]))
    pp = bijections.tableaux_to_pp(p, q, int(data["a"]), int(data["b"]))
    payload = pp.to_json()
    _emit(payload, args, lambda pl: _matrix_text(pl["entries"]))
    return EXIT_OK


def _cmd_dyck(args) -> int:
    data = _read_input(args)
    if args.stats:
        stats = bijections.dyck_stats(DyckWord(data["word"]))
        payload = {
            "word": data["word"],
            "valleys": list(stats.valleys),
            "central": list(stats.central),
            "up": list(stats.up),
            "down": list(stats.down),
        }
        _emit(payload, args, lambda pl: json.dumps(pl))
        return EXIT_OK
    if args.m is None or args.k is None:
        raise SystemExit("exring dyck: --m and --k are required for conversions")
    if args.inverse:
        pp = PlanePartition.from_rows(data["entries"], int(data["bound"]))
        word = bijections.pp_to_dyck(pp, args.m, args.k)
        _emit({"word": word.word}, args, lambda pl: pl["word"])
        return EXIT_OK
    pp = bijections.dyck_to_pp(DyckWord(data["word"]), args.m, args.k)
    payload = pp.to_json()
    _emit(payload, args, lambda pl: _matrix_text(pl["entries"]))
    return EXIT_OK


def _cmd_count(args) -> int:
    if args.family == "narayana":
        _require_args(args.args, 2, "count narayana N R")
        n, r = args.args
        value = enumeration.narayana(n, r)
        payload = {"kind": "narayana", "args": [n, r], "value": str(value)}
    elif args.family == "catalan":
        _require_args(args.args, 1, "count catalan N")
        value = enumeration.catalan(args.args[0])
        payload = {"kind": "catalan", "args": list(args.args), "value": str(value)}
    else:
        _require_args(args.args, 3, "count macmahon A B C")
        a, b, c = args.args
        value = enumeration.macmahon_count(a, b, c)
        payload = {"kind": "macmahon", "args": [a, b, c], "value": str(value)}
    _emit(payload, args, lambda p: p["value"])
    return EXIT_OK


def _require_args(values, expected, usage):
    if len(values) != expected:
        raise SystemExit(f"exring: expected {usage}")


def _cmd_enum(args) -> int:
    if args.family == "pp":
        _require_args(args.args, 3, "enum pp A B C")
        a, b, c = args.args
        items = enumeration.enumerate_pp(a, b, c)
        payload = {"kind": "pp", "args": [a, b, c], "count": len(items)}
        if args.list:
            payload["items"] = [[list(row) for row in pp] for pp in items]

            def text(p):
                return "\n".join(json.dumps(item) for item in p["items"])

            _emit(payload, args, text)
            return EXIT_OK
    else:
        _require_args(args.args, 2, "enum dyck N VALLEYS")
        n, valleys = args.args
        words = enumeration.enumerate_dyck(n, valleys)
        payload = {"kind": "dyck", "args": [n, valleys], "count": len(words)}
        if args.list:
            payload["items"] = words

            def text(p):
                return "\n".join(p["items"])

            _emit(payload, args, text)
            return EXIT_OK
    _emit(payload, args, lambda p: str(p["count"]))
    return EXIT_OK


def _cmd_fock(args) -> int:
    if args.fock_command == "invariant-dim":
        dim = len(fock.invariant_subspace(args.m, args.d))
        _emit({"m": args.m, "d": args.d, "dimension": dim}, args, lambda p: str(p["dimension"]))
        return EXIT_OK
    if args.fock_command == "basis":
        vectors = fock.excitation_basis(args.m, args.k)
        payload = {
            "m": args.m,
            "k": args.k,
            "dimension": len(vectors),
            "vectors": [v.to_json() for v in vectors],
        }

        def text(p):
            lines = [f"dimension {p['dimension']}"]
            for vec in p["vectors"]:
                terms = " + ".join(
                    f"({t['coeff']})*" + "^".join(f"{o[0]}{'u' if o[1]=='up' else 'd'}" for o in t["orbitals"])
                    for t in vec["terms"]
                )
                lines.append(terms)
            return "\n".join(lines)

        _emit(payload, args, text)
        return EXIT_OK
    # fock verify
    checks = _fock_verify_checks(args.m, args.k)
    all_passed = all(c["status"] == "pass" for c in checks)
    payload = {"m": args.m, "k": args.k, "checks": checks, "all_passed": all_passed}

    def text(p):
        lines = [f"{c['name']}: {c['status']} ({c['detail']})" for c in p["checks"]]
        lines.append("overall: " + ("pass" if p["all_passed"] else "FAIL"))
        return "\n".join(lines)

    _emit(payload, args, text)
    return EXIT_OK if all_passed else EXIT_PROPERTY_FAILED


def _fock_verify_checks(m: int, k: int) -> list[dict]:
    checks = []
    report = fock.verify_cubic_relations(m, k)
    checks.append(
        {
            "name": "cubic relations",
            "status": "pass" if report.all_zero else "fail",
            "detail": f"{report.relations_checked} relations",
        }
    )
    ops = {
        (i, j): fock.excitation_operator(i, j, m, k)
        for i in range(1, k + 1)
        for j in range(1, m - k + 1)
    }
    pairs = [(x, y) for x in ops for y in ops if x < y]
    commute = all(ops[x].commutator(ops[y]).is_zero() for x, y in pairs)
    checks.append(
        {
            "name": "excitation operators commute",
            "status": "pass" if commute else "fail",
            "detail": f"{len(pairs)} pairs",
        }
    )
    sl2_ok = all(
        fock.sl2_action(g, m, 2 * k).commutator(op).is_zero()
        for g in fock.SL2_GENERATOR_NAMES
        for op in ops.values()
    )
    checks.append(
        {
            "name": "excitations commute with spin action",
            "status": "pass" if sl2_ok else "fail",
            "detail": f"{3 * len(ops)} commutators",
        }
    )
    try:
        vectors = fock.excitation_basis(m, k)
        dim = len(fock.invariant_subspace(m, 2 * k))
        ok = len(vectors) == dim
        detail = f"{len(vectors)} independent invariant vectors, invariant dim {dim}"
    except RuntimeError as exc:
        ok, detail = False, str(exc)
    checks.append(
        {"name": "excitation basis spans invariants", "status": "pass" if ok else "fail", "detail": detail}
    )
    return checks


def _cmd_verify_all(args) -> int:
    m, k = args.m, args.k
    checks: list[dict] = []

    def add(name, ok, detail):
        checks.append({"name": name, "status": "pass" if ok else "fail", "detail": detail})
        if args.format == "text":
            print(f"{name}: {'pass' if ok else 'FAIL'} ({detail})", file=sys.stderr)

    t0 = time.time()
    report = ideal.buchberger_verify(m, k)
    add(
        "groebner property",
        report.all_reduced,
        f"{report.pairs_checked} pairs reduced, {report.coprime_skipped} coprime skipped, "
        f"{time.time() - t0:.1f}s",
    )
    mats = stdmono.enumerate_standard(m, k)
    expected = stdmono.dimension_formula(m, k)
    add("standard monomial count", len(mats) == expected, f"{len(mats)} vs narayana {expected}")
    words = set()
    chain_ok = True
    for mat in mats:
        word = bijections.matrix_to_dyck(mat, m, k)
        if bijections.dyck_to_matrix(word, m, k) != mat:
            chain_ok = False
            break
        words.add(word.word)
    target: set[str] | None = None
    try:
        target = set(enumeration.dyck_family(m + 1, k + 1))
    except BudgetExceeded:
        pass
    if chain_ok and target is not None:
        chain_ok = words == target
    add("bijection chain round-trips", chain_ok and len(words) == len(mats), f"{len(mats)} elements")
    try:
        dim = len(fock.invariant_subspace(m, 2 * k))
        add("fock invariant dimension", dim == expected, f"{dim} vs {expected}")
        for check in _fock_verify_checks(m, k):
            checks.append(check)
            if args.format == "text":
                print(
                    f"{check['name']}: {'pass' if check['status'] == 'pass' else 'FAIL'} "
                    f"({check['detail']})",
                    file=sys.stderr,
                )
    except BudgetExceeded as exc:
        checks.append({"name": "fock checks", "status": "skipped", "detail": str(exc)})
        if args.format == "text":
            print(f"fock checks: skipped ({exc})", file=sys.stderr)
    all_passed = all(c["status"] != "fail" for c in checks)
    payload = {"m": m, "k": k, "checks": checks, "all_passed": all_passed}

    def text(p):
        width = max(len(c["name"]) for c in p["checks"])
        lines = [f"{c['name']:<{width}}  {c['status']}" for c in p["checks"]]
        lines.append(f"{'overall':<{width}}  {'pass' if p['all_passed'] else 'FAIL'}")
        return "\n".join(lines)

    _emit(payload, args, text)
    return EXIT_OK if all_passed else EXIT_PROPERTY_FAILED


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="exring",
        description="Exact computations for excitation rings: ideal generators, "
        "Groebner verification, standard monomials, bijections, counts, and "
        "spin-adapted Fock spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("json", "text"), default="text")

    def add_mk(p):
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("gens", help="print the cubic generator family")
    add_mk(p)
    add_format(p)
    p.set_defaults(handler=_cmd_gens)

    p = sub.add_parser("groebner", help="verify the Groebner property via Buchberger's criterion")
    add_mk(p)
    add_format(p)
    p.add_argument("--progress", action="store_true", help="report progress on stderr")
    p.set_defaults(handler=_cmd_groebner)

    p = sub.add_parser("stdmono", help="enumerate the standard monomial basis")
    add_mk(p)
    add_format(p)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--count", action="store_true")
    group.add_argument("--list", action="store_true")
    p.set_defaults(handler=_cmd_stdmono)

    p = sub.add_parser("dim", help="dimension of the excitation ring (Narayana number)")
    add_mk(p)
    add_format(p)
    p.set_defaults(handler=_cmd_dim)

    p = sub.add_parser("rsk", help="matrix <-> tableau pair (JSON on stdin or --in)")
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--in", dest="infile")
    add_format(p)
    p.set_defaults(handler=_cmd_rsk)

    p = sub.add_parser("pp", help="tableau pair <-> plane partition")
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--in", dest="infile")
    add_format(p)
    p.set_defaults(handler=_cmd_pp)

    p = sub.add_parser("dyck", help="Dyck word <-> plane partition, or --stats")
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--stats", action="store_true")
    p.add_argument("--m", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--in", dest="infile")
    add_format(p)
    p.set_defaults(handler=_cmd_dyck)

    p = sub.add_parser("count", help="closed-form counts")
    p.add_argument("family", choices=("narayana", "catalan", "macmahon"))
    p.add_argument("args", type=int, nargs="*")
    add_format(p)
    p.set_defaults(handler=_cmd_count)

    p = sub.add_parser("enum", help="brute-force enumerations")
    p.add_argument("family", choices=("pp", "dyck"))
    p.add_argument("args", type=int, nargs="*")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--count", action="store_true")
    group.add_argument("--list", action="store_true")
    add_format(p)
    p.set_defaults(handler=_cmd_enum)

    p = sub.add_parser("fock", help="Fock-space computations")
    fock_sub = p.add_subparsers(dest="fock_command", required=True)
    q = fock_sub.add_parser("invariant-dim", help="dimension of the spin-adapted subspace")
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--d", type=int, required=True)
    add_format(q)
    q.set_defaults(handler=_cmd_fock)
    q = fock_sub.add_parser("verify", help="operator-algebra checks at (m, k)")
    add_mk(q)
    add_format(q)
    q.set_defaults(handler=_cmd_fock)
    q = fock_sub.add_parser("basis", help="excitation-operator basis of the invariant subspace")
    add_mk(q)
    add_format(q)
    q.set_defaults(handler=_cmd_fock)

    p = sub.add_parser("verify-all", help="chain all verifications for (m, k)")
    add_mk(p)
    add_format(p)
    p.set_defaults(handler=_cmd_verify_all)

    return parser


def run(argv=None) -> int:
    _apply_budget_env()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except BudgetExceeded as exc:
        print(f"exring: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"exring: invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

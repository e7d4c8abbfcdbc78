"""Command-line entry point: ``strongcospec <subcommand> ...``.

Exit codes: 0 success, 1 a violation or disagreement was found, 2 bad usage
or malformed input. Campaign progress is appended as JSON lines under the
directory named by ``STRONGCOSPEC_CACHE_DIR`` when it is set.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .charpoly import charpoly
from .cospectral import all_pair_decisions, strongly_cospectral_classes
from .errors import ConfigurationError, DomainError, Graph6Error, VerificationFailure
from .graphs import cartesian_product, parse_graph6, to_graph6
from .harness import CampaignReport, audit_cut_triples, find_sets, fuzz_identities, verify_trees
from .spectral import DEFAULT_PRECISION, all_numeric_decisions

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


def _emit(fmt: str, payload, rows: list[list], header: list[str], human: str) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return buf.getvalue().rstrip("\n")
    return human


def cmd_charpoly(args) -> tuple[int, str]:
    g = parse_graph6(args.graph6)
    p = charpoly(g)
    payload = {"graph6": to_graph6(g), "n": g.n, "charpoly": p.to_json()}
    rows = [[k, c] for k, c in enumerate(p.coeffs)]
    return EXIT_OK, _emit(args.format, payload, rows, ["power", "coefficient"], str(p))


def cmd_pairs(args) -> tuple[int, str]:
    g = parse_graph6(args.graph6)
    mode = args.mode or "exact"
    exact = {(d.i, d.j): d for d in all_pair_decisions(g)} if mode in ("exact", "both") else {}
    numeric = all_numeric_decisions(g, args.precision) if mode in ("numeric", "both") else {}
    keys = sorted(set(exact) | set(numeric))
    out, rows, lines, status = [], [], [], EXIT_OK
    for key in keys:
        rec = {"vertices": list(key)}
        if key in exact:
            rec["cospectral"] = exact[key].cospectral
            rec["strongly_cospectral"] = exact[key].strongly_cospectral
            rec["witness"] = exact[key].witness
        if key in numeric:
            rec["numeric"] = numeric[key].verdict
            rec["signature"] = numeric[key].signature
        if key in exact and key in numeric:
            rec["agree"] = exact[key].strongly_cospectral == numeric[key].verdict
            if not rec["agree"]:
                status = EXIT_VIOLATION
        out.append(rec)
        rows.append([key[0], key[1], rec.get("cospectral", ""), rec.get("strongly_cospectral", ""),
                     rec.get("numeric", ""), rec.get("agree", "")])
        verdict = rec.get("strongly_cospectral", rec.get("numeric"))
        tag = "strongly cospectral" if verdict else ("cospectral" if rec.get("cospectral") else "-")
        if verdict is None:
            tag = "indeterminate"
        if rec.get("agree") is False:
            tag += "  (exact and numeric DISAGREE)"
        lines.append(f"{key[0]:>3} {key[1]:>3}  {tag}")
    payload = {"graph6": to_graph6(g), "mode": mode, "pairs": out}
    header = ["i", "j", "cospectral", "strongly_cospectral", "numeric", "agree"]
    return status, _emit(args.format, payload, rows, header, "\n".join(lines) or "no vertex pairs")


def _classes_human(classes: list[list[int]]) -> str:
    if not classes:
        return "no strongly cospectral classes"
    return "\n".join(f"class {n}: {' '.join(map(str, c))}" for n, c in enumerate(classes))


def cmd_classes(args) -> tuple[int, str]:
    g = parse_graph6(args.graph6)
    classes = strongly_cospectral_classes(g)
    rows = [[n, v] for n, c in enumerate(classes) for v in c]
    payload = {"graph6": to_graph6(g), "classes": classes}
    return EXIT_OK, _emit(args.format, payload, rows, ["class", "vertex"], _classes_human(classes))


def cmd_find_sets(args) -> tuple[int, str]:
    g = parse_graph6(args.graph6)
    sets = find_sets(g, args.precision)
    status = EXIT_OK if all(s["parity_ok"] for s in sets) else EXIT_VIOLATION
    rows = [[n, s["base"], int(j), " ".join(map(str, sig)), s["parity_error"]]
            for n, s in enumerate(sets) for j, sig in s["signatures"].items()]
    lines = []
    for s in sets:
        lines.append(f"size {s['size']}: {' '.join(map(str, s['vertices']))}  (parity error {s['parity_error']:.3g})")
        for j, sig in s["signatures"].items():
            lines.append(f"  {s['base']} ~ {j}: " + " ".join("+" if x > 0 else "-" for x in sig))
    payload = {"graph6": to_graph6(g), "sets": sets}
    human = "\n".join(lines) or "no strongly cospectral classes"
    return status, _emit(args.format, payload, rows, ["class", "base", "vertex", "signature", "parity_error"], human)


def cmd_product(args) -> tuple[int, str]:
    g, h = parse_graph6(args.graph6_a), parse_graph6(args.graph6_b)
    p = cartesian_product(g, h)
    code = to_graph6(p)
    payload = {"graph6": code, "n": p.n, "factors": [to_graph6(g), to_graph6(h)]}
    return EXIT_OK, _emit(args.format, payload, [[code, p.n]], ["graph6", "n"], code)


def _report_output(args, report: CampaignReport) -> tuple[int, str]:
    payload = report.to_json(include_timing=args.timing)
    rows = [[n, key, val] for n, c in sorted(report.per_order.items()) for key, val in sorted(c.items())]
    lines = [f"{report.name} {json.dumps(report.parameters, sort_keys=True)}"]
    for n, c in sorted(report.per_order.items()):
        lines.append(f"  n={n:<3} " + ", ".join(f"{k}={v}" for k, v in sorted(c.items()) if not k.startswith("hypothesis_")))
    for key, val in sorted(report.extra.items()):
        lines.append(f"  {key}: {val}")
    lines.append(f"  violations: {len(report.violations)}")
    for v in report.violations[:20]:
        lines.append(f"    {json.dumps(v, sort_keys=True)}")
    if args.timing:
        lines.append(f"  wall time: {report.wall_time:.2f}s")
    lines.append("  OK" if report.success else "  FAILED")
    status = EXIT_OK if report.success else EXIT_VIOLATION
    return status, _emit(args.format, payload, rows, ["order", "key", "value"], "\n".join(lines))


def cmd_verify_trees(args) -> tuple[int, str]:
    return _report_output(args, verify_trees(args.max_n, jobs=args.jobs))


def cmd_audit_triples(args) -> tuple[int, str]:
    return _report_output(args, audit_cut_triples(args.max_n, random_graphs=args.random, seed=args.seed))


def cmd_fuzz(args) -> tuple[int, str]:
    return _report_output(args, fuzz_identities(args.count, args.max_n, args.seed))


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "human"), default="human")
    parser = argparse.ArgumentParser(prog="strongcospec", description="Exact and numeric strong cospectrality tools.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("charpoly", parents=[common], help="characteristic polynomial")
    p.add_argument("graph6")
    p.set_defaults(func=cmd_charpoly)

    p = sub.add_parser("pairs", parents=[common], help="cospectral and strongly cospectral vertex pairs")
    p.add_argument("graph6")
    mode = p.add_mutually_exclusive_group()
    for m in ("exact", "numeric", "both"):
        mode.add_argument(f"--{m}", dest="mode", action="store_const", const=m)
    p.add_argument("--precision", type=_positive, default=DEFAULT_PRECISION)
    p.set_defaults(func=cmd_pairs)

    p = sub.add_parser("classes", parents=[common], help="strongly cospectral classes")
    p.add_argument("graph6")
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("find-sets", parents=[common], help="classes with eigenprojector parity signatures")
    p.add_argument("graph6")
    p.add_argument("--precision", type=_positive, default=DEFAULT_PRECISION)
    p.set_defaults(func=cmd_find_sets)

    p = sub.add_parser("product", parents=[common], help="cartesian product of two graphs")
    p.add_argument("graph6_a")
    p.add_argument("graph6_b")
    p.set_defaults(func=cmd_product)

    timing = argparse.ArgumentParser(add_help=False)
    timing.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identical output)")

    p = sub.add_parser("verify-trees", parents=[common, timing], help="no tree has a strongly cospectral triple")
    p.add_argument("--max-n", type=_positive, required=True)
    p.add_argument("--jobs", type=_positive, default=1)
    p.set_defaults(func=cmd_verify_trees)

    p = sub.add_parser("audit-triples", parents=[common, timing], help="audit cut-separated cospectral triples")
    p.add_argument("--max-n", type=_positive, required=True)
    p.add_argument("--random", type=int, default=0, help="extra random connected graphs")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_audit_triples)

    p = sub.add_parser("fuzz", parents=[common, timing], help="identity checks on random graphs")
    p.add_argument("--count", type=_positive, required=True)
    p.add_argument("--max-n", type=_positive, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_fuzz)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        status, text = args.func(args)
    except (Graph6Error, DomainError, ConfigurationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except VerificationFailure as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        print(json.dumps(exc.dump, sort_keys=True, indent=2))
        return EXIT_VIOLATION
    print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface: ``saxl compute | formula | classify | verify | catalog``."""

from __future__ import annotations

import argparse
import json
import sys
import time
import warnings

from . import catalog as cat
from . import closed_forms as cf
from .engine import SubdegreeReport, johnson_check, saxl_graph_export, scan_normal_arc_stabilisers, suborbits_bruteforce
from .group import DEFAULT_LABEL_CAP, CapExceeded
from .numtheory import is_prime

EXIT_OK, EXIT_USAGE, EXIT_CHECK = 0, 1, 2


class UsageError(Exception):
    pass


def _parse_int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"{what} must be an integer, got {text!r}") from None


def _parse_pairs(text: str) -> dict:
    """``a=1,b=2`` -> {"a": "1", "b": "2"}."""
    out = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        if "=" not in part:
            raise UsageError(f"expected key=value, got {part!r}")
        k, v = part.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _print_report(report: SubdegreeReport, out) -> None:
    print(f"group      {report.group_name}", file=out)
    print(f"|G|        {report.order_G}", file=out)
    print(f"|H|        {report.order_H}", file=out)
    print(f"index      {report.index}", file=out)
    print(f"method     {report.method}", file=out)
    print("subdegrees " + ", ".join(f"{n}^{m}" for n, m in report.entries), file=out)
    print(f"valency    {report.valency}", file=out)
    for k, v in report.checks.items():
        print(f"check      {k} = {v}", file=out)


def _report_ok(report: SubdegreeReport) -> bool:
    return report.consistent


# ---------------------------------------------------------------------------
# compute


def cmd_compute(args, out) -> int:
    if bool(args.entry) == bool(args.file):
        raise UsageError("give exactly one of --entry or --file")
    cache = None if args.no_cache or args.file or args.export_dot else cat.ResultCache()
    report = cache.get(args.entry, args.method) if cache else None
    if report is None:
        if args.entry:
            try:
                entry = cat.get_entry(args.entry)
            except KeyError as exc:
                raise UsageError(str(exc.args[0])) from None
            action = cat.build_entry(entry, label_cap=args.label_cap)
        else:
            action = cat.action_from_file(args.file, label_cap=args.label_cap)
        report = cat.compute_entry(action, args.method, label_cap=args.label_cap)
        if args.export_dot:
            saxl_graph_export(action.space, sink=args.export_dot)
            print(f"wrote {args.export_dot}", file=out)
        if report.method == "delta-engine":
            d = report.details
            print("Delta      " + " ".join(str(x) for x in d["Delta"]), file=out)
            print("delta      " + " ".join(str(x) for x in d["delta"]), file=out)
        if cache:
            cache.put(args.entry, args.method, report)
    _print_report(report, out)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(report.to_json() + "\n")
    return EXIT_OK if _report_ok(report) else EXIT_CHECK


# ---------------------------------------------------------------------------
# formula


def cmd_formula(args, out) -> int:
    kind = args.kind
    if kind in ("sym", "alt"):
        if args.p is None:
            raise UsageError("--p is required")
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            if kind == "sym":
                val = cf.val_sym_p(args.p)
                mults = [(d * args.p, cf.mult_sym_p(args.p, d)) for d in _proper_divisors(args.p - 1)]
            else:
                val = cf.val_alt_p(args.p)
                mults = [(d * args.p, cf.mult_alt_p(args.p, d)) for d in _proper_divisors((args.p - 1) // 2)]
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
        print(f"valency {val}", file=out)
        for n, m in mults:
            print(f"m({n}) = {m}", file=out)
        return EXIT_OK
    if kind in ("psl2", "pgl2"):
        if args.q is None or args.case is None:
            raise UsageError("--q and --case are required")
        fn = cf.val_psl2 if kind == "psl2" else cf.val_pgl2
        print(f"valency {fn(args.q, args.case)}", file=out)
        return EXIT_OK
    if kind == "lreps":
        if args.r is None or args.q is None:
            raise UsageError("--r and --q are required")
        report = cf.lr_eps_subdegrees(args.r, args.q, args.eps, "socle" if args.socle else "full")
        _print_report(report, out)
        return EXIT_OK if _report_ok(report) else EXIT_CHECK
    if kind == "frobenius":
        if None in (args.k, args.l, args.index) or not args.norm:
            raise UsageError("--k, --l, --index and --norm are required")
        norms = {_parse_int(k, "divisor"): _parse_int(v, "normaliser order") for k, v in _parse_pairs(args.norm).items()}
        report = cf.frobenius_report(cf.FrobeniusInput(args.k, args.l, norms, args.index))
        _print_report(report, out)
        return EXIT_OK if _report_ok(report) else EXIT_CHECK
    raise UsageError(f"unknown formula {kind!r}")


def _proper_divisors(n: int) -> list:
    return [d for d in range(1, n) if n % d == 0]


# ---------------------------------------------------------------------------
# classify


def cmd_classify(args, out) -> int:
    params = _parse_pairs(args.params or "")
    fam = args.family
    if fam in ("M23", "Sp", "Ap") or fam.startswith("LrEps") and args.odd:
        verdict = cf.odd_valency_verdict(fam, params)
        for k, v in verdict.items():
            print(f"{k}: {v}", file=out)
        return EXIT_OK
    v = cf.classify_prime_power_stabiliser(fam, params)
    print(f"family: {v.family}", file=out)
    print(f"row: {v.row if v.accepted else 'rejected'}", file=out)
    if v.valency is not None:
        print(f"valency: {v.valency}", file=out)
    if v.prime_power is not None:
        print(f"prime power: {'yes' if v.prime_power else 'no'}", file=out)
    if v.reason:
        print(f"reason: {v.reason}", file=out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify suites


def _line(out, ok: bool, label: str) -> bool:
    print(f"[{'PASS' if ok else 'FAIL'}] {label}", file=out)
    return ok


def suite_table1(out, label_cap=DEFAULT_LABEL_CAP) -> bool:
    ok = True
    for name in ("a5_s3", "m10_agl15", "m10_8colon2", "pgl29_d16", "a9_asl23"):
        e = cat.get_entry(name)
        r = suborbits_bruteforce(cat.build_entry(e, label_cap=label_cap).space, name=name)
        want = e.expected_value("valency")
        ok &= _line(out, r.valency == want and r.consistent, f"{name}: valency {r.valency} (expected {want})")
    return ok


def suite_pgl37(out, label_cap=DEFAULT_LABEL_CAP) -> bool:
    action = cat.build_entry("pgl3_7", label_cap=label_cap)
    r = cat.compute_entry(action, "all", label_cap=label_cap)
    d = r.details
    ok = _line(out, r.valency == 31122, f"valency {r.valency}")
    ok &= _line(out, d["Delta"] == [5630688, 4104, 6669, 513, 171], f"Delta {d['Delta']}")
    ok &= _line(out, d["delta"] == [5321862, 3591, 6156, 342, 171], f"delta {d['delta']}")
    ok &= _line(out, r.checks["cross_method_agreement"] is True, "brute force and engine agree")
    ok &= _line(out, r.multiplicity(57) == 31 and r.multiplicity(19) == 2, f"m(57)={r.multiplicity(57)} m(19)={r.multiplicity(19)}")
    return ok


def suite_johnson(out, label_cap=DEFAULT_LABEL_CAP) -> bool:
    ok = True
    for q in (7, 9, 11, 13, 16, 17):
        action = cat.build_entry(f"pgl2_{q}_split", label_cap=label_cap)
        r = suborbits_bruteforce(action.space)
        same = johnson_check(action.space, q=q)
        ok &= _line(out, same and r.valency == 2 * (q - 1), f"PGL2({q}): Johnson adjacency {same}, valency {r.valency}")
    return ok


def suite_frobenius_identity(out, label_cap=None) -> bool:
    ok = True
    for p in range(7, 102):
        if not is_prime(p):
            continue
        for variant, val_fn, inp_fn in (("sym", cf.val_sym_p, cf.sym_frobenius_input), ("alt", cf.val_alt_p, cf.alt_frobenius_input)):
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                v = val_fn(p)
            inp = inp_fn(p)
            rep = cf.frobenius_report(inp)
            good = v == cf.frobenius_valency(inp) == rep.valency and rep.checks["sum_rule"]
            good &= all(m >= 0 for _, m in rep.entries)
            ok &= _line(out, good, f"{variant} p={p}: valency {v}")
    return ok


def suite_scan(out, label_cap=DEFAULT_LABEL_CAP) -> bool:
    ok = True
    for name, e in cat.CATALOG.items():
        if not e.primitive:
            continue
        action = cat.build_entry(e, label_cap=label_cap)
        found = scan_normal_arc_stabilisers(action.space)
        ok &= _line(out, not found, f"{name}: {len(found)} normal arc stabilisers")
    return ok


SUITES = {
    "table1": suite_table1,
    "pgl37": suite_pgl37,
    "johnson": suite_johnson,
    "frobenius-identity": suite_frobenius_identity,
    "scan": suite_scan,
}


def cmd_verify(args, out) -> int:
    t = time.perf_counter()
    ok = SUITES[args.suite](out, label_cap=args.label_cap)
    print(f"suite {args.suite}: {'passed' if ok else 'FAILED'} in {time.perf_counter() - t:.1f}s", file=out)
    return EXIT_OK if ok else EXIT_CHECK


def cmd_catalog(args, out) -> int:
    for name, e in cat.CATALOG.items():
        exp = ", ".join(f"{k}={v[0]} [{v[1]}]" for k, v in e.expected.items())
        flags = [] if e.primitive else ["imprimitive"]
        print(f"{name:20s} {e.family or '-':14s} {exp}{'  (' + ', '.join(flags) + ')' if flags else ''}", file=out)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="saxl", description="Saxl-graph valencies and subdegrees.")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="subdegrees of a catalog entry or group file")
    c.add_argument("--entry")
    c.add_argument("--file")
    c.add_argument("--method", choices=("bruteforce", "delta", "all"), default="all")
    c.add_argument("--out")
    c.add_argument("--export-dot")
    c.add_argument("--no-cache", action="store_true")
    c.add_argument("--label-cap", type=int, default=DEFAULT_LABEL_CAP)
    c.set_defaults(func=cmd_compute)

    f = sub.add_parser("formula", help="evaluate a closed formula")
    f.add_argument("kind", choices=("sym", "alt", "psl2", "pgl2", "lreps", "frobenius"))
    f.add_argument("--p", type=int)
    f.add_argument("--q", type=int)
    f.add_argument("--r", type=int)
    f.add_argument("--case", choices=("split", "nonsplit"))
    f.add_argument("--eps", choices=("+", "-"), default="+")
    f.add_argument("--socle", action="store_true")
    f.add_argument("--k", type=int)
    f.add_argument("--l", type=int)
    f.add_argument("--index", type=int)
    f.add_argument("--norm", help="normaliser orders by subgroup order, e.g. 2=48,3=36,6=12")
    f.set_defaults(func=cmd_formula)

    k = sub.add_parser("classify", help="prime-power and odd-valency verdicts")
    k.add_argument("--family", required=True)
    k.add_argument("--params", help="comma separated key=value, e.g. p=17")
    k.add_argument("--odd", action="store_true", help="report the odd-valency verdict instead")
    k.set_defaults(func=cmd_classify)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True, choices=sorted(SUITES))
    v.add_argument("--label-cap", type=int, default=DEFAULT_LABEL_CAP)
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("catalog", help="catalog operations")
    g.add_argument("action", choices=("list",))
    g.set_defaults(func=cmd_catalog)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (cf.FormulaError, cat.GroupFileError, CapExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

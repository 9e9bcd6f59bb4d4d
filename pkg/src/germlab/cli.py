"""Command-line driver: analyze, family, catalog.

JSON reports are deterministic: keys are sorted, every number is an exact
integer or a rational string, and wall-clock timings appear only in the text
rendering so identical inputs produce byte-identical JSON.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .catalog import entries
from .errors import GermlabError, PolyParseError, UnsupportedCaseError
from .families import conservation_report, excellence_verdict, semicontinuity_check
from .germs import GermSpec, UnfoldingSpec, parse_germ_file
from .ideals import Limits
from .milnor import mu_image, mu_image_curve
from .multipoints import marar_mond_report

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNSUPPORTED = 2


def _limits(args) -> Limits:
    return Limits(max_spair_degree=args.max_degree, max_basis_size=args.max_basis)


def _frac(value: Fraction) -> str:
    return str(value)


def analyze_document(g: GermSpec, limits: Limits) -> dict:
    t0 = time.perf_counter()
    report = marar_mond_report(g, limits)
    doc: dict = {
        "schema_version": SCHEMA_VERSION,
        "kind": "germ-analysis",
        "germ": g.name,
        "n": g.n,
        "corank": g.corank,
        "branches": len(g.branches),
        "s": report.s,
        "d": report.d,
        "verdict": report.verdict,
        "marar_mond": [
            {
                "k": row.k,
                "tuple": list(row.branch_tuple),
                "verdict": row.verdict,
                "dim": row.dim,
                "expected_dim": row.expected_dim,
                "multiplicity": row.multiplicity,
            }
            for row in report.rows
        ],
    }
    unsupported = None
    if report.verdict == "not-a-finite":
        doc["alt_milnor"] = None
        doc["stability"] = "not-a-finite"
    else:
        try:
            table = mu_image(g, limits)
            doc["alt_milnor"] = table.as_dict()
            doc["stability"] = "stable" if table.mu_i == 0 else "A-finite, unstable"
        except UnsupportedCaseError as exc:
            doc["alt_milnor"] = None
            doc["stability"] = "undetermined"
            unsupported = str(exc)
    if unsupported:
        doc["unsupported"] = unsupported
    if g.n == 1 and report.verdict != "not-a-finite":
        try:
            curve = mu_image_curve(g, limits)
            doc["curve"] = {"delta": curve.delta, "s": curve.s, "mu_I": curve.mu_i}
        except GermlabError:
            doc["curve"] = None
    doc["_timing_ms"] = int((time.perf_counter() - t0) * 1000)
    return doc


def family_document(u: UnfoldingSpec, samples: list[Fraction], limits: Limits) -> dict:
    t0 = time.perf_counter()
    verdict = excellence_verdict(u, samples, limits)
    reports = []
    for sample in samples:
        try:
            rep = conservation_report(u, sample, limits)
            reports.append({
                "sample": _frac(rep.parameter_value),
                "mu_total": rep.mu_total,
                "local_sum": rep.local_sum,
                "defect": rep.defect,
                "partial": rep.partial,
                "local": [{"target": [_frac(c) for c in t], "mu_I": m}
                          for t, m in rep.local_values],
            })
        except UnsupportedCaseError as exc:
            reports.append({"sample": _frac(sample), "unsupported": str(exc)})
    semi_ok, witnesses = semicontinuity_check(u, samples, limits)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "family-analysis",
        "germ": u.germ.name,
        "parameter": u.parameters[0],
        "samples": [_frac(s) for s in samples],
        "verdict": verdict.as_dict(),
        "conservation": reports,
        "semicontinuity": {"holds": semi_ok, "witnesses": witnesses},
    }
    doc["_timing_ms"] = int((time.perf_counter() - t0) * 1000)
    return doc


def _strip_timings(doc: dict) -> dict:
    return {k: v for k, v in doc.items() if not k.startswith("_")}


def _emit(doc: dict, as_json: bool, renderer) -> None:
    if as_json:
        sys.stdout.write(json.dumps(_strip_timings(doc), sort_keys=True, indent=2) + "\n")
    else:
        renderer(doc)


def _render_analysis(doc: dict) -> None:
    print(f"germ {doc['germ']}  (n={doc['n']}, corank {doc['corank']}, "
          f"{doc['branches']} branch(es))")
    print(f"  s = {doc['s']}, d = {doc['d']}")
    print("  multiple point spaces:")
    for row in doc["marar_mond"]:
        mult = "" if row["multiplicity"] is None else f", multiplicity {row['multiplicity']}"
        print(f"    k={row['k']} tuple {tuple(row['tuple'])}: {row['verdict']} "
              f"(dim {row['dim']}, expected {row['expected_dim']}{mult})")
    print(f"  Marar-Mond verdict: {doc['verdict']}")
    if doc.get("alt_milnor"):
        table = doc["alt_milnor"]
        ks = ", ".join(f"mu_{k}^alt = {v}" for k, v in table["entries"].items())
        print(f"  alternating table: {ks or '(none)'}; correction {table['correction']}")
        print(f"  mu_I = {table['mu_I']}")
    if doc.get("curve"):
        c = doc["curve"]
        print(f"  curve route: delta = {c['delta']}, mu_I = {c['mu_I']}")
    if doc.get("unsupported"):
        print(f"  unsupported: {doc['unsupported']}")
    print(f"  verdict: {doc['stability']}")
    print(f"  ({doc['_timing_ms']} ms)")


def _render_family(doc: dict) -> None:
    print(f"family of {doc['germ']} in parameter {doc['parameter']}, "
          f"samples {', '.join(doc['samples'])}")
    v = doc["verdict"]
    print(f"  good: {v['good']}   excellent: {v['excellent']}   "
          f"constancy criterion: {v['houston']}")
    for rep in doc["conservation"]:
        if "unsupported" in rep:
            print(f"  sample {rep['sample']}: unsupported ({rep['unsupported']})")
            continue
        locs = "; ".join(f"mu_I = {x['mu_I']} at ({', '.join(x['target'])})"
                         for x in rep["local"]) or "none"
        extra = " (partial)" if rep["partial"] else ""
        print(f"  sample {rep['sample']}: mu_total {rep['mu_total']} = "
              f"defect {rep['defect']} + local sum {rep['local_sum']}{extra}; "
              f"local: {locs}")
    print(f"  semicontinuity: {'holds' if doc['semicontinuity']['holds'] else 'VIOLATED'}")
    for e in v["evidence"]:
        print(f"    evidence: {e}")
    print(f"  ({doc['_timing_ms']} ms)")


def cmd_analyze(args) -> int:
    limits = _limits(args)
    text = open(args.path, encoding="utf-8").read()
    spec = parse_germ_file(text)
    if isinstance(spec, UnfoldingSpec):
        raise GermlabError("this file is an unfolding; use `germlab family`")
    doc = analyze_document(spec, limits)
    _emit(doc, args.json, _render_analysis)
    if doc.get("stability") == "undetermined":
        return EXIT_UNSUPPORTED
    return EXIT_OK


def cmd_family(args) -> int:
    limits = _limits(args)
    text = open(args.path, encoding="utf-8").read()
    spec = parse_germ_file(text)
    if not isinstance(spec, UnfoldingSpec):
        raise GermlabError("this file is a plain germ; use `germlab analyze`")
    if len(spec.parameters) != 1:
        raise GermlabError("one parameter required")
    try:
        samples = [Fraction(s) for s in args.samples.split(",") if s.strip()]
    except ValueError:
        raise GermlabError(f"bad sample list {args.samples!r}") from None
    if not samples:
        raise GermlabError("at least one sample value required")
    doc = family_document(spec, samples, limits)
    _emit(doc, args.json, _render_family)
    return EXIT_OK


def cmd_catalog(args) -> int:
    limits = _limits(args)
    selected = entries()
    if args.filter:
        pattern = re.compile(args.filter)
        selected = [e for e in selected if pattern.search(e.name)]
    workers = os.environ.get("GERMLAB_THREADS")
    max_workers = int(workers) if workers else min(4, max(1, len(selected)))

    def run(entry):
        t0 = time.perf_counter()
        try:
            results = entry.run(limits)
        except GermlabError as exc:
            from .catalog import CheckResult

            results = [CheckResult("run", False, f"error: {exc}")]
        return entry, results, int((time.perf_counter() - t0) * 1000)

    if max_workers > 1 and len(selected) > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            outcomes = list(pool.map(run, selected))
    else:
        outcomes = [run(e) for e in selected]

    all_ok = True
    doc_entries = []
    for entry, results, ms in outcomes:
        ok = all(r.ok for r in results)
        all_ok = all_ok and ok
        doc_entries.append({
            "name": entry.name,
            "kind": entry.kind,
            "ok": ok,
            "checks": [{"name": r.name, "ok": r.ok, "detail": r.detail}
                       for r in results],
            "_timing_ms": ms,
        })
    if args.json:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "kind": "catalog-run",
            "ok": all_ok,
            "entries": [{k: v for k, v in e.items() if not k.startswith("_")}
                        for e in doc_entries],
        }
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        for e in doc_entries:
            mark = "ok " if e["ok"] else "FAIL"
            print(f"[{mark}] {e['name']} ({e['_timing_ms']} ms)")
            for c in e["checks"]:
                if not c["ok"] or args.verbose:
                    sub = "ok " if c["ok"] else "FAIL"
                    print(f"       [{sub}] {c['name']}: {c['detail']}")
        print("catalog:", "all passed" if all_ok else "FAILURES")
    return EXIT_OK if all_ok else EXIT_ERROR


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="germlab",
        description="Exact invariants of corank-1 map germs and their unfoldings.")
    parser.add_argument("--max-degree", type=int, default=30,
                        help="S-pair degree cap for basis computations")
    parser.add_argument("--max-basis", type=int, default=500,
                        help="basis size cap for basis computations")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full analysis of a germ file")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("family", help="goodness/excellence/conservation of an unfolding file")
    p.add_argument("path")
    p.add_argument("--samples", required=True,
                   help="comma-separated rational parameter values, e.g. 1,-1,1/2")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("catalog", help="run the built-in regression catalog")
    p.add_argument("--filter", help="regular expression on entry names")
    p.add_argument("--json", action="store_true")
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UnsupportedCaseError as exc:
        print(f"unsupported case: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except PolyParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (GermlabError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())

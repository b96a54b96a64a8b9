"""Command-line interface.

Commands: analyze | reduce | k | corpus | zoo | example-gl52.
Exit codes: 0 ok, 2 parse error, 3 budget exceeded, 4 invalid prime set,
5 verification/agreement failure, 6 bad subgroup spec.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import zoo
from .arith import PiSet
from .backtrack import BudgetExceededError
from .config import Budgets
from .groups import PermGroup, join_subgroups
from .hall import classify_ECD, k_induced
from .perms import Perm
from .reduction import compare_with_oracle, cpi_reduce
from .report import Report, class_fingerprints, make_report
from .structure import center as center_of
from .structure import derived_subgroup, is_normal, minimal_normal_subgroups

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_BAD_PI = 4
EXIT_VERIFY = 5
EXIT_BAD_SUBGROUP = 6


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def load_group_file(path: Path) -> PermGroup:
    """Parse the JSON group file format; errors carry line and generator
    index."""
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {exc}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_PARSE,
                       f"{path}: JSON error at line {exc.lineno}: {exc.msg}")
    for key in ("degree", "generators"):
        if key not in data:
            raise CliError(EXIT_PARSE, f"{path}: missing field {key!r}")
    degree = data["degree"]
    if not isinstance(degree, int) or degree < 1:
        raise CliError(EXIT_PARSE, f"{path}: degree must be a positive integer")
    gens = []
    for i, images in enumerate(data["generators"]):
        try:
            gens.append(Perm(images))
        except (ValueError, TypeError) as exc:
            raise CliError(EXIT_PARSE, f"{path}: generator #{i} invalid: {exc}")
        if gens[-1].degree != degree:
            raise CliError(EXIT_PARSE,
                           f"{path}: generator #{i} has degree "
                           f"{gens[-1].degree}, expected {degree}")
    return PermGroup(degree, gens, name=data.get("name", path.stem))


def resolve_group(spec: str) -> tuple[PermGroup, dict]:
    if spec in zoo.ZOO_NAMES:
        return zoo.build_named(spec), {"zoo": spec}
    path = Path(spec)
    if path.exists():
        return load_group_file(path), {"file": str(path)}
    raise CliError(EXIT_PARSE,
                   f"{spec!r} is neither a zoo name nor an existing file")


def resolve_normal(G: PermGroup, spec: str, budgets: Budgets) -> PermGroup:
    """Named constructions for the normal-subgroup argument."""
    if spec == "derived":
        return derived_subgroup(G)
    if spec == "center":
        return center_of(G, node_budget=budgets.node_budget)
    if spec == "socle":
        return join_subgroups(G, minimal_normal_subgroups(G, budgets))
    if spec.startswith("minimal:"):
        idx = int(spec.split(":", 1)[1])
        mins = minimal_normal_subgroups(G, budgets)
        if not 0 <= idx < len(mins):
            raise CliError(EXIT_BAD_SUBGROUP,
                           f"minimal:{idx} out of range (found {len(mins)})")
        return mins[idx]
    if spec.startswith("zoo:"):
        H = zoo.build_named(spec.split(":", 1)[1])
        if H.degree != G.degree:
            raise CliError(EXIT_BAD_SUBGROUP,
                           "zoo subgroup degree does not match the group")
        return H
    if spec.startswith("file:"):
        return load_group_file(Path(spec.split(":", 1)[1]))
    raise CliError(EXIT_BAD_SUBGROUP, f"unknown subgroup spec {spec!r}")


def parse_pi(text: str) -> PiSet:
    try:
        return PiSet.parse(text)
    except ValueError as exc:
        raise CliError(EXIT_BAD_PI, str(exc))


def _budgets(args) -> Budgets:
    return Budgets(node_budget=args.budget_nodes,
                   order_budget=args.budget_order)


def _emit(report: Report, args) -> None:
    if args.json:
        Path(args.json).write_text(report.to_json() + "\n", encoding="utf-8")


def _tri(call):
    """Run a computation; map a budget error to the tri-state string."""
    try:
        return call(), None
    except BudgetExceededError as exc:
        return f"budget_exceeded:{exc.kind}", exc


# -- commands ------------------------------------------------------------------


def cmd_analyze(args) -> int:
    budgets = _budgets(args)
    pi = parse_pi(args.pi)
    G, input_desc = resolve_group(args.group)
    t0 = time.perf_counter()
    value, exc = _tri(lambda: classify_ECD(G, pi, budgets, args.seed))
    elapsed = int((time.perf_counter() - t0) * 1000)
    if exc is not None:
        results = {"verdict": value}
        report = make_report("analyze", input_desc, pi, args.seed, budgets,
                             results, {"analyze_ms": elapsed})
        _emit(report, args)
        print(f"analyze {args.group}: {value}")
        return EXIT_BUDGET
    results = dict(value.flags())
    results["hall_classes"] = class_fingerprints(value.classes)
    report = make_report("analyze", input_desc, pi, args.seed, budgets,
                         results, {"analyze_ms": elapsed})
    _emit(report, args)
    print(f"analyze {args.group} pi={{{args.pi}}}: "
          f"E={value.E} C={value.C} D={value.D} k={value.k}")
    return EXIT_OK


def cmd_reduce(args) -> int:
    budgets = _budgets(args)
    pi = parse_pi(args.pi)
    G, input_desc = resolve_group(args.group)
    t0 = time.perf_counter()
    if args.compare_oracle:
        cmp = compare_with_oracle(G, pi, budgets, args.seed)
        elapsed = int((time.perf_counter() - t0) * 1000)
        results = cmp.to_dict()
        if cmp.trace is not None:
            results["trace"] = cmp.trace.to_dict()
        report = make_report("reduce", input_desc, pi, args.seed, budgets,
                             results, {"reduce_ms": elapsed,
                                       **cmp.timings_ms})
        _emit(report, args)
        print(f"reduce {args.group} pi={{{args.pi}}}: "
              f"reduction={cmp.reduction_verdict} oracle={cmp.oracle_verdict} "
              f"agree={cmp.agree}")
        if cmp.agree is False:
            return EXIT_VERIFY
        if cmp.agree is None:
            return EXIT_BUDGET
        return EXIT_OK
    value, exc = _tri(lambda: cpi_reduce(G, pi, budgets, args.seed))
    elapsed = int((time.perf_counter() - t0) * 1000)
    if exc is not None:
        report = make_report("reduce", input_desc, pi, args.seed, budgets,
                             {"verdict": value}, {"reduce_ms": elapsed})
        _emit(report, args)
        print(f"reduce {args.group}: {value}")
        return EXIT_BUDGET
    report = make_report("reduce", input_desc, pi, args.seed, budgets,
                         {"trace": value.to_dict(),
                          "verdict": value.verdict},
                         {"reduce_ms": elapsed})
    _emit(report, args)
    witness = value.hall_witness.order() if value.hall_witness else None
    print(f"reduce {args.group} pi={{{args.pi}}}: verdict={value.verdict}"
          + (f" hall_order={witness}" if witness else ""))
    return EXIT_OK


def cmd_k(args) -> int:
    budgets = _budgets(args)
    pi = parse_pi(args.pi)
    G, input_desc = resolve_group(args.group)
    A = resolve_normal(G, args.normal, budgets)
    if not A.is_subgroup_of(G) or not is_normal(G, A):
        print(f"k {args.group}: subgroup spec {args.normal!r} is not normal")
        return EXIT_BAD_SUBGROUP
    t0 = time.perf_counter()
    value, exc = _tri(lambda: k_induced(G, A, pi, budgets, args.seed))
    elapsed = int((time.perf_counter() - t0) * 1000)
    if exc is not None:
        report = make_report("k", input_desc, pi, args.seed, budgets,
                             {"verdict": value}, {"k_ms": elapsed})
        _emit(report, args)
        print(f"k {args.group}: {value}")
        return EXIT_BUDGET
    results = {
        "normal_subgroup": {"spec": args.normal, "order": A.order()},
        "k_induced": value.k_induced,
        "k_total": value.k_total,
        "e_holds": value.e_holds,
        "induced_reps": [
            {"order": rep.order(), "orbit_sizes": list(rep.orbit_sizes())}
            for rep in value.induced_class_reps],
    }
    report = make_report("k", input_desc, pi, args.seed, budgets, results,
                         {"k_ms": elapsed})
    _emit(report, args)
    print(f"k {args.group} normal={args.normal} pi={{{args.pi}}}: "
          f"k_induced={value.k_induced} k_total={value.k_total}")
    return EXIT_OK


def cmd_corpus(args) -> int:
    from .suites import run_corpus
    budgets = _budgets(args)
    entries = None
    if args.manifest:
        try:
            entries = json.loads(Path(args.manifest).read_text())["entries"]
        except (OSError, json.JSONDecodeError, KeyError) as exc:
            raise CliError(EXIT_PARSE, f"bad manifest {args.manifest}: {exc}")
    t0 = time.perf_counter()
    run = run_corpus(entries=entries, budgets=budgets, seed=args.seed,
                     jobs=args.jobs)
    elapsed = int((time.perf_counter() - t0) * 1000)
    report = make_report("corpus", {"manifest": args.manifest or "builtin"},
                         None, args.seed, budgets, run.to_dict(),
                         {"corpus_ms": elapsed})
    _emit(report, args)
    print(f"{'entry':<14}{'pi':<8}{'agree':<7}{'manifest':<9}")
    for r in run.entries:
        print(f"{r.name:<14}{r.pi:<8}{str(r.agree):<7}"
              f"{str(r.matches_manifest):<9}")
    print(f"{'suite':<18}{'checked':<9}result")
    for s in run.suites:
        status = "pass" if s.passed else "FAIL: " + "; ".join(s.violations[:2])
        print(f"{s.key:<18}{s.checked:<9}{status}")
    ok = run.all_agree and run.all_match_manifest and run.all_suites_pass
    print(f"corpus: {'all suites pass' if ok else 'FAILURES PRESENT'} "
          f"({elapsed} ms)")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_zoo(args) -> int:
    if args.zoo_action == "list":
        manifest = zoo.corpus_manifest()
        print(f"{'name':<14}{'pi':<8}{'order':<9}{'E':<3}{'C':<3}{'D':<3}"
              f"{'k':<4}provenance")
        for e in manifest:
            f = e["expected"]
            print(f"{e['name']:<14}{e['pi']:<8}{e['order']:<9}"
                  f"{int(f['E']):<3}{int(f['C']):<3}{int(f['D']):<3}"
                  f"{f['k']:<4}{e['provenance']}")
        extra = sorted(set(zoo.ZOO_NAMES) - {e["name"] for e in manifest})
        if extra:
            print("other zoo names:", ", ".join(extra))
        return EXIT_OK
    if args.zoo_action == "emit":
        if args.name not in zoo.ZOO_NAMES:
            raise CliError(EXIT_PARSE, f"unknown zoo name {args.name!r}")
        data = zoo.group_file_dict(args.name)
        text = json.dumps(data, indent=1, sort_keys=True) + "\n"
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8")
            print(f"wrote {args.name} to {args.out}")
        else:
            print(text, end="")
        return EXIT_OK
    raise CliError(EXIT_PARSE, "zoo needs an action: list | emit")


def cmd_example(args) -> int:
    from .example_gl52 import ExampleFailure, run_example
    budgets = _budgets(args)
    t0 = time.perf_counter()
    try:
        results = run_example(budgets=budgets, seed=args.seed)
    except ExampleFailure as exc:
        print(f"example-gl52: FAILED claim {exc.claim}: {exc}")
        return EXIT_VERIFY
    elapsed = int((time.perf_counter() - t0) * 1000)
    report = make_report("example-gl52", {"zoo": "gl52hat"},
                         PiSet([2, 3]), args.seed, budgets, results,
                         {"example_ms": elapsed})
    _emit(report, args)
    for c in results["claims"]:
        print(f"  [{'ok' if c['ok'] else 'FAIL'}] {c['name']}: {c['detail']}")
    print(f"example-gl52: all {len(results['claims'])} claims verified "
          f"({elapsed} ms); {results['exhaustiveness']}")
    return EXIT_OK


# -- argument plumbing ------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser, with_pi: bool = True) -> None:
    if with_pi:
        p.add_argument("--pi", required=True,
                       help="comma-separated primes, e.g. 2,3")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--budget-nodes", type=int, default=2_000_000)
    p.add_argument("--budget-order", type=int, default=1_000_000)
    p.add_argument("--json", metavar="PATH", default=None,
                   help="write the full JSON report to PATH")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pihall",
        description="Hall subgroup analysis for finite permutation groups")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="existence/conjugacy/dominance flags")
    p.add_argument("group", help="zoo name or group file path")
    _add_common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("reduce", help="chief-series decision procedure")
    p.add_argument("group")
    p.add_argument("--compare-oracle", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("k", help="induced Hall class count over a normal "
                                 "subgroup")
    p.add_argument("group")
    p.add_argument("--normal", required=True,
                   help="derived | center | socle | minimal:<i> | "
                        "zoo:<name> | file:<path>")
    _add_common(p)
    p.set_defaults(func=cmd_k)

    p = sub.add_parser("corpus", help="run the validation corpus and suites")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--manifest", default=None)
    _add_common(p, with_pi=False)
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("zoo", help="list or emit built-in groups")
    p.add_argument("zoo_action", choices=["list", "emit"])
    p.add_argument("name", nargs="?")
    p.add_argument("--out", default=None)
    _add_common(p, with_pi=False)
    p.set_defaults(func=cmd_zoo)

    p = sub.add_parser("example-gl52",
                       help="reproduce the GL5(2) extension example")
    _add_common(p, with_pi=False)
    p.set_defaults(func=cmd_example)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())

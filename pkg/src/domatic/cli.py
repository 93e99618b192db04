"""Command-line front end. Every invocation prints one JSON manifest.

Exit codes: 0 success, 1 invalid input or flags, 2 algorithmic failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict
from pathlib import Path
from typing import Any, Optional, Sequence

from . import bounds, extremal, graph, oracle, semirandom
from .errors import (
    CapExceeded,
    CyclesNotDisjoint,
    DomaticError,
    GenerationFailed,
    NoFeasibleT,
    NotFound,
    TooFewColors,
)

DEFAULT_SEED = 0
SUCCESS = "Success"
TIMING_KEYS = frozenset({"elapsed_ms"})
EXACT_GAMMA_MAX_N = 30  # small witnesses also get an exact gamma, for comparison only

_ALGORITHMIC = (CapExceeded, NoFeasibleT, TooFewColors, NotFound, GenerationFailed,
                CyclesNotDisjoint)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with status 2
        raise UsageError(message)


def _json_safe(obj: Any) -> Any:
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(_json_safe(v) for v in obj)
    return obj


def dumps_manifest(manifest: dict) -> str:
    return json.dumps(_json_safe(manifest), sort_keys=True)


def strip_timings(manifest: dict) -> dict:
    """Copy of ``manifest`` without timing fields, for comparisons."""
    if isinstance(manifest, dict):
        return {k: strip_timings(v) for k, v in manifest.items() if k not in TIMING_KEYS}
    if isinstance(manifest, list):
        return [strip_timings(v) for v in manifest]
    return manifest


def read_graph(path: str) -> graph.Graph:
    return graph.from_edge_list(Path(path).read_text())


def write_partition(path: str, classes) -> None:
    Path(path).write_text(json.dumps({"classes": [sorted(c) for c in classes]}) + "\n")


def read_partition(path: str) -> list[list[int]]:
    data = json.loads(Path(path).read_text())
    classes = data.get("classes") if isinstance(data, dict) else None
    if not isinstance(classes, list) or not all(isinstance(c, list) for c in classes):
        raise ValueError(f"{path}: expected {{\"classes\": [[...], ...]}}")
    return [[int(v) for v in c] for c in classes]


def _caps(cap: Optional[int]) -> Optional[dict[str, int]]:
    if cap is None:
        return None
    return {"phase1": cap, "phase2": cap, "naive": cap}


def _graph_metrics(g: graph.Graph) -> dict:
    prof = graph.degree_profile(g)
    return {"vertex_count": g.vertex_count, "edge_count": g.edge_count,
            "min_degree": prof.min_degree, "max_degree": prof.max_degree}


# ---- command handlers: each returns (outcome, metrics, artifacts) ----------


def _emit_graph(g: graph.Graph, args) -> list[str]:
    if args.output:
        Path(args.output).write_text(g.to_edge_list())
        return [args.output]
    return []


def cmd_gen(args):
    if args.kind == "circulant":
        offsets = [int(x) for x in args.offsets.split(",") if x.strip()]
        g = graph.generate_circulant(_need(args.n, "--n"), offsets)
    elif args.kind == "regular":
        g = graph.generate_random_regular(_need(args.n, "--n"), _need(args.k, "--k"), args.seed)
    elif args.kind == "gnp":
        g = extremal.gnp(_need(args.n, "--n"), _need(args.p, "--p"), args.seed)
    else:
        g, report = extremal.construct_witness(
            _need(args.k, "--k"), _need(args.g, "--g"), _need(args.epsilon, "--epsilon"),
            _need(args.c, "--c"), args.seed, n_override=args.n)
        metrics = _graph_metrics(g)
        metrics["witness"] = report.to_dict()
        if g.vertex_count <= EXACT_GAMMA_MAX_N:
            metrics["exact_gamma"] = oracle.min_dominating_set_exact(g).size
        return report.outcome, metrics, _emit_graph(g, args)
    return SUCCESS, _graph_metrics(g), _emit_graph(g, args)


def _solve_trial(payload):
    g, epsilon, seed, caps = payload
    result, report = semirandom.solve(g, epsilon, seed, caps)
    return seed, result, report


def _solve_report_dict(result, report) -> dict:
    return {
        "seed": report.seed,
        "stage": report.stage,
        "partition_size": result.value,
        "params": asdict(report.params) if report.params else None,
        "attempts": [asdict(a) for a in report.attempts],
    }


def cmd_solve(args):
    g = read_graph(_need(args.input, "--input"))
    caps = _caps(args.cap)
    seeds = [args.seed + i for i in range(max(1, args.trials))]
    payloads = [(g, args.epsilon, s, caps) for s in seeds]
    if len(payloads) > 1:
        with ProcessPoolExecutor() as pool:
            runs = list(pool.map(_solve_trial, payloads))
    else:
        runs = [_solve_trial(payloads[0])]
    best = max(runs, key=lambda r: (r[1].value, -r[0]))
    _, result, report = best
    metrics = _solve_report_dict(result, report)
    if len(runs) > 1:
        metrics["trials"] = [_solve_report_dict(r, rep) for _, r, rep in runs]
    artifacts = []
    if args.output:
        write_partition(args.output, result.certificate)
        artifacts.append(args.output)
    return SUCCESS, metrics, artifacts


def cmd_naive(args):
    g = read_graph(_need(args.input, "--input"))
    cap = semirandom.DEFAULT_CAP if args.cap is None else args.cap
    result, report = semirandom.naive_domatic(g, args.seed, cap)
    verdict = graph.verify_domatic_partition(g, result.certificate)
    metrics = {"partition_size": result.value, "verified": verdict.valid,
               "resamples": report.resamples_by_kind, "total_resamples": report.total_resamples}
    artifacts = []
    if args.output:
        write_partition(args.output, result.certificate)
        artifacts.append(args.output)
    return (SUCCESS if verdict.valid else "VerificationFailed"), metrics, artifacts


def cmd_verify(args):
    g = read_graph(_need(args.input, "--input"))
    classes = read_partition(_need(args.partition, "--partition"))
    verdict = graph.verify_domatic_partition(g, classes, total=args.strict)
    metrics = {"valid": verdict.valid, "partition_size": len(classes),
               "violations": [asdict(v) for v in verdict.violations]}
    return (SUCCESS if verdict.valid else "InvalidPartition"), metrics, []


def cmd_oracle(args):
    g = read_graph(_need(args.input, "--input"))
    if args.kind == "gamma":
        res = oracle.min_dominating_set_exact(g, limit=args.limit or 64)
        return SUCCESS, {"gamma": res.size, "witness": sorted(res.witness)}, []
    res = oracle.domatic_number_exact(g, limit=args.limit or 24)
    return SUCCESS, {"domatic_number": res.value,
                     "certificate": [sorted(c) for c in res.certificate]}, []


def cmd_baseline(args):
    g = read_graph(_need(args.input, "--input"))
    classes = oracle.two_partition_baseline(g)
    artifacts = []
    if args.output:
        write_partition(args.output, classes)
        artifacts.append(args.output)
    return SUCCESS, {"partition_size": 2, "classes": [sorted(c) for c in classes]}, artifacts


def cmd_bounds(args):
    kind = args.kind
    if kind == "two-phase":
        rep = bounds.two_phase_bounds(_need(args.k, "--k"), args.epsilon, args.c)
        metrics = asdict(rep)
        metrics["all_ok"] = rep.all_ok
    elif kind == "naive":
        metrics = asdict(bounds.naive_bounds(_need(args.k, "--k"), args.c))
    elif kind == "min-k":
        k = bounds.min_k_two_phase(args.epsilon, args.c)
        metrics = {"k_star": k, "failing_below": bounds.failing_flags(k - 1, args.epsilon, args.c)}
    elif kind == "k0":
        metrics = asdict(bounds.theorem31_k0(args.epsilon, _need(args.g, "--g")))
    elif kind == "lemma32":
        metrics = asdict(bounds.lemma32_escape_bound(_need(args.k, "--k"), args.epsilon,
                                                     _need(args.g, "--g")))
    else:
        metrics = asdict(bounds.lemma33_expectation_bound(_need(args.k, "--k"), args.epsilon,
                                                          _need(args.g, "--g")))
    return SUCCESS, metrics, []


def _need(value, flag: str):
    if value is None:
        raise UsageError(f"{flag} is required")
    return value


# ---- parser ---------------------------------------------------------------


def _common(p: argparse.ArgumentParser, epsilon: Optional[float] = None) -> None:
    p.add_argument("--input")
    p.add_argument("--output")
    p.add_argument("--epsilon", type=float, default=epsilon)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--k", type=int)
    p.add_argument("--g", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--cap", type=int)
    p.add_argument("--quiet", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="domatic", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="generate a graph")
    p.add_argument("kind", choices=["circulant", "regular", "gnp", "witness"])
    _common(p)
    p.add_argument("--offsets", default="1")
    p.add_argument("--p", type=float)
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser("solve", help="fallback-chained domatic partition")
    _common(p, epsilon=1.0)
    p.add_argument("--trials", type=int, default=1)
    p.set_defaults(handler=cmd_solve)

    p = sub.add_parser("naive", help="single-phase uniform coloring")
    _common(p)
    p.set_defaults(handler=cmd_naive)

    p = sub.add_parser("verify", help="check a partition file")
    _common(p)
    p.add_argument("--partition")
    p.add_argument("--strict", action="store_true", help="require total domination")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("oracle", help="exact gamma or domatic number")
    p.add_argument("kind", choices=["gamma", "domatic"])
    _common(p)
    p.add_argument("--limit", type=int)
    p.set_defaults(handler=cmd_oracle)

    p = sub.add_parser("baseline", help="minimal dominating set and its complement")
    _common(p)
    p.set_defaults(handler=cmd_baseline)

    p = sub.add_parser("bounds", help="evaluate proof inequalities")
    p.add_argument("kind", choices=["two-phase", "naive", "min-k", "k0", "lemma32", "lemma33"])
    _common(p, epsilon=1.0)
    p.set_defaults(handler=cmd_bounds)
    return parser


def _echo_inputs(args) -> dict:
    skip = {"handler", "quiet"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def run_cli(argv: Sequence[str]) -> tuple[int, dict]:
    start = time.perf_counter()
    manifest: dict[str, Any] = {"command": " ".join(argv[:1]), "inputs": {}, "seed": None,
                                "outcome": "", "artifacts": [], "metrics": {}}
    try:
        args = build_parser().parse_args(list(argv))
    except UsageError as exc:
        manifest.update(outcome="UsageError", error=str(exc))
        return 1, manifest
    command = args.command + (f" {args.kind}" if hasattr(args, "kind") else "")
    manifest.update(command=command, inputs=_echo_inputs(args), seed=args.seed)
    try:
        outcome, metrics, artifacts = args.handler(args)
        code = 0 if outcome == SUCCESS else 2
    except _ALGORITHMIC as exc:
        outcome, metrics, artifacts, code = type(exc).__name__, {}, [], 2
        manifest["error"] = str(exc)
        if isinstance(exc, CapExceeded) and exc.report is not None:
            metrics = {"resamples": exc.report.resamples_by_kind,
                       "total_resamples": exc.report.total_resamples}
    except (DomaticError, UsageError, ValueError, OSError) as exc:
        outcome, metrics, artifacts, code = type(exc).__name__, {}, [], 1
        manifest["error"] = str(exc)
    metrics["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 3)
    manifest.update(outcome=outcome, metrics=metrics, artifacts=artifacts)
    return code, manifest


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    code, manifest = run_cli(argv)
    if "--quiet" not in argv:
        print(dumps_manifest(manifest))
    return code


if __name__ == "__main__":
    sys.exit(main())

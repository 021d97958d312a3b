"""Command-line driver: route one circuit, or benchmark a corpus directory.

``route`` loads an architecture and an OpenQASM file, schedules it, verifies
the result, and writes routed QASM plus a JSON report.  ``bench`` routes every
circuit in a directory under the full policy and under the duration-unaware,
commutativity-off ablation (re-costed with device durations), emitting a CSV
and JSON comparison table.

Exit codes: 0 success, 1 input/diagnostic errors, 2 verification failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from importlib import resources
from pathlib import Path

from . import __version__
from .arch import Architecture, ArchitectureError, resolve_architecture
from .circuit import Circuit
from .commutation import BASELINE_TABLE, CommutationTable
from .qasm import QasmError, emit_program, parse_program, validate
from .router import (
    RouterConfig,
    RoutingResult,
    TooManyQubitsError,
    initial_mapping,
    rescore_true_durations,
    route,
)
from .verify import verify_equivalence

def table_for(arch: Architecture) -> CommutationTable:
    """Baseline table plus any config-declared rows (validated at arch load)."""
    if not arch.commutation_extra:
        return BASELINE_TABLE
    return BASELINE_TABLE.with_extras(arch.commutation_extra, validate=False)


def _policy_dict(cfg: RouterConfig, init_policy: str) -> dict:
    return {
        "duration_aware": cfg.duration_aware,
        "commutativity": cfg.commutativity_on,
        "initial_mapping": init_policy,
    }


def _load_circuit(path: Path) -> Circuit:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SystemExit(f"error: cannot read {path}: {exc.strerror}") from None
    return parse_program(text)


def build_report(name: str, arch: Architecture, result: RoutingResult,
                 original: Circuit, cfg: RouterConfig, init_policy: str,
                 oracle: str, wall_time_ms: float) -> dict:
    equivalence = verify_equivalence(original, result.schedule, oracle=oracle,
                                     table=cfg.table)
    schedule = result.schedule
    report = {
        "circuit": name,
        "arch": arch.name,
        "policy": _policy_dict(cfg, init_policy),
        "weighted_depth": schedule.weighted_depth,
        "swap_count": schedule.swap_count,
        "gate_count": len(result.routed.gates),
        "stall_events": schedule.stall_events,
        "wall_time_ms": round(wall_time_ms, 3),
        "equivalence": equivalence.to_dict(),
        "schedule": schedule.to_dict(),
    }
    if not cfg.duration_aware:
        report["true_duration_depth"] = rescore_true_durations(schedule.items, arch)
    return report


def run_route(args) -> int:
    try:
        arch = resolve_architecture(args.arch)
    except (ArchitectureError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    path = Path(args.input)
    if not path.exists():
        print(f"error: input file {path} does not exist", file=sys.stderr)
        return 1
    try:
        circuit = _load_circuit(path)
    except QasmError as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        return 1
    diagnostics = validate(circuit, arch.num_qubits)
    if diagnostics:
        for d in diagnostics:
            print(f"error: {path}: {d}", file=sys.stderr)
        return 1

    cfg = RouterConfig(duration_aware=not args.no_duration_aware,
                       commutativity_on=not args.no_commutativity,
                       table=table_for(arch))
    init_policy = "reverse_pass" if args.init == "reverse" else "identity"
    start = time.perf_counter()
    init = initial_mapping(circuit, arch, init_policy, cfg)
    result = route(circuit, arch, init, cfg)
    wall_ms = (time.perf_counter() - start) * 1000.0
    report = build_report(path.stem, arch, result, circuit, cfg, init_policy,
                          args.oracle, wall_ms)

    routed_text = emit_program(result.routed, decompose_swap=args.decompose_swap)
    if args.output:
        Path(args.output).write_text(routed_text, encoding="utf-8")
    else:
        sys.stdout.write(routed_text)
    if args.report:
        Path(args.report).write_text(
            json.dumps(report, sort_keys=True, indent=2) + "\n", encoding="utf-8")

    eq = report["equivalence"]
    summary = (f"{path.stem} on {arch.name}: depth={report['weighted_depth']} "
               f"swaps={report['swap_count']} stalls={report['stall_events']} "
               f"dependency_ok={eq['dependency_ok']} oracle_ok={eq['oracle_ok']}")
    print(summary, file=sys.stderr)
    if not eq["dependency_ok"] or eq["oracle_ok"] is False:
        for detail in eq["details"]:
            print(f"verification: {detail}", file=sys.stderr)
        return 2
    return 0


def bundled_corpus_dir() -> Path:
    return Path(str(resources.files("codar_router").joinpath("benchmarks")))


def bench_corpus(corpus_dir: Path, archs: list[Architecture],
                 init_policy: str = "identity") -> dict:
    """Route every .qasm under both policies; ratio = ablated depth / full depth."""
    rows: list[dict] = []
    skipped: list[dict] = []
    errors: list[dict] = []
    files = sorted(corpus_dir.glob("*.qasm"))
    for arch in archs:
        full_cfg = RouterConfig(table=table_for(arch))
        ablated_cfg = RouterConfig(duration_aware=False, commutativity_on=False)
        for path in files:
            name = path.stem
            try:
                circuit = parse_program(path.read_text(encoding="utf-8"))
            except QasmError as exc:
                errors.append({"circuit": name, "arch": arch.name, "error": str(exc)})
                continue
            if circuit.num_qubits > arch.num_qubits:
                skipped.append({
                    "circuit": name, "arch": arch.name,
                    "reason": f"needs {circuit.num_qubits} qubits, device has {arch.num_qubits}",
                })
                continue
            try:
                init = initial_mapping(circuit, arch, init_policy, full_cfg)
                full = route(circuit, arch, init, full_cfg)
                ablated = route(circuit, arch, init, ablated_cfg)
            except TooManyQubitsError as exc:
                skipped.append({"circuit": name, "arch": arch.name, "reason": str(exc)})
                continue
            # Depth of the produced circuit: its gate order replayed ASAP under
            # device durations.  Same metric on both sides; the ablated router
            # scheduled with unit locks, so its own depth is not comparable.
            depth_full = rescore_true_durations(full.schedule.items, arch)
            depth_ablated = rescore_true_durations(ablated.schedule.items, arch)
            ratio = depth_ablated / depth_full if depth_full else 1.0
            rows.append({
                "circuit": name,
                "arch": arch.name,
                "depth_full": depth_full,
                "swaps_full": full.schedule.swap_count,
                "stalls_full": full.schedule.stall_events,
                "depth_ablated": depth_ablated,
                "swaps_ablated": ablated.schedule.swap_count,
                "stalls_ablated": ablated.schedule.stall_events,
                "speedup_ratio": round(ratio, 6),
            })
    mean_by_arch = {}
    for arch in archs:
        ratios = [r["speedup_ratio"] for r in rows if r["arch"] == arch.name]
        if ratios:
            mean_by_arch[arch.name] = round(sum(ratios) / len(ratios), 6)
    return {"rows": rows, "skipped": skipped, "errors": errors,
            "mean_ratio_by_arch": mean_by_arch}


def comparison_csv(table: dict) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["circuit", "arch", "policy", "depth", "swaps", "stalls", "ratio"])
    for row in table["rows"]:
        writer.writerow([row["circuit"], row["arch"], "full", row["depth_full"],
                         row["swaps_full"], row["stalls_full"], row["speedup_ratio"]])
        writer.writerow([row["circuit"], row["arch"], "ablated", row["depth_ablated"],
                         row["swaps_ablated"], row["stalls_ablated"], row["speedup_ratio"]])
    return out.getvalue()


def run_bench(args) -> int:
    corpus = Path(args.corpus) if args.corpus else bundled_corpus_dir()
    if not corpus.is_dir():
        print(f"error: corpus directory {corpus} does not exist", file=sys.stderr)
        return 1
    try:
        archs = [resolve_architecture(spec) for spec in args.arch]
    except (ArchitectureError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    init_policy = "reverse_pass" if args.init == "reverse" else "identity"
    table = bench_corpus(corpus, archs, init_policy)
    csv_text = comparison_csv(table)
    if args.out_csv:
        Path(args.out_csv).write_text(csv_text, encoding="utf-8")
    else:
        sys.stdout.write(csv_text)
    if args.out_json:
        Path(args.out_json).write_text(
            json.dumps(table, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    for arch_name, mean in table["mean_ratio_by_arch"].items():
        print(f"{arch_name}: mean speedup ratio {mean} over "
              f"{sum(1 for r in table['rows'] if r['arch'] == arch_name)} circuits",
              file=sys.stderr)
    for skip in table["skipped"]:
        print(f"skipped {skip['circuit']} on {skip['arch']}: {skip['reason']}",
              file=sys.stderr)
    if table["errors"]:
        for err in table["errors"]:
            print(f"error: {err['circuit']}: {err['error']}", file=sys.stderr)
        return 1
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="codar-router",
        description="Route quantum circuits onto coupling-limited devices.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_route = sub.add_parser("route", help="route one OpenQASM file")
    p_route.add_argument("--arch", required=True,
                         help="preset name, grid:RxC, or config file path")
    p_route.add_argument("--input", required=True, help="OpenQASM 2.0 input file")
    p_route.add_argument("--output", help="routed QASM path (default: stdout)")
    p_route.add_argument("--report", help="JSON report path")
    p_route.add_argument("--no-duration-aware", action="store_true",
                         help="schedule with unit gate durations")
    p_route.add_argument("--no-commutativity", action="store_true",
                         help="only gates with no pending predecessor are issuable")
    p_route.add_argument("--init", choices=["identity", "reverse"], default="identity")
    p_route.add_argument("--decompose-swap", action="store_true",
                         help="emit each SWAP as three CX gates")
    p_route.add_argument("--oracle", choices=["auto", "off"], default="auto",
                         help="statevector equivalence check (auto skips large circuits)")
    p_route.set_defaults(func=run_route)

    p_bench = sub.add_parser("bench", help="compare policies over a corpus directory")
    p_bench.add_argument("--corpus", help="directory of .qasm files (default: bundled corpus)")
    p_bench.add_argument("--arch", action="append", required=True,
                         help="architecture (repeatable)")
    p_bench.add_argument("--out-csv", help="CSV output path (default: stdout)")
    p_bench.add_argument("--out-json", help="JSON output path")
    p_bench.add_argument("--init", choices=["identity", "reverse"], default="identity")
    p_bench.set_defaults(func=run_bench)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

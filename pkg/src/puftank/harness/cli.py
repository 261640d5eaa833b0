"""Command-line entry points.

Exit codes: 0 success, 1 validation or determinism error, 2 missed
detection under --assert-detect.
"""

from __future__ import annotations

import argparse
import json
import logging
import shutil
import sys
from pathlib import Path

from ..puf.analysis import crp_metrics
from ..puf.device import synthesize_device
from ..puf.lut import lut_to_json, provision_lut_cached
from ..rng import derive_seeds
from ..verifier import IncompleteEnrollment, NotEnrolled, table_from_json, table_to_json
from .loop import run_enrollment, run_scenario
from .logio import read_log, write_log
from .metrics import compute_metrics
from .scenario import (
    load_scenario,
    replace_lut_path,
    resolve_puf,
    scenario_to_doc,
)

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_MISSED_DETECTION = 2


def _cmd_enroll(args) -> int:
    cfg = load_scenario(args.scenario)
    device, lut = resolve_puf(cfg)
    table = run_enrollment(cfg, device=device, lut=lut)
    Path(args.output).write_text(table_to_json(table))
    print(f"enrolled {len(table.pairs)} pairs, "
          f"max temporal diff {table.max_temporal_diff:.3f}")
    return EXIT_OK


def _cmd_run(args) -> int:
    cfg = load_scenario(args.scenario)
    table = table_from_json(Path(args.table).read_text())
    device, lut = resolve_puf(cfg)
    outdir = Path(args.output)
    outdir.mkdir(parents=True, exist_ok=True)

    sim = run_scenario(cfg, table, device=device, lut=lut)
    write_log(sim.rows, outdir / "run.csv")

    # Pin every replay input next to the log.
    (outdir / "lut.json").write_text(lut_to_json(lut))
    resolved = replace_lut_path(cfg, "lut.json")
    (outdir / "scenario.resolved.json").write_text(
        json.dumps(scenario_to_doc(resolved), indent=2))
    (outdir / "enrollment.json").write_text(table_to_json(table))

    event_kinds = [e.kind.value for e in cfg.faults.events]
    metrics = compute_metrics(sim.rows, event_kinds=event_kinds)
    (outdir / "metrics.json").write_text(json.dumps(metrics.to_doc(), indent=2))

    acc = "n/a" if metrics.accuracy is None else f"{metrics.accuracy:.6f}"
    print(f"run complete: {metrics.total_ticks} ticks, accuracy {acc}, "
          f"events {len(metrics.events)}, missed {metrics.missed_events}")
    if args.assert_detect and metrics.missed_events > 0:
        print("missed detection", file=sys.stderr)
        return EXIT_MISSED_DETECTION
    return EXIT_OK


def _cmd_serve(args) -> int:
    from .gateway import default_ui_dir, serve_gateway

    cfg = load_scenario(args.scenario)
    table = None
    if args.table is not None:
        table = table_from_json(Path(args.table).read_text())
    if args.ui is not None:
        ui_dir = Path(args.ui)
        if not (ui_dir / "index.html").is_file():
            print(f"error: no index.html under {ui_dir}", file=sys.stderr)
            return EXIT_VALIDATION
    else:
        ui_dir = default_ui_dir()
    hmi = f"http://{args.host}:{args.port}/" if ui_dir else "not built"
    print(f"gateway on http://{args.host}:{args.port}/api/state, HMI {hmi}",
          file=sys.stderr)
    serve_gateway(cfg, table, host=args.host, port=args.port,
                  modbus_port=args.modbus_port, ui_dir=ui_dir)
    return EXIT_OK


def _cmd_metrics(args) -> int:
    rows = read_log(args.log)
    metrics = compute_metrics(rows)
    print(json.dumps(metrics.to_doc(), indent=2))
    return EXIT_OK


def _cmd_puf_report(args) -> int:
    seeds = derive_seeds(args.population_seed, args.population_size)
    lut = provision_lut_cached(tuple(seeds))
    devices = [synthesize_device(s) for s in seeds[:args.devices]]
    report = crp_metrics(devices, lut, measurement_noise=args.noise)
    print(json.dumps({
        "uniqueness": report.uniqueness,
        "reliability": report.reliability,
        "avalanche": report.avalanche,
        "mean_bias": report.mean_bias,
        "device_count": report.device_count,
        "pair_count": report.pair_count,
    }, indent=2))
    return EXIT_OK


def _cmd_replay(args) -> int:
    log_path = Path(args.log)
    rundir = log_path.parent
    scenario_path = rundir / "scenario.resolved.json"
    table_path = rundir / "enrollment.json"
    if not scenario_path.exists() or not table_path.exists():
        print("replay needs scenario.resolved.json and enrollment.json "
              "beside the log", file=sys.stderr)
        return EXIT_VALIDATION

    cfg = load_scenario(scenario_path)
    table = table_from_json(table_path.read_text())
    device, lut = resolve_puf(cfg)
    sim = run_scenario(cfg, table, device=device, lut=lut)

    replay_path = rundir / "run.replay.csv"
    write_log(sim.rows, replay_path)
    original = log_path.read_bytes()
    replayed = replay_path.read_bytes()
    replay_path.unlink()
    if original != replayed:
        print("replay mismatch: log is not reproducible", file=sys.stderr)
        return EXIT_VALIDATION
    print(f"replay verified: {len(sim.rows)} rows bytewise identical")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="puftank",
        description="Water-tank testbed with PUF-authenticated sensing",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enroll", help="run enrollment, save the pair table")
    p.add_argument("scenario")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_enroll)

    p = sub.add_parser("run", help="run a scenario, save logs and metrics")
    p.add_argument("scenario")
    p.add_argument("--table", required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--assert-detect", action="store_true",
                   help="exit 2 if any scripted event goes undetected")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("serve", help="live mode with the HTTP/WS gateway")
    p.add_argument("scenario")
    p.add_argument("--table")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--modbus-port", type=int, default=1502)
    p.add_argument("--ui", help="built HMI bundle to serve at / "
                                "(default: frontend/dist when present)")
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("metrics", help="recompute metrics from a run log")
    p.add_argument("log")
    p.set_defaults(func=_cmd_metrics)

    p = sub.add_parser("puf-report", help="CRP quality analytics")
    p.add_argument("--devices", type=int, default=12)
    p.add_argument("--population-seed", type=lambda s: int(s, 0), default=0xC0FFEE)
    p.add_argument("--population-size", type=int, default=100)
    p.add_argument("--noise", type=float, default=0.0)
    p.set_defaults(func=_cmd_puf_report)

    p = sub.add_parser("replay", help="verify a log reproduces bytewise")
    p.add_argument("log")
    p.set_defaults(func=_cmd_replay)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except (ValueError, IncompleteEnrollment, NotEnrolled, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())

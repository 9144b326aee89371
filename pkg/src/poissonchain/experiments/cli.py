"""Command-line interface.

Subcommands: simulate, theorem, verify, render, sweep. Each takes --seed,
--config (JSON), --out (output directory) and repeatable --set key=value
overrides. Outputs land in <out>/runs/*.csv, <out>/reports/*.json,
<out>/figures/*.svg; the manifest (the only file with a timestamp) is
<out>/manifest.json. Exit code 0 iff every executed check passed.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from ..config import ExperimentConfig
from ..construction import a_schedule, assemble_theorem_curve, run
from .render import render_svg
from .sweep import (SWEEP_COLUMNS, fmt, summaries_payload, sweep,
                    write_manifest)
from .verify import verify_lemma_suite

THEOREM_COLUMNS = ["trial", "wedge"] + SWEEP_COLUMNS[1:]


def _write_json(path: Path, payload: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2) + "\n")


def cmd_simulate(cfg: ExperimentConfig) -> int:
    out = Path(cfg.out_dir)
    csv_path = out / "runs" / "simulate.csv"
    summaries = sweep(cfg, csv_path, manifest_path=out / "manifest.json")
    _write_json(out / "reports" / "simulate.json", summaries_payload(summaries))
    _write_json(out / "reports" / "snapshot.json", summaries[0].final)
    write_manifest(out / "manifest.json", "simulate", True, [
        str(csv_path), str(out / "reports" / "simulate.json"),
        str(out / "reports" / "snapshot.json")])
    print(f"simulate: {cfg.trials} trial(s), horizon {cfg.horizon}, "
          f"final ell {summaries[0].ell_trajectory[-1]:.6f} -> {csv_path}")
    return 0


def cmd_sweep(cfg: ExperimentConfig) -> int:
    out = Path(cfg.out_dir)
    csv_path = out / "runs" / "sweep.csv"
    summaries = sweep(cfg, csv_path, manifest_path=out / "manifest.json")
    _write_json(out / "reports" / "sweep.json", summaries_payload(summaries))
    write_manifest(out / "manifest.json", "sweep", True,
                   [str(csv_path), str(out / "reports" / "sweep.json")])
    print(f"sweep: {sum(len(s.steps) for s in summaries)} rows -> {csv_path}")
    return 0


def cmd_theorem(cfg: ExperimentConfig) -> int:
    out = Path(cfg.out_dir)
    csv_path = out / "runs" / "theorem.csv"
    csv_path.parent.mkdir(parents=True, exist_ok=True)
    per_n_total = None
    convex = []
    offsets = None
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(THEOREM_COLUMNS)
        for trial in range(cfg.trials):
            asm = assemble_theorem_curve(cfg, trial)
            convex.append(asm.convex)
            offsets = asm.start_offsets
            per_n_total = asm.per_n_hits if per_n_total is None \
                else per_n_total + asm.per_n_hits
            for wi, summary in enumerate(asm.summaries, start=1):
                for rec in summary.steps:
                    writer.writerow([
                        trial, wi, rec.n, rec.q.value, rec.q.base,
                        rec.q.exponent, fmt(rec.w), rec.poisson_count,
                        rec.admissible_count, int(rec.hit), rec.wedge_slot,
                        fmt(rec.decrement), fmt(rec.exact_s_n),
                        fmt(rec.ell_after)])
    mean_hits = (per_n_total / cfg.trials).tolist()
    _write_json(out / "reports" / "theorem.json", {
        "trials": cfg.trials,
        "wedges": cfg.wedges,
        "horizon": cfg.horizon,
        "start_offsets": offsets,
        "convex_per_trial": convex,
        "mean_per_n_hits": mean_hits[1:],
    })
    write_manifest(out / "manifest.json", "theorem", True,
                   [str(csv_path), str(out / "reports" / "theorem.json")])
    ok = all(convex)
    print(f"theorem: {cfg.trials} trial(s), convex={ok}, "
          f"mean hits/step over last 100: "
          f"{sum(mean_hits[-100:]) / 100:.3f} -> {csv_path}")
    return 0 if ok else 1


def cmd_verify(cfg: ExperimentConfig) -> int:
    out = Path(cfg.out_dir)
    report = verify_lemma_suite(cfg)
    for line in report.lines():
        print(line)
    report.to_json(out / "reports" / "verify.json")
    write_manifest(out / "manifest.json", "verify", True,
                   [str(out / "reports" / "verify.json")])
    print(f"verify: {'all checks passed' if report.passed else 'FAILURES'} "
          f"-> {out / 'reports' / 'verify.json'}")
    return 0 if report.passed else 1


def cmd_render(cfg: ExperimentConfig, snapshot_path: str | None,
               bands: bool) -> int:
    out = Path(cfg.out_dir)
    if snapshot_path:
        snapshot = json.loads(Path(snapshot_path).read_text())
    else:
        snapshot = run(cfg, 0).final
    band_alpha = None
    if bands:
        band_alpha = a_schedule(snapshot["n"] + 1, snapshot["ell"])
    svg = render_svg(snapshot, out / "figures" / "chain.svg",
                     band_alpha=band_alpha)
    write_manifest(out / "manifest.json", "render", True, [str(svg)])
    print(f"render: n={snapshot['n']} -> {svg}")
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="poissonchain",
        description="Convex chains accumulating Poisson pseudo-lattice "
                    "points: simulation, verification, rendering.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("simulate", "run seeded construction trials on one triangle"),
        ("theorem", "run the circle-of-wedges assembly"),
        ("verify", "run the full lemma/acceptance verification suite"),
        ("render", "render a snapshot (or a fresh run) to SVG"),
        ("sweep", "grid of trials to CSV, one row per (trial, step)"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--seed", type=int, help="master seed override")
        p.add_argument("--out", help="output directory override")
        p.add_argument("--set", action="append", metavar="KEY=VALUE",
                       help="config override, repeatable")
        if name == "render":
            p.add_argument("--snapshot", help="snapshot JSON from simulate")
            p.add_argument("--bands", action="store_true",
                           help="shade the admissible bands at the next "
                                "step's budget")
    return parser


def build_config(args: argparse.Namespace) -> ExperimentConfig:
    cfg = (ExperimentConfig.from_json(args.config) if args.config
           else ExperimentConfig())
    for assignment in args.set or []:
        cfg.apply_override(assignment)
    if args.seed is not None:
        cfg.seed = args.seed
    if args.out is not None:
        cfg.out_dir = args.out
    cfg.mode = args.command
    return cfg.validate()


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    cfg = build_config(args)
    if args.command == "simulate":
        return cmd_simulate(cfg)
    if args.command == "theorem":
        return cmd_theorem(cfg)
    if args.command == "verify":
        return cmd_verify(cfg)
    if args.command == "render":
        return cmd_render(cfg, args.snapshot, args.bands)
    if args.command == "sweep":
        return cmd_sweep(cfg)
    raise AssertionError(args.command)


if __name__ == "__main__":
    sys.exit(main())

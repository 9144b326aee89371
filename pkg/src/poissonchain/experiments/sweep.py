"""Sweep runs to CSV, one row per (trial, step), with bit-reproducible float
rendering (17 significant digits round-trips float64 exactly)."""

from __future__ import annotations

import csv
import json
import time
from pathlib import Path

from ..construction import RunSummary, run

SWEEP_COLUMNS = [
    "trial", "n", "q", "q_base", "q_exp", "w", "poisson_count",
    "admissible_count", "hit", "wedge_slot", "decrement", "exact_s_n",
    "ell_after",
]


def fmt(x: float) -> str:
    return f"{x:.17g}"


def _rows(trial: int, summary: RunSummary):
    for rec in summary.steps:
        yield [
            trial, rec.n, rec.q.value, rec.q.base, rec.q.exponent,
            fmt(rec.w), rec.poisson_count, rec.admissible_count,
            int(rec.hit), rec.wedge_slot, fmt(rec.decrement),
            fmt(rec.exact_s_n), fmt(rec.ell_after),
        ]


def write_manifest(path: Path, command: str, complete: bool,
                   outputs: list[str], error: str | None = None) -> None:
    """The manifest is the only output that carries a wall-clock timestamp."""
    payload = {
        "command": command,
        "complete": complete,
        "outputs": outputs,
        "error": error,
        "created_at": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
    }
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2) + "\n")


def sweep(config, csv_path: str | Path,
          manifest_path: str | Path | None = None) -> list[RunSummary]:
    """One run per trial, flushed row by row; aborts leave the rows written
    so far plus a manifest marking the output incomplete."""
    csv_path = Path(csv_path)
    csv_path.parent.mkdir(parents=True, exist_ok=True)
    if manifest_path is None:
        manifest_path = csv_path.with_suffix(".manifest.json")
    manifest_path = Path(manifest_path)
    summaries = []
    try:
        with open(csv_path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(SWEEP_COLUMNS)
            for trial in range(config.trials):
                summary = run(config, trial)
                summaries.append(summary)
                writer.writerows(_rows(trial, summary))
                fh.flush()
    except Exception as exc:
        write_manifest(manifest_path, "sweep", False, [str(csv_path)],
                       error=f"{type(exc).__name__}: {exc}")
        raise
    write_manifest(manifest_path, "sweep", True, [str(csv_path)])
    return summaries


def summaries_payload(summaries: list[RunSummary]) -> dict:
    """Deterministic JSON payload aggregating run summaries (no timestamps)."""
    return {
        "trials": len(summaries),
        "runs": [
            {
                "seed": s.seed,
                "stream": list(s.stream),
                "start": s.start,
                "horizon": s.horizon,
                "final_ell": s.ell_trajectory[-1],
                "wedges": s.final["n"],
                "hits": sum(s.hit_count.values()),
                "hit_count": {str(k): v for k, v in sorted(s.hit_count.items())},
                "ell_trajectory": s.ell_trajectory,
                "final": s.final,
            }
            for s in summaries
        ],
    }


def read_sweep(csv_path: str | Path) -> dict[int, list[dict]]:
    """Parse a sweep CSV back into per-trial step dicts (floats exact)."""
    out: dict[int, list[dict]] = {}
    with open(csv_path, newline="") as fh:
        for row in csv.DictReader(fh):
            rec = {
                "trial": int(row["trial"]), "n": int(row["n"]),
                "q": int(row["q"]), "q_base": int(row["q_base"]),
                "q_exp": int(row["q_exp"]), "w": float(row["w"]),
                "poisson_count": int(row["poisson_count"]),
                "admissible_count": int(row["admissible_count"]),
                "hit": bool(int(row["hit"])),
                "wedge_slot": int(row["wedge_slot"]),
                "decrement": float(row["decrement"]),
                "exact_s_n": float(row["exact_s_n"]),
                "ell_after": float(row["ell_after"]),
            }
            out.setdefault(rec["trial"], []).append(rec)
    return out

"""
reports.py — JSON payloads and printable tables for runs, predictions and chains.

Run report shape:
{
  "kind": "verify" | "first_link",
  "config": {...},
  "surface": {"f": str, "provenance": str, "smooth": bool},
  "retry_policy": str,
  "passed": bool,
  "trials": [{"index": int, "seeds": [int], "points": [[int]], "betti": {...},
              "predicted": {...}, "mrc": {...} | null, ..., "timings": {...}}],
  "timings": {"total": float}
}

Notes:
- Key order is fixed by the producers, so two runs with the same config differ
  only under "timings".
"""

from __future__ import annotations

import json
from pathlib import Path

import pandas as pd

from mrclab.lib.cubic_lab import RunReport
from mrclab.lib.liaison import LinkStep


def write_json(payload: dict, path: Path | str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, ensure_ascii=False)
        fh.write("\n")
    return path


def strip_timings(payload):
    """The payload without any "timings" entries, for determinism checks."""
    if isinstance(payload, dict):
        return {k: strip_timings(v) for k, v in payload.items() if k != "timings"}
    if isinstance(payload, list):
        return [strip_timings(v) for v in payload]
    return payload


# ---------- tables ----------

def trials_frame(report: RunReport) -> pd.DataFrame:
    rows = []
    for t in report.trials:
        rows.append({
            "trial": t.index,
            "seed": t.seeds[-1],
            "resampled": len(t.seeds) > 1,
            "matches": t.diagram == t.target,
            "mrc": None if t.mrc is None else t.mrc.passed,
            "generality": t.generality,
            "seconds": round(sum(t.timings.values()), 2),
            "passed": t.passed,
        })
    return pd.DataFrame(rows).set_index("trial")


def chain_frame(steps: list[LinkStep]) -> pd.DataFrame:
    rows = []
    for s in steps:
        rows.append({
            "link": s.spec.index,
            "a": s.spec.a,
            "curve": str(s.spec.curve),
            "divisor": str(s.spec.divisor),
            "from": f"{s.spec.source[0].value}({s.spec.source[1]})",
            "to": f"{s.spec.target[0].value}({s.spec.target[1]})",
            "n": s.spec.n,
            "n'": s.spec.n_prime,
            "deg G": s.spec.deg_G,
            "cancelled": ", ".join(str(c) for c in s.cancellations) or "-",
            "ok": s.verdict,
        })
    return pd.DataFrame(rows)


def render_run(report: RunReport) -> str:
    lines = [f"{report.kind}: surface {report.surface.f} ({report.surface.provenance})"]
    if report.trials:
        lines.append("computed Betti diagram (trial 0):")
        lines.append(str(report.trials[0].diagram))
        lines.append(trials_frame(report).to_string())
    lines.append("PASS" if report.passed else "FAIL")
    return "\n".join(lines)

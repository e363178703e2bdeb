#!/usr/bin/env python3
"""
Sweep all four point-count families at one or more values of a.
Writes one RunReport per family to the output directory and a summary table.
"""

import sys
from pathlib import Path

import pandas as pd
from tqdm import tqdm

sys.path.insert(0, str(Path(__file__).parent.parent))

from mrclab.lib.cubic_lab import ExperimentConfig, run_experiment
from mrclab.lib.errors import MrcLabError
from mrclab.lib.mrc import FamilyTag, family_size
from mrclab.lib.reports import write_json
from mrclab.lib.settings import get_settings


def main(values_of_a=(3,)):
    settings = get_settings()
    out_dir = settings.output_dir / "families"
    rows = []
    for a in values_of_a:
        for tag in tqdm(list(FamilyTag), desc=f"a={a}"):
            z = family_size(tag, a)
            print(f"Verifying {tag.value}({a}) = {z} points, {settings.trials} trials")
            cfg = ExperimentConfig(
                prime=settings.prime,
                seed=settings.seed,
                family=tag,
                a=a,
                trials=settings.trials,
                output=out_dir / f"{tag.value}{a}.json",
            ).validate()
            try:
                report = run_experiment(cfg, progress=False)
            except MrcLabError as e:
                print(f"Error on {tag.value}({a}): {e}")
                rows.append({"family": tag.value, "a": a, "z": z, "passed": False, "error": str(e)})
                continue
            path = write_json(report.to_json(), cfg.output)
            rows.append({"family": tag.value, "a": a, "z": z, "passed": report.passed, "error": ""})
            print(f"Wrote {path}")
    summary = pd.DataFrame(rows)
    print(summary.to_string(index=False))
    return 0 if summary["passed"].all() else 1


if __name__ == "__main__":
    sys.exit(main(tuple(int(v) for v in sys.argv[1:]) or (3,)))

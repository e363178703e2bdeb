#!/usr/bin/env python3
"""
Run the symbolic link chain from a_from to a_to and store the report.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent))

from mrclab.lib.liaison import chain_report, link_chain
from mrclab.lib.reports import chain_frame, write_json
from mrclab.lib.settings import get_settings


def main(a_from=3, a_to=7):
    settings = get_settings()
    print(f"Linking m({a_from}) to m({a_to})")
    steps = link_chain(a_from, a_to)
    print(chain_frame(steps).to_string(index=False))
    path = write_json(chain_report(a_from, a_to, steps), settings.output_dir / f"chain_{a_from}_{a_to}.json")
    print(f"Wrote {path}")


if __name__ == "__main__":
    args = [int(v) for v in sys.argv[1:3]]
    main(*args)

#!/usr/bin/env python3
"""Run the brute-force oracle against the formula for every curated config.

Walks ``configs/`` and, for each file with an ``oracle`` section, invokes
the ``oracle`` subcommand over the config's field sizes.  Prints the
per-field verdicts and exits nonzero if any run fails or mismatches.
"""

from __future__ import annotations

import json
import pathlib
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from charvar.cli import main as cli_main

CONFIG_DIR = pathlib.Path(__file__).resolve().parent.parent / "configs"


def main() -> int:
    worst = 0
    for path in sorted(CONFIG_DIR.glob("*.json")):
        config = json.loads(path.read_text())
        if "oracle" not in config:
            continue
        print(f"--- {path.name}")
        start = time.perf_counter()
        code = cli_main(["oracle", "--config", str(path)])
        elapsed = time.perf_counter() - start
        print(f"    exit {code} in {elapsed:.1f}s")
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(main())

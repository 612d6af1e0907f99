#!/usr/bin/env python3
"""Run every figure-reproduction preset and write plot-ready tables.

Usage:
    python scripts/reproduce_figures.py [outdir]

Writes one CSV and one JSON per preset into outdir (default ./figures-out).
Rendering is intentionally left to external tools; every file carries the
swept values, observables and (for spectra) per-drive frequency blocks.
"""

import pathlib
import sys
import time

from mollowpair.sweep import emit, load_preset, preset_description, preset_names, run_sweep


def main() -> int:
    outdir = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "figures-out")
    outdir.mkdir(parents=True, exist_ok=True)
    for name in preset_names():
        t0 = time.perf_counter()
        result = run_sweep(load_preset(name))
        for fmt in ("csv", "json"):
            (outdir / f"{name}.{fmt}").write_bytes(emit(result, fmt))
        print(f"{name:7s} {time.perf_counter() - t0:6.2f}s  {preset_description(name)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

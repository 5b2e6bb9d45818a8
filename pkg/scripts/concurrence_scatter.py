"""Concurrence against maximum violation for random Bell-diagonal states.

    python scripts/concurrence_scatter.py --samples 50000 --seed 0 --workers 4 [--plot]

Prints the band-violation summary (expected all zeros).
"""

import argparse
import runpy
from pathlib import Path

from tsteer.cli import main


def run():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--samples", type=int, default=50_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default="results/scatter.csv")
    p.add_argument("--plot", action="store_true")
    args = p.parse_args()
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    code = main(["scatter", "--samples", str(args.samples), "--seed", str(args.seed),
                 "--workers", str(args.workers), "--out", str(out)])
    if args.plot:
        runpy.run_path(str(out.with_name(out.stem + "_plot.py")))
    raise SystemExit(code)


if __name__ == "__main__":
    run()

"""Phase diagram of phase-damped Werner states.

    python scripts/phase_diagram.py --res 81 --out results/sweep.csv [--plot]

Writes the sweep CSV plus a matplotlib script; ``--plot`` also runs it.
"""

import argparse
import runpy
from pathlib import Path

from tsteer.cli import main


def run():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--res", type=int, default=81)
    p.add_argument("--out", default="results/sweep.csv")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--plot", action="store_true")
    args = p.parse_args()
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    code = main(["sweep", "--res", str(args.res), "--out", str(out), "--workers", str(args.workers)])
    if code == 0 and args.plot:
        runpy.run_path(str(out.with_name(out.stem + "_plot.py")))
    raise SystemExit(code)


if __name__ == "__main__":
    run()

"""Command-line front end.

    tsteer analyze --in state.json --out report.json
    tsteer sweep --res N --out sweep.csv
    tsteer scatter --samples N --seed S --out scatter.csv
    tsteer bounds --out bounds.csv
    tsteer verify --seed S

Exit codes: 0 success, 1 output not writable, 2 parse error, 3 non-T state,
4 quadrature convergence failure, 5 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from . import experiments, verification
from .errors import ConvergenceError, NotTStateError
from .stateio import StateFileError, load_geometry, load_state, report_to_json
from .steering import DEFAULT_TARGET_REL_ERR, steering_verdict

log = logging.getLogger("tsteer")

EXIT_OK = 0
EXIT_IO = 1
EXIT_PARSE = 2
EXIT_NOT_T = 3
EXIT_CONVERGENCE = 4
EXIT_VERIFY = 5

COMMANDS = ("analyze", "sweep", "scatter", "bounds", "verify")


@dataclass
class RunConfig:
    command: str
    input_path: str | None = None
    output_path: str = "-"
    seed: int = 0
    samples: int = 50_000
    grid_resolution: int = 41
    target_rel_err: float | None = None
    workers: int = 1
    geometry_paths: tuple = ()
    fault: str | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.grid_resolution < 2:
            raise ValueError("grid resolution must be >= 2")
        if self.target_rel_err is not None and not 0 < self.target_rel_err <= 1e-2:
            raise ValueError("target_rel_err must lie in (0, 1e-2]")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


class CommandError(Exception):
    def __init__(self, code, kind, reason):
        super().__init__(reason)
        self.code, self.kind, self.reason = code, kind, reason


def fmt(x) -> str:
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, float):
        return format(x, ".12g")
    return str(x)


def write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(x) for x in row])


def _out_path(cfg: RunConfig, default: str) -> Path:
    return Path(default if cfg.output_path in (None, "-") else cfg.output_path)


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.output_path in (None, "-"):
        sys.stdout.write(text + "\n")
    else:
        Path(cfg.output_path).write_text(text + "\n")


SWEEP_PLOT = '''"""Phase diagram of phase-damped Werner states (generated by tsteer sweep)."""
import csv
import numpy as np
import matplotlib.pyplot as plt

COLORS = {{"separable": "#f6c89f", "entangled-unsteerable": "#bbbbbb", "steerable": "#c9b3e6"}}
rows = list(csv.DictReader(open({csv!r})))
for phase, color in COLORS.items():
    pts = [(float(r["eta"]), float(r["alpha"])) for r in rows if r["phase"] == phase]
    if pts:
        x, y = zip(*pts)
        plt.scatter(x, y, s=12, c=color, label=phase)
eta = np.linspace(1e-6, 1 - 1e-6, 400)
s = np.sqrt(eta)
plt.plot(eta, 1 / (1 + (1 - eta) / s * np.log((1 + s) / np.sqrt(1 - eta))), "b-", label="steering boundary")
plt.plot(eta, 1 / (1 + 2 * np.sqrt(1 - eta)), "-", color="brown", label="entanglement boundary")
plt.xlabel("eta")
plt.ylabel("alpha")
plt.legend(loc="lower right")
plt.savefig({png!r}, dpi=150)
'''

SCATTER_PLOT = '''"""Maximum violation against concurrence (generated by tsteer scatter)."""
import csv
import numpy as np
import matplotlib.pyplot as plt

rows = list(csv.DictReader(open({csv!r})))
e = np.array([float(r["concurrence"]) for r in rows])
f = np.array([float(r["f_value"]) for r in rows])
plt.scatter(e, f, s=1, c="gray")
x = np.linspace(1e-6, 1 - 1e-9, 400)
upper = 0.5 * (1 + x**2 / np.sqrt(1 - x**2) * np.log((1 + np.sqrt(1 - x**2)) / x))
plt.plot(x, upper, "b-", label="rank-2 T states")
plt.plot(x, (1 + 2 * x) / 3, "-", color="brown", label="Werner states")
plt.axhline(0.5, ls=":", c="k")
plt.xlabel("concurrence E")
plt.ylabel("maximum violation F")
plt.legend(loc="lower right")
plt.savefig({png!r}, dpi=150)
'''


def _write_plot_script(template: str, csv_path: Path) -> Path:
    script = csv_path.with_name(csv_path.stem + "_plot.py")
    script.write_text(template.format(csv=str(csv_path), png=str(csv_path.with_suffix(".png"))))
    return script


def cmd_analyze(cfg: RunConfig) -> int:
    if not cfg.input_path:
        raise CommandError(EXIT_PARSE, "parse", "analyze needs --in")
    try:
        rho = load_state(cfg.input_path)
    except StateFileError as exc:
        raise CommandError(EXIT_PARSE, "parse", str(exc)) from exc
    try:
        report = steering_verdict(rho, cfg.target_rel_err or DEFAULT_TARGET_REL_ERR)
    except NotTStateError as exc:
        raise CommandError(EXIT_NOT_T, "non-t-state", str(exc)) from exc
    except ConvergenceError as exc:
        raise CommandError(EXIT_CONVERGENCE, "convergence", str(exc)) from exc
    _emit(report_to_json(report), cfg)
    return EXIT_OK


def cmd_sweep(cfg: RunConfig) -> int:
    out = _out_path(cfg, "sweep.csv")
    records = experiments.sweep(cfg.grid_resolution, cfg.workers)
    bad = [r for r in records if not r.consistent()]
    if bad:
        raise CommandError(EXIT_VERIFY, "inconsistent-phase", f"{len(bad)} sweep records are inconsistent")
    write_csv(out, experiments.record_fields(experiments.SweepRecord),
              [tuple(asdict(r).values()) for r in records])
    script = _write_plot_script(SWEEP_PLOT, out)
    log.info("wrote %d records to %s and plot script %s", len(records), out, script)
    return EXIT_OK


def cmd_scatter(cfg: RunConfig) -> int:
    out = _out_path(cfg, "scatter.csv")
    target = cfg.target_rel_err or experiments.SCATTER_TARGET_REL_ERR
    points = experiments.scatter(cfg.samples, cfg.seed, cfg.workers, target)
    write_csv(out, experiments.record_fields(experiments.ScatterPoint),
              [tuple(asdict(p).values()) for p in points])
    summary = experiments.summarize_scatter(points, cfg.seed)
    out.with_name(out.stem + "_summary.json").write_text(json.dumps(asdict(summary), indent=2) + "\n")
    _write_plot_script(SCATTER_PLOT, out)
    print(json.dumps(asdict(summary)))
    return EXIT_OK if summary.ok() else EXIT_VERIFY


def cmd_bounds(cfg: RunConfig) -> int:
    try:
        extra = [load_geometry(p) for p in cfg.geometry_paths]
    except (OSError, ValueError) as exc:
        raise CommandError(EXIT_PARSE, "parse", f"bad geometry file: {exc}") from exc
    rows = experiments.bounds_table(extra)
    if cfg.output_path in (None, "-"):
        for name, n, c in rows:
            print(f"{name:20s} {fmt(n):>4s} {fmt(c)}")
    else:
        write_csv(Path(cfg.output_path), ["geometry", "n_axes", "bound"], rows)
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    results = verification.run_all(cfg.seed, fault=cfg.fault)
    for r in results:
        print(r.line())
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


HANDLERS = {
    "analyze": cmd_analyze,
    "sweep": cmd_sweep,
    "scatter": cmd_scatter,
    "bounds": cmd_bounds,
    "verify": cmd_verify,
}

# flag dest -> RunConfig field
FLAG_FIELDS = {
    "input": "input_path",
    "out": "output_path",
    "seed": "seed",
    "samples": "samples",
    "res": "grid_resolution",
    "target_rel_err": "target_rel_err",
    "workers": "workers",
    "geometry": "geometry_paths",
    "inject_fault": "fault",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tsteer", description="Steering criterion for two-qubit T states.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON file with RunConfig fields or flag names; flags win")
        p.add_argument("--target-rel-err", type=float, default=None)
        p.add_argument("--workers", type=int, default=None)
        return p

    p = common(sub.add_parser("analyze", help="steering report for one state"))
    p.add_argument("--in", dest="input", default=None)
    p.add_argument("--out", default=None)

    p = common(sub.add_parser("sweep", help="phase diagram of phase-damped Werner states"))
    p.add_argument("--res", type=int, default=None)
    p.add_argument("--out", default=None)

    p = common(sub.add_parser("scatter", help="concurrence vs maximum violation for random T states"))
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None)

    p = common(sub.add_parser("bounds", help="finite-N steering bounds"))
    p.add_argument("--geometry", action="append", default=None, help="extra geometry JSON file")
    p.add_argument("--out", default=None)

    p = common(sub.add_parser("verify", help="run the property suites"))
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--inject-fault", choices=["scaling"], default=None, help=argparse.SUPPRESS)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    values = {}
    if getattr(args, "config", None):
        doc = json.loads(Path(args.config).read_text())
        for key, val in doc.items():
            values[FLAG_FIELDS.get(key.replace("-", "_"), key)] = val
    for dest, field in FLAG_FIELDS.items():
        val = getattr(args, dest, None)
        if val is not None:
            values[field] = val
    if "geometry_paths" in values:
        values["geometry_paths"] = tuple(values["geometry_paths"])
    values.pop("command", None)
    return RunConfig(command=args.command, **values)


def _fail(kind: str, reason: str) -> None:
    sys.stderr.write(json.dumps({"error": kind, "reason": reason}) + "\n")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(args)
    except (OSError, ValueError, TypeError) as exc:
        _fail("parse", f"bad configuration: {exc}")
        return EXIT_PARSE
    try:
        return HANDLERS[cfg.command](cfg)
    except CommandError as exc:
        _fail(exc.kind, exc.reason)
        return exc.code
    except OSError as exc:
        _fail("io", str(exc))
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

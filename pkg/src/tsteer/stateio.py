"""JSON formats: state files, steering reports and measurement geometries.

A state file holds exactly one of::

    {"density": [[re, im], ...]}            16 entries, row-major
    {"correlation": [[...], [...], [...]]}  T state with that correlation matrix
    {"family": {"name": "werner", "params": {"alpha": 0.7}}}
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import InvalidStateError
from .families import FAMILIES, family_state, t_state_from_correlation
from .quantum_state import as_density
from .steering import MeasurementGeometry, SteeringReport


class StateFileError(ValueError):
    """The state description could not be parsed."""


def parse_state(doc: dict) -> np.ndarray:
    if not isinstance(doc, dict):
        raise StateFileError("state document must be a JSON object")
    keys = {"density", "correlation", "family"} & doc.keys()
    if len(keys) != 1:
        raise StateFileError("state document needs exactly one of 'density', 'correlation', 'family'")
    key = keys.pop()
    try:
        if key == "density":
            entries = np.asarray(doc["density"], dtype=float)
            if entries.shape != (16, 2):
                raise StateFileError(f"'density' needs 16 [re, im] pairs, got shape {entries.shape}")
            return as_density((entries[:, 0] + 1j * entries[:, 1]).reshape(4, 4))
        if key == "correlation":
            t = np.asarray(doc["correlation"], dtype=float)
            if t.shape != (3, 3):
                raise StateFileError(f"'correlation' must be 3x3, got shape {t.shape}")
            return t_state_from_correlation(t)
        fam = doc["family"]
        if fam.get("name") not in FAMILIES:
            raise StateFileError(f"unknown family {fam.get('name')!r}; expected one of {FAMILIES}")
        return family_state(fam["name"], fam.get("params", {}))
    except StateFileError:
        raise
    except InvalidStateError as exc:
        raise StateFileError(str(exc)) from exc
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise StateFileError(f"bad {key!r} entry: {exc}") from exc


def load_state(path) -> np.ndarray:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise StateFileError(f"cannot read state file {path}: {exc}") from exc
    return parse_state(doc)


def density_to_json(rho) -> dict:
    rho = np.asarray(rho, dtype=complex).reshape(-1)
    return {"density": [[float(z.real), float(z.imag)] for z in rho]}


def report_to_json(report: SteeringReport) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=True)


def report_from_json(text: str) -> SteeringReport:
    return SteeringReport(**json.loads(text))


def load_geometry(path, name: str | None = None) -> MeasurementGeometry:
    """Read a JSON list of 3-vectors; vectors are normalized on load."""
    path = Path(path)
    return MeasurementGeometry.from_vectors(name or path.stem, json.loads(path.read_text()))


def save_geometry(geom: MeasurementGeometry, path) -> None:
    Path(path).write_text(json.dumps(geom.axes.tolist()))

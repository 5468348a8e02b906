"""Run configuration and on-disk formats.

Files written by a run:

``history.csv``
    header ``iteration,cost,grad_norm,update_norm``, one row per Adam step.
``params.json``
    ``{"format", "layers", "theta", "phi", "initial_cost", "final_cost",
    "digest", "config"}``; angles as nested lists ``[input][layer][qubit][angle]``.
``report.json``
    the verification report (see :meth:`VerificationReport.to_dict`).

Floats are written with ``repr`` so every value parses back bit-exactly.
"""

from __future__ import annotations

import csv
import json
import os
import tempfile
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import numpy as np

from .ansatz import ParamSet, ShapeError

PARAMS_FORMAT = "magicvqe-params-1"
HISTORY_HEADER = ("iteration", "cost", "grad_norm", "update_norm")

DEFAULT_TOLERANCES = {"converged_cost": -8.9, "min_win_rate": 0.98}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    layers: int = 3
    learning_rate: float = 0.1
    iterations: int = 200
    shots_per_input: int = 10_000
    out_dir: str = "runs"
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))

    def __post_init__(self):
        for name in ("seed", "layers", "iterations", "shots_per_input"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise ConfigError(f"{name} must be an integer, got {value!r}")
        if self.seed < 0 or self.layers < 0 or self.iterations < 0:
            raise ConfigError("seed, layers and iterations must be non-negative")
        if self.shots_per_input < 1:
            raise ConfigError("shots_per_input must be positive")
        if isinstance(self.learning_rate, bool) or not isinstance(self.learning_rate, (int, float)):
            raise ConfigError(f"learning_rate must be a number, got {self.learning_rate!r}")
        if not self.learning_rate > 0:
            raise ConfigError("learning_rate must be positive")
        if not isinstance(self.out_dir, str):
            raise ConfigError("out_dir must be a string")
        tol = dict(DEFAULT_TOLERANCES)
        if not isinstance(self.tolerances, dict):
            raise ConfigError("tolerances must be a mapping")
        unknown = set(self.tolerances) - set(DEFAULT_TOLERANCES)
        if unknown:
            raise ConfigError(f"unknown tolerance keys: {sorted(unknown)}")
        tol.update({k: float(v) for k, v in self.tolerances.items()})
        object.__setattr__(self, "tolerances", tol)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    def to_dict(self) -> dict:
        return asdict(self)


def load_config(path: str | os.PathLike | None) -> RunConfig:
    if path is None:
        return RunConfig()
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return RunConfig.from_dict(data)


def atomic_write(path: Path, text: str) -> None:
    """Write ``text`` to ``path`` via a temporary file and rename."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dump_json(data) -> str:
    return json.dumps(data, indent=2, allow_nan=False) + "\n"


def history_csv(trace) -> str:
    lines = [",".join(HISTORY_HEADER)]
    for k, (c, g, u) in enumerate(zip(trace.costs, trace.grad_norms, trace.update_norms)):
        lines.append(f"{k},{c!r},{g!r},{u!r}")
    return "\n".join(lines) + "\n"


def read_history(path) -> list[dict]:
    """Parse ``history.csv`` back into a list of rows."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != HISTORY_HEADER:
            raise ConfigError(f"unexpected history header {header}")
        rows = []
        for row in reader:
            if len(row) != len(HISTORY_HEADER):
                raise ConfigError(f"bad history row {row}")
            rows.append({"iteration": int(row[0]), **{k: float(v) for k, v in zip(HISTORY_HEADER[1:], row[1:])}})
    return rows


def params_document(params: ParamSet, config: RunConfig, initial_cost: float, final_cost: float) -> dict:
    return {
        "format": PARAMS_FORMAT,
        "layers": params.shape.layers,
        "theta": params.theta.tolist(),
        "phi": params.phi.tolist(),
        "initial_cost": initial_cost,
        "final_cost": final_cost,
        "digest": params.digest(),
        "config": config.to_dict(),
    }


def load_params(path) -> tuple[ParamSet, RunConfig, dict]:
    """Read a parameters file; raises ConfigError on any malformed content."""
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ConfigError(f"cannot read parameters {path}: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("format") != PARAMS_FORMAT:
        raise ConfigError(f"{path} is not a {PARAMS_FORMAT} document")
    try:
        config = RunConfig.from_dict(doc.get("config", {}))
        theta, phi = (np.asarray(doc[k], dtype=float) for k in ("theta", "phi"))
        if theta.size == 0 and phi.size == 0:
            # zero-layer tensors lose their trailing axes in JSON
            theta = phi = np.zeros((3, 0, 3, 3))
        params = ParamSet(theta, phi)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed parameters in {path}: {exc}") from exc
    if params.shape.layers != doc.get("layers") or params.shape.layers != config.layers:
        raise ShapeError(
            f"parameter tensor has {params.shape.layers} layers, file declares "
            f"{doc.get('layers')} and config {config.layers}"
        )
    return params, config, doc

"""Parameter sweeps over one rate with a selectable engine, plus CSV/JSON output.

Points are independent; they are evaluated by a process pool (size from
``CQED_SIM_THREADS`` or the CPU count) and reassembled in grid order.
"""
from __future__ import annotations

import csv
import dataclasses
import io
import json
import os
import platform
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np
import scipy

from . import __version__
from .analytics import classify_regime, pumped_rates, steady_populations_badcavity
from .errors import CQEDError, SweepSpecError
from .hilbert import SystemParams
from .lindblad import STEADY_STATE_TOL, build_liouvillian, residual, steady_state
from .observables import steady_observables
from .ratelaser import laser_steady_state

AXES = ("pump", "gamma_star", "delta", "gamma", "kappa")
OUTPUTS = ("n_a", "n_x", "sigma_z", "g2_0", "N_rate", "R_eff", "regime")
ENGINES = ("full_me", "bad_cavity_analytic", "rate_equations")
REFINE_STEP = 5
REFINE_TOL = 1e-3
REFINED = ("n_a", "n_x", "sigma_z", "g2_0")


@dataclass(frozen=True)
class Grid:
    min: float
    max: float
    points: int
    scale: str = "linear"

    def values(self) -> np.ndarray:
        if self.scale == "log":
            return np.geomspace(self.min, self.max, self.points)
        return np.linspace(self.min, self.max, self.points)


@dataclass(frozen=True)
class SweepSpec:
    base: SystemParams
    axis: str
    grid: Grid
    outputs: tuple = OUTPUTS
    engine: str = "full_me"
    n_max_check: bool = False

    def __post_init__(self):
        object.__setattr__(self, "outputs", tuple(self.outputs))
        if self.axis not in AXES:
            raise SweepSpecError(f"axis must be one of {AXES}, got {self.axis!r}")
        if self.engine not in ENGINES:
            raise SweepSpecError(f"engine must be one of {ENGINES}, got {self.engine!r}")
        unknown = set(self.outputs) - set(OUTPUTS)
        if unknown or not self.outputs:
            raise SweepSpecError(f"unknown or empty outputs: {sorted(unknown)}")
        g = self.grid
        if g.scale not in ("linear", "log"):
            raise SweepSpecError(f"grid scale must be linear or log, got {g.scale!r}")
        if not g.min < g.max:
            raise SweepSpecError("grid min must be < max")
        if int(g.points) != g.points or g.points < 2:
            raise SweepSpecError("grid needs at least 2 points")
        if g.scale == "log" and g.min <= 0:
            raise SweepSpecError("log grid requires min > 0")
        # every grid point must give valid params
        for v in (g.min, g.max):
            try:
                self.base.replace(**{self.axis: float(v)})
            except CQEDError as exc:
                raise SweepSpecError(f"grid value {v} invalid for axis {self.axis}: {exc}") from exc

    def columns(self) -> list[str]:
        cols = [self.axis, *self.outputs, "residual", "n_max"]
        if self.n_max_check:
            cols.append("refine_delta")
        return cols + ["flagged", "error"]

    def to_dict(self) -> dict:
        return {
            "base": self.base.to_dict(),
            "axis": self.axis,
            "grid": dataclasses.asdict(self.grid),
            "outputs": list(self.outputs),
            "engine": self.engine,
            "n_max_check": self.n_max_check,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SweepSpec":
        try:
            return cls(
                base=SystemParams(**d.get("base", {})),
                axis=d["axis"],
                grid=Grid(**d["grid"]),
                outputs=tuple(d.get("outputs", OUTPUTS)),
                engine=d.get("engine", "full_me"),
                n_max_check=bool(d.get("n_max_check", False)),
            )
        except (KeyError, TypeError, CQEDError) as exc:
            if isinstance(exc, SweepSpecError):
                raise
            raise SweepSpecError(f"invalid sweep spec: {exc}") from exc


@dataclass
class SweepResult:
    spec: SweepSpec
    records: list[dict]
    provenance: dict = field(default_factory=dict)

    def column(self, name: str) -> list:
        return [r.get(name) for r in self.records]

    def to_dict(self) -> dict:
        return {"spec": self.spec.to_dict(), "records": self.records, "provenance": self.provenance}

    @classmethod
    def from_dict(cls, d: dict) -> "SweepResult":
        return cls(spec=SweepSpec.from_dict(d["spec"]), records=d["records"], provenance=d["provenance"])


def _full_me_point(params: SystemParams):
    L = build_liouvillian(params)
    rho = steady_state(L)
    obs = steady_observables(rho, params)
    return obs, residual(L, rho)


def _relative_change(a, b):
    if a is None or b is None:
        # defined at one truncation only: report as a full (100%) change
        return 0.0 if a is b else 1.0
    return abs(a - b) / max(abs(a), 1e-6)


def evaluate_point(spec: SweepSpec, value: float) -> dict:
    """One sweep row; solver errors are stored in the ``error`` cell."""
    params = spec.base.replace(**{spec.axis: float(value)})
    row = {c: None for c in spec.columns()}
    row[spec.axis] = float(value)
    row["n_max"] = params.n_max
    row["flagged"] = False
    try:
        R_eff = pumped_rates(params).R_tilde
        regime = classify_regime(params)
        if spec.engine == "full_me":
            obs, res = _full_me_point(params)
            vals = dict(n_a=obs.n_a, n_x=obs.n_x, sigma_z=obs.sigma_z, g2_0=obs.g2_0, N_rate=obs.N_rate)
            row["residual"] = res
            row["flagged"] = bool(res >= STEADY_STATE_TOL)
            if spec.n_max_check:
                fine, _ = _full_me_point(params.replace(n_max=params.n_max + REFINE_STEP))
                delta = max(_relative_change(vals[k], getattr(fine, k)) for k in REFINED)
                row["refine_delta"] = float(delta)
                row["flagged"] = row["flagged"] or bool(delta >= REFINE_TOL)
        elif spec.engine == "bad_cavity_analytic":
            bc = steady_populations_badcavity(params)
            vals = dict(n_a=bc.n_a, n_x=bc.n_x, sigma_z=2 * bc.n_x - 1, g2_0=None, N_rate=bc.N_rate)
        else:
            ls = laser_steady_state(R_eff, params.gamma, params.kappa, params.pump)
            vals = dict(
                n_a=ls.n_a,
                n_x=0.5 * (1 + ls.inversion),
                sigma_z=ls.inversion,
                g2_0=None,
                N_rate=params.kappa * ls.n_a,
            )
            row["residual"] = ls.residual
        vals["R_eff"] = R_eff
        vals["regime"] = regime.to_dict()
        for k in spec.outputs:
            row[k] = vals[k]
    except CQEDError as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
        row["flagged"] = True
    return row


def _evaluate_packed(args):
    return evaluate_point(*args)


def resolve_workers(workers: int | None = None) -> int:
    env = os.environ.get("CQED_SIM_THREADS")
    if env:
        workers = int(env)
    if workers is None:
        workers = os.cpu_count() or 1
    return max(1, int(workers))


def run_sweep(spec: SweepSpec, workers: int | None = None) -> SweepResult:
    values = spec.grid.values()
    workers = min(resolve_workers(workers), len(values))
    started = datetime.now(timezone.utc).isoformat()
    tasks = [(spec, float(v)) for v in values]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_evaluate_packed, tasks))
    else:
        records = [_evaluate_packed(t) for t in tasks]
    residuals = [r["residual"] for r in records if r["residual"] is not None]
    provenance = {
        "code_version": __version__,
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "python": platform.python_version(),
        "started": started,
        "finished": datetime.now(timezone.utc).isoformat(),
        "n_max": spec.base.n_max,
        "max_residual": max(residuals) if residuals else None,
        "workers": workers,
    }
    return SweepResult(spec=spec, records=records, provenance=provenance)


def _csv_cell(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, dict):
        return ";".join(k for k, v in value.items() if v is True)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.9g}"
    return str(value)


def to_csv(result: SweepResult) -> str:
    cols = result.spec.columns()
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    for rec in result.records:
        writer.writerow([_csv_cell(rec.get(c)) for c in cols])
    return buf.getvalue()


def to_json(result: SweepResult) -> str:
    return json.dumps(result.to_dict(), indent=2, sort_keys=True, allow_nan=False) + "\n"


def emit(result: SweepResult, format: str, path) -> Path:
    """Write ``result`` as ``csv`` or ``json`` and return the path."""
    if format == "csv":
        text = to_csv(result)
    elif format == "json":
        text = to_json(result)
    else:
        raise SweepSpecError(f"format must be csv or json, got {format!r}")
    path = Path(path)
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path


def load_result(path) -> SweepResult:
    with open(path, encoding="utf-8") as fh:
        return SweepResult.from_dict(json.load(fh))

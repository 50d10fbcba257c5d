"""Canned parameter sets that regenerate the data behind each figure panel.

Pump axes span ``[0.01 g, 200 g]`` on a log grid, which brackets the lasing
threshold near ``P_x ~ kappa`` and the quench near ``P_x ~ 20 g``.
"""
from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .analytics import effective_coupling, pumped_rates
from .errors import PoleDomain, SweepSpecError
from .hilbert import SystemParams, projector
from .lindblad import build_liouvillian, evolve
from .ratelaser import na_of_inversion
from .sweep import Grid, SweepSpec, _csv_cell, emit, run_sweep

FIGURES = ("fig2", "fig3", "fig4", "fig5")

PURCELL_BASE = SystemParams(g=1.0, kappa=5.0, gamma=0.01, n_max=5)
LASER_BASE = SystemParams(g=1.0, kappa=0.2, gamma=0.01, n_max=30)
PUMP_GRID = Grid(min=0.01, max=200.0, points=60, scale="log")


def pump_sweep_spec(gamma_star: float, delta: float, n_max: int = 30, grid: Grid = PUMP_GRID) -> SweepSpec:
    base = LASER_BASE.replace(gamma_star=gamma_star, delta=delta, n_max=n_max)
    return SweepSpec(base=base, axis="pump", grid=grid, engine="full_me")


def write_table(path, columns, rows) -> Path:
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_csv_cell(v) for v in row])
    return path


def relaxation_traces(delta: float, t_max: float, gamma_stars=(0.0, 20.0), points: int = 201, n_max: int = 5):
    """Excited-state population after preparing ``|e,0>``, one trace per dephasing rate."""
    t = np.linspace(0.0, t_max, points)
    traces = {}
    for gs in gamma_stars:
        params = PURCELL_BASE.replace(delta=delta, gamma_star=gs, n_max=n_max)
        traj = evolve(build_liouvillian(params), projector(1, 0, n_max), t)
        traces[gs] = traj.n_x
    return t, traces


def _fig2(outdir: Path) -> list[Path]:
    paths = []
    gamma = PURCELL_BASE.gamma
    for panel, delta, t_max in (("a", 0.0, 10.0), ("b", 10.0, 60.0)):
        t, traces = relaxation_traces(delta, t_max)
        rows = zip(t, np.exp(-gamma * t), traces[0.0], traces[20.0])
        paths.append(write_table(outdir / f"fig2{panel}.csv", ["t", "n_x_uncoupled", "n_x_gs0", "n_x_gs20"], rows))
    gs = np.linspace(0.0, 100.0, 1001)
    for panel, delta in (("c", 0.0), ("d", 10.0)):
        R = effective_coupling(1.0, PURCELL_BASE.kappa, gamma, gs, delta)
        paths.append(write_table(outdir / f"fig2{panel}.csv", ["gamma_star", "R"], zip(gs, R)))
    return paths


def inversion_curve(R: float, kappa: float, points: int = 201):
    """``(I, n_a)`` pairs on ``I in [-1, 1]``; ``n_a`` is ``None`` past the pole."""
    half = (points - 1) // 2
    out = []
    for k in range(-half, half + 1):
        I = k / half
        try:
            out.append((I, na_of_inversion(I, R, kappa)))
        except PoleDomain:
            out.append((I, None))
    return out


def _fig3(outdir: Path) -> list[Path]:
    return [
        write_table(outdir / f"fig3{panel}.csv", ["inversion", "n_a"], inversion_curve(R, 0.2))
        for panel, R in (("a", 1.0), ("b", 0.1))
    ]


def _coupling_vs_dephasing(path: Path, base: SystemParams, gs_max: float) -> Path:
    gs = np.linspace(0.0, gs_max, 1001)
    R = effective_coupling(base.g, base.kappa, base.gamma, gs, base.delta)
    return write_table(path, ["gamma_star", "R", "kappa"], ((x, r, base.kappa) for x, r in zip(gs, R)))


def _pump_panels(outdir: Path, name: str, delta: float, gamma_stars, workers=None) -> list[Path]:
    paths = []
    for gs in gamma_stars:
        result = run_sweep(pump_sweep_spec(gs, delta), workers=workers)
        label = f"{gs:g}".replace(".", "p")
        paths.append(emit(result, "csv", outdir / f"{name}_gamma_star_{label}.csv"))
    paths.append(_coupling_vs_dephasing(outdir / f"{name}d.csv", LASER_BASE.replace(delta=delta), 100.0))
    return paths


def _fig4(outdir: Path, workers=None) -> list[Path]:
    paths = _pump_panels(outdir, "fig4", 0.0, (0.0, 40.0), workers)
    pumps = PUMP_GRID.values()
    rows = [(p, pumped_rates(LASER_BASE.replace(pump=float(p))).R_tilde, LASER_BASE.kappa) for p in pumps]
    paths.append(write_table(outdir / "fig4_inset.csv", ["pump", "R_tilde", "kappa"], rows))
    return paths


def _fig5(outdir: Path, workers=None) -> list[Path]:
    return _pump_panels(outdir, "fig5", 2.0, (0.0, 2.0), workers)


def reproduce_figure(fig_id: str, outdir, workers=None) -> list[Path]:
    """Write one CSV per panel of ``fig_id`` into ``outdir``."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    if fig_id == "fig2":
        return _fig2(outdir)
    if fig_id == "fig3":
        return _fig3(outdir)
    if fig_id == "fig4":
        return _fig4(outdir, workers)
    if fig_id == "fig5":
        return _fig5(outdir, workers)
    raise SweepSpecError(f"unknown figure {fig_id!r}; choose from {FIGURES}")

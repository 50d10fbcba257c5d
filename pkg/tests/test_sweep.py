import csv
import json

import numpy as np
import pytest

from cqed_sim.analytics import steady_populations_badcavity
from cqed_sim.cli import main
from cqed_sim.errors import SweepSpecError
from cqed_sim.figures import inversion_curve, reproduce_figure
from cqed_sim.hilbert import SystemParams
from cqed_sim.sweep import Grid, SweepSpec, emit, load_result, resolve_workers, run_sweep, to_csv, to_json

BAD_CAVITY = SystemParams(kappa=5.0, gamma=0.01, n_max=3)


def small_spec(**kw):
    d = dict(base=SystemParams(kappa=0.2, gamma=0.01, n_max=6), axis="pump",
             grid=Grid(0.01, 1.0, 3, "log"), engine="full_me")
    d.update(kw)
    return SweepSpec(**d)


@pytest.mark.parametrize(
    "kw",
    [
        dict(axis="omega"),
        dict(engine="magic"),
        dict(outputs=("n_a", "bogus")),
        dict(grid=Grid(1.0, 1.0, 3)),
        dict(grid=Grid(0.0, 1.0, 3, "log")),
        dict(grid=Grid(0.1, 1.0, 1)),
        dict(grid=Grid(-1.0, 1.0, 3)),  # negative pump
    ],
)
def test_spec_validation(kw):
    with pytest.raises(SweepSpecError):
        small_spec(**kw)


def test_csv_row_count_and_header(tmp_path):
    result = run_sweep(small_spec(), workers=1)
    path = emit(result, "csv", tmp_path / "out.csv")
    lines = path.read_text().splitlines()
    assert len(lines) == 4
    assert lines[0].split(",") == result.spec.columns()
    rows = list(csv.DictReader(lines))
    assert float(rows[1]["n_a"]) == pytest.approx(result.records[1]["n_a"], rel=1e-8)
    for rec in result.records:
        assert rec["residual"] < 1e-9 and not rec["flagged"]


def test_undefined_g2_encoding(tmp_path):
    spec = SweepSpec(base=BAD_CAVITY, axis="pump", grid=Grid(0.001, 0.1, 3, "log"), engine="bad_cavity_analytic")
    result = run_sweep(spec, workers=1)
    rows = list(csv.DictReader(to_csv(result).splitlines()))
    assert all(r["g2_0"] == "" for r in rows)
    data = json.loads(to_json(result))
    assert all(r["g2_0"] is None for r in data["records"])


def test_bad_cavity_engine_matches_analytics():
    spec = SweepSpec(base=BAD_CAVITY, axis="pump", grid=Grid(0.001, 10.0, 7, "log"), engine="bad_cavity_analytic")
    result = run_sweep(spec, workers=1)
    for rec in result.records:
        bc = steady_populations_badcavity(BAD_CAVITY.replace(pump=rec["pump"]))
        assert (rec["n_x"], rec["n_a"], rec["N_rate"]) == (bc.n_x, bc.n_a, bc.N_rate)


def test_json_round_trip_byte_identical(tmp_path):
    result = run_sweep(small_spec(n_max_check=True), workers=1)
    first = emit(result, "json", tmp_path / "a.json")
    second = emit(load_result(first), "json", tmp_path / "b.json")
    assert first.read_bytes() == second.read_bytes()


def test_csv_deterministic_across_runs(tmp_path):
    a = emit(run_sweep(small_spec(), workers=1), "csv", tmp_path / "a.csv")
    b = emit(run_sweep(small_spec(), workers=1), "csv", tmp_path / "b.csv")
    assert a.read_bytes() == b.read_bytes()


def test_parallel_matches_serial():
    spec = small_spec(grid=Grid(0.01, 10.0, 6, "log"))
    assert run_sweep(spec, workers=2).records == run_sweep(spec, workers=1).records


def test_workers_env_override(monkeypatch):
    monkeypatch.setenv("CQED_SIM_THREADS", "3")
    assert resolve_workers(None) == 3
    assert resolve_workers(8) == 3
    monkeypatch.delenv("CQED_SIM_THREADS")
    assert resolve_workers(2) == 2


def test_refinement_column():
    result = run_sweep(small_spec(base=SystemParams(kappa=0.2, gamma=0.01, n_max=20), n_max_check=True), workers=1)
    assert all(r["refine_delta"] < 1e-3 for r in result.records)


def test_per_point_errors_are_recorded():
    spec = SweepSpec(base=SystemParams(gamma=0.01, pump=0.5), axis="kappa", grid=Grid(0.0, 1.0, 3),
                     engine="rate_equations")
    rows = run_sweep(spec, workers=1).records
    assert rows[0]["error"].startswith("NoPhysicalRoot") and rows[0]["flagged"]
    assert rows[1]["error"] is None and rows[1]["residual"] < 1e-10


def test_gamma_star_axis_peak():
    base = SystemParams(kappa=0.2, gamma=0.01, delta=2.0, pump=0.5, n_max=3)
    spec = SweepSpec(base=base, axis="gamma_star", grid=Grid(0.0, 10.0, 1001), outputs=("R_eff",),
                     engine="bad_cavity_analytic")
    res = run_sweep(spec, workers=1)
    R = np.array(res.column("R_eff"))
    gs = np.array(res.column("gamma_star"))
    # with pump the width is P + kappa + gamma + gamma_star
    assert gs[R.argmax()] == pytest.approx(2 * 2.0 - 0.2 - 0.01 - 0.5, abs=0.01)
    base0 = base.replace(pump=0.0)
    res0 = run_sweep(SweepSpec(base=base0, axis="gamma_star", grid=Grid(0.0, 10.0, 1001), outputs=("R_eff",),
                               engine="bad_cavity_analytic"), workers=1)
    assert gs[np.argmax(res0.column("R_eff"))] == pytest.approx(4 - 0.21, abs=0.01)


def test_figure3_values(tmp_path):
    rows = dict(inversion_curve(1.0, 0.2))
    assert rows[0.0] == pytest.approx(2.5)
    assert rows[0.5] is None
    paths = reproduce_figure("fig3", tmp_path)
    table = list(csv.DictReader(paths[0].read_text().splitlines()))
    zero = next(r for r in table if float(r["inversion"]) == 0.0)
    assert float(zero["n_a"]) == pytest.approx(2.5)
    b = list(csv.DictReader(paths[1].read_text().splitlines()))
    assert float(b[-1]["n_a"]) == pytest.approx(1.0)


def test_figure2_orderings(tmp_path):
    a, b, c, d = reproduce_figure("fig2", tmp_path)
    ra = list(csv.DictReader(a.read_text().splitlines()))
    rb = list(csv.DictReader(b.read_text().splitlines()))
    mid_a, mid_b = ra[len(ra) // 4], rb[len(rb) // 4]
    # resonant: dephasing slows emission; detuned: it speeds emission
    assert float(mid_a["n_x_gs20"]) > float(mid_a["n_x_gs0"])
    assert float(mid_b["n_x_gs20"]) < float(mid_b["n_x_gs0"])


def test_unknown_figure(tmp_path):
    with pytest.raises(SweepSpecError):
        reproduce_figure("fig9", tmp_path)


def test_cli_regime(capsys):
    assert main(["regime", "--kappa", "0.2", "--gamma", "0.01"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["good_cavity"] is True


def test_cli_analytic(capsys):
    assert main(["analytic", "--kappa", "5", "--gamma", "0.01", "--delta", "10", "--gammastar", "20"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["R"] == pytest.approx(0.09755, abs=1e-5)
    assert out["optimal_dephasing"]["gamma_star_opt"] == pytest.approx(14.99)


def test_cli_sweep_with_spec_file_and_overrides(tmp_path):
    spec_file = tmp_path / "spec.json"
    spec_file.write_text(json.dumps(small_spec().to_dict()))
    out = tmp_path / "out.csv"
    code = main(["sweep", "--spec", str(spec_file), "--points", "4", "--nmax", "5", "--out", str(out),
                 "--workers", "1"])
    assert code == 0
    rows = list(csv.DictReader(out.read_text().splitlines()))
    assert len(rows) == 4 and rows[0]["n_max"] == "5"


def test_cli_sweep_flags_only(capsys):
    code = main(["sweep", "--kappa", "5", "--gamma", "0.01", "--nmax", "3", "--axis", "pump", "--min", "0.001",
                 "--max", "0.1", "--points", "3", "--log", "--engine", "bad_cavity_analytic", "--format", "json",
                 "--workers", "1"])
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["records"]) == 3 and data["spec"]["grid"]["scale"] == "log"


def test_cli_errors_exit_nonzero(tmp_path, capsys):
    assert main(["sweep", "--axis", "pump", "--min", "1", "--max", "0", "--points", "3"]) != 0
    assert main(["sweep", "--spec", str(tmp_path / "missing.json")]) != 0
    assert "error" in capsys.readouterr().err

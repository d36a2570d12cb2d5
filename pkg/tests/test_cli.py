import csv
import io
import json
import math

import numpy as np
import pytest
from scipy import stats

from kmsec import cli

import oracles


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def parse_csv(text):
    meta, body = {}, []
    for line in text.splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].partition(":")
            meta[key.strip()] = json.loads(value)
        else:
            body.append(line)
    rows = list(csv.DictReader(io.StringIO("\n".join(body))))
    return meta, rows


def without_wall_time(rows):
    return [{k: v for k, v in r.items() if k != "wall_time_s"} for r in rows]


POINT = ("--kappa", "1", "--mu", "2", "--m", "1", "--A", "1", "--snr-db", "10")


# --- capacity ----------------------------------------------------------------

def test_capacity_golden(capsys):
    code, out, _ = run(capsys, "capacity", *POINT)
    assert code == cli.EXIT_OK
    meta, rows = parse_csv(out)
    assert meta["command"] == "capacity" and meta["tol"] == 1e-10 and meta["seed"] == 0
    assert meta["artifact"].startswith("kmsec ")
    assert tuple(rows[0]) == cli.ROW_COLUMNS
    row = rows[0]
    assert float(row["R"]) == pytest.approx(oracles.CAPACITY[(1.0, 2.0, 1.0, 1.0, 10.0)], rel=1e-6)
    assert row["method"] == "egbmgf" and row["route"] == "auto>egbmgf"
    assert float(row["avg_snr"]) == pytest.approx(10.0)


def test_capacity_routes_m_eq_mu(capsys):
    code, out, _ = run(capsys, "capacity", "--kappa", "1", "--mu", "2", "--m", "2", "--A", "1", "--snr", "10")
    assert code == 0
    assert parse_csv(out)[1][0]["method"] == "m_eq_mu"


def test_capacity_high_snr_domain_error(capsys):
    code, out, err = run(
        capsys, "capacity", "--kappa", "1", "--mu", "2", "--m", "1", "--A", "3", "--snr-db", "30", "--method", "high-snr"
    )
    assert code == cli.EXIT_DOMAIN
    assert out == ""
    assert "A < mu" in err


def test_capacity_convergence_failure(capsys):
    code, _, err = run(capsys, "capacity", *POINT, "--method", "quadrature", "--tol", "1e-17")
    assert code == cli.EXIT_CONVERGENCE
    assert "converge" in err


@pytest.mark.parametrize(
    "argv",
    [
        ("capacity", "--kappa", "1", "--mu", "2", "--A", "1", "--snr", "10"),
        ("capacity", "--kappa", "1", "--mu", "2", "--m", "1", "--snr", "10"),
        ("capacity", "--kappa", "-1", "--mu", "2", "--m", "1", "--A", "1", "--snr", "10"),
        ("capacity", *POINT, "--theta", "1", "--block-t", "1", "--bandwidth", "1"),
        ("capacity", *POINT, "--tol", "0"),
    ],
)
def test_capacity_bad_input_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == cli.EXIT_DOMAIN


def test_capacity_theta_triple(capsys):
    base = POINT[:6] + ("--snr-db", "10")
    _, out_a, _ = run(capsys, "capacity", *base, "--theta", "0.01", "--block-t", "1e-3", "--bandwidth", "1e5")
    _, out_b, _ = run(capsys, "capacity", *base, "--A", repr(1.0 / math.log(2.0)))
    ra, rb = parse_csv(out_a)[1][0], parse_csv(out_b)[1][0]
    assert float(ra["A"]) == pytest.approx(float(rb["A"]), rel=1e-15)
    assert float(ra["R"]) == pytest.approx(float(rb["R"]), rel=1e-12)


def test_capacity_paranoid_and_json(capsys):
    code, out, _ = run(capsys, "capacity", *POINT, "--paranoid", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["metadata"]["paranoid"] is True
    assert doc["columns"] == list(cli.ROW_COLUMNS)
    assert abs(doc["rows"][0]["paranoid_discrepancy"]) < 1e-9


# --- config file -----------------------------------------------------------

def test_config_file_and_override(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# channel\nkappa = 1\nmu = 2\nm = 1\nsnr-db = 10\nA = 1\nmethod = series\nparanoid = yes\n")
    _, out, _ = run(capsys, "capacity", "--config", str(cfg))
    meta, rows = parse_csv(out)
    assert rows[0]["method"] == "series" and meta["paranoid"] is True
    _, out, _ = run(capsys, "capacity", "--config", str(cfg), "--method", "quadrature", "--snr", "100")
    row = parse_csv(out)[1][0]
    assert row["method"] == "quadrature"
    assert float(row["avg_snr"]) == 100.0  # flag --snr shadows the file's snr-db


def test_config_errors(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("kappa = 1\nwavelength = 3\n")
    assert run(capsys, "capacity", "--config", str(cfg))[0] == cli.EXIT_DOMAIN
    assert run(capsys, "capacity", "--config", str(tmp_path / "missing.cfg"))[0] == cli.EXIT_IO


# --- sweep -------------------------------------------------------------------

def test_single_point_sweep_equals_capacity(capsys):
    _, cap, _ = run(capsys, "capacity", *POINT)
    sweep_args = POINT[:8] + ("--values", "10", "--method", "auto")
    code, swp, _ = run(capsys, "sweep", *sweep_args)
    assert code == 0
    assert without_wall_time(parse_csv(cap)[1]) == without_wall_time(parse_csv(swp)[1])


def test_sweep_rows_order_and_determinism(capsys):
    args = ("sweep", *POINT[:8], "--values", "0:20:10", "--method", "quadrature,series,monte-carlo", "--count", "2000")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    meta, rows = parse_csv(first)
    assert meta["rows"] == 9 and meta["failed_rows"] == 0
    assert [r["avg_snr_db"] for r in rows] == ["0.0"] * 3 + ["10.0"] * 3 + ["20.0"] * 3
    assert [r["method"] for r in rows[:3]] == ["quadrature", "series", "monte_carlo"]
    assert without_wall_time(rows) == without_wall_time(parse_csv(second)[1])


def test_sweep_parallel_matches_serial(capsys):
    args = ("sweep", *POINT[:8], "--values", "0,10,20,30", "--method", "egbmgf,quadrature")
    _, serial, _ = run(capsys, *args)
    _, parallel, _ = run(capsys, *args, "--jobs", "3")
    assert without_wall_time(parse_csv(serial)[1]) == without_wall_time(parse_csv(parallel)[1])


def test_sweep_partial_failure(capsys):
    code, out, err = run(
        capsys, "sweep", "--kappa", "1", "--mu", "2", "--m", "1", "--snr-db", "20",
        "--axis", "a_cap", "--values", "1,3", "--method", "high-snr,quadrature",
    )
    assert code == cli.EXIT_PARTIAL
    rows = parse_csv(out)[1]
    assert [bool(r["error"]) for r in rows] == [False, False, True, False]
    assert rows[2]["error"].startswith("domain:") and "A < mu" in rows[2]["error"]
    assert "1 of 4" in err


@pytest.mark.parametrize("axis,values", [("kappa", "0,1,5"), ("mu", "0.5,1.5"), ("m", "0.5,2")])
def test_sweep_other_axes(capsys, axis, values):
    code, out, _ = run(capsys, "sweep", *POINT, "--axis", axis, "--values", values, "--method", "quadrature")
    assert code == 0
    rows = parse_csv(out)[1]
    assert [float(r[axis]) for r in rows] == [float(v) for v in values.split(",")]


def test_sweep_rejects_unsorted_values(capsys):
    assert run(capsys, "sweep", *POINT[:8], "--values", "10,0")[0] == cli.EXIT_DOMAIN
    assert run(capsys, "sweep", *POINT[:8])[0] == cli.EXIT_DOMAIN


def test_sweep_writes_file(capsys, tmp_path):
    out = tmp_path / "t.json"
    code, stdout, _ = run(capsys, "sweep", *POINT[:8], "--values", "10", "--format", "json", "--out", str(out))
    assert code == 0 and stdout == ""
    doc = json.loads(out.read_text())
    assert doc["metadata"]["axis"] == "avg_snr_db" and len(doc["rows"]) == 1
    assert run(capsys, "sweep", *POINT[:8], "--values", "10", "--out", str(tmp_path / "no" / "x"))[0] == cli.EXIT_IO


def test_fig2_preset_gap_ordering(capsys):
    code, out, _ = run(capsys, "sweep", "--preset", "fig2", "--count", "2000")
    assert code == 0
    rows = [r for r in parse_csv(out)[1] if r["requested_method"] == "quadrature"]
    table = {(float(r["kappa"]), float(r["mu"]), float(r["avg_snr_db"])): float(r["R"]) for r in rows}
    for kappa in (1.0, 5.0):
        for db in cli.FIG_SNR_DB:
            r1, r2, r4 = (table[(kappa, mu, db)] for mu in (1.0, 2.0, 4.0))
            assert r4 - r2 < r2 - r1
    # no high-SNR rows where A >= mu
    assert not any(r["requested_method"] == "high_snr" and float(r["mu"]) <= 1.0 for r in parse_csv(out)[1])


def test_presets_shape():
    assert len(cli.fig1_specs()) == 6 and len(cli.fig2_specs()) == 6
    tasks = cli.sweep_tasks(cli.fig1_specs(), skip_inapplicable=True)
    # high_snr only on the A = 1 curves
    assert sum(t.method is cli.Method.HIGH_SNR for t in tasks) == 3 * len(cli.FIG_SNR_DB)


# --- sample ------------------------------------------------------------------

def test_sample_deterministic_files(capsys, tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        assert run(capsys, "sample", *POINT[:6], "--snr", "10", "--count", "5", "--seed", "9", "--out", str(p))[0] == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    meta, rows = parse_csv(paths[0].read_text())
    assert meta["seed"] == 9 and meta["kappa"] == 1.0 and meta["mu"] == 2.0 and meta["m"] == 1.0
    assert meta["avg_snr"] == 10.0 and meta["count"] == 5 and meta["rng"] == "numpy.random.PCG64"
    assert len(rows) == 5 and all(float(r["snr"]) >= 0 for r in rows)


def test_sample_json_and_gamma_ks(capsys):
    code, out, _ = run(
        capsys, "sample", "--kappa", "0", "--mu", "2.5", "--m", "1", "--snr", "3", "--count", "20000", "--format", "json"
    )
    assert code == 0
    doc = json.loads(out)
    draws = np.array(doc["values"])
    assert draws.size == 20000
    assert stats.kstest(draws, stats.gamma(2.5, scale=3 / 2.5).cdf).pvalue > 0.01


def test_sample_io_error(capsys, tmp_path):
    code, _, err = run(capsys, "sample", *POINT[:6], "--snr", "1", "--out", str(tmp_path / "no" / "x.csv"))
    assert code == cli.EXIT_IO and "I/O" in err


# --- validate ----------------------------------------------------------------

def test_validate_default_passes(capsys):
    code, out, err = run(capsys, "validate")
    assert code == cli.EXIT_OK
    meta, rows = parse_csv(out)
    assert len(rows) == len(cli.VALIDATE_GRIDS["default"]) * len(cli.VALIDATE_CHECKS)
    assert meta["failed"] == 0 and all(r["passed"] == "True" for r in rows)
    assert all(r["discrepancy"] for r in rows)


def test_validate_injected_tolerance_fails(capsys):
    code, out, err = run(capsys, "validate", "--tol", "1e-15")
    assert code == cli.EXIT_VALIDATION
    meta, rows = parse_csv(out)
    assert meta["failed"] > 0
    assert len(rows) == len(cli.VALIDATE_GRIDS["default"]) * len(cli.VALIDATE_CHECKS)


def test_acceptance_grid_size():
    grid = cli.acceptance_grid()
    assert len(grid) == 48 and len(set(grid)) == 48

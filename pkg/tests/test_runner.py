import csv
import json
import math
import os
import pathlib
import re

import numpy as np
import pytest

from liptail import cli, runner
from liptail import io as lio
from liptail.errors import ValidationError

CONFIGS = pathlib.Path(__file__).resolve().parent.parent / "configs"


def _write(tmp_path, cfg, name="cfg.json"):
    p = tmp_path / name
    p.write_text(json.dumps(cfg))
    return p


def _pareto_scan(**over):
    cfg = {
        "kind": "TailScan",
        "prior": {"kind": "Pareto", "dim": 1, "alpha": 2.0},
        "n": 200000,
        "replicas": 4,
        "master_seed": 1,
        "params": {"estimator": "Hill", "k_grid": {"start": 100, "stop": 2000, "step": 100}},
    }
    cfg.update(over)
    return cfg


def _csv_bytes(out):
    return {f: (out / f).read_bytes() for f in sorted(os.listdir(out)) if f.endswith((".csv", ".bin"))}


def _read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


# --- validation -----------------------------------------------------------------

def test_replicas_zero_writes_nothing(tmp_path):
    out = tmp_path / "out"
    with pytest.raises(ValidationError) as exc:
        runner.run(_write(tmp_path, _pareto_scan(replicas=0)), out)
    assert any("replicas" in f for f in exc.value.failures)
    assert not out.exists()
    assert cli.main(["run", "--config", str(tmp_path / "cfg.json"), "--out", str(out)]) == cli.EXIT_VALIDATION
    assert not out.exists()


def test_all_failures_listed_at_once():
    cfg = _pareto_scan(replicas=0, n=-5, bogus=1)
    cfg["params"]["estimator"] = "Nope"
    with pytest.raises(ValidationError) as exc:
        runner.validate(cfg)
    text = "\n".join(exc.value.failures)
    for needle in ("replicas", "<root>", "n", "estimator"):
        assert needle in text
    assert len(exc.value.failures) >= 4


@pytest.mark.parametrize("where", ["top", "prior", "params", "map"])
def test_unknown_fields_rejected(where):
    cfg = _pareto_scan()
    if where == "top":
        cfg["n_samples"] = 10
    elif where == "prior":
        cfg["prior"]["alhpa"] = 2.0
    elif where == "params":
        cfg["params"]["kgrid"] = [1]
    else:
        cfg["prior"] = {"kind": "RadialGaussian", "dim": 2, "k": 0}
        cfg["map"] = {"kind": "EuclideanNorm", "dim": 2, "scale": 3}
    with pytest.raises(ValidationError):
        runner.validate(cfg)


def test_semantic_failures():
    conc = {
        "kind": "Concentration",
        "prior": {"kind": "RadialGaussian", "dim": 2, "k": 0},
        "n": 100000, "replicas": 1, "master_seed": 0,
        "params": {"epsilons": [1.0]},
    }
    with pytest.raises(ValidationError, match="requires a map"):
        runner.validate(conc)
    mismatch = dict(conc, map={"kind": "EuclideanNorm", "dim": 3})
    with pytest.raises(ValidationError) as exc:
        runner.validate(mismatch)
    assert "does not match" in exc.value.failures[0]
    big_k = _pareto_scan(n=1000)
    with pytest.raises(ValidationError, match="k_grid"):
        runner.validate(big_k)
    quad = {"kind": "QuadratureCheck", "prior": {"kind": "RadialGaussian", "dim": 4, "k": 0},
            "n": 100, "replicas": 1, "master_seed": 0}
    with pytest.raises(ValidationError, match="dim 2 or 3"):
        runner.validate(quad)


def test_shipped_configs_validate():
    paths = sorted(CONFIGS.glob("*.json"))
    kinds = {runner.load_config(p).kind for p in paths}
    assert kinds == set(runner.KINDS)


# --- describe ---------------------------------------------------------------------

def test_describe_euclidean_norm(tmp_path):
    cfg = {
        "kind": "CmrCurve",
        "prior": {"kind": "RadialGaussian", "dim": 2, "k": 0},
        "map": {"kind": "EuclideanNorm", "dim": 2},
        "n": 100000, "replicas": 1, "master_seed": 3,
        "params": {"gammas": [0.5], "threshold_quantiles": [0.9]},
    }
    text = runner.describe(_write(tmp_path, cfg))
    assert "certified L = 1," in text and "f(0) = 0" in text
    line = next(l for l in text.splitlines() if "gamma = 0.5" in l)
    t_min = float(re.search(r"= ([0-9.eE+-]+);", line).group(1))
    assert t_min == pytest.approx(math.sqrt(0.5), abs=1e-5)
    assert "WARNING" not in text


def test_describe_flags_mlp(tmp_path):
    text = runner.describe(CONFIGS / "tail_scan_mlp_relu.json")
    assert "certified L" in text
    assert "WARNING: t_min exceeds the 0.9999 sample quantile" in text


def test_describe_cli(tmp_path, capsys):
    assert cli.main(["describe", "--config", str(CONFIGS / "cmr_euclidean_g02.json")]) == 0
    assert "memory" in capsys.readouterr().out


# --- runs -------------------------------------------------------------------------

def test_tail_scan_pareto_run(tmp_path):
    out = tmp_path / "out"
    report = runner.run(_write(tmp_path, _pareto_scan()), out)
    rows = _read_csv(out / "tail_scan_summary.csv")
    assert rows[0] == ["k", "replica_0", "replica_1", "replica_2", "replica_3", "mean", "se"]
    assert [int(r[0]) for r in rows[1:]] == list(range(100, 2001, 100))
    for r in rows[1:]:
        vals = [float(v) for v in r[1:5]]
        assert all(0.3 < v < 0.7 for v in vals)
        assert float(r[5]) == pytest.approx(0.5, abs=0.1)
    assert report["version"] and report["config"]["kind"] == "TailScan"
    assert set(report["timings"]) >= {"replicas", "aggregate"}
    saved = json.loads((out / "report.json").read_text())
    assert saved["files"] == report["files"]


def test_aggregates_recomputable(tmp_path):
    out = tmp_path / "out"
    runner.run(_write(tmp_path, _pareto_scan()), out)
    summary = _read_csv(out / "tail_scan_summary.csv")[1:]
    per = [_read_csv(out / f"tail_scan_r{i}.csv")[1:] for i in range(4)]
    for j, row in enumerate(summary):
        vals = [float(p[j][1]) for p in per]
        assert [float(v) for v in row[1:5]] == vals
        total = 0.0
        for v in vals:
            total += v
        mean = total / 4
        ss = 0.0
        for v in vals:
            ss += (v - mean) ** 2
        assert row[5] == lio.format_float(mean)
        assert row[6] == lio.format_float(math.sqrt(ss / 3 / 4))


def test_thread_count_does_not_change_bytes(tmp_path):
    p = _write(tmp_path, _pareto_scan())
    runner.run(p, tmp_path / "a", thread_count=1)
    runner.run(p, tmp_path / "b", thread_count=8)
    a, b = _csv_bytes(tmp_path / "a"), _csv_bytes(tmp_path / "b")
    assert a == b and len(a) == 5


def test_thread_env_default(tmp_path, monkeypatch):
    monkeypatch.setenv(runner.THREADS_ENV, "3")
    assert runner.default_threads() == 3
    report = runner.run(_write(tmp_path, _pareto_scan(replicas=2)), tmp_path / "o")
    assert report["threads"] == 3
    monkeypatch.setenv(runner.THREADS_ENV, "junk")
    assert runner.default_threads() == 1


def test_replica_rerun_regenerates_rows(tmp_path):
    p = _write(tmp_path, _pareto_scan())
    full = tmp_path / "full"
    runner.run(p, full)
    original = (full / "tail_scan_r2.csv").read_bytes()
    (full / "tail_scan_r2.csv").unlink()
    runner.run(p, full, replica_indices=[2])
    assert (full / "tail_scan_r2.csv").read_bytes() == original
    solo = tmp_path / "solo"
    assert cli.main(["run", "--config", str(p), "--out", str(solo), "--replica", "2"]) == 0
    assert sorted(os.listdir(solo)) == ["report.json", "tail_scan_r2.csv"]
    assert (solo / "tail_scan_r2.csv").read_bytes() == original


def test_replica_index_out_of_range(tmp_path):
    p = _write(tmp_path, _pareto_scan())
    assert cli.main(["run", "--config", str(p), "--out", str(tmp_path / "o"), "--replica", "4"]) == cli.EXIT_VALIDATION
    assert not (tmp_path / "o").exists()


def test_seed_override(tmp_path):
    p = _write(tmp_path, _pareto_scan(replicas=1))
    runner.run(p, tmp_path / "a")
    runner.run(p, tmp_path / "b", seed_override=99)
    runner.run(_write(tmp_path, _pareto_scan(replicas=1, master_seed=99), "c.json"), tmp_path / "c")
    a, b, c = (_csv_bytes(tmp_path / x) for x in "abc")
    assert a != b and b == c


def test_cmr_run_has_envelope(tmp_path):
    report = runner.run(CONFIGS / "cmr_euclidean_g02.json", tmp_path / "o")
    rows = report["replicas"][0]["tables"]["cmr_gamma1"]["rows"]
    by_t = {r[0]: r for r in rows}
    assert by_t[1.5][5] is True or by_t[1.5][5] is False
    t3 = by_t[3.0]
    assert t3[5] and t3[3] <= t3[1] <= t3[4]
    summary = _read_csv(tmp_path / "o" / "cmr_gamma1_summary.csv")
    assert summary[0][0] == "t"


def test_quadrature_run(tmp_path):
    report = runner.run(CONFIGS / "quadrature_check.json", tmp_path / "o")
    rows = report["replicas"][0]["tables"]["quadrature"]["rows"]
    assert {r[0] for r in rows} == set(runner.INTEGRAND_BATTERY)
    one = next(r for r in rows if r[0] == "one")
    assert one[1] == pytest.approx(1.0, abs=1e-12)


def test_sample_dump_formats(tmp_path):
    out = tmp_path / "o"
    runner.run(CONFIGS / "sample_dump.json", out)
    a = lio.read_batch_csv(out / "samples_r0.csv")
    b = lio.read_batch_binary(out / "samples_r0.bin")
    np.testing.assert_array_equal(a, b)
    assert a.shape == (1000, 4)
    np.testing.assert_allclose(a[:, 3], np.linalg.norm(a[:, :3], axis=1), rtol=1e-15)


# --- CLI --------------------------------------------------------------------------

def test_cli_missing_config(tmp_path, capsys):
    assert cli.main(["run", "--config", str(tmp_path / "nope.json"), "--out", str(tmp_path / "o")]) == cli.EXIT_USAGE
    assert "cannot read" in capsys.readouterr().err


def test_cli_bad_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert cli.main(["describe", "--config", str(p)]) == cli.EXIT_USAGE


def test_cli_validation_lists_failures(tmp_path, capsys):
    p = _write(tmp_path, _pareto_scan(replicas=0, n=0))
    assert cli.main(["run", "--config", str(p), "--out", str(tmp_path / "o")]) == cli.EXIT_VALIDATION
    err = capsys.readouterr().err
    assert err.count("  - ") >= 2


def test_cli_estimate(tmp_path, capsys):
    x = 1.0 / np.random.default_rng(0).uniform(size=20000) ** 0.5
    p = tmp_path / "x.csv"
    p.write_text("x\n" + "\n".join(lio.format_float(v) for v in x) + "\n")
    for name in ("hill", "pickands", "moment"):
        assert cli.main(["estimate", name, "--input", str(p), "--k", "500"]) == 0
        res = json.loads(capsys.readouterr().out)
        assert res["k"] == 500
        assert res["xi_hat"] == pytest.approx(0.5, abs=0.2)


def test_cli_estimate_errors(tmp_path):
    p = tmp_path / "neg.csv"
    p.write_text("-1\n-2\n-3\n")
    assert cli.main(["estimate", "hill", "--input", str(p), "--k", "1"]) == cli.EXIT_NUMERICAL
    assert cli.main(["estimate", "hill", "--input", str(p), "--k", "10"]) == cli.EXIT_VALIDATION
    with pytest.raises(SystemExit):
        cli.main(["estimate", "bogus", "--input", str(p), "--k", "1"])


def test_module_entry_point():
    import subprocess
    import sys
    res = subprocess.run([sys.executable, "-m", "liptail", "--help"], capture_output=True, text=True)
    assert res.returncode == 0 and "describe" in res.stdout


def test_explicit_mlp_weights_in_config():
    cfg = runner.validate({
        "kind": "Concentration",
        "prior": {"kind": "RadialGaussian", "dim": 2, "k": 0},
        "map": {"kind": "MLP", "activation": "ReLU",
                "weights": [[[1, 0], [0, 2]], [[1, 1]]], "biases": [[0, 0], [0.5]]},
        "n": 10000, "replicas": 1, "master_seed": 0,
        "params": {"epsilons": [1.0]},
    })
    assert cfg.map.lip_bound == pytest.approx(2 * math.sqrt(2), rel=1e-5)
    assert cfg.map.value_at_origin == 0.5

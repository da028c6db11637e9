"""End-to-end tests of the command-line interface.

Everything runs in-process through ``main(argv)`` so exit codes and file
outputs are asserted directly; one smoke test exercises the installed
console script if present.  Simulation configs are kept small (2^15
samples) so the whole module stays under a few seconds.
"""

import json
import math
import shutil
import subprocess

import numpy as np
import pytest

from holonoise import CONSTANTS, ExperimentConfig, HolographicModel
from holonoise.cli import ENV_OUTPUT_DIR, load_config, main

SMALL_CONFIG = {
    "arm_length": 40.0,
    "shot_asd": 2e-18,
    "sample_rate": 5e7,
    "n_samples": 2**15,
    "seed": 123,
    "holo_scale": 1.0,
    "segment_length": 1024,
    "overlap": 0.5,
}


@pytest.fixture()
def config_path(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(SMALL_CONFIG))
    return path


def read_csv(path):
    meta = {}
    for line in path.read_text().splitlines():
        if not line.startswith("#"):
            break
        body = line[1:].strip()
        if "=" in body:
            key, _, val = body.partition("=")
            meta[key.strip()] = val.strip()
    data = np.loadtxt(path, delimiter=",", comments="#", ndmin=2)
    return meta, data


# ------------------------------------------------------------------ constants


def test_constants_json(tmp_path):
    out = tmp_path / "constants.json"
    assert main(["constants", "--output", str(out)]) == 0
    values = json.loads(out.read_text())
    assert set(values) == {"c", "hbar", "G", "t_P", "l_P", "omega_P", "m_P"}
    assert values["t_P"] == pytest.approx(5.39e-44, rel=0.01)
    # 17-significant-digit rendering: parses back to the exact double.
    assert values["t_P"] == CONSTANTS.t_P
    assert values["c"] == 299792458.0


# -------------------------------------------------------------------- predict


def test_predict_curves(tmp_path):
    out = tmp_path / "curves.csv"
    assert main(["predict", "--arm-length", "40", "--output", str(out)]) == 0
    text = out.read_text()
    model = HolographicModel.from_baseline(40.0)
    assert f"# sigma2_m2 = {model.sigma2:.17g}" in text
    assert f"# tau_c_s = {model.tau_c:.17g}" in text
    rows = [l for l in text.splitlines() if not l.startswith("#")]
    acf_rows = [r for r in rows if r.startswith("acf,")]
    psd_rows = [r for r in rows if r.startswith("psd,")]
    assert len(acf_rows) == 256
    assert len(psd_rows) == 512
    first_acf = acf_rows[0].split(",")
    assert float(first_acf[1]) == 0.0
    assert float(first_acf[2]) == model.sigma2
    first_psd = psd_rows[0].split(",")
    assert float(first_psd[2]) == pytest.approx(2 * model.sigma2 * model.tau_c, rel=1e-15)


def test_predict_rejects_bad_length():
    assert main(["predict", "--arm-length", "-3"]) == 1


# ----------------------------------------------------------------------- info


def test_info_hair_width(tmp_path):
    out = tmp_path / "info.json"
    assert main(["info", "--length", "1.3e26", "--output", str(out)]) == 0
    budget = json.loads(out.read_text())
    assert budget["pixel_size_m"] == pytest.approx(1.15e-4, rel=1e-3)
    assert budget["ratio"] == pytest.approx(budget["length_m"] / CONSTANTS.l_P, rel=1e-12)


def test_info_rejects_sub_planckian():
    assert main(["info", "--length", "1e-40"]) == 1


# ---------------------------------------------------------------------- slits


def test_slits_pattern(tmp_path):
    out = tmp_path / "pattern.csv"
    code = main(
        [
            "slits",
            "--screen-distance", "1.0",
            "--separation", "8.04e-18",
            "--wavelength", "4.02e-18",
            "--output", str(out),
        ]
    )
    assert code == 0
    meta, data = read_csv(out)
    assert meta["blurred"] == "false"
    assert data.shape == (4096, 2)
    assert float(data[:, 1].sum()) == pytest.approx(1.0, rel=1e-12)


def test_slits_sweep(tmp_path):
    out = tmp_path / "sweep.csv"
    code = main(
        [
            "slits",
            "--screen-distance", "1.0",
            "--wavelength", "4.02e-18",
            "--sweep",
            "--output", str(out),
        ]
    )
    assert code == 0
    _, data = read_csv(out)
    assert data.shape == (41, 3)
    # bound column is constant sqrt(L c t_P).
    assert np.all(data[:, 2] == data[0, 2])
    assert data[0, 2] == pytest.approx(4.0202674338015744e-18, rel=1e-15)
    # metric rises through the sweep.
    assert data[-1, 1] > 0.5 > data[0, 1]


# ------------------------------------------------------------------- simulate


def test_simulate_outputs_and_manifest(tmp_path, config_path, capsys):
    outdir = tmp_path / "run"
    code = main(["simulate", "--config", str(config_path), "--output-dir", str(outdir)])
    assert code == 0
    for name in ("spectra.csv", "report.json", "manifest.json"):
        assert (outdir / name).is_file()

    manifest = json.loads((outdir / "manifest.json").read_text())
    assert manifest["config"] == SMALL_CONFIG
    assert "philox" in manifest["prng"].lower()
    import hashlib

    for name, digest in manifest["outputs"].items():
        actual = hashlib.sha256((outdir / name).read_bytes()).hexdigest()
        assert actual == digest

    report = json.loads((outdir / "report.json").read_text())
    assert report["n_avg"] == 63
    assert 0.0 <= report["null_pvalue"] <= 1.0
    assert report["snr"] > 0.0

    printed = capsys.readouterr().out
    assert "spectra.csv" in printed


def test_simulate_deterministic_across_runs(tmp_path, config_path):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert main(["simulate", "--config", str(config_path), "--output-dir", str(out1),
                 "--dump-timeseries"]) == 0
    assert main(["simulate", "--config", str(config_path), "--output-dir", str(out2),
                 "--dump-timeseries"]) == 0
    for name in ("spectra.csv", "report.json", "timeseries.csv"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()
    m1 = json.loads((out1 / "manifest.json").read_text())
    m2 = json.loads((out2 / "manifest.json").read_text())
    assert m1["outputs"] == m2["outputs"]


def test_simulate_env_var_output_dir(tmp_path, config_path, monkeypatch):
    envdir = tmp_path / "from-env"
    monkeypatch.setenv(ENV_OUTPUT_DIR, str(envdir))
    assert main(["simulate", "--config", str(config_path)]) == 0
    assert (envdir / "manifest.json").is_file()
    # Explicit flag beats the environment.
    flagdir = tmp_path / "from-flag"
    assert main(["simulate", "--config", str(config_path),
                 "--output-dir", str(flagdir)]) == 0
    assert (flagdir / "manifest.json").is_file()


def test_simulate_missing_config(tmp_path):
    assert main(["simulate", "--config", str(tmp_path / "nope.json")]) == 2


def test_simulate_malformed_json(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"arm_length": 40.0,\n  "shot_asd": }')
    assert main(["simulate", "--config", str(bad)]) == 1
    err = capsys.readouterr().err
    assert "line 2" in err


def test_simulate_unknown_config_field(tmp_path, capsys):
    bad = tmp_path / "typo.json"
    payload = dict(SMALL_CONFIG)
    payload["arm_lenght"] = payload.pop("arm_length")
    bad.write_text(json.dumps(payload))
    assert main(["simulate", "--config", str(bad)]) == 1
    assert "arm_lenght" in capsys.readouterr().err


# ------------------------------------------------------------ analyze, detect


def test_round_trip_simulate_analyze(tmp_path, config_path):
    rundir = tmp_path / "run"
    assert main(["simulate", "--config", str(config_path), "--output-dir", str(rundir),
                 "--dump-timeseries"]) == 0
    reanalyzed = tmp_path / "spectra2.csv"
    code = main(
        ["analyze", "--timeseries", str(rundir / "timeseries.csv"),
         "--output", str(reanalyzed)]
    )
    assert code == 0
    assert reanalyzed.read_bytes() == (rundir / "spectra.csv").read_bytes()


def test_detect_matches_simulate_report(tmp_path, config_path):
    rundir = tmp_path / "run"
    assert main(["simulate", "--config", str(config_path),
                 "--output-dir", str(rundir)]) == 0
    report = json.loads((rundir / "report.json").read_text())
    lo, hi = report["band_hz"]
    out = tmp_path / "detect.json"
    code = main(
        ["detect", "--estimate", str(rundir / "spectra.csv"),
         "--band", f"{lo}:{hi}", "--output", str(out)]
    )
    assert code == 0
    detected = json.loads(out.read_text())
    # Spectra round-trip bit-exactly, so the z-score must agree too.
    assert detected["sigma_level"] == pytest.approx(report["sigma_level"], rel=1e-12)
    assert detected["null_pvalue"] == pytest.approx(report["null_pvalue"], rel=1e-9)
    assert detected["n_avg"] == report["n_avg"]
    assert detected["snr"] == 0.0  # standalone detect carries no prediction


def test_analyze_rejects_malformed_csv(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("# sample_rate_hz = 5e7\n1,2\n3\n")
    assert main(["analyze", "--timeseries", str(bad)]) == 1


def test_detect_rejects_bad_band(tmp_path, config_path):
    rundir = tmp_path / "run"
    assert main(["simulate", "--config", str(config_path),
                 "--output-dir", str(rundir)]) == 0
    assert main(["detect", "--estimate", str(rundir / "spectra.csv"),
                 "--band", "zzz"]) == 1
    assert main(["detect", "--estimate", str(rundir / "spectra.csv"),
                 "--band", "5e6:1e6"]) == 1


# ----------------------------------------------------------------- exit codes


def test_usage_errors_exit_64(capsys):
    assert main(["frobnicate"]) == 64
    assert main(["predict"]) == 64  # missing required --arm-length
    assert main(["simulate", "--config", "x", "--bogus-flag"]) == 64
    err = capsys.readouterr().err
    assert "usage" in err.lower()


# -------------------------------------------------------------- config loader


def test_load_config_round_trip(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(SMALL_CONFIG))
    cfg = load_config(path)
    assert cfg == ExperimentConfig(**SMALL_CONFIG)


def test_console_script_smoke():
    exe = shutil.which("holonoise")
    if exe is None:
        pytest.skip("console script not on PATH")
    proc = subprocess.run(
        [exe, "constants"], capture_output=True, text=True, timeout=60
    )
    assert proc.returncode == 0
    values = json.loads(proc.stdout)
    assert math.isclose(values["l_P"], 1.616255e-35, rel_tol=1e-5)

import csv
import io
import json
import math
import os
import subprocess

import pytest

CLI = os.environ.get("OAMW_CLI", "oamw")


def run(*args, env=None, cwd=None):
    full_env = dict(os.environ)
    full_env.pop("OAMW_SEED", None)
    if env:
        full_env.update(env)
    return subprocess.run([CLI, *map(str, args)], capture_output=True, text=True, env=full_env, cwd=cwd, timeout=600)


def run_json(*args, **kw):
    p = run(*args, **kw)
    assert p.returncode == 0, p.stderr
    return json.loads(p.stdout)


def parse_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_overlap_half_integer_quarter():
    out = run_json("overlap", "--ell1", 0.5, "--alpha1", 0, "--ell2", 0.5, "--alpha2", 1.5708)
    assert abs(out["r"] - 0.25) < 1e-4
    assert abs(out["re"] ** 2 + out["im"] ** 2 - out["r"]) < 1e-12


def test_overlap_integer_orthogonal():
    out = run_json("overlap", "--ell1", 1, "--alpha1", 0, "--ell2", 2, "--alpha2", 0)
    assert out["r"] < 1e-12


def test_overlap_sweep_matches_sinc_squared():
    p = run("overlap", "--ell1", 0.5, "--alpha1", 0, "--ell2", 0.5, "--alpha2", 0, "--sweep", "ell2=0:1:101")
    assert p.returncode == 0, p.stderr
    assert p.stdout.splitlines()[0] == "param,r"
    rows = parse_csv(p.stdout)
    assert len(rows) == 101
    for row in rows:
        ell = float(row["param"])
        x = math.pi * (ell - 0.5)
        ref = 1.0 if x == 0 else (math.sin(x) / x) ** 2
        assert abs(float(row["r"]) - ref) < 1e-12


def test_overlap_rejects_bad_flags():
    assert run("overlap", "--ell1", "abc").returncode == 2
    assert run("overlap", "--bogus", 1).returncode == 2
    assert run("overlap", "--ell1", 0.5, "--sweep", "nope").returncode == 2


def test_witness_table1_states():
    out = run_json("witness", "--from-states", "0.22,0", "0.5,0", "0.78,0")
    assert out["region"] == "IV"
    assert out["W_c"] > 0


def test_witness_measured_point():
    out = run_json("witness", "--r-ab", 0.05, "--r-bc", 0.06, "--r-ac", 0.11)
    assert out["region"] == "I"
    assert abs(out["W_D"] - 0.31) <= 0.02


def test_witness_identical_states():
    out = run_json("witness", "--r-ab", 1, "--r-bc", 1, "--r-ac", 1)
    assert out["region"] == "III"
    assert out["W_c"] == 0 and out["W_D"] == 0
    assert set(out) >= {"r_ab", "r_bc", "r_ac", "in_C", "in_Q", "in_Qbid", "W_c", "W_D", "region"}


def test_witness_invalid_triple():
    assert run("witness", "--r-ab", 1.5, "--r-bc", 0, "--r-ac", 0).returncode == 2


def test_config_file(tmp_path):
    cfg = tmp_path / "run.ini"
    cfg.write_text("# overlap at a quarter turn\n[overlap]\nell1=0.5\nalpha1=0\nell2=0.5\nalpha2=1.5708\n")
    out = run_json("--config", cfg, "overlap")
    assert abs(out["r"] - 0.25) < 1e-4
    flat = tmp_path / "flat.ini"
    flat.write_text("overlap.ell1=1\noverlap.alpha1=0\noverlap.ell2=2\noverlap.alpha2=0\n")
    assert run_json("--config", flat, "overlap")["r"] < 1e-12
    bad = tmp_path / "bad.ini"
    bad.write_text("[overlap]\nell1=0.5\nnot_a_flag=3\n")
    assert run("--config", bad, "overlap").returncode == 2


def test_bench_identical_gaussians():
    out = run_json("bench", "--ell1", 0, "--alpha1", 0, "--ell2", 0, "--alpha2", 0)
    assert abs(out["bench"] - 1.0) < 1e-6
    assert out["abs_error"] < 1e-6
    assert out["separation_ok"]


def test_bench_table1_pair():
    out = run_json("bench", "--ell1", 0.22, "--alpha1", 0, "--ell2", 0.5, "--alpha2", 0)
    assert abs(out["analytic"] - 0.7673) < 1e-4
    assert abs(out["bench"] - out["analytic"]) < 0.01


def test_bench_beta_sweep():
    p = run("bench", "--ell1", 0.5, "--alpha1", 0, "--ell2", 0.5, "--alpha2", 0, "--sweep", f"alpha1=0:{2 * math.pi}:21")
    assert p.returncode == 0, p.stderr
    rows = parse_csv(p.stdout)
    assert list(rows[0]) == ["param", "analytic", "bench", "abs_error", "separation"]
    assert len(rows) == 21
    for row in rows:
        beta = float(row["param"])
        b = min(beta, 2 * math.pi - beta)
        assert abs(float(row["bench"]) - (1 - b / math.pi) ** 2) < 0.01


def test_bench_separation_failure_exit_code():
    p = run("bench", "--ell1", 0, "--alpha1", 0, "--ell2", 0, "--alpha2", 0, "--n", 256, "--kick-index", 1)
    assert p.returncode == 3


def test_bench_dump_and_import(tmp_path):
    direct = run_json("bench", "--ell1", 0.5, "--alpha1", 1.5708, "--ell2", 0.5, "--alpha2", 0, "--dump-dir", tmp_path)
    pgms = sorted(p for p in os.listdir(tmp_path) if p.endswith(".pgm"))
    assert any("interferogram" in p for p in pgms)
    assert any("spectrum" in p for p in pgms)
    image = next(p for p in pgms if "interferogram" in p)
    with open(tmp_path / image, "rb") as fh:
        assert fh.read(2) == b"P5"
    assert (tmp_path / (image + ".json")).exists()
    imported = run_json("bench", "--import", tmp_path / image)
    assert abs(imported["bench"] - direct["bench"]) < 1e-3
    assert imported["separation_ok"]


def test_reproduce_table5(tmp_path):
    p = run("reproduce", "--target", "table5", "--out", tmp_path, "--seed", 3)
    assert p.returncode == 0, p.stderr
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["target"] == "table5"
    assert manifest["seed"] == 3
    assert manifest["checks_passed"]
    for name in manifest["files"]:
        assert (tmp_path / name).exists()


def test_reproduce_seed_from_environment(tmp_path):
    p = run("reproduce", "--target", "table5", "--out", tmp_path, env={"OAMW_SEED": "11"})
    assert p.returncode == 0, p.stderr
    assert json.loads((tmp_path / "manifest.json").read_text())["seed"] == 11


def test_reproduce_is_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        assert run("reproduce", "--target", "table3", "--out", d, "--seed", 5).returncode == 0
    files = json.loads((a / "manifest.json").read_text())["files"]
    for name in files:
        assert (a / name).read_bytes() == (b / name).read_bytes()
    ma = json.loads((a / "manifest.json").read_text())
    mb = json.loads((b / "manifest.json").read_text())
    for volatile in ("started_at", "wall_time_s"):
        ma.pop(volatile)
        mb.pop(volatile)
    assert ma == mb


def test_reproduce_unknown_target(tmp_path):
    assert run("reproduce", "--target", "fig99", "--out", tmp_path).returncode == 2


def test_version():
    p = run("--version")
    assert p.returncode == 0
    assert p.stdout.strip()

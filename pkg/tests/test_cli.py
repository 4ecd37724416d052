"""Command-line behaviour: exit codes, artifacts, manifests, reports."""

import json
import subprocess
import sys

import numpy as np
import pytest

from jitterrng.cli import main

from conftest import SEED_A

HEX_SEED = SEED_A.hex()


def run_cli(*argv):
    return main(list(argv))


# --- generate ----------------------------------------------------------------

def gen_args(out, *extra):
    return ("generate", "--mu", "7", "-M", "256", "--bytes", "64",
            "--out", str(out), "--seed", HEX_SEED, "--jitter", "scripted",
            "--script", "5,1,3", "--discard", "16", *extra)


def test_generate_writes_bytes_and_manifest(tmp_path, warm_engine, capsys):
    out = tmp_path / "r.bin"
    assert run_cli(*gen_args(out)) == 0
    data = out.read_bytes()
    assert len(data) == 64
    man = json.loads((tmp_path / "r.bin.manifest.json").read_text())
    assert man["command"] == "generate"
    assert man["n_bytes"] == 64 and man["modulus"] == 256
    assert man["config"]["script_length"] == 3
    assert "script" not in man["config"]
    assert len(man["seed_fingerprint"]) == 64
    import hashlib
    assert man["output_sha256"] == hashlib.sha256(data).hexdigest()
    # raw seed material must never appear anywhere in the manifest
    assert HEX_SEED not in (tmp_path / "r.bin.manifest.json").read_text()
    assert "wrote 64 bytes" in capsys.readouterr().out


def test_generate_hex_format(tmp_path, warm_engine):
    raw, hexed = tmp_path / "a.bin", tmp_path / "b.hex"
    assert run_cli(*gen_args(raw)) == 0
    assert run_cli(*gen_args(hexed, "--format", "hex")) == 0
    assert bytes.fromhex(hexed.read_text()) == raw.read_bytes()


def test_generate_scripted_is_deterministic(tmp_path, warm_engine):
    a, b = tmp_path / "a.bin", tmp_path / "b.bin"
    assert run_cli(*gen_args(a)) == 0
    assert run_cli(*gen_args(b)) == 0
    assert a.read_bytes() == b.read_bytes()


def test_generate_real_clock_smoke(tmp_path, warm_engine):
    out = tmp_path / "live.bin"
    assert run_cli("generate", "--mu", "7", "-M", "4", "--bytes", "512",
                   "--out", str(out), "--discard", "64") == 0
    assert len(out.read_bytes()) == 512


def test_generate_usage_errors(tmp_path, warm_engine):
    out = str(tmp_path / "x.bin")
    base = ["generate", "--mu", "7", "-M", "256", "--out", out,
            "--jitter", "scripted", "--script", "5"]
    assert run_cli(*base, "--bytes", "0") == 2
    assert run_cli("generate", "--mu", "7", "-M", "3", "--bytes", "8",
                   "--out", out, "--jitter", "scripted", "--script", "5") == 2
    assert run_cli("generate", "--mu", "7", "-M", "256", "--bytes", "8",
                   "--out", out, "--seed", "zz", "--jitter", "scripted",
                   "--script", "5") == 2
    assert run_cli("generate", "--mu", "7", "-M", "256", "--bytes", "8",
                   "--out", out, "--jitter", "scripted") == 2  # script missing


def test_generate_unwritable_path(tmp_path, warm_engine):
    blocker = tmp_path / "blocker"
    blocker.write_text("file, not dir")
    out = blocker / "sub" / "x.bin"
    assert run_cli(*gen_args(out)) == 3


# --- analyze -------------------------------------------------------------------

def test_analyze_constant_stream(tmp_path, capsys):
    f = tmp_path / "zeros.bin"
    f.write_bytes(b"\x00" * 4096)
    assert run_cli("analyze", "--in", str(f)) == 0
    out = capsys.readouterr().out
    assert "shannon_bits_per_byte = 0.000000" in out
    assert "pass_alpha_001 = False" in out


def test_analyze_flat_stream(tmp_path, capsys):
    f = tmp_path / "flat.bin"
    f.write_bytes(bytes(range(256)) * 10)
    assert run_cli("analyze", "--in", str(f)) == 0
    out = capsys.readouterr().out
    assert "shannon_bits_per_byte = 8.000000" in out
    assert "chi_square = 0.0" in out
    assert "pass_alpha_001 = True" in out


def test_analyze_structured_output(tmp_path, capsys):
    f = tmp_path / "flat.bin"
    f.write_bytes(bytes(range(256)) * 10)
    assert run_cli("analyze", "--in", str(f), "--format", "structured") == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["sample_count"] == 2560
    assert sum(doc["byte_histogram"]) == 2560
    assert doc["pass_alpha_001"] is True


def test_analyze_report_files_and_figure(tmp_path, capsys):
    f = tmp_path / "flat.bin"
    f.write_bytes(bytes(range(256)) * 10)
    rep = tmp_path / "rep.txt"
    assert run_cli("analyze", "--in", str(f), "--out", str(rep)) == 0
    assert "shannon_bits_per_byte" in rep.read_text()
    doc = json.loads((tmp_path / "rep.txt.json").read_text())
    assert doc["sample_count"] == 2560
    fig = tmp_path / "rep.hist.png"
    assert fig.exists() and fig.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_analyze_no_figures(tmp_path):
    f = tmp_path / "flat.bin"
    f.write_bytes(bytes(range(256)) * 10)
    rep = tmp_path / "rep.txt"
    assert run_cli("analyze", "--in", str(f), "--out", str(rep),
                   "--no-figures") == 0
    assert not (tmp_path / "rep.hist.png").exists()


def test_analyze_missing_and_empty_input(tmp_path):
    assert run_cli("analyze", "--in", str(tmp_path / "nope.bin")) == 3
    empty = tmp_path / "empty.bin"
    empty.write_bytes(b"")
    assert run_cli("analyze", "--in", str(empty)) == 3


# --- bounds --------------------------------------------------------------------

def test_bounds_requires_exactly_one_input(capsys):
    assert run_cli("bounds", "-M", "4") == 2
    assert run_cli("bounds", "-M", "4", "--mu", "7", "--epsilon", "1e-3") == 2


def test_bounds_epsilon_inversion(capsys):
    assert run_cli("bounds", "-M", "4", "--epsilon", "1e-3") == 0
    out = capsys.readouterr().out
    assert "minimum_mu = 6.6201" in out
    assert "reference_exact_mu = 6.62" in out


def test_bounds_mu_report(capsys):
    assert run_cli("bounds", "-M", "16", "--mu", "100") == 0
    out = capsys.readouterr().out
    assert "min_entropy_per_sample_bits = 3.98934" in out
    assert "samples_per_byte = 2" in out
    assert "min_entropy_per_byte_bits = 7.97868" in out
    assert "reference_quoted_min_entropy_per_byte = 7.9741" in out


def test_bounds_unaligned_modulus(capsys):
    assert run_cli("bounds", "-M", "8", "--mu", "25") == 0
    out = capsys.readouterr().out
    assert "samples_per_byte = n/a" in out


def test_bounds_bad_values(capsys):
    assert run_cli("bounds", "-M", "4", "--mu", "0") == 2
    assert run_cli("bounds", "-M", "4", "--epsilon", "0.9") == 2


def test_bounds_report_figure(tmp_path, capsys):
    rep = tmp_path / "bounds.txt"
    assert run_cli("bounds", "-M", "4", "--mu", "7", "--out", str(rep)) == 0
    assert "deviation_bound" in rep.read_text()
    fig = tmp_path / "bounds.curves.png"
    assert fig.exists() and fig.stat().st_size > 0


# --- calibrate -------------------------------------------------------------------

def test_calibrate(capsys):
    assert run_cli("calibrate", "--trials", "5000") == 0
    out = capsys.readouterr().out
    assert "recommended_tick_ns = " in out
    assert "trials = 5000" in out


# --- reproduce -------------------------------------------------------------------

def test_reproduce_rejects_unknown_table(capsys):
    with pytest.raises(SystemExit) as e:
        run_cli("reproduce", "--table", "IX")
    assert e.value.code == 2


@pytest.mark.slow
def test_reproduce_count_moments_scripted(tmp_path, warm_engine, capsys):
    code = run_cli("reproduce", "--table", "II", "--scale", "desk",
                   "--out-dir", str(tmp_path), "--seed", HEX_SEED,
                   "--jitter", "scripted", "--script", "5,1,3,7,2",
                   "--no-figures")
    out = capsys.readouterr().out
    assert "mocked jitter" in out
    assert code == 0, out
    report = (tmp_path / "table_II_report.txt").read_text()
    assert "result = PASS" in report


@pytest.mark.slow
def test_reproduce_uniformity_scripted(tmp_path, warm_engine, capsys):
    code = run_cli("reproduce", "--table", "IV", "--scale", "desk",
                   "--out-dir", str(tmp_path), "--seed", HEX_SEED,
                   "--jitter", "scripted", "--script", "5,1,3,7,2")
    out = capsys.readouterr().out
    assert "mocked jitter" in out
    assert code == 0, out
    assert "chi_square_passes" in (tmp_path / "table_IV_report.txt").read_text()
    figs = list(tmp_path.glob("table_IV_*.png"))
    assert figs and all(f.stat().st_size > 0 for f in figs)


def test_reproduce_elapsed_skips_under_scripted(tmp_path, warm_engine, capsys):
    code = run_cli("reproduce", "--table", "VI", "--out-dir", str(tmp_path),
                   "--seed", HEX_SEED, "--jitter", "scripted", "--script", "5",
                   "--no-figures")
    assert code == 0
    out = capsys.readouterr().out
    assert "skipped = elapsed-tick uniformity requires the real clock" in out


def test_reproduce_unwritable_out_dir(tmp_path, warm_engine):
    blocker = tmp_path / "blocker"
    blocker.write_text("file, not dir")
    assert run_cli("reproduce", "--table", "VI", "--out-dir",
                   str(blocker / "d")) == 3


# --- entry point -----------------------------------------------------------------

def test_console_entry_point_version():
    res = subprocess.run([sys.executable, "-m", "jitterrng.cli", "--version"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert "jitterrng" in res.stdout

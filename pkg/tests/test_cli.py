"""Command line surface: subcommands, formats, cache, determinism."""

import json

import pytest

from toruscurves.cli import main
from toruscurves.families import farey_hull
from toruscurves.ksystem import ResultsCache


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_iota(capsys):
    code, out = run(capsys, "iota", "2/3", "3/4")
    assert code == 0 and out.strip() == "1"
    code, out = run(capsys, "iota", "1/0", "3/5")
    assert code == 0 and out.strip() == "5"


def test_kappa_family(capsys):
    code, out = run(capsys, "--cache", "-", "kappa", "--family", "farey", "--param", "6")
    assert code == 0
    assert "kappa = 24" in out


def test_kappa_file(tmp_path, capsys):
    t, _ = farey_hull(4)
    path = tmp_path / "t.json"
    path.write_text(t.to_json())
    code, out = run(capsys, "kappa", "--file", str(path))
    assert code == 0 and "kappa = 8" in out


def test_kappa_min_and_cache(tmp_path, capsys):
    cache = tmp_path / "cache.jsonl"
    code, out1 = run(capsys, "--cache", str(cache), "kappa-min", "--n", "7")
    assert code == 0
    rec = json.loads(out1)
    assert rec["n"] == 7 and rec["kappa_min"] == 5
    assert cache.exists() and len(cache.read_text().splitlines()) == 1
    # second run hits the cache and reproduces the record bit-exactly
    code, out2 = run(capsys, "--cache", str(cache), "kappa-min", "--n", "7")
    assert code == 0 and out1 == out2
    assert len(cache.read_text().splitlines()) == 1


def test_eta(tmp_path, capsys):
    code, out = run(capsys, "--cache", str(tmp_path / "c.jsonl"), "eta", "--k", "2")
    assert code == 0
    assert "eta(2) = 4" in out
    assert "witness" in out


def test_family_table(capsys):
    code, out = run(capsys, "family", "--table")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("family,parameter,n,kappa_exact,kappa_claim")
    assert len(lines) > 10
    code, out = run(capsys, "family", "--kind", "farey", "--param", "6", "--format", "json")
    assert code == 0
    row = json.loads(out)[0]
    assert row["kappa_exact"] == row["kappa_claim"] == 24


def test_gamma(capsys):
    code, out = run(capsys, "gamma", "--h", "6")
    assert code == 0
    data = json.loads(out)
    assert data["weight_sum"] == "1"
    assert [1, 6] in data["edges"]
    code, out = run(capsys, "gamma", "--h", "6", "--format", "dot")
    assert code == 0 and out.startswith("graph gamma_6")


def test_verify_suite(capsys):
    code, out = run(capsys, "verify", "--suite", "farey")
    assert code == 0
    assert "[PASS]" in out and "[FAIL]" not in out


def test_render_deterministic(tmp_path, capsys):
    code, out1 = run(capsys, "render", "--what", "ford", "--max-q", "5")
    assert code == 0 and out1.startswith("<?xml")
    code, out2 = run(capsys, "render", "--what", "ford", "--max-q", "5")
    assert out1 == out2
    target = tmp_path / "far.svg"
    code, _ = run(
        capsys,
        "render",
        "--what",
        "midpoint",
        "--family",
        "farey",
        "--param",
        "4",
        "--out",
        str(target),
    )
    assert code == 0
    assert target.read_text().startswith("<?xml")
    code, out = run(
        capsys, "render", "--what", "triangulation", "--family", "achain",
        "--param", "8", "--labels", "--highlight", "0",
    )
    assert code == 0 and "<svg" in out


def test_bounds(tmp_path, capsys):
    code, out = run(capsys, "--cache", str(tmp_path / "c.jsonl"), "bounds", "--k", "10")
    assert code == 0
    assert "eta(k)          = 12" in out
    assert "prime bound     = 12" in out


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["kappa-min"])  # missing --n
    assert exc.value.code == 2


def test_invalid_value_exit_code(capsys):
    assert main(["gamma", "--h", "1"]) == 1


def test_cache_env_override(tmp_path, capsys, monkeypatch):
    cache = tmp_path / "env.jsonl"
    monkeypatch.setenv("TORUSCURVES_CACHE", str(cache))
    code, _ = run(capsys, "kappa-min", "--n", "6")
    assert code == 0 and cache.exists()
    rec = ResultsCache(cache).lookup(6)
    assert rec is not None and rec.kappa_min == 3

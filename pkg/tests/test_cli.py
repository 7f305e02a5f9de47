import json
import subprocess
import sys
from dataclasses import replace
from fractions import Fraction

import pytest

from boundext import algorithms
from boundext.algorithms import ClauseResult
from boundext.approximations import PointApprox
from boundext.chains import ArcChain
from boundext.cli import decimal_outward, main
from boundext.exact import RationalRect
from boundext.harness import build_candidate_configuration
from boundext.serialize import dumps, encode, read_file, write_file
from boundext.svg import CHAIN_COLOURS

F = Fraction


@pytest.fixture(scope="module")
def gen_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("id4")
    assert main(["gen", "--map", "identity", "--resolution", "4", "--ulac-length", "8", "--out", str(d)]) == 0
    return d


@pytest.fixture(scope="module")
def config_file(gen_dir):
    from boundext.algorithms import AlgorithmInputs

    inputs = AlgorithmInputs(*(read_file(gen_dir / n) for n in ("phi.approx", "boundary.approx", "ulac.approx")))
    c = build_candidate_configuration(inputs, 5, 17, evaluate=False).config
    path = gen_dir / "config.json"
    write_file(path, c)
    return path, c


def _point(tmp_path, rect, name="p.approx"):
    return str(write_file(tmp_path / name, PointApprox(rect)))


def test_gen_writes_three_files(gen_dir):
    assert sorted(p.name for p in gen_dir.iterdir() if p.suffix == ".approx") == [
        "boundary.approx", "phi.approx", "ulac.approx"]
    assert read_file(gen_dir / "ulac.approx").values == tuple(range(2, 10))


def test_gen_errors(tmp_path, capsys):
    assert main(["gen", "--map", "quad:1/2", "--resolution", "3", "--out", str(tmp_path)]) == 2
    assert "derivative" in capsys.readouterr().err
    assert main(["gen", "--map", "cubic", "--resolution", "3", "--out", str(tmp_path)]) == 2
    assert main(["gen", "--map", "identity", "--resolution", "0", "--out", str(tmp_path)]) == 2


def test_gen_quadratic(tmp_path):
    assert main(["gen", "--map", "quad:1/3", "--resolution", "3", "--out", str(tmp_path)]) == 0
    assert read_file(tmp_path / "ulac.approx").values[0] == 5


def test_run_boundary_point(gen_dir, tmp_path, capsys):
    h = F(1, 16)
    p = _point(tmp_path, RationalRect(1 - h, 1 + h, -h, h))
    rep = tmp_path / "rep.json"
    assert main(["run", "--inputs", str(gen_dir), "--point", p, "--out", str(rep)]) == 0
    out = capsys.readouterr().out
    assert "fallback rectangle returned" in out
    data = json.loads(rep.read_text())
    assert data["fallback"] and data["configurations_found"] == 0
    assert set(data) >= {"output_rect", "per_config_clause_log", "wall_time_ms"}


def test_run_fast_path(gen_dir, tmp_path, capsys):
    p = _point(tmp_path, RationalRect(F(1, 10), F(1, 5), 0, F(1, 10)))
    assert main(["run", "--inputs", str(gen_dir), "--point", p]) == 0
    assert "fast path" in capsys.readouterr().out


def test_run_schema_error(gen_dir, tmp_path, capsys):
    doc = encode(PointApprox(RationalRect(0, 1, 0, 1)))
    doc["rect"]["x_lo"]["den"] = 0
    bad = tmp_path / "bad.approx"
    bad.write_text(json.dumps(doc))
    assert main(["run", "--inputs", str(gen_dir), "--point", str(bad)]) == 1
    assert "zero denominator" in capsys.readouterr().err
    assert main(["run", "--inputs", str(tmp_path), "--point", str(bad)]) == 1


def test_run_inconsistency(gen_dir, config_file, tmp_path, monkeypatch, capsys):
    _, c = config_file
    a = write_file(tmp_path / "a.json", replace(c, phi_r0=RationalRect(0, F(1, 8), 0, F(1, 8))))
    b = write_file(tmp_path / "b.json", replace(c, k1=6, phi_r0=RationalRect(F(1, 4), F(1, 2), 0, F(1, 8))))
    monkeypatch.setattr(algorithms, "configuration_clauses", lambda *args, **kw: [ClauseResult("all", True)])
    monkeypatch.setattr(algorithms, "circular_diameter_bound", lambda c, bits=20: F(1, 2**20))
    # a thin point rect at 1 keeps the rotation small and r0 = 16/17 admissible
    p = _point(tmp_path, RationalRect(F(31, 32), F(33, 32), F(-1, 2**30), F(1, 2**30)))
    code = main(["run", "--inputs", str(gen_dir), "--point", p, "--config", str(a), "--config", str(b)])
    assert code == 3
    assert "inconsistency" in capsys.readouterr().err


def test_verify(gen_dir, config_file, tmp_path, capsys):
    path, c = config_file
    assert main(["verify", "--inputs", str(gen_dir), "--config", str(path)]) == 4
    out = capsys.readouterr().out
    assert "PASS  sigma substantiated" in out and "FAIL  (9) margin separation" in out
    bad_t = write_file(tmp_path / "t.json", replace(c, t=99))
    main(["verify", "--inputs", str(gen_dir), "--config", str(bad_t)])
    line = [ln for ln in capsys.readouterr().out.splitlines() if "(8)" in ln][0]
    assert line.startswith("FAIL") and "t in dom(g)" in line


def test_verify_empty_sigma_is_structural(gen_dir, config_file, tmp_path, capsys):
    path, _ = config_file
    doc = json.loads(path.read_text())
    doc["sigma"] = []
    bad = tmp_path / "empty.json"
    bad.write_text(json.dumps(doc))
    assert main(["verify", "--inputs", str(gen_dir), "--config", str(bad)]) == 1
    assert "sigma" in capsys.readouterr().err


def test_plot(gen_dir, config_file, tmp_path):
    path, _ = config_file
    bd = read_file(gen_dir / "boundary.approx")
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    assert main(["plot", "--inputs", str(gen_dir), "--out", str(a)]) == 0
    assert a.read_text().count('class="cover"') == len(bd.rects)
    assert main(["plot", "--inputs", str(gen_dir), "--config", str(path), "--out", str(b)]) == 0
    text = b.read_text()
    assert all(colour in text for colour in CHAIN_COLOURS.values())
    c = tmp_path / "c.svg"
    main(["plot", "--inputs", str(gen_dir), "--config", str(path), "--out", str(c)])
    assert c.read_bytes() == b.read_bytes()
    assert main(["plot", "--inputs", str(gen_dir), "--out", str(tmp_path / "no" / "dir.svg")]) == 2


def test_decimal_outward():
    third = F(1, 3)
    assert decimal_outward(third, False) == "0." + "3" * 20
    assert decimal_outward(third, True) == "0." + "3" * 19 + "4"
    assert decimal_outward(-third, False) == "-0." + "3" * 19 + "4"
    assert decimal_outward(F(2), True) == "2." + "0" * 20


def test_console_script(gen_dir, tmp_path):
    p = _point(tmp_path, RationalRect(F(1, 10), F(1, 5), 0, F(1, 10)))
    out = subprocess.run(
        [sys.executable, "-m", "boundext.cli", "run", "--inputs", str(gen_dir), "--point", p],
        capture_output=True, text=True, check=True,
    )
    assert "fast path" in out.stdout

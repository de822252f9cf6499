import json

import pytest

from eqhodge.cli import main
from eqhodge.complexes import builtin_complex
from eqhodge.fixtures import seam_cochain


@pytest.fixture()
def omega_file(tmp_path, torus):
    omega = seam_cochain(torus)
    path = tmp_path / "omega.json"
    path.write_text(json.dumps({
        "omega": [
            {"edge": list(e), "value": v}
            for e, v in sorted(omega.values.items())
        ]
    }))
    return path


def test_info(capsys):
    assert main(["info", "--input", "rp2"]) == 0
    out = capsys.readouterr().out
    assert "vertices: 6" in out
    assert "euler characteristic: 1" in out


def test_betti(capsys):
    assert main(["betti", "--input", "torus"]) == 0
    out = capsys.readouterr().out
    assert "(1, 2, 1)" in out


def test_complex_from_json(tmp_path, capsys):
    path = tmp_path / "tri.json"
    path.write_text(json.dumps({"name": "tri", "facets": [[0, 1, 2]]}))
    assert main(["betti", "--input", str(path)]) == 0
    assert "(1, 0, 0)" in capsys.readouterr().out


def test_missing_input_is_usage_error(capsys):
    assert main(["info", "--input", "no_such_file.json"]) == 2
    assert "error:" in capsys.readouterr().err


def test_schema_violation_is_usage_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"facets": "not-a-list"}))
    assert main(["info", "--input", str(path)]) == 2
    assert "schema" in capsys.readouterr().err


def test_delocalized_writes_report(tmp_path, capsys):
    code = main([
        "delocalized", "--input", "rp2", "--cover", "rp2_cover.json",
        "--out", str(tmp_path),
    ])
    assert code == 0
    out = capsys.readouterr().out
    assert "delocalized: PASS" in out
    text = (tmp_path / "delocalized.csv").read_text()
    assert text.splitlines()[0] == (
        "class,class_size,k,beta,beta_oracle,gamma,b_term,euler"
    )


def test_delocalized_json_format(tmp_path):
    code = main([
        "delocalized", "--input", "rp2", "--cover", "rp2_cover.json",
        "--out", str(tmp_path), "--format", "json", "--class", "1",
    ])
    assert code == 0
    data = json.loads((tmp_path / "delocalized.json").read_text())
    assert len(data) == 3
    assert data[0]["class"] == 1


def test_class_index_out_of_range(tmp_path, capsys):
    code = main([
        "delocalized", "--input", "rp2", "--cover", "rp2_cover.json",
        "--out", str(tmp_path), "--class", "7",
    ])
    assert code == 2
    assert "out of range" in capsys.readouterr().err


def test_witten_sweep(tmp_path, capsys):
    code = main([
        "witten-sweep", "--input", "rp2", "--cover", "rp2_cover.json",
        "--out", str(tmp_path), "--s-grid", "0,1", "--t-grid", "1",
    ])
    assert code == 0
    assert "witten-sweep: PASS" in capsys.readouterr().out
    lines = (tmp_path / "witten.csv").read_text().splitlines()
    assert lines[0] == "s,t,k,class,mu,gamma,partial_sum,verdict"
    assert len(lines) == 1 + 2 * 1 * 2 * 3  # s values * t values * classes * degrees


def test_morse_check(capsys):
    code = main([
        "morse-check", "--input", "rp2", "--cover", "rp2_cover.json",
    ])
    assert code == 0
    out = capsys.readouterr().out
    assert "critical counts: (1, 1, 1)" in out
    assert "morse-check: PASS" in out


def test_morse_check_rejects_bad_matching(tmp_path, capsys):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"pairs": [[[0], [1, 2]]]}))
    code = main([
        "morse-check", "--input", "rp2", "--matching", str(path),
    ])
    assert code == 1
    assert "not a facet" in capsys.readouterr().err


def test_oneform_check(tmp_path, omega_file, capsys):
    code = main([
        "oneform-check", "--input", "torus", "--omega", str(omega_file),
        "--out", str(tmp_path), "--m-list", "2,3",
    ])
    assert code == 0
    out = capsys.readouterr().out
    assert "oneform-check: PASS" in out
    assert "asymptotic demonstration" in out
    lines = (tmp_path / "oneform.csv").read_text().splitlines()
    assert lines[0] == "m,k,class,c_count,beta_e,beta_g,gamma,lhs,rhs,verdict"


def test_seed_flag_accepts_hex(tmp_path):
    code = main([
        "witten-sweep", "--input", "rp2", "--cover", "rp2_cover.json",
        "--out", str(tmp_path), "--s-grid", "0", "--t-grid", "1",
        "--seed", "0xDEADBEEF",
    ])
    assert code == 0

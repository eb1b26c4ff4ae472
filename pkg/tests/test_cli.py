import json

import pytest

from openkh.cli import EXIT_CROSSCHECK, EXIT_OK, EXIT_PARSE, main
from openkh.curves import humphries_system, save_system
from openkh.words import Surface


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compute_json_fig10(capsys):
    code, out, _ = run(
        capsys, "compute", "--surface", "1,1", "--word", "a2 a1^-1", "--json"
    )
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["word"] == "a2 a1^-1"
    assert doc["surface"] == [1, 1]
    assert doc["n"] == 2 and doc["n_neg"] == 1
    assert doc["ranks_by_grading"] == [[0, 1]]
    assert doc["total_rank"] == 1
    assert doc["psi_is_cycle"] is True
    assert doc["psi_survives"] is False
    assert doc["h1_order"] == 1
    assert "timing" in doc
    # round trip: serializing the parsed document reproduces the field set
    assert set(json.loads(json.dumps(doc))) == set(doc)


def test_compute_empty_word(capsys):
    code, out, _ = run(
        capsys, "compute", "--surface", "2,1", "--word", "", "--json"
    )
    doc = json.loads(out)
    assert doc["total_rank"] == 16
    assert doc["psi_survives"] is True
    assert doc["h1_order"] == "infinite"
    assert doc["verdict"] == "Inconclusive"


def test_verdict_subcommand(capsys):
    code, out, _ = run(
        capsys,
        "verdict",
        "--surface", "2,1",
        "--word", "a1 a2 a3 a4 a3^-5 a4^2 a0",
        "--json",
    )
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["verdict"] == "TightCertified"
    assert doc["total_rank"] == 9 and doc["h1_order"] == 9


def test_psi_only(capsys):
    code, out, _ = run(
        capsys,
        "compute", "--surface", "1,1", "--word", "a2 a1^-1", "--psi-only", "--json",
    )
    doc = json.loads(out)
    assert doc["psi_survives"] is False
    assert "total_rank" not in doc


def test_parse_errors_exit_code(capsys):
    code, _, err = run(capsys, "compute", "--surface", "1,1", "--word", "a9")
    assert code == EXIT_PARSE and "a9" in err
    code, _, err = run(capsys, "compute", "--surface", "x", "--word", "a1")
    assert code == EXIT_PARSE
    code, _, err = run(
        capsys, "compute", "--surface", "1,1", "--word", "a1^30"
    )
    assert code == EXIT_PARSE and "limit-letters" in err


def test_oracle_outputs(capsys):
    code, out, _ = run(
        capsys,
        "oracle", "--strands", "3", "--braid", "s1^-5 s2 s1^3 s2",
        "--det", "--json",
    )
    doc = json.loads(out)
    assert doc["determinant"] == 11
    assert doc["sl"] == -3


def test_oracle_kh_polynomial(capsys):
    code, out, _ = run(
        capsys, "oracle", "--strands", "2", "--braid", "s1^3", "--kh", "--json"
    )
    doc = json.loads(out)
    assert doc["bigraded_ranks"] == [[0, 2, 1], [2, 6, 1], [3, 8, 1]]
    assert doc["kh_polynomial"].startswith("t^0 q^2")


def test_oracle_crosscheck(capsys):
    code, out, _ = run(
        capsys,
        "oracle", "--strands", "3", "--braid", "s2 s1^-1", "--crosscheck", "--json",
    )
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["crosscheck"]["agree"] is True
    assert doc["crosscheck"]["engine_ranks"] == [[0, 1]]


def test_oracle_s_on_link_fails(capsys):
    code, _, err = run(capsys, "oracle", "--strands", "2", "--braid", "s1^2", "--s")
    assert code == EXIT_PARSE
    assert "components" in err


def test_curves_file_override(tmp_path, capsys):
    path = tmp_path / "humphries.cfg"
    save_system(humphries_system(Surface(1, 1)), path)
    code, out, _ = run(
        capsys,
        "compute", "--surface", "1,1", "--word", "a2 a1^-1",
        "--curves", str(path), "--json",
    )
    assert code == EXIT_OK
    assert json.loads(out)["total_rank"] == 1
    # mismatched surface in the file
    code, _, err = run(
        capsys,
        "compute", "--surface", "2,1", "--word", "a1", "--curves", str(path),
    )
    assert code == EXIT_PARSE


def test_env_curve_path(tmp_path, capsys, monkeypatch):
    path = tmp_path / "sys11.cfg"
    save_system(humphries_system(Surface(1, 1)), path)
    monkeypatch.setenv("OPENKH_CURVES", str(path))
    code, out, _ = run(
        capsys, "compute", "--surface", "1,1", "--word", "a1", "--json"
    )
    assert code == EXIT_OK


def test_human_output(capsys):
    code, out, _ = run(capsys, "compute", "--surface", "1,1", "--word", "a2 a1^-1")
    assert code == EXIT_OK
    assert "poincare polynomial" in out
    assert "verdict:" in out


def test_dump_cube_flag(capsys):
    code, out, _ = run(
        capsys,
        "compute", "--surface", "1,1", "--word", "a2 a1^-1", "--dump-cube",
    )
    assert "vertex (0, 0)" in out

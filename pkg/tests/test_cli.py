import json

import pytest

from qdcss.run import EXIT_INFEASIBLE, EXIT_IO, EXIT_OK, EXIT_SPEC, main, parse_p_grid
from qdcss.services.file_service import FileService
from qdcss.tools.simulation import CSV_HEADER


def _json_out(capsys):
    return json.loads(capsys.readouterr().out)


def test_construct_reports_parameters(capsys):
    assert main(["construct", "--code", "CB3_128_64", "--no-cache"]) == EXIT_OK
    out = _json_out(capsys)
    assert out["parameters"]["n"] == 128
    assert out["parameters"]["k_q"] == 64


def test_construct_save(tmp_path, capsys):
    target = tmp_path / "saved"
    assert main(["construct", "--code", "CA_128_32", "--save", str(target)]) == EXIT_OK
    capsys.readouterr()
    assert FileService.load_json(target / "spec.json")["z"] == [13, 1, 10, 5]
    lines = (target / "H.txt").read_text().splitlines()
    assert len(lines) == 48 and all(len(line) == 128 for line in lines)
    assert FileService.load_json(target / "parameters.json")["rank"] == 42


def test_relative_paths_land_in_output_dir(tmp_path, capsys):
    assert main(["construct", "--code", "CB3_128_64", "--no-cache", "--save", "cb3"]) == EXIT_OK
    capsys.readouterr()
    assert (tmp_path / "output" / "cb3" / "H.txt").exists()
    assert FileService.get_output_path("cb3") == tmp_path / "output" / "cb3"
    assert FileService.get_output_path(str(tmp_path / "abs")) == tmp_path / "abs"


def test_check(capsys):
    assert main(["check", "--code", "CB5_NU", "--no-cache"]) == EXIT_OK
    out = _json_out(capsys)
    assert out["orthogonal_by_signatures"] is True
    assert out["dpm_automorphisms"] is True
    assert out["difference_set_overlaps"] == 19


def test_cycles_blockwise(capsys):
    assert main(["cycles", "--code", "CB3_128_64", "--method", "blockwise", "--cap", "4"]) == EXIT_OK
    out = _json_out(capsys)
    assert out["blockwise"]["counts"] == {"4": 192}
    assert out["blockwise"]["avoidable_4"] == 0


def test_distance(capsys):
    assert main(["distance", "--code", "CB3_128_64", "--exhaustive", "2"]) == EXIT_OK
    out = _json_out(capsys)
    assert out["method"] == "exhaustive"
    assert out["classical_d"] is None


def test_simulate_empty_grid(capsys):
    assert main(["simulate", "--code", "CB3_128_64", "--p-grid", ""]) == EXIT_OK
    assert capsys.readouterr().out.splitlines() == [",".join(CSV_HEADER)]


def test_simulate_to_file(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    argv = ["simulate", "--code", "CB3_128_64", "--p-grid", "0,0.0", "--max-trials", "20", "--output", str(out)]
    assert main(argv) == EXIT_OK
    assert capsys.readouterr().out == ""
    rows = FileService.load_csv(out)
    assert rows[0] == CSV_HEADER
    assert [r[1] for r in rows[1:]] == ["20", "20"]


def test_heuristic_output(tmp_path, capsys):
    out = tmp_path / "found.json"
    assert main(["heuristic", "--ell", "8", "--u", "4", "--v", "3", "--seed", "2", "--output", str(out)]) == EXIT_OK
    capsys.readouterr()
    document = FileService.load_json(out)
    assert document["construction"] == "B"
    assert len(document["supports"]) == 4
    assert main(["construct", "--spec", str(out), "--no-cache"]) == EXIT_OK
    assert _json_out(capsys)["parameters"]["n"] == 1024


def test_spec_errors_exit_2(tmp_path, capsys):
    assert main(["construct", "--code", "NOPE"]) == EXIT_SPEC
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"construction": "B", "ell": 5, "u": 4, "v": 3, "seed": 1, "extra": 1}))
    assert main(["check", "--spec", str(bad)]) == EXIT_SPEC
    assert "extra" in capsys.readouterr().err
    assert main(["simulate", "--code", "CB3_128_64", "--p-grid", "0.1,abc"]) == EXIT_SPEC


def test_infeasible_exit_3(capsys):
    argv = ["heuristic", "--ell", "4", "--u", "16", "--v", "3", "--max-attempts", "3", "--seed", "0"]
    assert main(argv) == EXIT_INFEASIBLE
    assert capsys.readouterr().err.startswith("Error:")


def test_missing_file_exit_4(tmp_path, capsys):
    assert main(["construct", "--spec", str(tmp_path / "missing.json")]) == EXIT_IO


def test_usage_errors_exit_through_argparse():
    with pytest.raises(SystemExit):
        main(["distance", "--code", "CB3_128_64"])


def test_parse_p_grid():
    assert parse_p_grid("0.01, 0.02,0.03") == [0.01, 0.02, 0.03]
    assert parse_p_grid("") == []

import json

import pytest

from mrclab.cli import EXIT_ERROR, EXIT_FAIL, EXIT_PASS, build_parser, main
from mrclab.lib.settings import get_settings


def test_predict_for_22_points(capsys, tmp_path):
    out = tmp_path / "p22.json"
    assert main(["predict", "--z", "22", "--out", str(out)]) == EXIT_PASS
    assert "z=22 r=4" in capsys.readouterr().out
    payload = json.loads(out.read_text())
    assert payload["r"] == 4
    assert {"i": 3, "j": 4, "b": 3} in payload["entries"]


def test_predict_for_a_family(capsys):
    assert main(["predict", "--family", "p", "--a", "4"]) == EXIT_PASS
    assert "theorem_family(p,4)" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [
    ["predict", "--z", "5"],
    ["predict", "--family", "m"],
    ["verify", "--z", "12"],
    ["verify", "--family", "m", "--a", "3", "--trials", "0"],
    ["chain", "--a", "2"],
    ["chain", "--a", "3", "--to", "6"],
])
def test_errors_exit_with_2(capsys, argv):
    assert main(argv) == EXIT_ERROR
    assert capsys.readouterr().err.startswith("error:")


def test_missing_points_file(tmp_path):
    argv = ["verify", "--family", "m", "--a", "3", "--points-file", str(tmp_path / "none.txt")]
    assert main(argv) == EXIT_ERROR


def test_chain(capsys, tmp_path):
    out = tmp_path / "chain.json"
    assert main(["chain", "--a", "3", "--to", "7", "--out", str(out)]) == EXIT_PASS
    assert capsys.readouterr().out.rstrip().endswith("PASS")
    payload = json.loads(out.read_text())
    assert len(payload["steps"]) == 8
    assert payload["passed"]
    assert {"index", "a", "curve", "n", "n_prime", "deg_G", "shapes", "cancellations", "verdict"} <= set(payload["steps"][0])


def test_chain_defaults_to_one_pass(tmp_path):
    out = tmp_path / "chain.json"
    assert main(["chain", "--a", "4", "--out", str(out)]) == EXIT_PASS
    assert json.loads(out.read_text())["a_to"] == 6


def test_bad_environment(monkeypatch):
    monkeypatch.setenv("MRCLAB_PRIME", "lots")
    assert main(["predict", "--z", "22"]) == EXIT_ERROR


def test_bad_log_level(monkeypatch, capsys):
    monkeypatch.setenv("MRCLAB_LOG_LEVEL", "LOUD")
    assert main(["predict", "--z", "22"]) == EXIT_ERROR
    assert "MRCLAB_LOG_LEVEL" in capsys.readouterr().err


def test_log_level_is_case_insensitive(monkeypatch):
    monkeypatch.setenv("MRCLAB_LOG_LEVEL", "warning")
    assert get_settings().log_level == "WARNING"
    assert main(["predict", "--z", "22"]) == EXIT_PASS


def test_parser_defaults_follow_settings(monkeypatch):
    monkeypatch.setenv("MRCLAB_SEED", "17")
    args = build_parser(get_settings()).parse_args(["verify", "--z", "22"])
    assert args.seed == 17
    assert args.surface == "fermat"
    assert args.trials is None


def test_unknown_family_is_a_usage_error():
    with pytest.raises(SystemExit) as err:
        main(["predict", "--family", "q", "--a", "3"])
    assert err.value.code == 2


@pytest.mark.slow
def test_verify_run(tmp_path):
    out = tmp_path / "m3.json"
    code = main(["verify", "--family", "m", "--a", "3", "--trials", "1", "--seed", "5", "--out", str(out)])
    assert code in (EXIT_PASS, EXIT_FAIL)
    payload = json.loads(out.read_text())
    assert (code == EXIT_PASS) == payload["passed"]
    assert payload["config"]["z"] == 12
    assert payload["config"]["output"] == str(out)

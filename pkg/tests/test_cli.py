import json

import pytest

from cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, main
from utils.common import configure_logging, parse_tsv


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_disc_single_n(capsys):
    code, out, _ = run(capsys, "disc", "--family", "exp", "--t", "3", "--n", "5")
    assert code == EXIT_OK
    assert out == '{"family":"exp","t":3,"a":1,"b":3,"c":0,"n":5,"d":8}\n'


def test_disc_profile_with_failures_and_terms(capsys):
    code, out, _ = run(
        capsys, "disc", "--family", "exp", "--t", "3", "--n-max", "5", "--show-failures", "--show-terms"
    )
    assert code == EXIT_OK
    records = [json.loads(line) for line in out.splitlines()]
    assert [r["d"] for r in records] == [1, 2, 4, 4, 8]
    assert "failure_pair" not in records[0]
    assert records[4]["failure_pair"] == [0, 3, 7]
    assert records[4]["terms"] == ["0", "1", "10", "91", "820"]


def test_disc_tsv(capsys):
    code, out, _ = run(capsys, "disc", "--family", "squares", "--n-max", "3", "--format", "tsv")
    assert code == EXIT_OK
    rows = [parse_tsv(line) for line in out.splitlines()]
    assert rows == [["n", "d"], ["1", "1"], ["2", "2"], ["3", "6"]]


def test_disc_closed_mode_matches_brute(capsys):
    _, closed, _ = run(capsys, "disc", "--family", "exp", "--t", "7", "--a", "-3", "--c", "4", "--n-max", "40", "--mode", "closed")
    _, brute, _ = run(capsys, "disc", "--family", "exp", "--t", "7", "--a", "-3", "--c", "4", "--n-max", "40")
    assert closed == brute


def test_disc_shift_window(capsys):
    code, out, _ = run(capsys, "disc", "--family", "exp", "--t", "3", "--n", "4", "--shift-window", "3")
    assert code == EXIT_OK
    record = json.loads(out)
    assert record["start"] == 3
    assert record["d"] == 4


@pytest.mark.parametrize(
    "argv",
    [
        ["disc", "--family", "squares", "--n", "3", "--mode", "closed"],
        ["disc", "--family", "exp", "--t", "3"],
        ["disc", "--family", "exp", "--t", "3", "--n", "2", "--n-max", "4"],
        ["disc", "--family", "exp", "--t", "3", "--n", "0"],
        ["disc", "--family", "exp", "--t", "4", "--n", "3"],
        ["disc", "--family", "exp", "--t", "3", "--b", "3", "--n", "3"],
        ["disc", "--family", "exp", "--t", "3", "--n", "3", "--c", "-1"],
        ["witness", "--t", "3", "--k", "2", "--m", "9"],
        ["verify", "theorem", "--max-checks", "10"],
        ["verify", "theorem", "--t", "3..1"],
        ["verify", "lemma1", "--workers", "0"],
        ["scan", "--family", "squares", "--shifts=-1..2"],
        ["--log-level", "bogus", "disc", "--family", "squares", "--n", "3"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == EXIT_USAGE
    assert out == ""
    assert err.startswith("error: ")


def test_argparse_rejects_unknown_family():
    with pytest.raises(SystemExit) as exc:
        main(["disc", "--family", "cubes", "--n", "3"])
    assert exc.value.code == 2


def test_witness(capsys):
    code, out, _ = run(capsys, "witness", "--t", "3", "--k", "2", "--m", "6")
    assert code == EXIT_OK
    assert out == '{"t":3,"b":3,"k":2,"m":6,"i":1,"j":3,"modulus_full":48,"verified":true}\n'
    _, out, _ = run(capsys, "witness", "--t", "3", "--k", "2", "--m", "5")
    assert json.loads(out)["modulus_full"] == 40


def test_verify_small_theorem_grid(capsys):
    code, out, _ = run(capsys, "verify", "theorem", "--t", "3,5", "--a", "1", "--c", "0..2", "--n-max", "32")
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["failures"] == []
    assert report["checks_run"] == 2 * 3 * 32
    assert report["grid"]["c"] == "0..2"


def test_verify_lemma6(capsys):
    code, out, _ = run(capsys, "verify", "lemma6", "--t", "9", "--k-max", "6")
    assert code == EXIT_OK
    assert json.loads(out)["failures"] == []


def test_scan_squares(capsys):
    argv = ["scan", "--family", "squares", "--shifts", "0..2", "--n-max", "8"]
    code, out, _ = run(capsys, *argv)
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["invariant"] is False
    assert report["first_divergence"] == {"c": 1, "n": 3, "expected": 6, "actual": 8}
    assert "profile" not in report

    code, _, _ = run(capsys, *argv, "--expect-invariant")
    assert code == EXIT_FAILED


def test_scan_exp(capsys):
    code, out, _ = run(capsys, "scan", "--family", "exp", "--t", "3", "--shifts", "0..4", "--n-max", "16", "--expect-invariant")
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["invariant"] is True
    assert report["power_of_two_profile"] is True
    assert report["profile"][:5] == [1, 2, 4, 4, 8]


def test_verify_grid_starting_with_a_negative_value(capsys):
    code, out, _ = run(capsys, "verify", "theorem", "--t", "3", "--a=-3,1", "--c", "0", "--n-max", "8")
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["grid"]["a"] == "-3,1"
    assert report["checks_run"] == 16


def test_log_level_is_case_insensitive(capsys):
    code, out, _ = run(capsys, "--log-level", "debug", "disc", "--family", "squares", "--n", "3")
    assert code == EXIT_OK
    assert json.loads(out)["d"] == 6
    configure_logging("WARNING")

import json

import pytest

from ratbase.cli import main


def cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


BASE = ("--p", "3", "--q", "2")


@pytest.mark.parametrize("argv,expected", [
    (("repr", "7"), "2122"),
    (("eval", "21"), "2"),
    (("eval", "121"), "25/2^3"),
    (("value-repr", "33/2^3"), "2010"),
    (("add", "2122", "2122"), "212001"),
    (("run", "--converter", "5", "3"), "20"),
    (("run", "--incrementer", "121", "2"), "2010"),
    (("suffix-residue", "21"), "2 mod 9"),
    (("threshold", "--k", "2"), "m_k=2 guarantee=2"),
    (("max-iter", "2", "1"), "max_i=1 capped=false"),
])
def test_text_outputs(capsys, argv, expected):
    code, out, _ = cli(capsys, argv[0], *BASE, *argv[1:])
    assert code == 0
    assert out.strip() == expected


def test_json_output(capsys):
    code, out, _ = cli(capsys, "max-iter", *BASE, "2", "1", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"u": "2", "v": "1", "max_i": 1, "capped": False}


def test_tree_json(capsys):
    code, out, _ = cli(capsys, "tree", *BASE, "--depth", "2", "--format", "json")
    assert code == 0 and json.loads(out)["edges"][0]["digit"] == 2


@pytest.mark.parametrize("argv", [
    ("converter", *BASE, "--n", "5", "--format", "dot"),
    ("incrementer", *BASE, "121", "--format", "json"),
    ("approx", *BASE, "--k", "2", "--check-len", "8"),
    ("cover", *BASE, "--generators", "25/2^3"),
    ("monoid-lang", *BASE, "--generators", "1/2", "--max-len", "3"),
    ("blip-scan", *BASE, "--lpq", "10"),
    ("blip-scan", *BASE, "--example", "fibonacci_powers", "--not-closed"),
])
def test_other_commands_succeed(capsys, argv):
    code, out, _ = cli(capsys, *argv)
    assert code == 0 and out


def test_domain_errors_exit_1(capsys):
    assert cli(capsys, "value-repr", *BASE, "1/2^2")[0] == 1
    assert cli(capsys, "eval", *BASE, "5")[0] == 1
    assert cli(capsys, "cover", *BASE, "--generators", "1/2^2")[0] == 1


def test_usage_errors_exit_2(capsys):
    code, _, err = cli(capsys, "repr", "--p", "4", "--q", "2", "7")
    assert code == 2 and "--p/--q" in err
    assert cli(capsys, "repr", "--p", "3", "7")[0] == 2
    assert cli(capsys, "repr", *BASE, "-3")[0] == 2
    assert cli(capsys, "nope")[0] == 2


def test_out_file_and_determinism(capsys, tmp_path):
    target = tmp_path / "tree.dot"
    for _ in range(2):
        assert cli(capsys, "tree", *BASE, "--depth", "6", "--format", "dot", "--out", str(target))[0] == 0
        first = target.read_text()
    assert cli(capsys, "tree", *BASE, "--depth", "6", "--format", "dot")[1] == first


def test_words_file(capsys, tmp_path):
    f = tmp_path / "words.txt"
    f.write_text("\n" + "\n".join("10" * k for k in range(1, 7)) + "\n" + "\n".join(
        "10" * k + "1" for k in range(6)) + "\n")
    code, out, _ = cli(capsys, "blip-scan", *BASE, "--words-file", str(f), "--format", "json")
    assert code == 0
    assert {"u": "", "v": "10", "max_i": 6, "capped": True} in [json.loads(x) for x in out.splitlines()]


def test_check_command(capsys):
    code, out, _ = cli(capsys, "check", *BASE, "--suite", "core")
    assert code == 0
    assert out.strip().splitlines()[-1].split()[:2] == ["overall", "PASS"]

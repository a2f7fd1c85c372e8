import io
import json

import pytest

from toeplitz_hankel import RationalSymbol, T
from toeplitz_hankel.cli import main

t = T

MONOMIAL = {"a": {"num": {"-2": 1}}, "b": {"num": {"2": 1}}, "f": {"num": {"6": 1, "4": 3}}}
LINEAR_UNIT = {"a": {"num": {"0": 1, "1": 2}}, "b": {"num": {"0": 1, "1": 2}}, "f": {"num": {"0": 1}}}


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(path)


def test_solve_monomial_pair(tmp_path, capsys):
    path = write(tmp_path, "p.json", MONOMIAL)
    assert main(["solve", "-i", path]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["case"] == "PP" and out["verdict"] == "solved"
    assert RationalSymbol.from_json(out["particular"]).is_close(t**8 + 3 * t**6)
    assert out["arity"] == 2


def test_solve_not_applicable_prints_conditions(tmp_path, capsys):
    path = write(tmp_path, "p.json", LINEAR_UNIT)
    assert main(["solve", "-i", path]) == 2
    err = capsys.readouterr().err
    assert "condition j=0" in err and "condition j=1" in err


def test_solve_output_file_is_deterministic(tmp_path):
    path = write(tmp_path, "p.json", MONOMIAL)
    one, two = tmp_path / "one.json", tmp_path / "two.json"
    assert main(["solve", "-i", path, "-o", str(one), "--oracle", "16"]) == 0
    assert main(["solve", "-i", path, "-o", str(two), "--oracle", "16"]) == 0
    assert one.read_bytes() == two.read_bytes()
    assert json.loads(one.read_text())["oracle"]["null_dimension"] == 2


def test_solve_text_format_and_stdin(tmp_path, capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps({**MONOMIAL, "options": {"format": "text"}})))
    assert main(["solve", "-i", "-"]) == 0
    out = capsys.readouterr().out
    assert "case: PP" in out and "kernel arity: 2" in out


@pytest.mark.parametrize("content", [
    "{bad",
    {**MONOMIAL, "g": {"num": {"0": 1}}},
    {**MONOMIAL, "options": {"colour": "red"}},
    {"a": {"num": {"0": 1}}, "b": {"num": {"0": 1}}},
    {"a": {"num": {"0": -1, "1": 1}}, "b": {"num": {"0": -1, "1": 1}}, "f": {"num": {"0": 1}}},
    {"a": {"num": {"1": 2}}, "b": {"num": {"0": 1}}, "f": {"num": {"0": 1}}},
])
def test_invalid_input_exit_four(tmp_path, capsys, content):
    path = write(tmp_path, "p.json", content)
    assert main(["solve", "-i", path]) == 4
    assert capsys.readouterr().err.startswith("error:")


def test_missing_file_exit_four(tmp_path):
    assert main(["solve", "-i", str(tmp_path / "missing.json")]) == 4


def test_verify(tmp_path, capsys):
    path = write(tmp_path, "p.json", MONOMIAL)
    good = write(tmp_path, "good.json", {"phi": (t**8 + 3 * t**6).to_json()})
    wrong = write(tmp_path, "wrong.json", (t**2 - t**3).to_json())
    combo = write(tmp_path, "combo.json", {"particular": (t**8 + 3 * t**6 + 2 * (t - t**2) - 1j * (1 - t**3)).to_json()})
    assert main(["verify", "-i", path, "--phi", good]) == 0
    assert json.loads(capsys.readouterr().out)["residual"] <= 1e-10
    assert main(["verify", "-i", path, "--phi", wrong]) == 1
    assert json.loads(capsys.readouterr().out)["residual"] > 1
    assert main(["verify", "-i", path, "--phi", combo]) == 0


def test_verify_accepts_solve_output(tmp_path):
    path = write(tmp_path, "p.json", MONOMIAL)
    sol = tmp_path / "sol.json"
    main(["solve", "-i", path, "-o", str(sol)])
    assert main(["verify", "-i", path, "--phi", str(sol)]) == 0


def test_oracle_examples(tmp_path, capsys):
    path = write(tmp_path, "p.json", MONOMIAL)
    assert main(["oracle", "-i", path, "--order", "32"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["max_deviation"] < 1e-8 and out["null_dimension"] == 2

    f = (2 * t + 1) * (t**2 + t)
    path = write(tmp_path, "q.json", {**LINEAR_UNIT, "f": f.to_json()})
    assert main(["oracle", "-i", path, "-N", "64"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["max_deviation"] < 1e-6 and out["null_dimension"] == 0


def test_oracle_order_one(tmp_path, capsys):
    path = write(tmp_path, "p.json", MONOMIAL)
    assert main(["oracle", "-i", path, "--order", "1", "--format", "text"]) == 0
    assert "oracle order: 1" in capsys.readouterr().out
    assert main(["oracle", "-i", path, "--order", "0"]) == 4


def test_help_documents_defaults(capsys):
    with pytest.raises(SystemExit):
        main(["solve", "--help"])
    out = capsys.readouterr().out
    assert "default 1e-08" in out and "--circle-tolerance" in out

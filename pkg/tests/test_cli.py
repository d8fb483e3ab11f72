import json

import pytest

from flagkin.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_dim_example(capsys):
    code, out, _ = run(capsys, "dim", "--n", "5")
    assert code == 0
    assert [int(line.split(":")[1]) for line in out.splitlines()[1:]] == [1, 10, 20, 10, 1]


def test_dim_with_p(capsys):
    code, out, _ = run(capsys, "dim", "--n", "5", "--p", "2", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["k,dimension", "0,1", "1,2", "2,4", "3,2", "4,1"]


def test_basis_chord(capsys):
    code, out, _ = run(capsys, "basis", "--n", "3", "--k", "1", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["count"] == 3
    assert data["monomials"] == ["D{2}M{}", "D{3}M{}", "D{}M{(2,3)}"]


def test_coproduct_json(capsys):
    code, out, _ = run(
        capsys,
        "coproduct", "--n", "4", "--p", "1", "--basis", "S", "--k", "1", "--i", "0",
        "--format", "json",
    )
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == "flagkin/table/v1"
    assert data["input"] == "S[1,0]"
    coeffs = {(t["left"], t["right"]): t["coeff"] for t in data["terms"]}
    assert coeffs[("S[0,0]", "S[1,0]")] == {
        "num": 1,
        "den": 1,
        "units": [{"sym": "omega(4)", "exp": -1}],
    }


def test_output_is_byte_identical(capsys):
    args = ("table", "--n", "4", "--p", "1", "--basis", "Phi", "--format", "json")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


def test_product(capsys):
    code, out, _ = run(
        capsys,
        "product", "--n", "4", "--p", "1", "--basis", "Phi",
        "--k", "1", "--a", "0", "--k2", "1", "--a2", "1", "--format", "json",
    )
    assert code == 0
    data = json.loads(out)
    assert data["terms"] == [
        {
            "label": "Phi[2,1]",
            "coeff": {"num": 1, "den": 1, "units": [{"sym": "omega(4)", "exp": -1}]},
        }
    ]


def test_verify_success(capsys):
    code, out, _ = run(capsys, "verify", "--n", "3", "--p", "1")
    assert code == 0
    assert out.splitlines()[0] == "verify n=3 p=1"
    assert all("[ok]" in line for line in out.splitlines()[1:])


def test_validation_error_exit_code(capsys):
    code, _, err = run(capsys, "dim", "--n", "99")
    assert code == 1 and "max-n" in err
    code, _, err = run(capsys, "coproduct", "--n", "4", "--p", "1", "--k", "9", "--i", "0")
    assert code == 1
    code, _, err = run(capsys, "coproduct", "--n", "4", "--p", "1", "--basis", "S", "--k", "1")
    assert code == 1 and "--i" in err


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["dim"])  # missing required --n
    assert exc.value.code == 1


def test_max_n_env_override(capsys, monkeypatch):
    monkeypatch.setenv("FLAGKIN_MAX_N", "9")
    code, out, _ = run(capsys, "dim", "--n", "9")
    assert code == 0
    monkeypatch.setenv("FLAGKIN_MAX_N", "4")
    code, _, err = run(capsys, "dim", "--n", "5")
    assert code == 1


def test_output_file(tmp_path, capsys):
    path = tmp_path / "out.json"
    code, out, _ = run(
        capsys, "dim", "--n", "4", "--format", "json", "--output", str(path)
    )
    assert code == 0 and out == ""
    data = json.loads(path.read_text())
    assert [r["dimension"] for r in data["rows"]] == [1, 6, 6, 1]


def test_coproduct_other_formats(capsys):
    code, out, _ = run(
        capsys, "coproduct", "--n", "4", "--p", "1", "--basis", "S",
        "--k", "1", "--i", "0", "--format", "csv",
    )
    assert code == 0
    assert out.splitlines()[0] == "left,right,num,den,units"
    code, out, _ = run(
        capsys, "coproduct", "--n", "4", "--p", "1", "--basis", "S",
        "--k", "1", "--i", "0", "--format", "latex",
    )
    assert code == 0 and "\\begin{tabular}" in out and "\\omega_{4}^{-1}" in out
    code, out, _ = run(
        capsys, "table", "--n", "3", "--p", "1", "--basis", "Phi", "--format", "csv"
    )
    assert code == 0 and out.splitlines()[0] == "input,left,right,num,den,units"


def test_verify_failure_exit_code(capsys, monkeypatch):
    import flagkin.cli as cli

    broken = (("always fails", lambda ctx: "planted counterexample"),) + cli.VERIFY_SUITES
    monkeypatch.setattr(cli, "VERIFY_SUITES", broken)
    code, out, _ = run(capsys, "verify", "--n", "3", "--p", "1")
    assert code == 2
    assert "first counterexample: always fails: planted counterexample" in out


def test_exceptional_coproduct_cli(capsys):
    code, out, _ = run(capsys, "coproduct", "--n", "3", "--p", "1", "--basis", "Phi", "--ex")
    assert code == 0
    assert "PhiEx (x) Phi[0,0]" in out
    code, _, err = run(capsys, "coproduct", "--n", "4", "--p", "1", "--basis", "Phi", "--ex")
    assert code == 1

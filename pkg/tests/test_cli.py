import math
import subprocess
import sys

import pytest

from magneton import cli

GAMMA = 0.5772156649015328606065


def run(argv, capsys):
    code = cli.main(argv)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def data_rows(out: str) -> list[str]:
    return [ln for ln in out.splitlines() if ln and not ln.startswith("#")]


def parse_csv(out: str) -> tuple[list[str], list[list[str]]]:
    rows = data_rows(out)
    return rows[0].split(","), [r.split(",") for r in rows[1:]]


def drop_timestamp(out: str) -> str:
    return "\n".join(ln for ln in out.splitlines() if not ln.startswith("# timestamp:"))


def test_version_subprocess():
    proc = subprocess.run(
        ["magneton", "--version"], capture_output=True, text=True, timeout=60
    )
    assert proc.returncode == 0
    assert "0.1.0" in proc.stdout


def test_table_values(capsys):
    code, out, _ = run(["table", "--rho", "2", "0.5", "0.55", "0.45"], capsys)
    assert code == 0
    header, body = parse_csv(out)
    assert header == ["rho", "phi_numeric", "phi_closed", "abs_diff", "symmetry_f"]
    by_rho = {r[0]: r for r in body}
    assert abs(float(by_rho["2"][2]) - 0.922933) < 1e-6
    assert by_rho["0.5"][2] == "0"  # exactly zero at the anchor
    assert abs(float(by_rho["0.5"][1]) - 0.00026) < 1e-3
    diff = float(by_rho["0.55"][1]) - float(by_rho["0.45"][1])
    assert abs(diff - 0.49233) < 5e-3
    for r in body:
        assert abs(float(r[3]) - abs(float(r[1]) - float(r[2]))) < 1e-12
    assert "# command: table" in out
    assert "conditional" in out


def test_table_range_spec(capsys):
    code, out, _ = run(["table", "--rho", "0.6:0.8:0.1", "--tol", "1e-6"], capsys)
    assert code == 0
    _, body = parse_csv(out)
    assert [r[0] for r in body] == ["0.6", "0.7", "0.8"]


def test_table_bad_rho(capsys):
    code, _, err = run(["table", "--rho", "abc"], capsys)
    assert code == 2
    assert "error" in err


def test_table_depth_budget(capsys):
    code, _, err = run(["table", "--rho", "0.5", "--max-depth", "4"], capsys)
    assert code == 3
    assert "not converged" in err


def test_table_out_file(tmp_path, capsys):
    target = tmp_path / "t.csv"
    code, out, _ = run(
        ["table", "--rho", "2", "--tol", "1e-6", "--out", str(target)], capsys
    )
    assert code == 0
    assert out == ""
    text = target.read_text()
    assert "rho,phi_numeric" in text


def test_table_thread_invariance(monkeypatch, capsys):
    monkeypatch.setenv("MAGNETON_THREADS", "3")
    _, out3, _ = run(["table", "--rho", "0.8", "2", "--tol", "1e-6"], capsys)
    monkeypatch.setenv("MAGNETON_THREADS", "1")
    _, out1, _ = run(["table", "--rho", "0.8", "2", "--tol", "1e-6"], capsys)
    assert drop_timestamp(out3) == drop_timestamp(out1)


def test_table_bad_thread_env(monkeypatch, capsys):
    monkeypatch.setenv("MAGNETON_THREADS", "zero")
    code, _, err = run(["table", "--rho", "2", "--tol", "1e-6"], capsys)
    assert code == 2
    assert "MAGNETON_THREADS" in err


def test_figure_phi(capsys):
    code, out, _ = run(["figure", "phi"], capsys)
    assert code == 0
    header, body = parse_csv(out)
    assert header == ["rho", "phi_closed"]
    assert len(body) == 501  # -2..3 by 0.01 inclusive
    vals = {r[0]: float(r[1]) for r in body}
    assert vals["0.5"] == 0.0
    assert vals["0.4"] < 0.0 < vals["0.6"]
    signs = [v > 0 for r, v in sorted(vals.items(), key=lambda kv: float(kv[0])) if v != 0.0]
    assert sum(1 for a, b in zip(signs, signs[1:]) if a != b) == 1


def test_figure_field(capsys):
    code, out, _ = run(["figure", "field"], capsys)
    assert code == 0
    header, body = parse_csv(out)
    assert header == ["rho", "field_E"]
    assert "jumps excluded" in out
    keys = [r[0] for r in body]
    for jump in ("0", "0.5", "1"):
        assert jump not in keys
    rhos = [float(k) for k in keys]
    assert rhos == sorted(rhos)
    assert len(set(keys)) == len(keys)
    vals = dict(zip(keys, (float(r[1]) for r in body)))
    # one-sided flank pairs carry the jump sizes
    assert abs((vals["1.000001"] - vals["0.999999"]) + 4.0 * math.pi) < 1e-3
    jump0 = math.pi * (-4.0 + GAMMA + 3.0 * math.log(2.0) + 0.5 * math.pi)
    assert abs((vals["1e-06"] - vals["-1e-06"]) - jump0) < 1e-3
    lam_jump = 2.0 * math.pi * (1.0 + 0.5 * GAMMA - 0.5 * math.log(4.0 * math.pi))
    assert abs((vals["0.500001"] - vals["0.499999"]) - lam_jump) < 1e-3


def test_figure_field_endpoint_on_jump(capsys):
    code, _, err = run(["figure", "field", "--lo", "0.5", "--hi", "2"], capsys)
    assert code == 2
    assert "sits on a jump" in err
    assert "offset" in err


def test_figure_well(capsys):
    code, out, _ = run(["figure", "well"], capsys)
    assert code == 0
    header, body = parse_csv(out)
    assert header == ["x", "well_S"]
    assert len(body) == 201
    by_x = {r[0]: r[1] for r in body}
    assert by_x["1"] == "0"
    for xs, vs in by_x.items():
        mirror = f"{2.0 - float(xs):.12g}"
        assert by_x[mirror] == vs  # identical strings, not just close


def test_figure_well_asymmetric_grid(capsys):
    code, _, err = run(["figure", "well", "--lo", "0.2", "--hi", "1.9"], capsys)
    assert code == 2
    assert "symmetric" in err


def test_figure_xi(capsys):
    code, out, _ = run(["figure", "xi"], capsys)
    assert code == 0
    header, body = parse_csv(out)
    assert header == ["x", "sym_log_xi"]
    assert len(body) == 201
    by_x = {r[0]: r[1] for r in body}
    assert abs(float(by_x["1"])) < 1e-12
    assert by_x["0"] == by_x["2"]
    assert abs(float(by_x["2"]) - 0.0461175971813) < 1e-9
    for xs, vs in by_x.items():
        mirror = f"{2.0 - float(xs):.12g}"
        assert by_x[mirror] == vs


def test_figure_unknown_name(capsys):
    with pytest.raises(SystemExit):
        cli.main(["figure", "nope"])
    capsys.readouterr()


def test_constants(capsys):
    code, out, _ = run(["constants"], capsys)
    assert code == 0
    header, body = parse_csv(out)
    assert header == ["name", "analytic", "numeric", "discrepancy", "tag"]
    names = [r[0] for r in body]
    for want in (
        "jump_at_one",
        "jump_at_zero",
        "lambda_one",
        "volchkov_delta",
        "slope_at_half",
        "field_half_plus",
        "x1",
        "x2",
        "xi_at_x1",
    ):
        assert want in names
    tags = {r[0]: r[4] for r in body}
    assert tags["lambda_one"] == "rh-conditional"
    assert tags["x1"] == "unconditional"


def test_constants_refuses_outside_mode(capsys):
    code, _, err = run(["constants", "--rh-mode", "outside-only"], capsys)
    assert code == 2
    assert "conditional" in err


def test_taylor_cmd(capsys):
    code, out, _ = run(["taylor", "--order", "3", "--prime-limit", "100000"], capsys)
    assert code == 0
    assert "n,c_n,tail_bound_n" in out
    assert "lambda_one_gap" in out
    assert "c0_check" in out


def test_taylor_order_cap(capsys):
    code, _, err = run(["taylor", "--order", "21"], capsys)
    assert code == 2
    assert "order" in err


def test_unknown_command(capsys):
    with pytest.raises(SystemExit):
        cli.main(["nope"])
    capsys.readouterr()

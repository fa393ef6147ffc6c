"""CLI behavior: rendering, exit codes, stdin handling, env budgets."""
import io
import json
import sys

from mcnl.boolfn import format_tt_text, parse_tt_text
from mcnl.circuit import parse_circuit_text
from mcnl.cli import main
from mcnl.families import inner_product_fn

IP4_TT = format_tt_text(inner_product_fn(2))
IP4_CIRCUIT = (
    "circuit 4\ng1 = AND x1 x3\ng2 = AND x2 x4\ng3 = XOR g1 g2\noutputs g3\n")


def run(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_fn_analyze_json_deterministic(capsys):
    code, out1, err = run(["--format", "json", "fn", "analyze", "ip:2"], capsys)
    assert code == 0 and err == ""
    assert out1 == ('{"anf_size":2,"classification":"bent","degree":2,'
                    '"m":1,"n":4,"nl":6,"vector_nl":6}\n')
    _, out2, _ = run(["--format", "json", "fn", "analyze", "ip:2"], capsys)
    assert out2 == out1


def test_fn_analyze_text(capsys):
    code, out, _ = run(["fn", "analyze", "ip:2"], capsys)
    assert code == 0
    assert "nl = 6\n" in out and "classification = bent\n" in out
    code, out, _ = run(["fn", "analyze", "gold:5:1"], capsys)
    assert "nl = none\n" in out  # no scalar nonlinearity when m > 1
    assert "vector_nl = 12\n" in out


def test_fn_analyze_tt_file_and_stdin(tmp_path, capsys, monkeypatch):
    path = tmp_path / "ip4.tt"
    path.write_text(IP4_TT)
    code, out, _ = run(["fn", "analyze", str(path)], capsys)
    assert code == 0 and "nl = 6\n" in out
    monkeypatch.setattr(sys, "stdin", io.StringIO(IP4_TT))
    code, out, _ = run(["fn", "analyze", "-"], capsys)
    assert code == 0 and "nl = 6\n" in out


def test_fn_analyze_field_flag(capsys):
    code, out, _ = run(
        ["fn", "analyze", "fieldmult:3", "--field", "gf2^3/0xd"], capsys)
    assert code == 0 and "vector_nl = 28\n" in out


def test_synth_monomials_text(capsys):
    code, out, _ = run(["synth", "monomials", "3"], capsys)
    assert code == 0
    first, rest = out.split("\n", 1)
    assert first.startswith("# plan {")
    assert json.loads(first[len("# plan "):]) == {
        "n": 3, "predicted_and_count": 4}
    c = parse_circuit_text(rest)
    assert c.n == 3 and c.m == 4


def test_synth_universal_stdin(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(IP4_TT))
    code, out, _ = run(["synth", "universal", "-", "-k", "2"], capsys)
    assert code == 0
    c = parse_circuit_text(out.split("\n", 1)[1])
    assert c.n == 4 and c.m == 1


def test_circuit_commands(tmp_path, capsys):
    path = tmp_path / "ip4.circ"
    path.write_text(IP4_CIRCUIT)
    code, out, _ = run(["circuit", "analyze", str(path)], capsys)
    assert code == 0 and "and_count = 2\n" in out
    code, out, _ = run(["circuit", "eval", str(path), "0x5"], capsys)
    assert code == 0 and out == "bits = 1\n"
    code, out, _ = run(["circuit", "tt", str(path)], capsys)
    assert code == 0 and parse_tt_text(out).tables == inner_product_fn(2).tables
    code, out, _ = run(["circuit", "certify", str(path)], capsys)
    assert code == 0
    assert "theorem_holds = true\n" in out and "notes = \n" in out


def test_bounds_text(capsys):
    code, out, _ = run(["bounds", "gv", "4", "3"], capsys)
    assert code == 0 and "min_length = 7\n" in out
    code, out, _ = run(["bounds", "mrrw", "200", "100"], capsys)
    assert "min_length = 466\n" in out
    assert "label = asymptotic-bound extrapolation\n" in out
    code, out, _ = run(["bounds", "mrrw-B", "0.32", "0.2155"], capsys)
    assert "value = 0.4276053628252747\n" in out
    code, out, _ = run(["bounds", "counting", "12", "1"], capsys)
    assert "value = 39.5\n" in out and "vacuous = false\n" in out
    code, out, _ = run(["bounds", "nl-mc", "4", "2"], capsys)
    assert "value = 6\n" in out
    code, out, _ = run(["bounds", "nl-mc", "4", "--nl", "6"], capsys)
    assert "direction = mc_lower_from_nl\n" in out and "value = 2\n" in out
    code, out, _ = run(["bounds", "rankprob", "8", "4"], capsys)
    assert "bound = 0.00390625\n" in out and "empirical = none\n" in out


def test_nl_mc_requires_exactly_one(capsys):
    code, _, err = run(["bounds", "nl-mc", "4"], capsys)
    assert code == 2
    assert err == ("mcnl: validation: provide a positional AND count or "
                   "--nl, not both\n")
    code, _, err = run(["bounds", "nl-mc", "4", "2", "--nl", "6"], capsys)
    assert code == 2


def test_oracle_commands(tmp_path, capsys):
    path = tmp_path / "ip4.tt"
    path.write_text(IP4_TT)
    code, out, _ = run(["oracle", "nl", str(path)], capsys)
    assert code == 0 and out == "nl = 6\n"
    code, out, _ = run(["oracle", "mc", str(path)], capsys)
    assert "mc = 2\n" in out and "exceeds_k_max = false\n" in out
    code, out, _ = run(["oracle", "mc", str(path), "--kmax", "1"], capsys)
    assert "mc = none\n" in out and "exceeds_k_max = true\n" in out


def test_exit_codes(tmp_path, capsys):
    code, _, err = run(["fn", "analyze", str(tmp_path / "missing.tt")], capsys)
    assert code == 4 and err.startswith("mcnl: io: cannot read ")

    code, _, err = run(["bounds", "gv", "0", "3"], capsys)
    assert code == 2 and err.startswith("mcnl: validation:")

    path = tmp_path / "and4.tt"
    path.write_text("tt 4 1\n0000000000000001\n")
    code, _, err = run(
        ["oracle", "mc", str(path), "--node-cap", "10"], capsys)
    assert code == 3 and err.startswith("mcnl: budget:")

    bad = tmp_path / "bad.circ"
    bad.write_text("circuit 4\ng1 = AND x1\noutputs g1\n")
    code, _, err = run(["circuit", "analyze", str(bad)], capsys)
    assert code == 4 and err.startswith("mcnl: parse: line 2")


def test_env_budget_override(capsys, monkeypatch):
    monkeypatch.setenv("MCNL_SCALAR_N_CAP", "5")
    code, _, err = run(["fn", "analyze", "gold:7:1"], capsys)
    assert code == 3 and err.startswith("mcnl: budget:")
    code, _, _ = run(["fn", "analyze", "gold:5:1"], capsys)
    assert code == 0  # within the lowered cap

    monkeypatch.setenv("MCNL_SCALAR_N_CAP", "abc")
    code, _, err = run(["fn", "analyze", "ip:2"], capsys)
    assert code == 2
    assert err == "mcnl: validation: MCNL_SCALAR_N_CAP must be an integer, got 'abc'\n"


def test_remote_server_connection_failure(capsys):
    code, _, err = run(
        ["--server", "http://127.0.0.1:9", "fn", "analyze", "ip:2"], capsys)
    assert code == 4 and err.startswith("mcnl: io: request to /fn/analyze failed")

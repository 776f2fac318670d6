import json

import pytest

from zxarith.circuit import Circuit, T, count_resources
from zxarith.cli import (
    EXIT_IO,
    EXIT_NOT_EQUIVALENT,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_UNKNOWN,
    EXIT_WIDTH,
    build_parser,
    main,
)
from zxarith.qasm import emit_qasm, read_qasm, write_qasm


@pytest.fixture(scope="module")
def mult6(tmp_path_factory):
    """The 6-bit multiplier, generated and optimised once for the module."""
    d = tmp_path_factory.mktemp("m6")
    src, dst = d / "m6.qasm", d / "m6_opt.qasm"
    assert main(["gen", "multiplier", "--bits", "6", "--out", str(src)]) == EXIT_OK
    return src, dst


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_gen_then_stats(mult6, capsys):
    src, _ = mult6
    capsys.readouterr()
    assert main(["stats", "--in", str(src), "--json"]) == EXIT_OK
    rep = _json(capsys)
    assert rep["t_count"] == 742 and rep["qubits"] == 25
    assert main(["stats", "--in", str(src)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "T-gate count" in out and "742" in out


def test_opt_reduces_and_verifies(mult6, capsys):
    src, dst = mult6
    capsys.readouterr()
    assert main(["opt", "--in", str(src), "--out", str(dst), "--json"]) == EXIT_OK
    report = _json(capsys)
    assert report["after"]["t_count"] < 742
    assert report["verification"] == "Equivalent"
    assert report["t_reduction_percent"] == pytest.approx(
        100 * (742 - report["after"]["t_count"]) / 742, abs=0.01)
    # the written file is exactly what the report describes
    assert main(["stats", "--in", str(dst), "--json"]) == EXIT_OK
    assert _json(capsys) == report["after"]


def test_opt_table_mentions_reference(tmp_path, capsys):
    src = tmp_path / "m.qasm"
    main(["gen", "multiplier", "--bits", "6", "--out", str(src)])
    assert main(["opt", "--in", str(src), "--out", str(tmp_path / "o.qasm"), "--no-verify"]) == EXIT_OK
    out = capsys.readouterr().out
    for row in ("Number Of Qubits", "Number of Gates", "T-gate count", "Clifford Gate count"):
        assert row in out
    assert "742 -> 488" in out and "verification: skipped" in out


def test_opt_empty_circuit(tmp_path, capsys):
    src, dst = tmp_path / "e.qasm", tmp_path / "e_opt.qasm"
    write_qasm(Circuit(3), src)
    assert main(["opt", "--in", str(src), "--out", str(dst), "--json"]) == EXIT_OK
    assert dst.read_text() == src.read_text()
    assert _json(capsys)["t_reduction_percent"] == 0


def test_opt_trace_file(tmp_path, capsys):
    src, trace = tmp_path / "t.qasm", tmp_path / "trace.tsv"
    assert main(["gen", "toffoli", "--out", str(src)]) == EXIT_OK
    assert main(["opt", "--in", str(src), "--out", str(tmp_path / "o.qasm"), "--trace", str(trace)]) == EXIT_OK
    assert trace.read_text().strip()


def test_deterministic(tmp_path):
    src = tmp_path / "a.qasm"
    main(["gen", "adder", "--bits", "3", "--out", str(src)])
    outs = []
    for k in range(2):
        dst = tmp_path / f"o{k}.qasm"
        main(["opt", "--in", str(src), "--out", str(dst), "--no-verify"])
        outs.append(dst.read_text())
    assert outs[0] == outs[1]


def test_gen_native_and_stdout(capsys):
    assert main(["gen", "toffoli", "--native", "--out", "-"]) == EXIT_OK
    assert capsys.readouterr().out.strip().endswith("ccx q[0],q[1],q[2];")


def test_verify_modes(tmp_path, capsys):
    a, b, c = tmp_path / "a.qasm", tmp_path / "b.qasm", tmp_path / "c.qasm"
    main(["gen", "toffoli", "--out", str(a)])
    main(["gen", "toffoli", "--native", "--out", str(b)])
    write_qasm(Circuit(3, [T(0)]), c)
    for mode in ("unitary", "basis", "zx"):
        assert main(["verify", "--a", str(a), "--b", str(b), "--mode", mode]) == EXIT_OK
    assert "Equivalent (basis, Checked(8))" in capsys.readouterr().out
    assert main(["verify", "--a", str(a), "--b", str(c)]) == EXIT_NOT_EQUIVALENT
    assert main(["verify", "--a", str(a), "--b", str(c), "--mode", "zx"]) == EXIT_UNKNOWN


def test_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.qasm"
    bad.write_text("qreg q[1];\nfoo q[0];\n")
    assert main(["stats", "--in", str(tmp_path / "missing.qasm")]) == EXIT_IO
    assert main(["stats", "--in", str(bad)]) == EXIT_PARSE
    assert "2:1" in capsys.readouterr().err
    assert main(["gen", "multiplier", "--bits", "1", "--out", str(tmp_path / "x")]) == EXIT_WIDTH
    wide = tmp_path / "wide.qasm"
    write_qasm(Circuit(27), wide)
    assert main(["verify", "--a", str(wide), "--b", str(wide), "--mode", "unitary"]) == EXIT_WIDTH
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2


def test_help_lists_exit_codes():
    text = build_parser().format_help()
    assert "exit codes:" in text and "QASM parse error" in text


def test_write_read_helpers(tmp_path):
    c = Circuit(2, [T(1)])
    write_qasm(c, tmp_path / "c.qasm")
    assert read_qasm(tmp_path / "c.qasm") == c
    assert (tmp_path / "c.qasm").read_text() == emit_qasm(c)
    assert count_resources(c).t_count == 1

"""Command line front end: generate, optimise, report and verify QASM circuits."""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import arithgen
from .circuit import Circuit, ResourceReport, Toffoli, count_resources
from .extract import ExtractionStuck, extract_circuit
from .qasm import QasmError, emit_qasm, parse_qasm
from .rewrite import Trace, full_simplify
from .verify import (
    MAX_UNITARY_QUBITS,
    Verdict,
    WidthError,
    adjoint_reduce_check,
    equal_on_basis,
    equal_unitary,
)
from .zxdiag import from_circuit

EXIT_OK = 0
EXIT_NOT_EQUIVALENT = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_PARSE = 4
EXIT_WIDTH = 5
EXIT_EXTRACT = 6
EXIT_UNKNOWN = 7

EXIT_CODES = f"""exit codes:
  {EXIT_OK}  success (for verify: circuits equivalent)
  {EXIT_NOT_EQUIVALENT}  circuits differ (verification refuted equivalence)
  {EXIT_USAGE}  bad command line
  {EXIT_IO}  file could not be read or written
  {EXIT_PARSE}  QASM parse error
  {EXIT_WIDTH}  circuit too wide for the requested check, or bad size argument
  {EXIT_EXTRACT}  circuit extraction failed
  {EXIT_UNKNOWN}  verify could not decide (diagrammatic check inconclusive)
"""

# widest circuit verified by simulation when opt runs with verification on
SIM_VERIFY_QUBITS = 14
BASIS_SAMPLES = 256

# published figures for the 6-bit multiplier, shown next to our own
REFERENCE = {
    "qubits": 25,
    "t_before": 742,
    "t_after": 488,
    "clifford_before": 1044,
    "clifford_after": 2328,
}


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@dataclass
class RunReport:
    before: ResourceReport
    after: ResourceReport
    wall_time_ms: float
    verification: str

    @property
    def t_reduction_percent(self) -> float:
        if self.before.t_count == 0:
            return 0.0
        return 100.0 * (self.before.t_count - self.after.t_count) / self.before.t_count

    def as_dict(self) -> dict:
        return {
            "before": self.before.as_dict(),
            "after": self.after.as_dict(),
            "t_reduction_percent": round(self.t_reduction_percent, 2),
            "wall_time_ms": round(self.wall_time_ms, 1),
            "verification": self.verification,
        }

    def is_reference_circuit(self) -> bool:
        return (self.before.qubit_count == REFERENCE["qubits"]
                and self.before.t_count == REFERENCE["t_before"])

    def table(self) -> str:
        rows = [
            ("Number Of Qubits", self.before.qubit_count, self.after.qubit_count),
            ("Number of Gates", self.before.total_gates, self.after.total_gates),
            ("T-gate count", self.before.t_count, self.after.t_count),
            ("Clifford Gate count", self.before.clifford_count, self.after.clifford_count),
        ]
        lines = [f"{'':<22}{'Before':>10}{'After':>10}"]
        lines += [f"{name:<22}{b:>10}{a:>10}" for name, b, a in rows]
        lines.append(f"T reduction: {self.t_reduction_percent:.1f}%")
        lines.append(f"verification: {self.verification}")
        lines.append(f"wall time: {self.wall_time_ms:.0f} ms")
        if self.is_reference_circuit():
            r = REFERENCE
            red = 100.0 * (r["t_before"] - r["t_after"]) / r["t_before"]
            lines.append(
                f"published 6-bit multiplier: T {r['t_before']} -> {r['t_after']} ({red:.0f}%), "
                f"Clifford {r['clifford_before']} -> {r['clifford_after']}; "
                f"this run: T {self.before.t_count} -> {self.after.t_count}, "
                f"Clifford {self.before.clifford_count} -> {self.after.clifford_count}"
            )
        return "\n".join(lines) + "\n"


def _report_text(rep: ResourceReport) -> str:
    rows = [
        ("Number Of Qubits", rep.qubit_count),
        ("Number of Gates", rep.total_gates),
        ("T-gate count", rep.t_count),
        ("Clifford Gate count", rep.clifford_count),
        ("Two-qubit gates", rep.two_qubit_count),
        ("Hadamard gates", rep.hadamard_count),
    ]
    if rep.other_count:
        rows.append(("Other (non Clifford+T)", rep.other_count))
    return "".join(f"{name:<24}{v:>10}\n" for name, v in rows)


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# -- file helpers ------------------------------------------------------------


def _read_text(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise CliError(f"cannot read {path}: {e.strerror}", EXIT_IO) from e


def _write_text(path: str, text: str) -> None:
    try:
        if path == "-":
            sys.stdout.write(text)
            return
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    except OSError as e:
        raise CliError(f"cannot write {path}: {e.strerror}", EXIT_IO) from e


def _load(path: str) -> Circuit:
    text = _read_text(path)
    try:
        return parse_qasm(text)
    except QasmError as e:
        raise CliError(f"{path}:{e}", EXIT_PARSE) from e


# -- verification ------------------------------------------------------------


def _basis_sample(n: int) -> list[int]:
    if n <= 8:
        return list(range(1 << n))
    rng = np.random.default_rng(0)
    sample = rng.integers(0, 1 << n, size=BASIS_SAMPLES)
    return sorted({0, *map(int, sample)})


def check(a: Circuit, b: Circuit, mode: str) -> tuple[Optional[bool], str]:
    """Compare two circuits; returns (verdict, description).

    The verdict is True for equivalent, False for refuted and None when the
    diagrammatic check is inconclusive.
    """
    if a.qubit_count != b.qubit_count:
        return False, "qubit counts differ"
    if mode == "unitary":
        return equal_unitary(a, b), Verdict.EQUIVALENT.value
    if mode == "basis":
        inputs = _basis_sample(a.qubit_count)
        return equal_on_basis(a, b, inputs), f"Checked({len(inputs)})"
    a, b = arithgen.decompose_toffolis(a), arithgen.decompose_toffolis(b)
    if adjoint_reduce_check(a, b) is Verdict.EQUIVALENT:
        return True, Verdict.EQUIVALENT.value
    return None, Verdict.UNKNOWN.value


def _default_mode(n: int) -> str:
    if n <= MAX_UNITARY_QUBITS:
        return "unitary"
    if n <= SIM_VERIFY_QUBITS:
        return "basis"
    return "zx"


# -- subcommands -------------------------------------------------------------


def optimize(circuit: Circuit, trace: Optional[Trace] = None) -> Circuit:
    """from_circuit, full_simplify, extract_circuit, with phases as Clifford+T words."""
    base = arithgen.decompose_toffolis(circuit)
    d = full_simplify(from_circuit(base), trace=trace)
    return extract_circuit(d, decompose=True)


def cmd_gen(args) -> int:
    n = args.bits
    decompose = not args.native
    try:
        if args.kind == "multiplier":
            c = arithgen.multiplier(n, decompose=decompose)
        elif args.kind == "adder":
            c = arithgen.conditional_adder(n, decompose=decompose)
        else:
            c = (arithgen.toffoli_clifford_t() if decompose
                 else Circuit(3, [Toffoli(0, 1, 2)]))
    except ValueError as e:
        raise CliError(str(e), EXIT_WIDTH) from e
    _write_text(args.out, emit_qasm(c))
    return EXIT_OK


def cmd_opt(args) -> int:
    c = _load(args.input)
    t0 = time.perf_counter()
    trace = Trace() if args.trace else None
    try:
        out = optimize(c, trace)
    except ExtractionStuck as e:
        raise CliError(f"extraction failed: {e}", EXIT_EXTRACT) from e
    verdict, how = True, "skipped"
    if not args.no_verify:
        verdict, how = check(c, out, _default_mode(c.qubit_count))
    elapsed = (time.perf_counter() - t0) * 1000
    _write_text(args.out, emit_qasm(out))
    if trace is not None:
        _write_text(args.trace, trace.to_text())
    report = RunReport(count_resources(c), count_resources(out), elapsed, how if verdict is not False else "Failed")
    sys.stdout.write(_dump_json(report.as_dict()) if args.json else report.table())
    if verdict is False:
        sys.stderr.write("error: optimized circuit is not equivalent to the input\n")
        return EXIT_NOT_EQUIVALENT
    return EXIT_OK


def cmd_stats(args) -> int:
    rep = count_resources(_load(args.input))
    sys.stdout.write(_dump_json(rep.as_dict()) if args.json else _report_text(rep))
    return EXIT_OK


def cmd_verify(args) -> int:
    a, b = _load(args.a), _load(args.b)
    mode = args.mode or _default_mode(max(a.qubit_count, b.qubit_count))
    try:
        verdict, how = check(a, b, mode)
    except WidthError as e:
        raise CliError(str(e), EXIT_WIDTH) from e
    if verdict is None:
        print(f"Unknown ({mode})")
        return EXIT_UNKNOWN
    detail = f"{mode}, {how}" if mode == "basis" else mode
    print(f"{'Equivalent' if verdict else 'Not equivalent'} ({detail})")
    return EXIT_OK if verdict else EXIT_NOT_EQUIVALENT


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="zxarith",
        description="Generate, T-count optimise and verify Clifford+T arithmetic circuits.",
        epilog=EXIT_CODES,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a generated circuit as QASM")
    g.add_argument("kind", choices=["multiplier", "adder", "toffoli"])
    g.add_argument("--bits", type=int, default=6, help="operand width (default 6)")
    g.add_argument("--out", required=True, help="output file, - for stdout")
    g.add_argument("--native", action="store_true", help="keep Toffolis as ccx instead of Clifford+T")
    g.set_defaults(func=cmd_gen)

    o = sub.add_parser("opt", help="reduce the T-count of a QASM circuit")
    o.add_argument("--in", dest="input", required=True)
    o.add_argument("--out", required=True)
    o.add_argument("--trace", help="write the rewrite trace to this file")
    o.add_argument("--json", action="store_true", help="print the report as JSON")
    o.add_argument("--no-verify", action="store_true",
                   help=f"skip checking the result (simulation up to {SIM_VERIFY_QUBITS} qubits, ZX above)")
    o.set_defaults(func=cmd_opt)

    s = sub.add_parser("stats", help="print resource counts")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_stats)

    v = sub.add_parser("verify", help="check two circuits for equivalence")
    v.add_argument("--a", required=True)
    v.add_argument("--b", required=True)
    v.add_argument("--mode", choices=["unitary", "basis", "zx"],
                   help="default: unitary up to 12 qubits, basis up to 14, zx above")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as e:
        sys.stderr.write(f"error: {e}\n")
        return e.code


if __name__ == "__main__":
    sys.exit(main())

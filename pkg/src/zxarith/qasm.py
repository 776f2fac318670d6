"""OpenQASM 2.0 subset: parser and emitter.

Supported statements are ``h x z s sdg t tdg cx cz swap ccx`` and ``rz(a)``
where ``a`` is a literal rational multiple of pi.  Quantum registers are
flattened into one index space in declaration order.  Classical registers and
``measure`` are accepted and dropped with a :class:`QasmWarning`; ``barrier``
is accepted and dropped silently.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .circuit import Circuit, Gate, GateKind

HEADER = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n"

_GATES = {k.value: k for k in GateKind if k is not GateKind.ZPhase}


class QasmError(ValueError):
    """Malformed or unsupported input; ``line`` and ``col`` are 1-based."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(f"{line}:{col}: {message}" if line else message)
        self.line = line
        self.col = col


class QasmWarning(UserWarning):
    pass


@dataclass
class QasmDocument:
    qregs: dict[str, int] = field(default_factory=dict)
    cregs: dict[str, int] = field(default_factory=dict)
    gates: list[Gate] = field(default_factory=list)
    # statements that were accepted but dropped (measure, creg)
    ignored: list[str] = field(default_factory=list)

    @property
    def qubit_count(self) -> int:
        return sum(self.qregs.values())

    def circuit(self) -> Circuit:
        return Circuit(max(self.qubit_count, 1), self.gates)


_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>//[^\n]*)
  | (?P<string>"[^"\n]*")
  | (?P<real>\d+\.\d*(?:[eE][-+]?\d+)?|\d+[eE][-+]?\d+|\.\d+)
  | (?P<int>\d+)
  | (?P<id>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<arrow>->)
  | (?P<sym>[;,\[\]()*/+\-{}])
""", re.VERBOSE)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos, line, start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise QasmError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            toks.append(_Tok(kind, m.group(), line, pos - start + 1))
        for i, ch in enumerate(m.group()):
            if ch == "\n":
                line += 1
                start = pos + i + 1
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.doc = QasmDocument()
        self.offset: dict[str, int] = {}

    # -- token helpers --

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def error(self, msg, tok=None) -> QasmError:
        tok = tok or self.peek() or (self.toks[-1] if self.toks else None)
        if tok is None:
            return QasmError(msg)
        return QasmError(msg, tok.line, tok.col)

    def next(self) -> _Tok:
        tok = self.peek()
        if tok is None:
            raise self.error("unexpected end of input")
        self.i += 1
        return tok

    def expect(self, text: str) -> _Tok:
        tok = self.next()
        if tok.text != text:
            raise self.error(f"expected {text!r}, found {tok.text!r}", tok)
        return tok

    def accept(self, text: str) -> bool:
        tok = self.peek()
        if tok is not None and tok.text == text:
            self.i += 1
            return True
        return False

    def ident(self) -> _Tok:
        tok = self.next()
        if tok.kind != "id":
            raise self.error(f"expected identifier, found {tok.text!r}", tok)
        return tok

    def integer(self) -> int:
        tok = self.next()
        if tok.kind != "int":
            raise self.error(f"expected integer, found {tok.text!r}", tok)
        return int(tok.text)

    # -- grammar --

    def parse(self) -> QasmDocument:
        if self.peek() is not None and self.peek().text == "OPENQASM":
            self.next()
            ver = self.next()
            if ver.text != "2.0":
                raise self.error(f"unsupported OpenQASM version {ver.text}", ver)
            self.expect(";")
        while self.peek() is not None:
            self.statement()
        return self.doc

    def statement(self) -> None:
        tok = self.ident()
        name = tok.text
        if name == "include":
            s = self.next()
            if s.kind != "string":
                raise self.error("expected file name after include", s)
            self.expect(";")
        elif name in ("qreg", "creg"):
            reg = self.ident()
            self.expect("[")
            size = self.integer()
            self.expect("]")
            self.expect(";")
            if reg.text in self.doc.qregs or reg.text in self.doc.cregs:
                raise self.error(f"register {reg.text!r} declared twice", reg)
            if name == "qreg":
                self.offset[reg.text] = self.doc.qubit_count
                self.doc.qregs[reg.text] = size
            else:
                self.doc.cregs[reg.text] = size
                self.doc.ignored.append(f"creg {reg.text}")
        elif name == "measure":
            self.operand()
            self.expect("->")
            self.classical()
            self.expect(";")
            self.doc.ignored.append(f"measure at line {tok.line}")
        elif name == "barrier":
            self.operand(allow_register=True)
            while self.accept(","):
                self.operand(allow_register=True)
            self.expect(";")
        elif name == "rz":
            self.expect("(")
            angle = self.angle()
            self.expect(")")
            (q,) = self.operands(1, tok)
            self.doc.gates.append(Gate(GateKind.ZPhase, (q,), angle))
        elif name in _GATES:
            kind = _GATES[name]
            qs = self.operands(kind.arity, tok)
            self.doc.gates.append(Gate(kind, qs))
        else:
            raise self.error(f"unknown gate {name!r}", tok)

    def operands(self, arity: int, gate_tok: _Tok) -> tuple[int, ...]:
        qs = [self.operand()]
        while self.accept(","):
            qs.append(self.operand())
        self.expect(";")
        if len(qs) != arity:
            raise self.error(f"{gate_tok.text} takes {arity} operands, got {len(qs)}", gate_tok)
        if len(set(qs)) != len(qs):
            raise self.error(f"repeated operand in {gate_tok.text}", gate_tok)
        return tuple(qs)

    def operand(self, allow_register: bool = False):
        reg = self.ident()
        if reg.text not in self.doc.qregs:
            raise self.error(f"undeclared quantum register {reg.text!r}", reg)
        if allow_register and not self.accept("["):
            return None
        if not allow_register:
            self.expect("[")
        idx_tok = self.peek()
        idx = self.integer()
        self.expect("]")
        if idx >= self.doc.qregs[reg.text]:
            raise self.error(f"index {idx} out of range for {reg.text}[{self.doc.qregs[reg.text]}]", idx_tok)
        return self.offset[reg.text] + idx

    def classical(self) -> None:
        reg = self.ident()
        if reg.text not in self.doc.cregs:
            raise self.error(f"undeclared classical register {reg.text!r}", reg)
        self.expect("[")
        idx_tok = self.peek()
        idx = self.integer()
        self.expect("]")
        if idx >= self.doc.cregs[reg.text]:
            raise self.error(f"index {idx} out of range for {reg.text}", idx_tok)

    def angle(self) -> Fraction:
        """A literal rational multiple of pi, returned in units of pi."""
        start = self.peek()
        coeff, pis = self.expr(start)
        if coeff == 0:
            return Fraction(0)
        if pis != 1:
            raise self.error("rz angle is not a rational multiple of pi", start)
        return coeff

    def expr(self, start) -> tuple[Fraction, int]:
        # signed product/quotient of integers and pi: (coefficient, power of pi)
        sign = 1
        while self.peek() is not None and self.peek().text in ("+", "-"):
            if self.next().text == "-":
                sign = -sign
        coeff, pis = self.factor(start)
        while self.peek() is not None and self.peek().text in ("*", "/"):
            op = self.next()
            c, p = self.factor(start)
            if op.text == "*":
                coeff, pis = coeff * c, pis + p
            elif c == 0:
                raise self.error("division by zero in angle", op)
            else:
                coeff, pis = coeff / c, pis - p
        return sign * coeff, pis

    def factor(self, start) -> tuple[Fraction, int]:
        tok = self.next()
        if tok.kind == "int":
            return Fraction(int(tok.text)), 0
        if tok.text == "pi":
            return Fraction(1), 1
        if tok.text == "(":
            inner = self.expr(start)
            self.expect(")")
            return inner
        if tok.kind == "real":
            raise self.error("rz angle is not a rational multiple of pi", start)
        raise self.error(f"unexpected {tok.text!r} in angle", tok)


def parse_document(text: str) -> QasmDocument:
    return _Parser(text).parse()


def parse_qasm(text: str) -> Circuit:
    """Parse OpenQASM 2.0 text into a :class:`Circuit`.

    Raises :class:`QasmError` with the line and column of the offending token.
    """
    doc = parse_document(text)
    if doc.ignored:
        warnings.warn(f"ignored classical statements: {', '.join(doc.ignored)}", QasmWarning, stacklevel=2)
    if not doc.qregs:
        raise QasmError("no quantum register declared")
    return doc.circuit()


def _format_angle(p: Fraction) -> str:
    return f"pi*{p.numerator}/{p.denominator}"


def emit_qasm(circuit: Circuit) -> str:
    """Deterministic OpenQASM 2.0 text with a single register ``q``."""
    lines = [HEADER, f"qreg q[{circuit.qubit_count}];\n"]
    for g in circuit.gates:
        args = ",".join(f"q[{q}]" for q in g.qubits)
        if g.kind is GateKind.ZPhase:
            lines.append(f"rz({_format_angle(g.phase)}) {args};\n")
        else:
            lines.append(f"{g.kind.value} {args};\n")
    return "".join(lines)


def read_qasm(path) -> Circuit:
    with open(path, encoding="utf-8") as f:
        return parse_qasm(f.read())


def write_qasm(circuit: Circuit, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(emit_qasm(circuit))

"""OpenQASM 2.0 frontend: a flat-program subset parser, emitter, and validator.

Supported statements: the version header, ``include`` (ignored), one ``qreg``,
an optional ``creg``, gate applications from the fixed vocabulary, ``measure``
and ``barrier``.  User-defined ``gate`` blocks, ``if`` and ``opaque`` are out
of scope; the benchmark corpus is flat gate lists.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .circuit import Circuit, Gate, GateKind

EMIT_HEADER = "// routed-by: codar-router {version}"


class QasmError(ValueError):
    """Base class for located frontend errors."""

    def __init__(self, message: str, line: int = 0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


class QasmSyntaxError(QasmError):
    pass


class UnknownGateError(QasmError):
    def __init__(self, name: str, line: int = 0):
        super().__init__(f"unknown gate '{name}'", line)
        self.gate_name = name


class QubitOutOfRangeError(QasmError):
    def __init__(self, index: int, size: int, line: int = 0):
        super().__init__(f"qubit index {index} out of range for register of size {size}", line)
        self.index = index


class DuplicateOperandError(QasmError):
    def __init__(self, index: int, line: int = 0):
        super().__init__(f"duplicate operand q[{index}]", line)
        self.index = index


class MultipleQregError(QasmError):
    def __init__(self, line: int = 0):
        super().__init__("only one qreg is supported", line)


_GATE_NAMES = {kind.value: kind for kind in GateKind
               if kind not in (GateKind.MEASURE, GateKind.BARRIER)}

_TOKEN_RE = re.compile(r"""
    (?P<float>\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?|\d+[eE][+-]?\d+)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>->|[\[\](),;+\-*/])
""", re.VERBOSE)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("//", 1)[0]
        pos = 0
        while pos < len(line):
            if line[pos].isspace():
                pos += 1
                continue
            if line[pos] == '"':
                end = line.find('"', pos + 1)
                if end < 0:
                    raise QasmSyntaxError("unterminated string", lineno)
                tokens.append(_Token("string", line[pos + 1:end], lineno))
                pos = end + 1
                continue
            m = _TOKEN_RE.match(line, pos)
            if not m:
                raise QasmSyntaxError(f"unexpected character {line[pos]!r}", lineno)
            kind = m.lastgroup or "op"
            tokens.append(_Token(kind, m.group(), lineno))
            pos = m.end()
    return tokens


class _TokenStream:
    def __init__(self, tokens: list[_Token]):
        self._tokens = tokens
        self._pos = 0

    def peek(self) -> _Token | None:
        return self._tokens[self._pos] if self._pos < len(self._tokens) else None

    def next(self) -> _Token:
        tok = self.peek()
        if tok is None:
            last = self._tokens[-1].line if self._tokens else 0
            raise QasmSyntaxError("unexpected end of input", last)
        self._pos += 1
        return tok

    def expect(self, text: str) -> _Token:
        tok = self.next()
        if tok.text != text:
            raise QasmSyntaxError(f"expected {text!r}, got {tok.text!r}", tok.line)
        return tok

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.text == text


def _parse_expr(ts: _TokenStream) -> float:
    """Arithmetic over numbers and pi with + - * / and parentheses."""
    return _parse_additive(ts)


def _parse_additive(ts: _TokenStream) -> float:
    value = _parse_multiplicative(ts)
    while ts.at("+") or ts.at("-"):
        op = ts.next().text
        rhs = _parse_multiplicative(ts)
        value = value + rhs if op == "+" else value - rhs
    return value


def _parse_multiplicative(ts: _TokenStream) -> float:
    value = _parse_unary(ts)
    while ts.at("*") or ts.at("/"):
        op = ts.next().text
        rhs = _parse_unary(ts)
        if op == "/":
            if rhs == 0:
                raise QasmSyntaxError("division by zero in parameter", ts.peek().line if ts.peek() else 0)
            value = value / rhs
        else:
            value = value * rhs
    return value


def _parse_unary(ts: _TokenStream) -> float:
    if ts.at("-"):
        ts.next()
        return -_parse_unary(ts)
    if ts.at("+"):
        ts.next()
        return _parse_unary(ts)
    tok = ts.next()
    if tok.kind in ("float", "int"):
        return float(tok.text)
    if tok.kind == "name" and tok.text.lower() == "pi":
        return math.pi
    if tok.text == "(":
        value = _parse_additive(ts)
        ts.expect(")")
        return value
    raise QasmSyntaxError(f"bad parameter token {tok.text!r}", tok.line)


class _Parser:
    def __init__(self, text: str):
        self.ts = _TokenStream(_tokenize(text))
        self.qreg_name: str | None = None
        self.qreg_size = 0
        self.creg_name: str | None = None
        self.creg_size = 0
        self.gates: list[Gate] = []
        self.saw_header = False

    def run(self) -> Circuit:
        while self.ts.peek() is not None:
            self._statement()
        if self.qreg_name is None:
            raise QasmSyntaxError("no qreg declared", 0)
        circuit = Circuit(self.qreg_size, self.gates, self.qreg_name,
                          self.creg_name or "c", self.creg_size)
        return circuit

    def _statement(self) -> None:
        tok = self.ts.next()
        if tok.text == ";":
            return
        if tok.kind != "name":
            raise QasmSyntaxError(f"expected statement, got {tok.text!r}", tok.line)
        name = tok.text
        if name == "OPENQASM":
            self.ts.next()  # version literal
            self.ts.expect(";")
            self.saw_header = True
        elif name == "include":
            self.ts.next()  # filename string
            self.ts.expect(";")
        elif name == "qreg":
            self._register(tok.line, quantum=True)
        elif name == "creg":
            self._register(tok.line, quantum=False)
        elif name == "measure":
            self._measure(tok.line)
        elif name == "barrier":
            self._barrier(tok.line)
        else:
            self._gate(name, tok.line)

    def _register(self, line: int, quantum: bool) -> None:
        name_tok = self.ts.next()
        if name_tok.kind != "name":
            raise QasmSyntaxError("expected register name", name_tok.line)
        self.ts.expect("[")
        size_tok = self.ts.next()
        if size_tok.kind != "int":
            raise QasmSyntaxError("expected register size", size_tok.line)
        self.ts.expect("]")
        self.ts.expect(";")
        size = int(size_tok.text)
        if size < 1:
            raise QasmSyntaxError("register size must be positive", line)
        if quantum:
            if self.qreg_name is not None:
                raise MultipleQregError(line)
            self.qreg_name, self.qreg_size = name_tok.text, size
        else:
            if self.creg_name is not None:
                raise QasmSyntaxError("only one creg is supported", line)
            self.creg_name, self.creg_size = name_tok.text, size

    def _qubit_operand(self, line: int) -> int | None:
        """One qubit ref; None means the whole register (bare name)."""
        name_tok = self.ts.next()
        if name_tok.kind != "name" or name_tok.text != self.qreg_name:
            raise QasmSyntaxError(f"expected qubit register {self.qreg_name!r}", name_tok.line)
        if not self.ts.at("["):
            return None
        self.ts.expect("[")
        idx_tok = self.ts.next()
        if idx_tok.kind != "int":
            raise QasmSyntaxError("expected qubit index", idx_tok.line)
        self.ts.expect("]")
        index = int(idx_tok.text)
        if index >= self.qreg_size:
            raise QubitOutOfRangeError(index, self.qreg_size, line)
        return index

    def _cbit_operand(self, line: int) -> int | None:
        name_tok = self.ts.next()
        if name_tok.kind != "name" or (self.creg_name and name_tok.text != self.creg_name):
            raise QasmSyntaxError("expected classical register", name_tok.line)
        if not self.ts.at("["):
            return None
        self.ts.expect("[")
        idx_tok = self.ts.next()
        if idx_tok.kind != "int":
            raise QasmSyntaxError("expected bit index", idx_tok.line)
        self.ts.expect("]")
        index = int(idx_tok.text)
        if self.creg_size and index >= self.creg_size:
            raise QasmSyntaxError(f"classical index {index} out of range", line)
        return index

    def _require_qreg(self, line: int) -> None:
        if self.qreg_name is None:
            raise QasmSyntaxError("statement before qreg declaration", line)

    def _measure(self, line: int) -> None:
        self._require_qreg(line)
        q = self._qubit_operand(line)
        self.ts.expect("->")
        c = self._cbit_operand(line)
        self.ts.expect(";")
        if q is None:
            if c is not None:
                raise QasmSyntaxError("register-wide measure needs a register target", line)
            for i in range(self.qreg_size):
                self.gates.append(Gate(GateKind.MEASURE, (i,), (), i, line))
        else:
            self.gates.append(Gate(GateKind.MEASURE, (q,), (), q if c is None else c, line))

    def _barrier(self, line: int) -> None:
        self._require_qreg(line)
        qubits: list[int] = []
        while True:
            q = self._qubit_operand(line)
            if q is None:
                qubits.extend(range(self.qreg_size))
            else:
                qubits.append(q)
            if self.ts.at(","):
                self.ts.next()
                continue
            break
        self.ts.expect(";")
        seen: set[int] = set()
        ordered = [q for q in qubits if not (q in seen or seen.add(q))]
        self.gates.append(Gate(GateKind.BARRIER, tuple(ordered), (), None, line))

    def _gate(self, name: str, line: int) -> None:
        self._require_qreg(line)
        kind = _GATE_NAMES.get(name.lower())
        if kind is None:
            raise UnknownGateError(name, line)
        params: list[float] = []
        if self.ts.at("("):
            self.ts.next()
            if not self.ts.at(")"):
                params.append(_parse_expr(self.ts))
                while self.ts.at(","):
                    self.ts.next()
                    params.append(_parse_expr(self.ts))
            self.ts.expect(")")
        if len(params) != kind.num_params:
            raise QasmSyntaxError(
                f"{name} takes {kind.num_params} parameter(s), got {len(params)}", line)
        qubits: list[int] = []
        while True:
            q = self._qubit_operand(line)
            if q is None:
                raise QasmSyntaxError(f"{name} does not accept register-wide operands", line)
            qubits.append(q)
            if self.ts.at(","):
                self.ts.next()
                continue
            break
        self.ts.expect(";")
        if len(qubits) != kind.arity:
            raise QasmSyntaxError(
                f"{name} takes {kind.arity} qubit(s), got {len(qubits)}", line)
        if len(set(qubits)) != len(qubits):
            raise DuplicateOperandError(qubits[0], line)
        self.gates.append(Gate(kind, tuple(qubits), tuple(params), None, line))


def parse_program(text: str) -> Circuit:
    """Parse OpenQASM 2.0 text into a :class:`Circuit`.

    Raises a located :class:`QasmError` subclass on any malformed input;
    unknown gate names are rejected, never passed through.
    """
    return _Parser(text).run()


def parse_file(path) -> Circuit:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_program(fh.read())


def _format_param(value: float) -> str:
    if value == int(value) and abs(value) < 1e16:
        return str(int(value))
    return repr(value)


def emit_program(circuit: Circuit, decompose_swap: bool = False,
                 version: str | None = None) -> str:
    """Serialize a circuit back to OpenQASM 2.0 text.

    With ``decompose_swap`` each SWAP becomes the standard three-CX ladder.
    Without it, ``parse_program(emit_program(c))`` is structurally equal to
    ``c``.
    """
    if version is None:
        from . import __version__ as version
    q = circuit.register_name
    c = circuit.creg_name
    lines = [
        EMIT_HEADER.format(version=version),
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"qreg {q}[{circuit.num_qubits}];",
    ]
    n_clbits = circuit.num_clbits or (
        max((g.cbit for g in circuit.gates if g.cbit is not None), default=-1) + 1)
    if n_clbits > 0:
        lines.append(f"creg {c}[{n_clbits}];")
    for gate in circuit.gates:
        if gate.kind is GateKind.MEASURE:
            cbit = gate.cbit if gate.cbit is not None else gate.qubits[0]
            lines.append(f"measure {q}[{gate.qubits[0]}] -> {c}[{cbit}];")
        elif gate.kind is GateKind.BARRIER:
            if set(gate.qubits) == set(range(circuit.num_qubits)):
                lines.append(f"barrier {q};")
            else:
                ops = ",".join(f"{q}[{i}]" for i in gate.qubits)
                lines.append(f"barrier {ops};")
        elif gate.kind is GateKind.SWAP and decompose_swap:
            a, b = gate.qubits
            lines.append(f"cx {q}[{a}],{q}[{b}];")
            lines.append(f"cx {q}[{b}],{q}[{a}];")
            lines.append(f"cx {q}[{a}],{q}[{b}];")
        else:
            ops = ",".join(f"{q}[{i}]" for i in gate.qubits)
            if gate.params:
                pars = ",".join(_format_param(p) for p in gate.params)
                lines.append(f"{gate.kind.value}({pars}) {ops};")
            else:
                lines.append(f"{gate.kind.value} {ops};")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str
    gate_index: int | None = None

    def __str__(self) -> str:
        where = f" [gate {self.gate_index}]" if self.gate_index is not None else ""
        return f"{self.code}: {self.message}{where}"


def validate(circuit: Circuit, arch_qubits: int) -> list[Diagnostic]:
    """Check a circuit against per-gate invariants and an architecture size.

    Returns diagnostics instead of raising so batch tooling can keep going.
    """
    out: list[Diagnostic] = []
    if circuit.num_qubits > arch_qubits:
        out.append(Diagnostic(
            "TooManyQubits",
            f"circuit uses {circuit.num_qubits} qubits but architecture has {arch_qubits}"))
    for i, gate in enumerate(circuit.gates):
        arity = gate.kind.arity
        if arity is not None and len(gate.qubits) != arity:
            out.append(Diagnostic(
                "BadArity", f"{gate.kind.value} takes {arity} qubit(s), got {len(gate.qubits)}", i))
        if len(set(gate.qubits)) != len(gate.qubits):
            out.append(Diagnostic("DuplicateOperand", f"{gate} repeats an operand", i))
        if any(q < 0 or q >= circuit.num_qubits for q in gate.qubits):
            out.append(Diagnostic(
                "QubitOutOfRange", f"{gate} indexes outside q[{circuit.num_qubits}]", i))
        if len(gate.params) != gate.kind.num_params:
            out.append(Diagnostic(
                "BadParams",
                f"{gate.kind.value} takes {gate.kind.num_params} parameter(s), got {len(gate.params)}",
                i))
        if gate.kind is GateKind.MEASURE and gate.cbit is not None and gate.cbit < 0:
            out.append(Diagnostic("BadParams", "negative classical bit", i))
    return out

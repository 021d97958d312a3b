"""Gate-level circuit IR: gate kinds, gates, and ordered gate sequences."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum


class GateKind(Enum):
    """Supported gate vocabulary (OpenQASM 2.0 subset plus SWAP/MEASURE/BARRIER)."""

    H = "h"
    X = "x"
    Y = "y"
    Z = "z"
    S = "s"
    SDG = "sdg"
    T = "t"
    TDG = "tdg"
    RX = "rx"
    RY = "ry"
    RZ = "rz"
    U1 = "u1"
    U2 = "u2"
    U3 = "u3"
    CX = "cx"
    SWAP = "swap"
    MEASURE = "measure"
    BARRIER = "barrier"

    @property
    def arity(self) -> int | None:
        """Operand count; None for the variadic BARRIER."""
        if self in (GateKind.CX, GateKind.SWAP):
            return 2
        if self is GateKind.BARRIER:
            return None
        return 1

    @property
    def num_params(self) -> int:
        return _NUM_PARAMS.get(self, 0)

    @property
    def is_unitary(self) -> bool:
        return self not in (GateKind.MEASURE, GateKind.BARRIER)


_NUM_PARAMS = {
    GateKind.RX: 1,
    GateKind.RY: 1,
    GateKind.RZ: 1,
    GateKind.U1: 1,
    GateKind.U2: 2,
    GateKind.U3: 3,
}

TWO_QUBIT_KINDS = frozenset({GateKind.CX, GateKind.SWAP})


@dataclass(frozen=True)
class Gate:
    """One gate application.

    ``qubits`` are logical indices in a source circuit and physical indices in
    a routed one.  ``cbit`` is the classical target of a MEASURE.  Structural
    checks (arity, duplicates) live in the parser and in :func:`validate`, so
    programmatically built gates can be diagnosed instead of rejected.
    """

    kind: GateKind
    qubits: tuple[int, ...]
    params: tuple[float, ...] = ()
    cbit: int | None = None
    source_line: int = 0

    def signature(self) -> tuple:
        """Identity key ignoring provenance; equal signatures mean the same operation.

        Operand order carries no meaning for SWAP and BARRIER, so it is
        normalized away here.  Cached: routing scans ask repeatedly.
        """
        sig = getattr(self, "_sig", None)
        if sig is None:
            qubits = self.qubits
            if self.kind in (GateKind.SWAP, GateKind.BARRIER):
                qubits = tuple(sorted(qubits))
            sig = (self.kind, qubits, self.params, self.cbit)
            object.__setattr__(self, "_sig", sig)
        return sig

    def with_qubits(self, qubits: tuple[int, ...]) -> Gate:
        return replace(self, qubits=qubits)

    def __str__(self) -> str:
        args = ",".join(str(q) for q in self.qubits)
        if self.params:
            pars = ",".join(f"{p:g}" for p in self.params)
            return f"{self.kind.value}({pars}) {args}"
        return f"{self.kind.value} {args}"


@dataclass
class Circuit:
    """Ordered gate sequence over a single quantum register.

    Gate order is program order and is semantics-bearing.
    """

    num_qubits: int
    gates: list[Gate] = field(default_factory=list)
    register_name: str = "q"
    creg_name: str = "c"
    num_clbits: int = 0

    def add(self, kind: GateKind, *qubits: int,
            params: tuple[float, ...] = (), cbit: int | None = None) -> Circuit:
        self.gates.append(Gate(kind, tuple(qubits), tuple(params), cbit))
        return self

    # Shorthand builders, mostly for tests and corpus generation.
    def h(self, q: int) -> Circuit:
        return self.add(GateKind.H, q)

    def x(self, q: int) -> Circuit:
        return self.add(GateKind.X, q)

    def t(self, q: int) -> Circuit:
        return self.add(GateKind.T, q)

    def tdg(self, q: int) -> Circuit:
        return self.add(GateKind.TDG, q)

    def s(self, q: int) -> Circuit:
        return self.add(GateKind.S, q)

    def rz(self, q: int, theta: float) -> Circuit:
        return self.add(GateKind.RZ, q, params=(theta,))

    def u1(self, q: int, lam: float) -> Circuit:
        return self.add(GateKind.U1, q, params=(lam,))

    def cx(self, control: int, target: int) -> Circuit:
        return self.add(GateKind.CX, control, target)

    def swap(self, a: int, b: int) -> Circuit:
        return self.add(GateKind.SWAP, a, b)

    def barrier(self, *qubits: int) -> Circuit:
        qs = qubits if qubits else tuple(range(self.num_qubits))
        return self.add(GateKind.BARRIER, *qs)

    def measure(self, q: int, c: int | None = None) -> Circuit:
        c = q if c is None else c
        self.num_clbits = max(self.num_clbits, c + 1)
        return self.add(GateKind.MEASURE, q, cbit=c)

    def reversed(self) -> Circuit:
        """Same gates in reverse program order (used for reverse-pass mapping)."""
        return Circuit(self.num_qubits, list(reversed(self.gates)),
                       self.register_name, self.creg_name, self.num_clbits)

    def two_qubit_gates(self) -> list[Gate]:
        return [g for g in self.gates if g.kind in TWO_QUBIT_KINDS]

    def structurally_equal(self, other: Circuit) -> bool:
        """Equality ignoring source line numbers and register naming."""
        return (self.num_qubits == other.num_qubits
                and len(self.gates) == len(other.gates)
                and all(a.signature() == b.signature()
                        for a, b in zip(self.gates, other.gates)))

    def __len__(self) -> int:
        return len(self.gates)

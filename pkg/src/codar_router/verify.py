"""Equivalence checking for routed circuits.

Two independent routes: a scalable dependency check (strip routing SWAPs,
map operands back to program qubits, and confirm the result is a commuting
reordering of the source), and a dense statevector oracle for small qubit
counts that compares amplitudes up to global phase.
"""
from __future__ import annotations

import cmath
import math
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from .circuit import Circuit, Gate, GateKind
from .commutation import BASELINE_TABLE, CommutationTable, commutes
from .router import Mapping, Schedule, ScheduledGate, _Placement

ORACLE_QUBIT_LIMIT = 10


class OracleLimitError(ValueError):
    """The statevector oracle cannot run on this instance."""


class TooLargeForOracle(OracleLimitError):
    def __init__(self, num_qubits: int, limit: int):
        super().__init__(f"{num_qubits} qubits exceeds the {limit}-qubit oracle limit")


# --- gate matrices -------------------------------------------------------

_SQ2 = 1 / math.sqrt(2)
_FIXED_1Q = {
    GateKind.H: np.array([[1, 1], [1, -1]], dtype=complex) * _SQ2,
    GateKind.X: np.array([[0, 1], [1, 0]], dtype=complex),
    GateKind.Y: np.array([[0, -1j], [1j, 0]], dtype=complex),
    GateKind.Z: np.array([[1, 0], [0, -1]], dtype=complex),
    GateKind.S: np.array([[1, 0], [0, 1j]], dtype=complex),
    GateKind.SDG: np.array([[1, 0], [0, -1j]], dtype=complex),
    GateKind.T: np.array([[1, 0], [0, cmath.exp(1j * math.pi / 4)]], dtype=complex),
    GateKind.TDG: np.array([[1, 0], [0, cmath.exp(-1j * math.pi / 4)]], dtype=complex),
}

CX_MATRIX = np.array([[1, 0, 0, 0],
                      [0, 1, 0, 0],
                      [0, 0, 0, 1],
                      [0, 0, 1, 0]], dtype=complex)
SWAP_MATRIX = np.array([[1, 0, 0, 0],
                        [0, 0, 1, 0],
                        [0, 1, 0, 0],
                        [0, 0, 0, 1]], dtype=complex)


def _u3(theta: float, phi: float, lam: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([
        [c, -cmath.exp(1j * lam) * s],
        [cmath.exp(1j * phi) * s, cmath.exp(1j * (phi + lam)) * c],
    ], dtype=complex)


def gate_matrix(gate: Gate) -> np.ndarray:
    """Unitary of one gate on its own operands (2x2 or 4x4)."""
    kind, p = gate.kind, gate.params
    if kind in _FIXED_1Q:
        return _FIXED_1Q[kind]
    if kind is GateKind.RX:
        c, s = math.cos(p[0] / 2), math.sin(p[0] / 2)
        return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)
    if kind is GateKind.RY:
        c, s = math.cos(p[0] / 2), math.sin(p[0] / 2)
        return np.array([[c, -s], [s, c]], dtype=complex)
    if kind is GateKind.RZ:
        return np.array([[cmath.exp(-1j * p[0] / 2), 0],
                         [0, cmath.exp(1j * p[0] / 2)]], dtype=complex)
    if kind is GateKind.U1:
        return np.array([[1, 0], [0, cmath.exp(1j * p[0])]], dtype=complex)
    if kind is GateKind.U2:
        return _u3(math.pi / 2, p[0], p[1])
    if kind is GateKind.U3:
        return _u3(p[0], p[1], p[2])
    if kind is GateKind.CX:
        return CX_MATRIX
    if kind is GateKind.SWAP:
        return SWAP_MATRIX
    raise ValueError(f"{kind.value} has no unitary")


def apply_gate(state: np.ndarray, gate: Gate) -> np.ndarray:
    """Apply a gate to a state tensor of shape (2,)*n (axis i = qubit i)."""
    mat = gate_matrix(gate)
    if len(gate.qubits) == 1:
        q = gate.qubits[0]
        out = np.tensordot(mat, state, axes=([1], [q]))
        return np.moveaxis(out, 0, q)
    qa, qb = gate.qubits
    out = np.tensordot(mat.reshape(2, 2, 2, 2), state, axes=([2, 3], [qa, qb]))
    return np.moveaxis(out, [0, 1], [qa, qb])


def simulate_gates(gates, num_qubits: int) -> np.ndarray:
    """Statevector after the gate list, from the all-zeros state."""
    state = np.zeros((2,) * num_qubits, dtype=complex) if num_qubits else np.ones((), dtype=complex)
    if num_qubits:
        state[(0,) * num_qubits] = 1.0
    for gate in gates:
        if gate.kind in (GateKind.BARRIER, GateKind.MEASURE):
            continue
        state = apply_gate(state, gate)
    return state.reshape(-1)


def gate_unitary(gate: Gate, num_qubits: int) -> np.ndarray:
    """Full 2^n x 2^n matrix of one gate embedded in an n-qubit register."""
    dim = 1 << num_qubits
    cols = np.eye(dim, dtype=complex).reshape((2,) * num_qubits + (dim,))
    return apply_gate(cols, gate).reshape(dim, dim)


def states_close(a: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> tuple[bool, float]:
    """Global-phase-insensitive comparison; returns (equal, max amplitude error)."""
    overlap = np.vdot(b, a)
    phase = overlap / abs(overlap) if abs(overlap) > 1e-15 else 1.0
    err = float(np.max(np.abs(a - phase * b))) if a.size else 0.0
    return bool(abs(overlap) >= 1 - tol), err


# --- schedule replay ------------------------------------------------------

@dataclass
class ReplayResult:
    logical_gates: list[Gate]
    final_mapping: Mapping
    violations: list[str]


def replay_schedule(items: list[ScheduledGate], init: Mapping) -> ReplayResult:
    """Strip inserted SWAPs while tracking where every program qubit lives.

    Routing SWAPs become mapping updates; every other gate has its physical
    operands translated back to the program qubits occupying them at that
    point.  SWAPs present in the source program are kept as real gates.
    """
    placement = _Placement(init)
    n = init.num_logical
    logical: list[Gate] = []
    violations: list[str] = []
    for item in items:
        if item.inserted:
            if item.gate.kind is not GateKind.SWAP:
                violations.append(f"inserted non-SWAP gate {item.gate}")
                continue
            placement.swap(*item.gate.qubits)
            continue
        operands = tuple(placement.inv[q] for q in item.gate.qubits)
        if any(o >= n for o in operands):
            violations.append(f"{item.gate} acts on an unoccupied physical qubit")
            continue
        logical.append(item.gate.with_qubits(operands))
    return ReplayResult(logical, placement.mapping(), violations)


# --- dependency check -----------------------------------------------------

def _dependency_preds(gates: list[Gate], table: CommutationTable) -> list[list[int]]:
    """For each gate, the earlier gates it must stay behind (non-commuting)."""
    per_qubit: dict[int, list[int]] = defaultdict(list)
    preds: list[set[int]] = [set() for _ in gates]
    for i, gate in enumerate(gates):
        for q in gate.qubits:
            for j in per_qubit[q]:
                if not commutes(gates[j], gate, table):
                    preds[i].add(j)
            per_qubit[q].append(i)
    return [sorted(p) for p in preds]


def _is_commuting_reordering(original: list[Gate], candidate: list[Gate],
                             table: CommutationTable) -> tuple[bool, list[str]]:
    """Is ``candidate`` reachable from ``original`` by adjacent commuting swaps?

    Equivalent formulation: candidate is a linear extension of the
    non-commutation DAG of original, with matching gate multiplicities.
    """
    if len(original) != len(candidate):
        return False, [f"gate count differs: {len(original)} vs {len(candidate)}"]
    buckets: dict[tuple, list[int]] = defaultdict(list)
    for i, gate in enumerate(original):
        buckets[gate.signature()].append(i)
    preds = _dependency_preds(original, table)
    indeg = [len(p) for p in preds]
    succs: list[list[int]] = [[] for _ in original]
    for i, ps in enumerate(preds):
        for j in ps:
            succs[j].append(i)
    cursor: dict[tuple, int] = defaultdict(int)
    for k, gate in enumerate(candidate):
        sig = gate.signature()
        queue = buckets.get(sig, [])
        pos = cursor[sig]
        if pos >= len(queue):
            return False, [f"extra or missing gate at position {k}: {gate}"]
        idx = queue[pos]
        if indeg[idx] != 0:
            blocker = original[preds[idx][0]]
            return False, [
                f"{gate} at position {k} jumped before non-commuting {blocker}"]
        cursor[sig] = pos + 1
        for s in succs[idx]:
            indeg[s] -= 1
    leftovers = [sig for sig, queue in buckets.items() if cursor[sig] != len(queue)]
    if leftovers:
        return False, [f"missing gate {sig[0].value} on {sig[1]}" for sig in leftovers]
    return True, []


@dataclass
class EquivalenceReport:
    dependency_ok: bool
    oracle_ok: bool | None = None
    max_amplitude_error: float | None = None
    details: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.dependency_ok and self.oracle_ok is not False

    def to_dict(self) -> dict:
        return {
            "dependency_ok": self.dependency_ok,
            "oracle_ok": self.oracle_ok,
            "max_amplitude_error": self.max_amplitude_error,
            "details": list(self.details),
        }


def dependency_equivalence(original: Circuit, schedule: Schedule,
                           table: CommutationTable = BASELINE_TABLE) -> EquivalenceReport:
    """Check that the schedule preserves the source program's dependencies.

    Inserted SWAPs are replayed onto the mapping and everything else is
    remapped back to program qubits; the result must be the original gate
    multiset in an order reachable through commuting exchanges, and the
    replayed placement must land on the schedule's final mapping.
    """
    replay = replay_schedule(schedule.items, schedule.initial_mapping)
    details = list(replay.violations)
    if replay.final_mapping != schedule.final_mapping:
        details.append("replayed SWAPs do not reproduce the reported final mapping")
    ok, problems = _is_commuting_reordering(list(original.gates), replay.logical_gates, table)
    details.extend(problems)
    return EquivalenceReport(dependency_ok=ok and not details, details=details)


# --- statevector oracle ----------------------------------------------------

def _strip_terminal_measures(gates: list[Gate]) -> list[Gate]:
    last_touch: dict[int, int] = {}
    for i, gate in enumerate(gates):
        for q in gate.qubits:
            if gate.kind is not GateKind.BARRIER:
                last_touch[q] = i
    out = []
    for i, gate in enumerate(gates):
        if gate.kind is GateKind.MEASURE:
            if last_touch.get(gate.qubits[0]) != i:
                raise OracleLimitError("mid-circuit measurement is outside the oracle's scope")
            continue
        out.append(gate)
    return out


def statevector_oracle(original: Circuit, schedule: Schedule, tol: float = 1e-9,
                       qubit_limit: int = ORACLE_QUBIT_LIMIT) -> tuple[bool, float]:
    """Simulate source and routed programs and compare up to global phase.

    The routed side is replayed in program-qubit coordinates (inserted SWAPs
    become relocations), which keeps the state space at the program's qubit
    count no matter how large the device is.  Terminal measurements are
    stripped on both sides; mid-circuit measurement raises
    :class:`OracleLimitError`.
    """
    n = original.num_qubits
    if n > qubit_limit:
        raise TooLargeForOracle(n, qubit_limit)
    replay = replay_schedule(schedule.items, schedule.initial_mapping)
    if replay.violations:
        return False, float("inf")
    ref = simulate_gates(_strip_terminal_measures(list(original.gates)), n)
    got = simulate_gates(_strip_terminal_measures(replay.logical_gates), n)
    return states_close(ref, got, tol)


def verify_equivalence(original: Circuit, schedule: Schedule, oracle: str = "auto",
                       tol: float = 1e-9,
                       table: CommutationTable = BASELINE_TABLE) -> EquivalenceReport:
    """Run the dependency check plus, when feasible and wanted, the oracle."""
    report = dependency_equivalence(original, schedule, table)
    if oracle == "off":
        return report
    try:
        ok, err = statevector_oracle(original, schedule, tol)
    except OracleLimitError as exc:
        if oracle == "on":
            raise
        report.details.append(f"oracle skipped: {exc}")
        return report
    report.oracle_ok = ok
    report.max_amplitude_error = err
    if not ok:
        report.details.append(f"statevector mismatch, max amplitude error {err:.3e}")
    return report

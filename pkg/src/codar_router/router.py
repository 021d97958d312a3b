"""Routing core: cycle-accurate scheduling under per-qubit time locks.

The router simulates the execution timeline one cycle at a time.  Each cycle
it launches every commutative-forward gate that is coupling-compliant and
whose physical qubits are free, then inserts lock-free SWAPs chosen by a
total-distance heuristic for the CF two-qubit gates that still sit on
non-adjacent qubits.  Locks carry each gate's duration, which is what makes
the search context-sensitive and duration-aware.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .arch import Architecture, duration_of
from .circuit import Circuit, Gate, GateKind, TWO_QUBIT_KINDS
from .commutation import BASELINE_TABLE, CommutationTable, cf_front, no_predecessor_front
from .qasm import Diagnostic, validate


class RouterError(ValueError):
    pass


class TooManyQubitsError(RouterError):
    def __init__(self, needed: int, available: int):
        super().__init__(f"circuit needs {needed} qubits, architecture has {available}")


class InvalidCircuitError(RouterError):
    def __init__(self, diagnostics: list[Diagnostic]):
        super().__init__("; ".join(str(d) for d in diagnostics))
        self.diagnostics = diagnostics


class LockViolationError(RuntimeError):
    """Internal invariant breach: a gate was issued on a busy qubit."""


@dataclass
class Mapping:
    """Injective map from logical qubits onto physical qubits."""

    forward: list[int]
    num_physical: int

    @staticmethod
    def identity(num_logical: int, num_physical: int) -> Mapping:
        if num_logical > num_physical:
            raise TooManyQubitsError(num_logical, num_physical)
        return Mapping(list(range(num_logical)), num_physical)

    @property
    def num_logical(self) -> int:
        return len(self.forward)

    def physical(self, logical: int) -> int:
        return self.forward[logical]

    def inverse(self) -> list[int]:
        """Physical-to-logical array; -1 marks an unoccupied physical qubit."""
        inv = [-1] * self.num_physical
        for logical, phys in enumerate(self.forward):
            inv[phys] = logical
        return inv

    def copy(self) -> Mapping:
        return Mapping(list(self.forward), self.num_physical)

    def check(self) -> None:
        n = len(set(self.forward))
        if n != len(self.forward):
            raise RouterError("mapping is not injective")
        if self.forward and (min(self.forward) < 0 or max(self.forward) >= self.num_physical):
            raise RouterError("mapping targets a qubit outside the device")


class _Placement:
    """Total logical-plus-ancilla placement used while routing.

    Unoccupied physical qubits get synthetic logical ids at and above the
    program's qubit count so a SWAP can always be replayed as a relocation,
    even when one side carries no program state.
    """

    def __init__(self, init: Mapping):
        self.num_logical = init.num_logical
        self.fwd = list(init.forward)
        taken = set(self.fwd)
        self.fwd.extend(p for p in range(init.num_physical) if p not in taken)
        self.inv = [0] * init.num_physical
        for logical, phys in enumerate(self.fwd):
            self.inv[phys] = logical

    def swap(self, i: int, j: int) -> None:
        a, b = self.inv[i], self.inv[j]
        self.inv[i], self.inv[j] = b, a
        self.fwd[a], self.fwd[b] = j, i

    def mapping(self) -> Mapping:
        return Mapping(self.fwd[:self.num_logical], len(self.inv))


@dataclass(frozen=True)
class ScheduledGate:
    """One issued gate: physical operands plus its time slot.

    ``duration`` is what the locks used (1 in the duration-unaware ablation);
    ``true_duration`` always carries the device value.  ``inserted`` marks
    routing SWAPs as opposed to gates of the source program.
    """

    gate: Gate
    start: int
    duration: int
    true_duration: int
    inserted: bool = False

    @property
    def end(self) -> int:
        return self.start + self.duration


@dataclass
class Schedule:
    items: list[ScheduledGate]
    initial_mapping: Mapping
    final_mapping: Mapping
    stall_events: int = 0

    @property
    def weighted_depth(self) -> int:
        return weighted_depth(self.items)

    @property
    def swap_count(self) -> int:
        return sum(1 for it in self.items if it.inserted)

    def to_dict(self) -> dict:
        return {
            "items": [
                {
                    "gate": it.gate.kind.value,
                    "qubits": list(it.gate.qubits),
                    "params": list(it.gate.params),
                    "cbit": it.gate.cbit,
                    "start": it.start,
                    "duration": it.duration,
                    "true_duration": it.true_duration,
                    "inserted": it.inserted,
                }
                for it in self.items
            ],
            "initial_mapping": list(self.initial_mapping.forward),
            "final_mapping": list(self.final_mapping.forward),
            "weighted_depth": self.weighted_depth,
            "swap_count": self.swap_count,
            "stall_events": self.stall_events,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def weighted_depth(items) -> int:
    """Completion cycle of a schedule: latest gate end, 0 when empty."""
    return max((it.start + it.duration for it in items), default=0)


def rescore_true_durations(items, arch: Architecture) -> int:
    """Depth of the scheduled gate order replayed ASAP under device durations.

    This is how a duration-unaware schedule is costed fairly: the gate order
    it chose is kept, but every qubit is busy for the real cycle count.
    """
    release: dict[int, int] = {}
    depth = 0
    for it in items:
        start = max((release.get(q, 0) for q in it.gate.qubits), default=0)
        end = start + duration_of(arch, it.gate.kind)
        for q in it.gate.qubits:
            release[q] = end
        depth = max(depth, end)
    return depth


@dataclass(frozen=True)
class RouterConfig:
    """Routing policy knobs; defaults give the full context-sensitive router."""

    duration_aware: bool = True
    commutativity_on: bool = True
    initial_mapping_policy: str = "identity"
    stall_limit: int | None = None
    cf_window: int | None = None
    table: CommutationTable = BASELINE_TABLE

    def __post_init__(self):
        if self.stall_limit is not None and self.stall_limit < 1:
            raise RouterError("stall_limit must be >= 1")
        if self.initial_mapping_policy not in ("identity", "reverse_pass"):
            raise RouterError(f"unknown initial mapping policy {self.initial_mapping_policy!r}")


@dataclass
class RoutingResult:
    schedule: Schedule
    routed: Circuit


def _is_coupling_gate(gate: Gate) -> bool:
    return gate.kind in TWO_QUBIT_KINDS


def _compliant(gate: Gate, fwd: list[int], arch: Architecture) -> bool:
    if not _is_coupling_gate(gate):
        return True
    a, b = gate.qubits
    return arch.distance(fwd[a], fwd[b]) == 1


def launch(pgate: Gate, t: int, locks: list[int], schedule: list[ScheduledGate],
           arch: Architecture, duration_aware: bool = True,
           inserted: bool = False) -> ScheduledGate:
    """Issue a physical gate at cycle ``t``: lock its qubits until it ends.

    Every operand must be free at ``t``; a busy operand raises
    :class:`LockViolationError` because callers are expected to have checked.
    """
    for q in pgate.qubits:
        if locks[q] > t:
            raise LockViolationError(
                f"{pgate} launched at {t} but qubit {q} is busy until {locks[q]}")
    true_dur = duration_of(arch, pgate.kind)
    dur = true_dur if duration_aware else 1
    for q in pgate.qubits:
        locks[q] = t + dur
    item = ScheduledGate(pgate, t, dur, true_dur, inserted)
    schedule.append(item)
    return item


def candidate_swaps(cf_gates, mapping: Mapping, locks: list[int], t: int,
                    arch: Architecture) -> list[tuple[int, int]]:
    """Lock-free SWAP candidates for the non-compliant CF two-qubit gates.

    A coupling edge qualifies when it touches the physical home of either
    operand of such a gate and both of its qubits are free at ``t``.  Only
    edges incident to the blocked gates are searched, never the whole device.
    """
    fwd = mapping.forward
    endpoints: set[int] = set()
    for gate in cf_gates:
        if _is_coupling_gate(gate) and not _compliant(gate, fwd, arch):
            endpoints.update(fwd[q] for q in gate.qubits)
    found: set[tuple[int, int]] = set()
    for p in endpoints:
        if locks[p] > t:
            continue
        for m in arch.graph.neighbors(p):
            if locks[m] <= t:
                found.add((min(p, m), max(p, m)))
    return sorted(found)


def heuristic_priority(swap: tuple[int, int], cf_gates, mapping: Mapping,
                       distances: list[list[int]]) -> int:
    """Total-distance gain of a SWAP over the pending CF two-qubit gates.

    Positive means the swap moves interacting qubits closer on aggregate.
    Already-adjacent pairs sit at distance 1 and can only be penalized, which
    stops the search from tearing apart a gate that is merely waiting for its
    qubits to unlock.
    """
    i, j = swap
    fwd = mapping.forward
    score = 0
    for gate in cf_gates:
        if not _is_coupling_gate(gate):
            continue
        pa, pb = fwd[gate.qubits[0]], fwd[gate.qubits[1]]
        na = j if pa == i else i if pa == j else pa
        nb = j if pb == i else i if pb == j else pb
        score += distances[pa][pb] - distances[na][nb]
    return score


@dataclass
class _Pending:
    seq: int
    gate: Gate


class _Router:
    def __init__(self, circuit: Circuit, arch: Architecture, init: Mapping,
                 config: RouterConfig):
        self.arch = arch
        self.config = config
        self.placement = _Placement(init)
        self.locks = [0] * arch.num_qubits
        self.items: list[ScheduledGate] = []
        self.pending: list[_Pending] = [_Pending(i, g) for i, g in enumerate(circuit.gates)]
        self.t = 0
        self.stall_counter = 0
        self.stall_events = 0
        self.forced_seq: int | None = None
        self.n_swaps = 0
        self.desperate = False
        # Generous ceiling on inserted SWAPs; if the aggregate heuristic ever
        # cycles, fall back to single-gate forced routing, which always drains.
        self.swap_cap = 8 * (len(circuit.gates) + 4) * (arch.diameter + 2) + 64
        self._front_cache: set[int] | None = None

    # frontier ------------------------------------------------------------
    def _front(self) -> set[int]:
        if self._front_cache is None:
            gates = [p.gate for p in self.pending]
            if self.config.commutativity_on:
                self._front_cache = cf_front(gates, self.config.table, self.config.cf_window)
            else:
                self._front_cache = no_predecessor_front(gates, self.config.cf_window)
        return self._front_cache

    def _free(self, q: int) -> bool:
        return self.locks[q] <= self.t

    def _phys_gate(self, gate: Gate) -> Gate:
        fwd = self.placement.fwd
        return gate.with_qubits(tuple(fwd[q] for q in gate.qubits))

    # launch phase --------------------------------------------------------
    def _launch_ready(self) -> bool:
        launched = False
        while True:
            taken: set[int] = set()
            for pos in sorted(self._front()):
                entry = self.pending[pos]
                if not _compliant(entry.gate, self.placement.fwd, self.arch):
                    continue
                pgate = self._phys_gate(entry.gate)
                if not all(self._free(q) for q in pgate.qubits):
                    continue
                launch(pgate, self.t, self.locks, self.items, self.arch,
                       self.config.duration_aware)
                taken.add(pos)
                if self.forced_seq == entry.seq:
                    self.forced_seq = None
            if not taken:
                return launched
            launched = True
            self.pending = [p for i, p in enumerate(self.pending) if i not in taken]
            self._front_cache = None

    # swap phase ----------------------------------------------------------
    def _front_coupling_gates(self) -> list[Gate]:
        return [self.pending[pos].gate for pos in sorted(self._front())
                if _is_coupling_gate(self.pending[pos].gate)]

    def _blocked_front_gates(self) -> list[Gate]:
        fwd = self.placement.fwd
        return [g for g in self._front_coupling_gates()
                if not _compliant(g, fwd, self.arch)]

    def _launch_swap(self, edge: tuple[int, int]) -> None:
        pgate = Gate(GateKind.SWAP, edge)
        launch(pgate, self.t, self.locks, self.items, self.arch,
               self.config.duration_aware, inserted=True)
        self.placement.swap(*edge)
        self.n_swaps += 1

    def _forced_swap(self) -> bool:
        """Route the oldest blocked gate one hop closer, ignoring the aggregate."""
        target = next((p.gate for p in self.pending if p.seq == self.forced_seq), None)
        if target is None or _compliant(target, self.placement.fwd, self.arch):
            return False
        fwd = self.placement.fwd
        pa, pb = fwd[target.qubits[0]], fwd[target.qubits[1]]
        dist = self.arch.distances
        best = None
        best_gain = 0
        for p in (pa, pb):
            if not self._free(p):
                continue
            for m in self.arch.graph.neighbors(p):
                if not self._free(m):
                    continue
                na = m if pa == p else pa
                nb = m if pb == p else pb
                gain = dist[pa][pb] - dist[na][nb]
                if gain <= 0:
                    continue
                edge = (min(p, m), max(p, m))
                if gain > best_gain or (gain == best_gain and edge < best):
                    best, best_gain = edge, gain
        if best is None:
            return False
        self._launch_swap(best)
        return True

    def _heuristic_swaps(self) -> bool:
        launched = False
        # Live view: _launch_swap mutates placement.fwd in place.
        mapping_view = Mapping(self.placement.fwd, self.arch.num_qubits)
        while True:
            front_2q = self._front_coupling_gates()
            cands = candidate_swaps(front_2q, mapping_view, self.locks, self.t, self.arch)
            if not cands:
                break
            best = None
            best_score = 0
            for edge in cands:
                score = heuristic_priority(edge, front_2q, mapping_view, self.arch.distances)
                if score > best_score:
                    best, best_score = edge, score
            if best is None:
                break
            self._launch_swap(best)
            launched = True
            if self.n_swaps > self.swap_cap:
                self.desperate = True
                break
        return launched

    # main loop -----------------------------------------------------------
    def run(self) -> Schedule:
        init_mapping = self.placement.mapping()
        stall_limit = self.config.stall_limit or max(1, duration_of(self.arch, GateKind.SWAP))
        while self.pending:
            launched = self._launch_ready()
            if self.forced_seq is not None and all(p.seq != self.forced_seq for p in self.pending):
                self.forced_seq = None
            blocked = self._blocked_front_gates()
            if self.forced_seq is None and blocked and (
                    self.desperate or self.stall_counter >= stall_limit):
                self.forced_seq = next(p.seq for p in self.pending
                                       if p.gate is blocked[0])
                self.stall_events += 1
            if self.forced_seq is not None:
                launched = self._forced_swap() or launched
            elif blocked:
                launched = self._heuristic_swaps() or launched
            self.stall_counter = 0 if launched else self.stall_counter + 1
            self.t += 1
        return Schedule(self.items, init_mapping, self.placement.mapping(),
                        self.stall_events)


def initial_mapping(circuit: Circuit, arch: Architecture, policy: str = "identity",
                    config: RouterConfig | None = None) -> Mapping:
    """Starting placement: identity, or the final mapping of a reverse-order pass."""
    if circuit.num_qubits > arch.num_qubits:
        raise TooManyQubitsError(circuit.num_qubits, arch.num_qubits)
    ident = Mapping.identity(circuit.num_qubits, arch.num_qubits)
    if policy == "identity" or not circuit.gates:
        return ident
    if policy != "reverse_pass":
        raise RouterError(f"unknown initial mapping policy {policy!r}")
    result = route(circuit.reversed(), arch, ident, config)
    return result.schedule.final_mapping


def route(circuit: Circuit, arch: Architecture, init: Mapping | None = None,
          config: RouterConfig | None = None) -> RoutingResult:
    """Schedule a circuit onto an architecture, inserting SWAPs as needed.

    Returns the cycle-accurate schedule together with the routed circuit over
    physical qubit indices (its gate order is schedule order).  Deterministic:
    equal inputs give identical output, with ties broken by program order for
    gates and by the lexicographically smallest edge for SWAPs.
    """
    config = config or RouterConfig()
    diagnostics = validate(circuit, arch.num_qubits)
    if diagnostics:
        if any(d.code == "TooManyQubits" for d in diagnostics) and len(diagnostics) == 1:
            raise TooManyQubitsError(circuit.num_qubits, arch.num_qubits)
        raise InvalidCircuitError(diagnostics)
    if init is None:
        init = initial_mapping(circuit, arch, config.initial_mapping_policy, config)
    if init.num_logical != circuit.num_qubits or init.num_physical != arch.num_qubits:
        raise RouterError("initial mapping does not match circuit/architecture sizes")
    init.check()
    schedule = _Router(circuit, arch, init, config).run()
    routed = Circuit(arch.num_qubits, [it.gate for it in schedule.items],
                     circuit.register_name, circuit.creg_name,
                     circuit.num_clbits)
    return RoutingResult(schedule, routed)


class Router:
    """Reusable routing pass bound to one architecture and policy."""

    def __init__(self, arch: Architecture, config: RouterConfig | None = None):
        self.arch = arch
        self.config = config or RouterConfig()

    def run(self, circuit: Circuit, init: Mapping | None = None) -> RoutingResult:
        return route(circuit, self.arch, init, self.config)

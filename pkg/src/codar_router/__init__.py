"""codar-router: duration-aware SWAP routing for coupling-limited devices."""

__version__ = "0.1.0"

from .arch import (
    Architecture,
    ArchitectureError,
    CouplingGraph,
    DEFAULT_DURATIONS,
    DisconnectedGraphError,
    all_pairs_distances,
    architecture_to_config,
    duration_of,
    grid_architecture,
    load_architecture,
    load_architecture_file,
    preset_architecture,
    resolve_architecture,
)
from .circuit import Circuit, Gate, GateKind
from .commutation import (
    BASELINE_TABLE,
    CommutationTable,
    cf_front,
    commutes,
    no_predecessor_front,
)
from .qasm import Diagnostic, QasmError, emit_program, parse_file, parse_program, validate
from .router import (
    Mapping,
    Router,
    RouterConfig,
    RoutingResult,
    Schedule,
    ScheduledGate,
    TooManyQubitsError,
    candidate_swaps,
    heuristic_priority,
    initial_mapping,
    launch,
    rescore_true_durations,
    route,
    weighted_depth,
)
from .verify import (
    EquivalenceReport,
    OracleLimitError,
    dependency_equivalence,
    statevector_oracle,
    verify_equivalence,
)

__all__ = [
    "Architecture", "ArchitectureError", "CouplingGraph", "DEFAULT_DURATIONS",
    "DisconnectedGraphError", "all_pairs_distances", "architecture_to_config",
    "duration_of", "grid_architecture", "load_architecture", "load_architecture_file",
    "preset_architecture", "resolve_architecture",
    "Circuit", "Gate", "GateKind",
    "BASELINE_TABLE", "CommutationTable", "cf_front", "commutes", "no_predecessor_front",
    "Diagnostic", "QasmError", "emit_program", "parse_file", "parse_program", "validate",
    "Mapping", "Router", "RouterConfig", "RoutingResult", "Schedule", "ScheduledGate",
    "TooManyQubitsError", "candidate_swaps", "heuristic_priority", "initial_mapping",
    "launch", "rescore_true_durations", "route", "weighted_depth",
    "EquivalenceReport", "OracleLimitError", "dependency_equivalence",
    "statevector_oracle", "verify_equivalence",
    "__version__",
]

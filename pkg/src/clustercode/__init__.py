"""Cluster-state construction of [[n,1]] stabilizer codes."""

__version__ = "0.1.0"

from .analysis import (
    CodeParameters,
    CodeReport,
    CorrectabilityReport,
    analyze,
    distance_brute_force,
    distance_by_columns,
    hamming_bound,
    single_error_report,
)
from .errors import (
    ClusterCodeError,
    ContradictionError,
    CorrectionError,
    InputError,
    PauliParseError,
    StateError,
    SynthesisInfeasible,
    SynthesisMismatch,
    ValidationError,
)
from .graph import ClusterCode, Graph, cluster_stabilizers, cz_circuit, graph_from_edges, load_graph, to_qasm
from .measurement import (
    MeasurementRecord,
    MeasurementSpec,
    conjugate,
    correction_frame,
    discard_qubit,
    evolve_sequence,
    measure,
)
from .pauli import (
    GeneratorSet,
    PauliOperator,
    commutes,
    format_pauli,
    group_equal,
    multiply,
    parse_generator_set,
    parse_pauli,
    symplectic_rank,
    weight,
)
from .statevector import (
    StateVector,
    apply_pauli,
    equivalence_check,
    is_stabilized,
    measure_pauli,
    prepare_cluster,
)
from .synthesis import (
    ParityCheckMatrix,
    SynthesisResult,
    adjacency_from_hz,
    extend_with_message,
    logical_operators,
    parity_check_from_stabilizers,
    synthesize,
)

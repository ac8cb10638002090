"""Exact quantum-correlation dynamics of two qubits in an isotropic LMG bath."""
from .correlations import (
    CorrelationRecord,
    concurrence,
    discord_xstate,
    entropy,
    eof_from_concurrence,
    evaluate,
)
from .dynamics import EvolutionContext, evolve, make_context, reduced_state
from .errors import (
    InvalidParameterError,
    InvalidStateError,
    InvariantViolation,
    PhaseDispatchError,
)
from .model import (
    HamiltonianBlock,
    ModelParams,
    Phase,
    XState,
    build_block,
    classify_phase,
    ground_state_index,
    initial_xstate,
)

__version__ = "0.1.0"

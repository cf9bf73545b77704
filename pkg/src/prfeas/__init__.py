"""Oracle-driven projection-and-rescaling feasibility solver.

Decides strict homogeneous feasibility (find y with a_t^T y > 0 for every
constraint in a possibly infinite family), produces verified dual
certificates (positive combinations of constraint columns summing to zero),
or declares that the feasible region is thinner than a requested epsilon.
Constraint families are presented through separation oracles; finite LP,
semidefinite, and second-order cone families are built in.
"""

from .certify import (
    Certificate,
    UnresolvableWitness,
    VerificationReport,
    dstar_lower_bound,
    generate_planted,
    resolve_witness_column,
    verify_d_solution,
    verify_p_certificate,
)
from .linalg import (
    CholeskyResult,
    NonSymmetric,
    Singular,
    SingularUpdate,
    certifying_cholesky,
    smw_inverse_update,
    solve_with_factorization,
)
from .oracle import (
    CustomOracle,
    CustomWitness,
    FiniteLp,
    InvalidQuery,
    LpIndex,
    OracleContractViolation,
    ProblemInstance,
    Sdp,
    SdpVector,
    Socp,
    SocpVector,
    Witness,
    WitnessedColumn,
    lp_query,
    query,
    sdp_query,
    socp_query,
)
from .solver import (
    BasicProcedureResult,
    CoincidentPoints,
    ConfigError,
    ConvexCombination,
    DegenerateColumn,
    IterationBoundViolated,
    RescalingState,
    SolveCounters,
    SolveOutcome,
    SolveTrace,
    SolverConfig,
    apply_scaling,
    basic_procedure,
    main_algorithm,
    normalize_column,
    rescale_budget,
    rescale_matrix,
    step_alpha,
)

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "UnresolvableWitness",
    "VerificationReport",
    "dstar_lower_bound",
    "generate_planted",
    "resolve_witness_column",
    "verify_d_solution",
    "verify_p_certificate",
    "CholeskyResult",
    "NonSymmetric",
    "Singular",
    "SingularUpdate",
    "certifying_cholesky",
    "smw_inverse_update",
    "solve_with_factorization",
    "CustomOracle",
    "CustomWitness",
    "FiniteLp",
    "InvalidQuery",
    "LpIndex",
    "OracleContractViolation",
    "ProblemInstance",
    "Sdp",
    "SdpVector",
    "Socp",
    "SocpVector",
    "Witness",
    "WitnessedColumn",
    "lp_query",
    "query",
    "sdp_query",
    "socp_query",
    "BasicProcedureResult",
    "CoincidentPoints",
    "ConfigError",
    "ConvexCombination",
    "DegenerateColumn",
    "IterationBoundViolated",
    "RescalingState",
    "SolveCounters",
    "SolveOutcome",
    "SolveTrace",
    "SolverConfig",
    "apply_scaling",
    "basic_procedure",
    "main_algorithm",
    "normalize_column",
    "rescale_budget",
    "rescale_matrix",
    "step_alpha",
]

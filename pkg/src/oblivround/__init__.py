"""Oblivious-rounding (multiplicative-weights) solvers for packing and covering."""

from .approx import ApproximateOracle, wrap_approximate_oracle
from .bounds import (
    b,
    integer_covering_feasible,
    integer_packing_feasible,
    iterations_covering,
    iterations_generalized_packing,
    iterations_packing,
)
from .errors import (
    DimensionError,
    DomainError,
    InstanceFormatError,
    NoConvergenceError,
    ObliviousRoundingError,
    OracleError,
    PreconditionError,
    UncoverableError,
    WidthViolationError,
)
from .model import (
    ApproxParams,
    DualWeights,
    OracleAnswer,
    ProblemInstance,
    Sense,
    SolveResult,
)
from .oracles import (
    ExplicitInstance,
    FlowInstance,
    SetSystemOracleView,
    fractional_setcover_oracle,
    shortest_path_oracle,
    simplex_oracle,
)
from .setcover import SetSystem, greedy_set_cover, setcover_dual_bound
from .solver import (
    dual_value,
    solve_covering,
    solve_generalized_packing,
    solve_integer_covering,
    solve_integer_packing,
    solve_packing,
    solve_packing_given_s,
    update_weights,
)

__version__ = "0.1.0"

"""kscheck: exact-rational verification of Kochen-Specker style arguments.

Everything in this package computes over arbitrary-precision rationals.
Orthogonality, lattice laws, valuation counts, Born probabilities and
model feasibility are all decided exactly; there is no epsilon anywhere.
"""

from .data import cabello18, cabello18_text
from .dsl import ParseError, parse_rational, parse_scenario, parse_state, serialize_scenario
from .exactlin import (
    RMatrix,
    Rational,
    RVector,
    kernel_basis,
    nonneg_solve,
    outer,
    row_reduce,
    trace_product,
)
from .ksengine import (
    EXHAUSTIVE_RAY_BOUND,
    FuncReport,
    KSScenario,
    MODEL_VALUATION_LIMIT,
    NoncontextualModel,
    ParityCertificate,
    ScenarioError,
    ScenarioTooLargeError,
    Valuation,
    build_scenario,
    count_valuations,
    enumerate_valuations,
    find_valuation,
    noncontextual_model,
    orthogonality_graph,
    parity_certificate,
    verify_func,
    without_context,
)
from .probability import (
    DensityOperator,
    FiniteProbabilitySpace,
    born,
    check_classical_axioms,
    check_state_axioms,
    context_distribution,
    event_probability,
    expectation,
    finite_pvm_check,
)
from .qlogic import (
    Context,
    ContextError,
    Projector,
    Ray,
    Subspace,
    boolean_algebra_of,
    canonical_ray_coords,
    join,
    meet,
    ortho,
    projector_of,
    validate_context,
)
from .symmetry import (
    TwoParticleState,
    exchange_parity,
    pair_probability,
    product_state,
    swap,
    symmetrize,
)

__version__ = "0.1.0"

__all__ = [
    "Context",
    "ContextError",
    "DensityOperator",
    "EXHAUSTIVE_RAY_BOUND",
    "FiniteProbabilitySpace",
    "FuncReport",
    "KSScenario",
    "MODEL_VALUATION_LIMIT",
    "NoncontextualModel",
    "ParityCertificate",
    "ParseError",
    "Projector",
    "RMatrix",
    "RVector",
    "Rational",
    "Ray",
    "ScenarioError",
    "ScenarioTooLargeError",
    "Subspace",
    "TwoParticleState",
    "Valuation",
    "boolean_algebra_of",
    "born",
    "build_scenario",
    "cabello18",
    "cabello18_text",
    "canonical_ray_coords",
    "check_classical_axioms",
    "check_state_axioms",
    "context_distribution",
    "count_valuations",
    "enumerate_valuations",
    "event_probability",
    "exchange_parity",
    "expectation",
    "find_valuation",
    "finite_pvm_check",
    "join",
    "kernel_basis",
    "meet",
    "noncontextual_model",
    "nonneg_solve",
    "ortho",
    "orthogonality_graph",
    "outer",
    "pair_probability",
    "parity_certificate",
    "parse_rational",
    "parse_scenario",
    "parse_state",
    "product_state",
    "projector_of",
    "row_reduce",
    "serialize_scenario",
    "swap",
    "symmetrize",
    "trace_product",
    "validate_context",
    "verify_func",
    "without_context",
]

"""Eigenlogic: propositions as commuting projectors, probabilities by the Born rule."""

from .bayes import (
    BayesCase,
    BayesReport,
    ProbabilitySpace,
    ZeroDenominatorError,
    ZeroPriorError,
    alpha_implication,
    classify_case,
    conditional,
    event_probability,
    implication_probability,
    inclusion_exclusion,
    linear_relation_residuals,
    probability_bounds,
    quantum_bayes_check,
)
from .born import (
    DecompositionWeights,
    ProbabilityBundle,
    born_mean,
    decompose,
    probabilities_from_weights,
    probability_bundle,
)
from .formula import (
    Formula,
    MultilinearPolynomial,
    ParseError,
    TruthTable,
    VariableOrder,
    boole_polynomial,
    eval_polynomial,
    parse,
    to_text,
    truth_table,
)
from .operators import (
    DiagonalProjector,
    complement,
    compile_formula,
    dense_kron_elementary,
    elementary,
    identity,
    implies,
    join,
    meet,
    to_dense,
    verify_projector,
    zero,
)
from .states import (
    BlochAngles,
    StateError,
    StateVector,
    basis_state,
    density,
    from_amplitudes,
    named_state,
    single_qubit,
    tensor,
)

__version__ = "0.1.0"

__all__ = [
    "BayesCase",
    "BayesReport",
    "ProbabilitySpace",
    "ZeroDenominatorError",
    "ZeroPriorError",
    "alpha_implication",
    "classify_case",
    "conditional",
    "event_probability",
    "implication_probability",
    "inclusion_exclusion",
    "linear_relation_residuals",
    "probability_bounds",
    "quantum_bayes_check",
    "DecompositionWeights",
    "ProbabilityBundle",
    "born_mean",
    "decompose",
    "probabilities_from_weights",
    "probability_bundle",
    "Formula",
    "MultilinearPolynomial",
    "ParseError",
    "TruthTable",
    "VariableOrder",
    "boole_polynomial",
    "eval_polynomial",
    "parse",
    "to_text",
    "truth_table",
    "DiagonalProjector",
    "complement",
    "compile_formula",
    "dense_kron_elementary",
    "elementary",
    "identity",
    "implies",
    "join",
    "meet",
    "to_dense",
    "verify_projector",
    "zero",
    "BlochAngles",
    "StateError",
    "StateVector",
    "basis_state",
    "density",
    "from_amplitudes",
    "named_state",
    "single_qubit",
    "tensor",
]

"""Split-complex scalars, 2-norms on D^n, bounded 2-functionals, extensions.

The package is organized along the idempotent decomposition of the scalar
ring: `hyperbolic` holds the ring with its order and lattice structure,
`dmodule` the free module D^n and its submodules, `two_norm` real 2-norms
and their hyperbolic-valued lift, `two_functional` bounded 2-functionals as
antisymmetric component matrices with two independent norm computations, and
`hahn_banach` the constructive norm-preserving extension engine.  `cli`
exposes everything as JSON-driven subcommands.
"""

from .hyperbolic import (
    E1,
    E2,
    K,
    ONE,
    TOL,
    ZERO,
    EmptyCollection,
    Hyperbolic,
    NotInvertible,
    OrderResult,
    inf_d,
    sup_d,
)
from .dmodule import (
    SPAN_TOL,
    AlreadyContained,
    DimensionMismatch,
    DSubmodule,
    DVector,
    is_zero_divisor_element,
    join,
    linear_dependent,
    split,
    submodule_contains,
    submodule_extend,
)
from .two_norm import (
    AxiomReport,
    AxiomViolation,
    D2Norm,
    GramDet2Norm,
    axiom_check,
    decompose,
    eval_d,
    sequence_converges,
)
from .two_functional import (
    BoundednessReport,
    DBilinear2Functional,
    Method,
    NormCertificate,
    certificate_gap,
    component_split,
    is_bounded_check,
    k_decompose,
    norm_bruteforce,
    norm_spectral,
)
from .hahn_banach import (
    DegenerateZ,
    DependentPair,
    ExtensionProblem,
    ExtensionStep,
    ExtensionTrace,
    NotDegenerate,
    OptimizationFailure,
    RestrictedFunctional,
    ZeroDivisorInput,
    corollary_functional,
    full_extend,
    gap_interval,
    gap_interval_grid,
    gap_interval_subgradient,
    normalize_degenerate_z,
    one_step_extend,
)

__version__ = "0.1.0"

__all__ = [
    "E1",
    "E2",
    "K",
    "ONE",
    "TOL",
    "ZERO",
    "SPAN_TOL",
    "EmptyCollection",
    "Hyperbolic",
    "NotInvertible",
    "OrderResult",
    "inf_d",
    "sup_d",
    "AlreadyContained",
    "DimensionMismatch",
    "DSubmodule",
    "DVector",
    "is_zero_divisor_element",
    "join",
    "linear_dependent",
    "split",
    "submodule_contains",
    "submodule_extend",
    "AxiomReport",
    "AxiomViolation",
    "D2Norm",
    "GramDet2Norm",
    "axiom_check",
    "decompose",
    "eval_d",
    "sequence_converges",
    "BoundednessReport",
    "DBilinear2Functional",
    "Method",
    "NormCertificate",
    "certificate_gap",
    "component_split",
    "is_bounded_check",
    "k_decompose",
    "norm_bruteforce",
    "norm_spectral",
    "DegenerateZ",
    "DependentPair",
    "ExtensionProblem",
    "ExtensionStep",
    "ExtensionTrace",
    "NotDegenerate",
    "OptimizationFailure",
    "RestrictedFunctional",
    "ZeroDivisorInput",
    "corollary_functional",
    "full_extend",
    "gap_interval",
    "gap_interval_grid",
    "gap_interval_subgradient",
    "normalize_degenerate_z",
    "one_step_extend",
]

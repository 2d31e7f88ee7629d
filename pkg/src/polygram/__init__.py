"""Grammar-driven multivariate polynomials over Stirling-type permutations.

The package has four layers: exact sparse polynomial arithmetic
(`polyring`), substitution grammars and their formal derivatives
(`grammar`), brute-force enumeration of the structures the grammars grow
(`structures`), and exact real-rootedness plus stability falsification
(`stability`).  `checks` bundles the verification suites, `cli` fronts
everything from the command line.
"""

from .polyring import (
    A,
    B,
    Family,
    GaussianRational,
    NonIntegerCoefficientError,
    P,
    Polynomial,
    U,
    UnassignedVariableError,
    V,
    Variable,
    X,
    Y,
    Z,
)
from .grammar import (
    FamilyKind,
    Grammar,
    LinearDiffOp,
    SurrogateKind,
    family_grammar,
    family_seed,
    iterate_family,
    iterate_steps,
    surrogate_operator,
)
from .structures import (
    Letter,
    StatSets,
    WordFamily,
    coefficient_table,
    enumerate_by_filter,
    enumerate_family,
    is_valid,
    serialize_partition,
    serialize_word,
    statistics,
    structure_count,
    structure_weight,
    weight_polynomial,
    weight_polynomial_univariate,
)
from .stability import (
    GateResult,
    NotUnivariateError,
    RootReport,
    Witness,
    ZeroPolynomialError,
    lemma_gate,
    partner_map,
    sample_falsify,
    sample_point,
    specialization_suite,
    sturm_report,
    verify_gessel_stanley,
    verify_tn_identity,
)
from .checks import CheckOptions, CheckResult, run_check, run_checks

__version__ = "0.1.0"

__all__ = [
    "A",
    "B",
    "CheckOptions",
    "CheckResult",
    "Family",
    "FamilyKind",
    "GateResult",
    "GaussianRational",
    "Grammar",
    "Letter",
    "LinearDiffOp",
    "NonIntegerCoefficientError",
    "NotUnivariateError",
    "P",
    "Polynomial",
    "RootReport",
    "StatSets",
    "SurrogateKind",
    "U",
    "UnassignedVariableError",
    "V",
    "Variable",
    "Witness",
    "WordFamily",
    "X",
    "Y",
    "Z",
    "ZeroPolynomialError",
    "coefficient_table",
    "enumerate_by_filter",
    "enumerate_family",
    "family_grammar",
    "family_seed",
    "is_valid",
    "iterate_family",
    "iterate_steps",
    "lemma_gate",
    "partner_map",
    "run_check",
    "run_checks",
    "sample_falsify",
    "sample_point",
    "serialize_partition",
    "serialize_word",
    "specialization_suite",
    "statistics",
    "structure_count",
    "structure_weight",
    "sturm_report",
    "surrogate_operator",
    "verify_gessel_stanley",
    "verify_tn_identity",
    "weight_polynomial",
    "weight_polynomial_univariate",
]

"""The series-transformation engine: telescoping pairs, certificates,
the worked q-series instance, Schellbach's limit form, the stepwise
multiplier solver, and remainder diagnostics."""

from .pairs import (
    EvaluationError,
    GridFunction,
    MarkovPair,
    PairCheck,
    RectangleSums,
    TermExtension,
    TransformSums,
    check_pair_condition,
    green_rectangle,
    transform_check,
)
from .certificates import (
    Certificate,
    FailurePoint,
    Verdict,
    pair_from_certificate,
    verify_certificate,
)
from .phi32 import (
    SAMPLE_TUPLES,
    ThreePhiTwo,
    coefficient_residuals,
    fixture_from_json,
    fixture_to_json,
    make_certificate,
    markov_form_term,
    markov_param_map,
)
from .schellbach import (
    SchellbachParams,
    direct_term,
    ratio_function,
    schellbach_asymptotics,
    schellbach_term,
)
from .solver import (
    FAMILIES,
    FORM_U1,
    FORM_U2,
    FORM_U3,
    MultiplierData,
    SolveResult,
    SolverFamily,
    f4f3_family,
    phi32_family,
    solve_multipliers_stepwise,
    well_poised_family,
)
from .diagnostics import remainder_diagnostics
from .sampling import Lcg, sample_parameter_tuples

__all__ = [
    "Certificate", "EvaluationError", "FailurePoint", "FAMILIES", "FORM_U1",
    "FORM_U2", "FORM_U3", "GridFunction", "Lcg", "MarkovPair", "MultiplierData",
    "PairCheck", "RectangleSums", "SAMPLE_TUPLES", "SchellbachParams",
    "SolveResult", "SolverFamily", "TermExtension", "ThreePhiTwo",
    "TransformSums", "Verdict", "check_pair_condition", "coefficient_residuals",
    "direct_term", "f4f3_family", "fixture_from_json", "fixture_to_json",
    "green_rectangle", "make_certificate",
    "markov_form_term", "markov_param_map", "pair_from_certificate",
    "phi32_family", "ratio_function", "remainder_diagnostics",
    "sample_parameter_tuples", "schellbach_asymptotics", "schellbach_term",
    "solve_multipliers_stepwise", "transform_check", "verify_certificate",
    "well_poised_family",
]

"""Exact pole-index computation for polynomial singularities.

The engine monomializes a polynomial by iterated origin blow-ups in affine
charts, tracking for every exceptional divisor the vanishing order k of the
pulled-back polynomial and the order h of the Jacobian determinant; the
minimal (h+1)/k over all divisors is the reported pole index. Two
independent cross-checks ship alongside: a Newton-polyhedron oracle (exact)
and a Monte Carlo volume-scaling estimator (stochastic).
"""

from .algebra import (
    EISENSTEIN,
    GAUSS,
    RATIONALS,
    FieldElement,
    NumberField,
    Polynomial,
)
from .blowup import (
    Auto,
    Chart,
    ChartStatus,
    ResolutionTree,
    Scripted,
    TreeNode,
    apply_affine,
    blowup_origin,
    classify,
    make_root_chart,
    resolve,
    total_transform_identity,
    translate,
    verify_jacobian,
)
from .catalogue import (
    FAMILIES,
    FamilySpec,
    VerifyReport,
    family_spec,
    generator,
    paper_claim,
    script_text,
    scripted_resolution,
    verify,
    verify_all,
)
from .errors import (
    ChartError,
    FactorizationDestroyedError,
    FieldError,
    FieldMismatchError,
    InternalInconsistencyError,
    LctkitError,
    ParseError,
    ScriptError,
    UnitInputError,
    UnreliableEstimateError,
    VariableMismatchError,
    ZeroDivisorError,
    ZeroPolynomialError,
)
from .estimator import Estimate, EstimatorConfig, estimate, hit_counts, volume_probe
from .newton import NewtonData, lambda_newton, support, w_order, weighted_candidate
from .parser import (
    DEFAULT_VARIABLES,
    ResolutionScript,
    SourceSpan,
    format_poly,
    parse_poly,
    parse_script,
)
from .zeta import (
    PoleIndex,
    PoleReport,
    divisor_candidates,
    lambda_capped,
    lambda_uncapped,
    multiplicity,
)

__version__ = "0.1.0"

__all__ = [
    "EISENSTEIN",
    "GAUSS",
    "RATIONALS",
    "FieldElement",
    "NumberField",
    "Polynomial",
    "Auto",
    "Chart",
    "ChartStatus",
    "ResolutionTree",
    "Scripted",
    "TreeNode",
    "apply_affine",
    "blowup_origin",
    "classify",
    "make_root_chart",
    "resolve",
    "total_transform_identity",
    "translate",
    "verify_jacobian",
    "FAMILIES",
    "FamilySpec",
    "VerifyReport",
    "family_spec",
    "generator",
    "paper_claim",
    "script_text",
    "scripted_resolution",
    "verify",
    "verify_all",
    "ChartError",
    "FactorizationDestroyedError",
    "FieldError",
    "FieldMismatchError",
    "InternalInconsistencyError",
    "LctkitError",
    "ParseError",
    "ScriptError",
    "UnitInputError",
    "UnreliableEstimateError",
    "VariableMismatchError",
    "ZeroDivisorError",
    "ZeroPolynomialError",
    "Estimate",
    "EstimatorConfig",
    "estimate",
    "hit_counts",
    "volume_probe",
    "NewtonData",
    "lambda_newton",
    "support",
    "w_order",
    "weighted_candidate",
    "DEFAULT_VARIABLES",
    "ResolutionScript",
    "SourceSpan",
    "format_poly",
    "parse_poly",
    "parse_script",
    "PoleIndex",
    "PoleReport",
    "divisor_candidates",
    "lambda_capped",
    "lambda_uncapped",
    "multiplicity",
    "__version__",
]

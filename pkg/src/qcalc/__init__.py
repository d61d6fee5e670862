"""Exact invariants of 7-dimensional quaternionic-contact Lie algebras.

The package represents a Lie algebra by the structure equations of its dual
coframe, checks the Jacobi identity as closedness of the differential, and
computes the canonical-connection invariants of a quaternionic-contact
structure in exact rational (or univariate polynomial) arithmetic.
"""

from .biquard import (
    Connection,
    Pipeline,
    Torsion,
    assemble_torsion,
    audit,
    biquard_connection,
    connection_torsion,
    curvature,
    levi_civita,
    normalize_scale,
    ricci_forms,
    run_pipeline,
    solve_qc_scalar_curvature,
    sp1_connection_forms,
    t0_tensor,
    torsion_endomorphisms,
)
from .conformal import is_qc_conformally_flat, kulkarni_nomizu, wqc_tensor
from .errors import (
    InconsistentCurvature,
    InconsistentTorsion,
    IndeterminateMismatch,
    InternalError,
    InvalidFlag,
    NotALieAlgebra,
    NotIntegrable,
    NotQuaternionic,
    ParametricNotSupported,
    ParseError,
    QcalcError,
    ZeroPolynomial,
)
from .exterior import (
    MAX_DIM,
    Flag,
    Form,
    LieAlgebra,
    Vec,
    cohomology_dim,
    derived_and_central_series,
    dot,
    monomials,
    search_flag,
    substitute_form,
    verify_flag,
    wedge,
)
from .family import (
    ALL_VALUES,
    fingerprint,
    jacobi_constraints,
    rescale_covectors,
    solve_family,
    specialize,
)
from .parser import AlgebraDocument, form_text, parse, print_document
from .qc import (
    QCFrame,
    adapted_shape,
    check_bi1,
    check_compatibility,
    d_fundamental_form,
    derive_complex_structures,
    fundamental_form,
    standard_frame,
    vertical_integrable,
)
from .report import build_report
from .scalars import (
    Poly,
    Rat,
    Scalar,
    is_zero,
    poly,
    rat,
    rational_roots,
    scalar_str,
    solve_linear,
    substitute,
    variable,
)

__all__ = [
    "ALL_VALUES",
    "AlgebraDocument",
    "Connection",
    "Flag",
    "Form",
    "InconsistentCurvature",
    "InconsistentTorsion",
    "IndeterminateMismatch",
    "InternalError",
    "InvalidFlag",
    "LieAlgebra",
    "MAX_DIM",
    "NotALieAlgebra",
    "NotIntegrable",
    "NotQuaternionic",
    "ParametricNotSupported",
    "ParseError",
    "Pipeline",
    "Poly",
    "QCFrame",
    "QcalcError",
    "Rat",
    "Scalar",
    "Torsion",
    "Vec",
    "ZeroPolynomial",
    "adapted_shape",
    "assemble_torsion",
    "audit",
    "biquard_connection",
    "build_report",
    "check_bi1",
    "check_compatibility",
    "cohomology_dim",
    "connection_torsion",
    "curvature",
    "d_fundamental_form",
    "derive_complex_structures",
    "derived_and_central_series",
    "dot",
    "fingerprint",
    "form_text",
    "fundamental_form",
    "is_qc_conformally_flat",
    "is_zero",
    "jacobi_constraints",
    "kulkarni_nomizu",
    "levi_civita",
    "monomials",
    "normalize_scale",
    "parse",
    "poly",
    "print_document",
    "rat",
    "rational_roots",
    "rescale_covectors",
    "ricci_forms",
    "run_pipeline",
    "scalar_str",
    "search_flag",
    "solve_family",
    "solve_linear",
    "solve_qc_scalar_curvature",
    "sp1_connection_forms",
    "specialize",
    "standard_frame",
    "substitute",
    "substitute_form",
    "t0_tensor",
    "torsion_endomorphisms",
    "variable",
    "verify_flag",
    "vertical_integrable",
    "wedge",
    "wqc_tensor",
]

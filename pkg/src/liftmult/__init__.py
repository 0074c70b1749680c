"""Lifted multiplicity codes over GF(2^l).

Library + CLI covering the monomial census behind the code rate, the
good-monomial encoder, the spectral asymptotics of the census, PIR
disjoint recovery sets, and randomized local self-correction.
"""

from ._kernels import BACKEND
from .asymptotics import (
    census_eigenvalue,
    dominant_eigenvalue,
    eigenvalue_gap,
    eigenvalue_gap_bounds,
    pir_exponent,
    redundancy_curve,
    transfer_matrix,
)
from .census import CensusReport, census, count_bad_dp, enumerate_good
from .code import (
    CodeParams,
    Codeword,
    LiftedCode,
    build_code,
    distance_lower_bound,
    encode,
    membership_test,
    weight_sample,
)
from .exponents import (
    achievable_degrees,
    binom_parity,
    deg_q,
    dominated_le2,
    fold_degree,
    is_bad,
)
from .gf2e import Field, FieldElement, field_for, field_of_order
from .multipoly import (
    Line,
    MultiPoly,
    UniPoly,
    canonical_lines,
    equiv_up_to_order,
    eval_derivatives_below,
    hasse_derivative,
    reduce_equiv,
    restrict_to_line,
)
from .recovery import (
    CorrectionReport,
    LineView,
    RecoverySet,
    corrupt,
    decode_line,
    interpolate_point,
    line_directional_values,
    line_view,
    pir_recovery_sets,
    self_correct,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CensusReport",
    "CodeParams",
    "Codeword",
    "CorrectionReport",
    "Field",
    "FieldElement",
    "LiftedCode",
    "Line",
    "LineView",
    "MultiPoly",
    "RecoverySet",
    "UniPoly",
    "achievable_degrees",
    "binom_parity",
    "build_code",
    "canonical_lines",
    "census",
    "census_eigenvalue",
    "corrupt",
    "count_bad_dp",
    "decode_line",
    "deg_q",
    "distance_lower_bound",
    "dominant_eigenvalue",
    "dominated_le2",
    "eigenvalue_gap",
    "eigenvalue_gap_bounds",
    "encode",
    "enumerate_good",
    "equiv_up_to_order",
    "eval_derivatives_below",
    "field_for",
    "field_of_order",
    "fold_degree",
    "hasse_derivative",
    "interpolate_point",
    "is_bad",
    "line_directional_values",
    "line_view",
    "membership_test",
    "pir_exponent",
    "pir_recovery_sets",
    "redundancy_curve",
    "reduce_equiv",
    "restrict_to_line",
    "self_correct",
    "transfer_matrix",
    "weight_sample",
]

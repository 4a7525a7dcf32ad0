"""Exact arithmetic for finite ergodic invariant measures on stationary
Bratteli diagrams: classification, clopen value sets, goodness certificates,
and constructions of new diagrams carrying measures with prescribed values.

Everything is computed over Q or a real algebraic number field — no floats
are ever trusted for a decision.  The usual session looks like:

    >>> from bratteli import make_diagram, ergodic_measures, is_good
    >>> d = make_diagram([[1, 1, 0], [1, 2, 0], [0, 1, 3]])
    >>> for mu in ergodic_measures(d):
    ...     print(mu.vertex_class.vertices, is_good(mu).good)
"""

from .construct import (
    ConstructionResult,
    build_rational_family,
    collapse_to_simple,
    count_minimal_components,
    extend_with_minimal_component,
    proper_minimal_count,
)
from .diagram import (
    ClassDecomposition,
    Diagram,
    VertexClass,
    decompose,
    heights,
    load_diagram,
    make_diagram,
    parse_diagram,
)
from .errors import (
    BratteliError,
    DiagramValidationError,
    EnumerationBudgetError,
    FieldMismatchError,
    InfiniteMeasureError,
    InternalConsistencyError,
    SearchFailedError,
    SizeLimitError,
    UnsupportedDegreeError,
    UnsupportedOperationError,
    ValueExprError,
)
from .exactmath import (
    FieldElement,
    NumberField,
    Polynomial,
    RealAlgebraic,
    compare_real,
    factor_over_rationals,
    is_irreducible,
    isolate_real_roots,
)
from .goodness import (
    GoodnessResult,
    QuotientWitness,
    good_via_orbit,
    is_bernoulli_type,
    is_good,
    is_multiplicative,
    quotient_witness,
)
from .measure import ErgodicMeasure, build_measure, ergodic_measures
from .values import (
    GroupCompareResult,
    LatticeGroup,
    MemberResult,
    enumerate_level_values,
    group_equal,
    member_value,
    parse_value,
    rational_group_invariant,
    value_lattice,
)

__version__ = "0.1.0"

__all__ = [
    "BratteliError",
    "ClassDecomposition",
    "ConstructionResult",
    "Diagram",
    "DiagramValidationError",
    "EnumerationBudgetError",
    "ErgodicMeasure",
    "FieldElement",
    "FieldMismatchError",
    "GoodnessResult",
    "GroupCompareResult",
    "InfiniteMeasureError",
    "InternalConsistencyError",
    "LatticeGroup",
    "MemberResult",
    "NumberField",
    "Polynomial",
    "QuotientWitness",
    "RealAlgebraic",
    "SearchFailedError",
    "SizeLimitError",
    "UnsupportedDegreeError",
    "UnsupportedOperationError",
    "ValueExprError",
    "VertexClass",
    "build_measure",
    "build_rational_family",
    "collapse_to_simple",
    "compare_real",
    "count_minimal_components",
    "decompose",
    "enumerate_level_values",
    "ergodic_measures",
    "extend_with_minimal_component",
    "factor_over_rationals",
    "good_via_orbit",
    "group_equal",
    "heights",
    "is_bernoulli_type",
    "is_good",
    "is_irreducible",
    "is_multiplicative",
    "isolate_real_roots",
    "load_diagram",
    "make_diagram",
    "member_value",
    "parse_diagram",
    "parse_value",
    "proper_minimal_count",
    "quotient_witness",
    "rational_group_invariant",
    "value_lattice",
]

"""Exact-arithmetic toolkit for nilpotent Lie algebras carrying a compatible
complex structure and an invariant metric: construction, verification,
reduction, and classification in dimension at most eight."""

from .catalog import (
    CatalogLabel,
    Classification,
    DimensionTooLarge,
    InequivalenceEvidence,
    UnclassifiedFingerprint,
    UnknownLabel,
    Witness,
    abelian_with_signature,
    build,
    classify,
    inequivalence_evidence,
    label,
    lorentz_core,
    tstar_kodaira,
    verify_witness,
)
from .checks import Check
from .constructions import (
    Cocycle,
    CocycleReport,
    CommutativeAlgebra,
    ExtensionData,
    InvalidAlgebraData,
    InvalidCocycle,
    InvalidDerivation,
    InvalidExtensionData,
    InvalidParameter,
    QuadraticAlgebra,
    check_cocycle,
    check_commutative,
    complex_units,
    complexify,
    direct_sum,
    is_skewsymmetric,
    kodaira_cocycle_basis,
    kodaira_thurston,
    line_double_extension,
    phq_double_extension,
    swap_df,
    tensor_construct,
    truncated_poly,
    tstar_extension,
    validate_extension_data,
)
from .fileformat import (
    BadRational,
    IndexOutOfRange,
    ParseError,
    Recipe,
    parse_algebra_text,
    parse_path,
    parse_recipe_text,
    serialize_algebra,
)
from .lie import (
    JacobiReport,
    LieAlgebra,
    LinearMap,
    check_jacobi,
    is_derivation,
    solve_inner,
)
from .linalg import (
    DimensionMismatch,
    Matrix,
    NotSymmetricError,
    Subspace,
    Vector,
    frac,
    gram_restriction,
    intersect,
    kernel,
    map_image,
    orthogonal_complement,
    signature,
    solve_linear,
    vector,
)
from .reduction import (
    CentralPair,
    EmptyIntersection,
    HypothesisViolated,
    InvalidCentralElement,
    NonIsotropic,
    NotDefinitePlane,
    ReductionResult,
    ReductionStep,
    ReductionStuck,
    SkewPairReport,
    analyze_skew_pair,
    find_central_pair,
    full_reduction,
    reduce_by_plane,
    split_plane,
)
from .structures import (
    ComplexReport,
    Fingerprint,
    JClassification,
    OddDimension,
    PHQAlgebra,
    PHQReport,
    QuadraticReport,
    check_complex,
    check_phq,
    check_quadratic,
    fingerprint,
    j_class,
    j_twisted_bracket,
    kahler_form,
    nijenhuis,
    salamon_check,
)

__all__ = [name for name in dir() if not name.startswith("_")]

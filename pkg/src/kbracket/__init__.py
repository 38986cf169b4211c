"""Exact Kauffman bracket state sums on disk, annulus, and torus, and the
order-by-order deformation expansion of the bracket under ``t = e^h``."""

from .errors import (
    BadGenerator,
    KBracketError,
    MalformedDiagram,
    NonParallelComponents,
    NonPrimitiveClass,
    NotRealDiagram,
    NotUnimodular,
    SingularSystem,
    StateOutsideMarkedSet,
    SurfaceMismatch,
    TheoremViolation,
    UnsupportedSuperposition,
)
from .exactalg import (
    LaurentPoly,
    PolyZW,
    Rational,
    TruncSeries,
    c_map,
    frac_str,
    laurent_to_series,
    loop_value,
    phi_coeff,
    phi_series_oracle,
    pi_k,
)
from .surface import (
    ANNULUS_SURFACE,
    TORUS_SURFACE,
    CurveClass,
    SkeinVector,
    SurfaceSpec,
    annulus_class,
    classify_components,
    disk_surface,
    enumerate_disk_matchings,
    normalize_torus_class,
)
from .diagram import (
    Edge,
    MarkedDiagram,
    build_diagram,
    diagram_from_json,
    diagram_to_json,
    empty_diagram,
    from_braid,
    kink_chain,
    load_diagram,
    promote_real,
    resolve,
    save_diagram,
    sl2z_act,
    smooth,
    superpose,
    tau,
    torus_multicurve,
    validate,
)
from .statesum import (
    FormalDiagramSum,
    PolyTable,
    bfk_first_order,
    bracket,
    bracket_order,
    bracket_series,
    chi_apply,
    chi_product,
    derive_P,
    expansion,
    expansion_literal,
    phi_fn,
    phi_star,
    resolve_marked,
    skein_relation_residual,
    t0_bracket,
)
from .starprod import (
    OperatorWord,
    StarSeries,
    WordStep,
    apply_operator_word,
    associativity_check,
    class_rep,
    differentiability_witness,
    goldman_check,
    hermitian_check,
    lambda_k,
    star,
    witness_stack,
)

__version__ = "0.1.0"

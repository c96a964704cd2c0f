"""Exact centers of mass, characteristic numbers and mass linearity for
Delzant polytopes."""
from .errors import (
    ToricError,
    ParseError,
    DimensionMismatch,
    NonPrimitiveConormal,
    NotPrimitive,
    SingularMatrix,
    UnboundedOrEmpty,
    DegenerateInput,
    DegenerateFacet,
    ZeroVolume,
    NonPositiveScale,
    NonPositiveParameter,
    ChamberExit,
    ChamberSamplingFailed,
    InterpolationInconsistent,
    InadmissibleParams,
    NotDelzant,
)
from .polytope import (
    DelzantReport,
    IncidenceStructure,
    PolytopeSpec,
    enumerate_vertices,
    is_delzant,
    normal_form,
    parse_spec,
    same_chamber,
    scale_k,
    translate_k,
)
from .integrate import (
    FacetIntegral,
    MomentData,
    Simplex,
    center_of_mass,
    facet_integrals,
    facet_lattice_moments,
    polytope_moments,
    simplex_moments,
    standard_simplex,
    triangulate,
    weighted_simplex,
)
from .invariant import (
    CharNumberResult,
    char_number_derivative,
    char_number_facets,
    char_number_vector,
    cm_at,
    cm_pairing_derivative,
    dot_cm,
)
from .masslinear import (
    DisplacementVector,
    MassLinearReport,
    PairVerification,
    d_vector,
    fit_mass_linear,
    sample_chamber_points,
    verify_pair,
)
from .families import (
    FamilyModel,
    blowup_cm,
    blowup_cpn,
    bundle_cm,
    bundle_condition,
    bundle_volume,
    delta_p_bundle,
    gammas_from_b,
    hirzebruch,
    hirzebruch_cm,
)

__version__ = "0.1.0"

"""singres: exact resolution of singularities over Q via weighted blow-ups.

The toolbox layers are importable directly: polynomial rings and
Groebner bases, ideal operations, smooth-variety geometry, derivative
ideals, maximal contact covers, the order invariant and its center,
weighted blow-up charts, and the history-free resolution driver.
"""

from .rings import MonomialOrder, PolyRing, Polynomial, ring
from .parsing import format_polynomial, parse_polynomial, parse_many
from .groebner import (
    GroebnerBasis,
    groebner_basis,
    krull_dimension,
    lift_combination,
    normal_form,
    s_polynomial,
)
from .ideals import (
    EQUAL,
    INCOMPARABLE,
    SUBSET,
    SUPERSET,
    IdealPresentation,
    RingMap,
    compose_maps,
    eliminate,
    glue_ideals,
    ideal,
    ideal_compare,
    ideal_power,
    ideal_product,
    ideal_sum,
    identity_map,
    intersect,
    map_image,
    map_preimage,
    quotient,
    saturate,
    saturate_element,
)
from .geometry import (
    MinorChartDatum,
    SmoothAffinePresentation,
    affine_space,
    is_regular_parameters,
    is_smooth_hypersurface,
    jacobian_minors_cover,
    nonsmooth_locus,
    orthogonal_idempotents,
    presentation,
    validate_smooth,
    vanishes_on_component,
)
from .derivatives import (
    DerivativeResult,
    b_singular_locus,
    derivative_chain,
    diff,
    diff_iterated,
    maximal_order_of_vanishing,
)
from .contact import ContactCover, lift_maximal_contact, maximal_contact
from .center import (
    CenterData,
    Invariant,
    b_to_a,
    coefficient_ideal,
    compare_invariant,
    prepare_center,
    reduced_center_weights,
)
from .blowup import (
    BlowUpChart,
    blowup_algebra_ideal,
    is_chart_grading_homogeneous,
    weak_transform,
    weighted_blow_up,
)
from .resolve import (
    ChartNode,
    ResolutionProblem,
    ResolutionTree,
    count_statistics,
    is_resolved,
    weighted_resolution,
)
from . import errors

__version__ = "0.1.0"

"""slaglab: flat-space computations for transverse coassociative 4-folds.

Octonionic G2 algebra on R^7, special Lagrangian pair normal forms in C^3,
graph bilinear forms, and the two Z2 invariants (eigenline holonomy eta and
spin-lift framing parity mu) over discretized circles.
"""

from .algebra import (
    ImOctonion,
    KForm,
    Octonion,
    contract,
    covector,
    cross,
    hodge_star,
    multiplication_table,
    oct_mul,
    phi0,
    wedge,
)
from .errors import SlagLabError
from .g2circle import (
    CoassocPlane,
    NormalStructure,
    SelfDualFieldSample,
    coassoc_from_slag,
    eq24_iso,
    is_coassociative,
    normal_slag_pair,
    normal_structure,
    pairing_iso,
    sample_selfdual_field,
    selfdual_graph_bform,
)
from .loops import (
    ConnectedSumDescriptor,
    FramingLoop,
    PairLoop,
    connected_sum_descriptor,
    eta_invariant,
    generate_model_loop,
    mu_parity,
    perturb_loop,
    validate_pair_loop,
)
from .slag import (
    AngleVector,
    NormalForm,
    RegionClass,
    SLagPlane,
    StabilizerClass,
    alpha_curve,
    angle_involution,
    characteristic_angles,
    classify_region,
    classify_stabilizer,
    graph_bilinear_form,
    graph_over,
    is_graphical,
    is_special_lagrangian,
    negative_eigenline,
    normal_form,
    plane_from_angles,
    stabilizer_dimension_numeric,
)
from .unitary import (
    project_special_unitary,
    quaternion_lift,
    symmetric_unitary_diag,
)

__version__ = "0.1.0"

__all__ = [
    "AngleVector",
    "CoassocPlane",
    "ConnectedSumDescriptor",
    "FramingLoop",
    "ImOctonion",
    "KForm",
    "NormalForm",
    "NormalStructure",
    "Octonion",
    "PairLoop",
    "RegionClass",
    "SLagPlane",
    "SelfDualFieldSample",
    "SlagLabError",
    "StabilizerClass",
    "alpha_curve",
    "angle_involution",
    "characteristic_angles",
    "classify_region",
    "classify_stabilizer",
    "coassoc_from_slag",
    "connected_sum_descriptor",
    "contract",
    "covector",
    "cross",
    "eq24_iso",
    "eta_invariant",
    "generate_model_loop",
    "graph_bilinear_form",
    "graph_over",
    "hodge_star",
    "is_coassociative",
    "is_graphical",
    "is_special_lagrangian",
    "mu_parity",
    "multiplication_table",
    "negative_eigenline",
    "normal_form",
    "normal_slag_pair",
    "normal_structure",
    "oct_mul",
    "pairing_iso",
    "perturb_loop",
    "phi0",
    "plane_from_angles",
    "project_special_unitary",
    "quaternion_lift",
    "sample_selfdual_field",
    "selfdual_graph_bform",
    "stabilizer_dimension_numeric",
    "symmetric_unitary_diag",
    "validate_pair_loop",
    "wedge",
]

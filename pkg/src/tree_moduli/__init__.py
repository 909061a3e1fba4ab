"""Combinatorics and exact linear algebra for strata of rational nodal curves."""
from .cohomology import (
    LineBundle,
    NodeCoordinates,
    SectionSpace,
    dualizing_degrees,
    euler_characteristic,
    h0,
    h1,
    power_bundle,
)
from .errors import (
    ArityError,
    EdgeNotFound,
    InternalInconsistency,
    InvalidSize,
    InvalidTree,
    MaxMultiplicityExceeded,
)
from .fitting import (
    LocalFamily,
    PresentationMatrix,
    StratumIndex,
    diagonal_presentation,
    fitting_generators,
    node_count_at,
    stratify_points,
)
from .poly import Poly, evaluate, parse_poly
from .strata import (
    CurveAutStructure,
    DeformationSpace,
    SpecializationPoset,
    StratumDescriptor,
    curve_aut_structure,
    deformation_space,
    is_specialization,
    specialization_poset,
    stratum_descriptor,
)
from .trees import (
    AutGroup,
    MultiplicityProfile,
    RationalTree,
    are_isomorphic,
    automorphism_group,
    canonical_code,
    contract_edge,
    edge_action,
    enumerate_trees,
    multiplicity_profile,
)

__version__ = "0.1.0"

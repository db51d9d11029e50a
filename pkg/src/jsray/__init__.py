"""Jenkins-Strebel Teichmüller rays: cylinder surfaces, flow, endpoints,
limit distances, extremal length and explicit quasiconformal maps."""

from . import errors
from .asymptotics import (
    Equivalence, ModuliVector, Outcome, PairDescriptor, ShiftOptimum, Verdict,
    classify, describe_pair, detour_metric, limit_distance, modular_equivalence,
    optimal_shift, scan_shift, shifted_limit,
)
from .conformal import (
    RoundAnnulus, annulus_modulus, check_diagram_commutativity, flowed_point,
    glue_involution, rect_to_round, round_flow, round_to_rect,
)
from .extremal import (
    LengthArea, e_functional, e_functional_squared, kerckhoff_lower_bound,
    length_area_bound, length_area_equality, scaled_core_extremal_bound,
    sup_ratio, sup_ratio_oracle,
)
from .kernels import BACKEND
from .qcmap import (
    DilatationReport, QcMapConfig, affine_dilatation, affine_params, choose_exponent,
    dilatation_trajectory, eval_F, q_dilatation_bound,
)
from .ray import EndpointDescriptor, RayState, endpoint_descriptor, endpoints_equal, flow
from .specfile import SurfaceSpec, format_surface_spec, parse_surface_spec
from .surface import (
    CurveFamily, Cylinder, CylinderSurface, GluingTable, MeasuredMulticurve, Relation,
    Segment, build_surface, core_foliation, foliation_relation, intersection_number,
    moduli_vector,
)

__version__ = "0.1.0"

"""Grassmann manifolds of finite-rank projections through the JB*-triple lens.

Points are rank-``r`` orthogonal projections on ``C^n``.  The package provides
the triple-product calculus (Peirce decompositions, Levi form), tangent
spaces and their spectral decomposition, closed-form geodesics, the
exponential and logarithm maps, the Riemann distance, and Peirce
symmetries, plus independent oracles for all of them.
"""

from .errors import (
    DomainError,
    JBTripleError,
    NotInNormalNeighbourhoodError,
    PreconditionError,
    ValidationError,
)
from .geodesy import (
    ConnectData,
    GeodesicSpec,
    connect,
    covariant_acceleration,
    curve_length,
    distance,
    exp_map,
    geodesic_point,
    geodesic_spec,
    log_map,
    midpoint,
    peirce_symmetry,
    separation_angles,
    transport_automorphism,
)
from .manifold import (
    Frame,
    Projection,
    SpectralData,
    TangentVector,
    associated_frame,
    frame_for,
    is_in_normal_nbhd,
    lambda_coefficients,
    make_projection,
    make_tangent,
    metric,
    random_projection,
    random_tangent,
    spectral_decompose,
    tangent_project,
)
from .triple_core import (
    Tripotent,
    box_apply,
    jordan_product,
    k_operator_apply,
    levi_form,
    peirce_decompose,
    peirce_project,
    q_apply,
    triple_product,
)

__version__ = "0.1.0"

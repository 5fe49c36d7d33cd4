"""Exact-arithmetic toolkit for centroid cuts, volume-split asymmetry
and convex floating bodies of polytopes."""

from .errors import (
    BadDelta,
    BadSpec,
    CentroidCutError,
    DegenerateInput,
    Infeasible,
    RefNotInterior,
)
from .geometry import (
    Facet,
    Location,
    Polytope,
    Simplex,
    affine_image,
    as_fraction,
    as_point,
    convex_hull,
    max_dim,
)
from .slicing import (
    Halfspace,
    SectionProfile,
    clip_simplex,
    cumulative_volume,
    profile,
    section_moment,
    section_value,
    simplex_cut_fraction,
    support_interval,
)
from .asymmetry import (
    AsymmetryReport,
    SearchConfig,
    delta_bound,
    phi,
    ratio_at,
    rho_at_point,
    rho_bound,
    rho_centroid,
    rho_min,
)
from .floating import (
    FloatingBodyApprox,
    cut_depth,
    contains_point,
    floating_body_approx,
    is_nonempty,
    phi_estimate,
)
from .profiles import (
    ConcaveProfile,
    MomentSpec,
    brute_force_extremals,
    claim4_certificate,
    is_feasible,
    max_mu,
    min_mu,
    moment,
    mu,
    support_ratio_extremes,
)
from .generators import BodySpec, GeneratedBody, make, random_hull

__version__ = "0.1.0"

__all__ = [
    "AsymmetryReport",
    "BadDelta",
    "BadSpec",
    "BodySpec",
    "CentroidCutError",
    "ConcaveProfile",
    "DegenerateInput",
    "Facet",
    "FloatingBodyApprox",
    "GeneratedBody",
    "Halfspace",
    "Infeasible",
    "Location",
    "MomentSpec",
    "Polytope",
    "RefNotInterior",
    "SearchConfig",
    "SectionProfile",
    "Simplex",
    "affine_image",
    "as_fraction",
    "as_point",
    "brute_force_extremals",
    "claim4_certificate",
    "clip_simplex",
    "contains_point",
    "convex_hull",
    "cumulative_volume",
    "cut_depth",
    "delta_bound",
    "floating_body_approx",
    "is_feasible",
    "is_nonempty",
    "make",
    "max_dim",
    "max_mu",
    "min_mu",
    "moment",
    "mu",
    "phi",
    "phi_estimate",
    "profile",
    "random_hull",
    "ratio_at",
    "rho_at_point",
    "rho_bound",
    "rho_centroid",
    "rho_min",
    "section_moment",
    "section_value",
    "simplex_cut_fraction",
    "support_interval",
    "support_ratio_extremes",
]

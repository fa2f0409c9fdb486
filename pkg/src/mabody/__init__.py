"""Maximal inscribed ellipses and the Monge-Ampere density of convex bodies.

The central object is b*(x, y): the largest tangency scale of an ellipse
through the interior point x with tangent direction y that stays inside the
body.  Its reciprocal delta_b = 1/b* is a norm in y whose polar-volume
density integrates to (2 pi)^n, and for origin-symmetric bodies it matches
the normal derivative of the extremal function — all of which this package
computes and cross-checks.
"""

from .body import (Ball, ConvexBody, Ellipsoid, HPolytope, VPolytope,
                   contains, dilate, gauge, hausdorff_distance, load_body,
                   parse_body, polar, save_body, support)
from .config import DEFAULT, Config
from .ellipse import (BStarResult, EllipseParam, bstar, bstar_many,
                      bstar_symmetric, bstar_symmetric_argmin, check_a_maximal,
                      ellipse_contained, feasible_center)
from .errors import (BodyParseError, DegenerateProfile, DimensionMismatch,
                     EllipseNotContained, MabodyError, NotOriginCentered,
                     NotSymmetric, PAtUnitValue, XNotInterior, ZeroDirection)
from .extremal import (DensityField, DirectionalProfile, MassReport, delta_b,
                       delta_b_fd, density, density_field, directional_profile,
                       joukowski, polar_volume, total_mass, v_k_ball,
                       v_k_symmetric)
from .foliation import (Leaf, check_curvilinear_limit, check_harmonicity,
                        check_tangent_limit, leaf_eval, straight_line_gap)
from .bernstein import (BMReport, Polynomial, bm_ratio, linear_tightness,
                        random_polynomial, sup_norm_estimate, validate_bm_bound)
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "Ball", "ConvexBody", "Ellipsoid", "HPolytope", "VPolytope",
    "contains", "dilate", "gauge", "hausdorff_distance", "load_body",
    "parse_body", "polar", "save_body", "support",
    "Config", "DEFAULT",
    "BStarResult", "EllipseParam", "bstar", "bstar_many", "bstar_symmetric",
    "bstar_symmetric_argmin", "check_a_maximal", "ellipse_contained",
    "feasible_center",
    "MabodyError", "BodyParseError", "DegenerateProfile", "DimensionMismatch",
    "EllipseNotContained", "NotOriginCentered", "NotSymmetric", "PAtUnitValue",
    "XNotInterior", "ZeroDirection",
    "DensityField", "DirectionalProfile", "MassReport", "delta_b",
    "delta_b_fd", "density", "density_field", "directional_profile",
    "joukowski", "polar_volume", "total_mass", "v_k_ball", "v_k_symmetric",
    "Leaf", "check_curvilinear_limit", "check_harmonicity",
    "check_tangent_limit", "leaf_eval", "straight_line_gap",
    "BMReport", "Polynomial", "bm_ratio", "linear_tightness",
    "random_polynomial", "sup_norm_estimate", "validate_bm_bound",
    "BACKEND",
]

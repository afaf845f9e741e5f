"""Convex layer peeling, point set generators and evenness checks."""

from ._core import (
    InvalidArgument,
    LayerAssignment,
    OnionParams,
    PointSet,
    __version__,
    beta_for_alpha,
    certify_min_distance,
    extreme_points,
    f_d,
    fit_power_law,
    gen_collinear,
    gen_convex_position,
    gen_grid,
    gen_onion,
    gen_uniform_ball,
    layer_number,
    peel,
    probe_evenness,
    run_sweep,
)

__all__ = [
    "InvalidArgument",
    "LayerAssignment",
    "OnionParams",
    "PointSet",
    "__version__",
    "beta_for_alpha",
    "certify_min_distance",
    "extreme_points",
    "f_d",
    "fit_power_law",
    "gen_collinear",
    "gen_convex_position",
    "gen_grid",
    "gen_onion",
    "gen_uniform_ball",
    "layer_number",
    "peel",
    "probe_evenness",
    "run_sweep",
]

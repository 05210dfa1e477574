"""Exact spectra and isoperimetric constants of the normalized graph Laplacian.

The package computes, for small weighted graphs: the full spectrum of
``I - D^{-1}W`` with eigenfunctions orthonormal under the degree inner
product; exact Cheeger and dual Cheeger constants by enumeration;
neighborhood graphs encoding l-step walks; a family of eigenvalue bounds
built from these constants; random-walk convergence rates; and the
spectral synchronization criterion for coupled map lattices.
"""

from .graphs import (
    GraphError,
    GraphErrorKind,
    WeightedGraph,
    bridged_triangles,
    build_graph,
    complete_graph,
    cycle_graph,
    from_matrix,
    is_bipartite,
    is_connected,
    looped_pair,
    parse_edge_list,
    path_graph,
    read_graph,
    write_graph,
)
from .spectral import (
    Spectrum,
    degree_inner_product,
    degree_norm,
    laplacian_matrix,
    rayleigh_quotient,
    spectral_radius_rho,
    spectrum,
)
from .partitions import (
    Bipartition,
    CheegerResult,
    OddWalkFamily,
    TriPartition,
    balance_ratio,
    balance_ratio_exact,
    cheeger_exact,
    default_odd_walk_family,
    dual_cheeger_exact,
    dual_cheeger_greedy_lower,
    greedy_balance_partition,
    xi_constant,
    xi_product_bound,
)
from .neighborhood import (
    map_eigenvalues,
    neighborhood_cheeger,
    neighborhood_dual_cheeger,
    neighborhood_graph,
    spectral_map_check,
)
from .bounds import (
    BoundReport,
    all_bound_reports,
    bound_curves,
    cheeger_bounds,
    clustering_constants,
    clustering_upper,
    combined_lower,
    curves_to_csv,
    diameter_variation_upper,
    dual_cheeger_bounds,
    improvement_predicates,
    lambda_identity_check,
    localized_upper,
    neighborhood_interval,
    neighborhood_sandwich,
    neighborhood_upper_or,
    odd_walk_upper,
    poincare_upper,
)
from .random_walk import (
    WalkReport,
    bipartite_limits,
    equilibrium_graph,
    equilibrium_projection,
    mixing_time,
    neighborhood_limit_check,
    transition_apply,
    walk_deviation,
    walk_trajectory,
)
from .cml import (
    MapSpec,
    SyncReport,
    custom_map,
    logistic_map,
    lyapunov_exponent,
    ratio_bounds,
    simulate_sync,
    step_cml,
    sync_interval,
    tent_map,
    transverse_stability_factor,
)

__version__ = "0.1.0"

__all__ = [
    "GraphError",
    "GraphErrorKind",
    "WeightedGraph",
    "Spectrum",
    "Bipartition",
    "TriPartition",
    "CheegerResult",
    "OddWalkFamily",
    "BoundReport",
    "WalkReport",
    "MapSpec",
    "SyncReport",
    "build_graph",
    "from_matrix",
    "read_graph",
    "write_graph",
    "parse_edge_list",
    "complete_graph",
    "cycle_graph",
    "path_graph",
    "looped_pair",
    "bridged_triangles",
    "is_connected",
    "is_bipartite",
    "spectrum",
    "laplacian_matrix",
    "degree_inner_product",
    "degree_norm",
    "rayleigh_quotient",
    "spectral_radius_rho",
    "cheeger_exact",
    "dual_cheeger_exact",
    "dual_cheeger_greedy_lower",
    "balance_ratio",
    "balance_ratio_exact",
    "greedy_balance_partition",
    "default_odd_walk_family",
    "xi_constant",
    "xi_product_bound",
    "neighborhood_graph",
    "neighborhood_cheeger",
    "neighborhood_dual_cheeger",
    "map_eigenvalues",
    "spectral_map_check",
    "cheeger_bounds",
    "dual_cheeger_bounds",
    "combined_lower",
    "localized_upper",
    "diameter_variation_upper",
    "clustering_constants",
    "clustering_upper",
    "odd_walk_upper",
    "poincare_upper",
    "neighborhood_sandwich",
    "neighborhood_upper_or",
    "neighborhood_interval",
    "lambda_identity_check",
    "improvement_predicates",
    "bound_curves",
    "curves_to_csv",
    "all_bound_reports",
    "transition_apply",
    "equilibrium_projection",
    "walk_deviation",
    "walk_trajectory",
    "mixing_time",
    "equilibrium_graph",
    "bipartite_limits",
    "neighborhood_limit_check",
    "logistic_map",
    "tent_map",
    "custom_map",
    "lyapunov_exponent",
    "step_cml",
    "sync_interval",
    "transverse_stability_factor",
    "ratio_bounds",
    "simulate_sync",
]

"""Balanced separators, shallow-minor witnesses, and desk-scale scaling
experiments for sparse graph classes.

The package is organized around certified objects: separator certificates
that re-verify against the balance definition, and minor witnesses whose
branch sets, centers, and cross edges make verification a linear scan.
"""

from .errors import (
    AlgorithmFailure,
    BudgetExceeded,
    FitError,
    GenerationError,
    GraphError,
    InfeasibleConstruction,
)
from .graph import (
    ComponentDecomposition,
    Graph,
    bfs_radius,
    build_graph,
    components,
    degeneracy,
    density,
    parse_edge_list,
    read_edge_list,
    serialize_edge_list,
    write_edge_list,
)
from .generators import (
    FamilySpec,
    SubdivisionResult,
    complete,
    cycle,
    king_grid,
    king_grid_coord_to_id,
    king_grid_id_to_coord,
    path,
    planar_grid,
    random_graph,
    random_regular,
    random_tree,
    star,
    subdivide_eps,
    subdivide_eps_sqrt,
    subdivide_uniform,
)
from .separators import (
    ExpanderResult,
    PrsOutcome,
    PrsParameters,
    SeparatorCertificate,
    balance_threshold,
    exact_expansion_constant,
    expansion_upper_estimate,
    is_alpha_expander_exact,
    is_balanced_separator,
    min_balanced_separator_exact,
    prs_parameters,
    prs_separator_or_minor,
    separator_heuristic,
)
from .minors import (
    DensityReport,
    MinorWitness,
    SubdivisionExtract,
    clique_witness_in_subdivided_clique,
    contract_witness,
    densest_subgraph,
    densest_subgraph_exhaustive,
    extract_subdivision,
    grid_minor_degree_bound,
    nabla_lower_greedy,
    nabla_upper_degenerate,
    slab_bipartite_witness,
    subdivided_cubic_degree_bound,
    verify_minor_witness,
    witness_restrict,
)
from .treewidth import (
    TreewidthResult,
    hereditary_separator_number,
    invert_subdivided_size,
    minfill_upper,
    separator_from_treewidth,
    subdivided_separator_bound,
    treewidth_exact,
    tw_upper_from_separators,
)
from .harness import (
    BoundsTable,
    ExperimentRecord,
    FitResult,
    bounds_table,
    derive_seed,
    fit_exponent,
    run_family,
)
from .acceptance import CheckResult, SuiteReport, verify_suite

__version__ = "0.1.0"

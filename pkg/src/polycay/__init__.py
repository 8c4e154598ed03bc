"""polycay: exact desk-scale checks for Cayley and Minkowski sums of
order polytopes and stable set polytopes."""

from ._kernels import BACKEND as kernel_backend
from .ehrhart import (
    DeltaPolynomial,
    codegree,
    delta_polynomial,
    ehrhart_counts,
    gorenstein_index,
    is_reflexive,
    normalized_volume,
    volume_by_linear_extensions,
)
from .errors import (
    DimensionMismatchError,
    InternalCheckError,
    InvariantError,
    KernelMembershipError,
    NotFullDimensionalError,
    OrderConstructionError,
    ParseError,
    PolycayError,
    ResourceCapError,
)
from .geometry import (
    AffineUnimodularMap,
    HalfspaceRep,
    LatticePolytope,
    affine_lattice_index,
    apply_map,
    build_polytope,
    cayley_sum,
    chain_polytope,
    dilate,
    facet_representation,
    gamma,
    is_idp,
    lattice_points,
    cayley_mirror_transform,
    minkowski_sum,
    oda_holds,
    order_polytope,
    stable_set_polytope,
    translate,
)
from .graphs import (
    Graph,
    complete_graph,
    cycle_graph,
    empty_graph,
    enumerate_graphs,
    find_odd_structure,
    graph_from_edges,
    is_perfect,
    perfection_by_definition,
    stable_sets,
)
from .posets import (
    Poset,
    antichain,
    antichains,
    chain,
    common_linear_extension_exists,
    comparability_graph,
    dual,
    enumerate_posets,
    ideals,
    induced_subposet,
    linear_extension_count,
    ordinal_sum,
    poset_from_relations,
)
from .reports import InstanceReport, SweepReport, run_instance_report, run_sweep
from .toric import (
    Binomial,
    MonomialOrder,
    VariableTable,
    cayley_variable_table,
    claimed_basis,
    hilbert_vs_ehrhart,
    make_order,
    reduced_groebner_truncated,
    squarefree_profile,
    truncated_initial_ideal,
    verify_basis,
)

__version__ = "0.1.0"

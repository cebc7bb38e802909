"""Strictly Deza Cayley graphs over D_2k x C2 x C2 with exact verification
of their Weisfeiler-Leman rank, divisible design structure and spectrum."""

from .group import (
    FamilyGroup,
    Group,
    Section,
    StandardSubgroups,
    Subgroup,
    cosets,
    family_group,
    is_normal,
    make_section,
    subgroup_generated,
)
from .groupring import (
    GroupRingElement,
    SquareIdentityResult,
    coefficient_fibers,
    connection_set,
    multiply,
    simple_quantity,
    verify_square_identity,
)
from .graphs import (
    DDGFailure,
    DDGParameters,
    DezaParameters,
    Graph,
    NotDezaVerdict,
    canonical_ddg_partition,
    cayley_graph,
    ddg_check,
    deza_parameters,
    diameter,
    graph_from_json,
    graph_to_json,
    grid_graph,
    load_graph,
    parse_edgelist,
    save_graph,
    to_dot,
    write_edgelist,
)
from .sring import (
    ClosureTrace,
    SRingCheck,
    SRingPartition,
    WreathDecomposition,
    closure_trace,
    detect_wreath,
    is_sring,
    radical,
    rank,
    section_sring,
    wl_closure,
)
from .wl import (
    CoherenceResult,
    CoherentConfiguration,
    PairColoring,
    configuration_to_json,
    initial_pair_coloring,
    verify_coherence,
    wl1,
    wl1_distinguishes,
    wl2,
    wl_rank,
)
from .spectrum import (
    IntegralSpectrum,
    NonIntegralVerdict,
    exact_nullity,
    expected_eigenvalues,
    integer_rank,
    integral_spectrum,
    spectrum_to_json,
)

__version__ = "0.1.0"

__all__ = [
    "FamilyGroup",
    "Group",
    "Section",
    "StandardSubgroups",
    "Subgroup",
    "cosets",
    "family_group",
    "is_normal",
    "make_section",
    "subgroup_generated",
    "GroupRingElement",
    "SquareIdentityResult",
    "coefficient_fibers",
    "connection_set",
    "multiply",
    "simple_quantity",
    "verify_square_identity",
    "DDGFailure",
    "DDGParameters",
    "DezaParameters",
    "Graph",
    "NotDezaVerdict",
    "canonical_ddg_partition",
    "cayley_graph",
    "ddg_check",
    "deza_parameters",
    "diameter",
    "graph_from_json",
    "graph_to_json",
    "grid_graph",
    "load_graph",
    "parse_edgelist",
    "save_graph",
    "to_dot",
    "write_edgelist",
    "ClosureTrace",
    "SRingCheck",
    "SRingPartition",
    "WreathDecomposition",
    "closure_trace",
    "detect_wreath",
    "is_sring",
    "radical",
    "rank",
    "section_sring",
    "wl_closure",
    "CoherenceResult",
    "CoherentConfiguration",
    "PairColoring",
    "configuration_to_json",
    "initial_pair_coloring",
    "verify_coherence",
    "wl1",
    "wl1_distinguishes",
    "wl2",
    "wl_rank",
    "IntegralSpectrum",
    "NonIntegralVerdict",
    "exact_nullity",
    "expected_eigenvalues",
    "integer_rank",
    "integral_spectrum",
    "spectrum_to_json",
]

"""Triangle expansions of cubic graphs: the parameters t(G) and T(G) and their checkers."""

from .covers import (
    CycleCover,
    FiveCDC,
    FourCoverCertificate,
    ParityFamily,
    cdc_to_expansion_set,
    cdc_to_parity_family,
    depth2_scc_to_expansion,
    five_cdc,
    four_pm_cover,
    scc_exact,
    verify_cover,
)
from .errors import GraphFormatError, NotCubicError, SearchInconclusive
from .generators import CATALOG_NAMES, caterpillar_tree, claw, generate, generate_from_tree, random_cubic
from .graph import Multigraph, classify
from .hcoloring import HColoring, find_hcoloring, petersen_coloring_to_cdc, verify_hcoloring
from .io import parse_edge_list, parse_sparse6, read_graph, to_sparse6, write_graph
from .matching import (
    EvenSubgraph,
    Matching,
    ParitySubgraph,
    find_perfect_matching,
    matching_avoiding,
    max_even_subgraph,
    min_parity_subgraph,
    transfer_matching,
    two_factor,
)
from .params import ParamCertificate, T_exact, check_bounds, check_gallai, family_table, t_exact
from .structure import bridges, contract_triangle, decompose, expand_vertices, subdivide_attach

__version__ = "0.1.0"

__all__ = [
    "CycleCover",
    "FiveCDC",
    "FourCoverCertificate",
    "ParityFamily",
    "cdc_to_expansion_set",
    "cdc_to_parity_family",
    "depth2_scc_to_expansion",
    "five_cdc",
    "four_pm_cover",
    "scc_exact",
    "verify_cover",
    "GraphFormatError",
    "NotCubicError",
    "SearchInconclusive",
    "CATALOG_NAMES",
    "caterpillar_tree",
    "claw",
    "generate",
    "generate_from_tree",
    "random_cubic",
    "Multigraph",
    "classify",
    "HColoring",
    "find_hcoloring",
    "petersen_coloring_to_cdc",
    "verify_hcoloring",
    "parse_edge_list",
    "parse_sparse6",
    "read_graph",
    "to_sparse6",
    "write_graph",
    "EvenSubgraph",
    "Matching",
    "ParitySubgraph",
    "find_perfect_matching",
    "matching_avoiding",
    "max_even_subgraph",
    "min_parity_subgraph",
    "transfer_matching",
    "two_factor",
    "ParamCertificate",
    "T_exact",
    "check_bounds",
    "check_gallai",
    "family_table",
    "t_exact",
    "bridges",
    "contract_triangle",
    "decompose",
    "expand_vertices",
    "subdivide_attach",
]

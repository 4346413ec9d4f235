"""ABC index of trees and the search for trees minimising it for a given leaf count."""

from .contrib import (INFINITY, ContribRow, delta0, f_bounds_check, leaf_contribution,
                      table1, table1_csv)
from .errors import *  # noqa: F401,F403
from .oracle import OracleResult, enumerate_leaf_trees, oracle_minimal
from .search import (ExtremalRecord, ScanResult, SearchCaps, asymptotic_abc,
                     closed_form_abc, enumerate_shapes, extremal_case, fig1_shape,
                     fig2_shape, minimal_tree, scan)
from .shapes import CandidateShape, Family, check_shape, shape_abc, t_of_shape
from .transforms import (ExchangeSpec, contract_root_edge, exchange_subtrees,
                         move_leaf_between_branches)
from .tree_core import (Tree, VertexClass, VertexKind, abc_index, build_extremal_tree,
                        canonical_code, classify_vertices, edge_contribution, format_tree,
                        parse_tree)
from .verify import REPORTS, VerificationReport

__version__ = "0.1.0"

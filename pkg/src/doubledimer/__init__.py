"""Exact dimer and double-dimer computations on planar bipartite graphs with boundary nodes."""
from .graph_core import (EmbeddedGraph, GraphError, NoTripartitePairing, delete_nodes, delete_vertices,
                         demote_nodes, graph_from_json, graph_to_json, make_graph, parse_graph,
                         relabel_consecutive, rgb_pairing, serialize_graph)
from .enum_oracle import (CapExceeded, ZeroDimerPartition, all_pairing_sums, pr_tilde_oracle,
                          zd_enumerate, zdd_enumerate)
from .kasteleyn import build_weighting, kasteleyn_matrix, submatrix_check, zd_det
from .pairings import (a_between, admissible_splits, components, connects, couples, crossings,
                       format_pairing, make_pairing, nestings, parse_pairing, planar_bw_pairing,
                       sign_bw, sign_cons, sign_oe, sign_pair, sign_set, sign_set_formula, t_set)
from .qdd import b2_matrix, meander_matrix, pr_polynomial, q_coeffs, q_matrix, resolve_crossings
from .tripartite import (balanced_set_det, checkerboard_t, dd_condensation_check, kuo_check,
                         rgb_sign_delta, tripartite_pfaffian, tripartite_pr, y_matrix, y_value)

__version__ = "0.1.0"

"""Exactness of the Max-Cut semidefinite relaxation: exact certificates,
recognizers for exact graph classes, and a numeric SDP solver."""

from .graph import Graph, Partition, from_edge_list, laplacian, parse_graph, read_graph
from .linalg import SymMatrix, psd_check_exact, rank_exact
from .oracle import brute_force_maxcut
from .certificates import Certificate, verify_certificate
from .sdp import solve_phi

__all__ = [
    "Graph",
    "Partition",
    "from_edge_list",
    "laplacian",
    "parse_graph",
    "read_graph",
    "SymMatrix",
    "psd_check_exact",
    "rank_exact",
    "brute_force_maxcut",
    "Certificate",
    "verify_certificate",
    "solve_phi",
]

"""Counting, extremal bounds and supersaturation for stars and cliques."""

from .graph_core import (
    CapacityError,
    Graph,
    GraphFormatError,
    VertexDelta,
    clone_vertex,
    count_cliques,
    count_stars,
    delete_vertex,
    find_blowup,
    is_kr1_free,
    parse_edge_list,
    read_graph,
    vertex_delta,
    write_graph,
)
from .constructions import PartitionProfile, blowup, complete_multipartite, disjoint_cliques, turan_graph
from .realfn import GenBinomial, compose, composite
from .graphon_opt import OptParams, crossover_scan, is_legal, solve

__version__ = "0.1.0"

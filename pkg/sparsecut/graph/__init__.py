from .graph import Cut, Graph, VertexSet, check_disjoint_supports, cut_edges, expansion, make_cut, rayleigh
from .spectrum import FactLambdaReport, Spectrum, check_fact_lambda, laplacian_spectrum, spectral_sweep, threshold_rank
from .generators import cluster_graph, complete, cycle, disjoint_union, planted_blocks, random_regular
from .io import format_graph, parse_graph, read_graph, write_graph

__all__ = [
    "Cut", "Graph", "VertexSet", "check_disjoint_supports", "cut_edges", "expansion", "make_cut", "rayleigh",
    "FactLambdaReport", "Spectrum", "check_fact_lambda", "laplacian_spectrum", "spectral_sweep", "threshold_rank",
    "cluster_graph", "complete", "cycle", "disjoint_union", "planted_blocks", "random_regular",
    "format_graph", "parse_graph", "read_graph", "write_graph",
]

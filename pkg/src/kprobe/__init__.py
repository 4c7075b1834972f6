"""Recognition of labeled k-probe cographs with cotree certificates."""

from .cotree import Cotree, NodeKind, leaf_partition, parse, realize, serialize, tree_edges
from .fileformat import parse_graph, read_graph, serialize_graph
from .generator import generate, generate_random_labeled
from .graph import Label, LabeledGraph, labels_orthogonal, probe_reduce, validate
from .oracle import find_induced_p4, oracle_is_kprobe, verify_embedding
from .recognizer import Accepted, Rejected, are_twins, complexity_counters, is_module, recognize

__all__ = [
    "Accepted",
    "Cotree",
    "Label",
    "LabeledGraph",
    "NodeKind",
    "Rejected",
    "are_twins",
    "complexity_counters",
    "find_induced_p4",
    "generate",
    "generate_random_labeled",
    "is_module",
    "labels_orthogonal",
    "leaf_partition",
    "oracle_is_kprobe",
    "parse",
    "parse_graph",
    "probe_reduce",
    "read_graph",
    "realize",
    "recognize",
    "serialize",
    "serialize_graph",
    "tree_edges",
    "validate",
    "verify_embedding",
]

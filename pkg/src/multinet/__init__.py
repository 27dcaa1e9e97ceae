"""Multiplicative structures: partition behaviors, correctness, expansion and program search."""
from .connectives import girard_type
from .dsl import parse_program
from .expansion import ExpansionSite, expand, expands_characterized, expands_direct
from .hypergraph import Hyperedge, Hypergraph, Vertex
from .mstructure import (
    LinkType,
    MStructure,
    Signature,
    behavior,
    is_component,
    is_correct,
    is_net,
    is_transitory,
)
from .partitions import Partition, PartitionSet, orthogonal, weakly_orthogonal
from .program import Method, Program, compile_method, run, seed

__all__ = [
    "ExpansionSite",
    "Hyperedge",
    "Hypergraph",
    "LinkType",
    "MStructure",
    "Method",
    "Partition",
    "PartitionSet",
    "Program",
    "Signature",
    "Vertex",
    "behavior",
    "compile_method",
    "expand",
    "expands_characterized",
    "expands_direct",
    "girard_type",
    "is_component",
    "is_correct",
    "is_net",
    "is_transitory",
    "orthogonal",
    "parse_program",
    "run",
    "seed",
    "weakly_orthogonal",
]

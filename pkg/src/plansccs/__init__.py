"""plansccs: fully dynamic SCCs on planar digraphs, with oracle harness."""

from .graphcore import (
    EmbeddedGraph,
    NonPlanar,
    NonPlanarInsert,
    PerturbedWeight,
    PlanarDigraph,
    SccPartition,
    SelfLoopError,
    UnknownEdge,
    UnknownVertex,
    planarity_embed,
    reach_sets,
    tarjan_scc,
    unique_shortest_path,
)

__all__ = [
    "EmbeddedGraph",
    "NonPlanar",
    "NonPlanarInsert",
    "PerturbedWeight",
    "PlanarDigraph",
    "SccPartition",
    "SelfLoopError",
    "UnknownEdge",
    "UnknownVertex",
    "planarity_embed",
    "reach_sets",
    "tarjan_scc",
    "unique_shortest_path",
]

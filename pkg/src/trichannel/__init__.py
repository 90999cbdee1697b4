"""Swap channels, knobs and wheel reductions on planar triangulations."""

from .channels import Channel, Knob, all_channels, all_knobs, find_channel, find_knobs, rotate_knob, swap_channel
from .coloring import EdgeColor, Orientation, TaitColoring, edge_to_vertex, validate_tait, vertex_to_edge
from .corpus import corpus_graph
from .oracle import brute_force_4color, enumerate_colorings
from .triangulation import Triangulation, build_from_rotation, puncture, random_triangulation

__version__ = "0.1.0"

__all__ = [
    "Channel",
    "EdgeColor",
    "Knob",
    "Orientation",
    "TaitColoring",
    "Triangulation",
    "all_channels",
    "all_knobs",
    "brute_force_4color",
    "build_from_rotation",
    "corpus_graph",
    "edge_to_vertex",
    "enumerate_colorings",
    "find_channel",
    "find_knobs",
    "puncture",
    "random_triangulation",
    "rotate_knob",
    "swap_channel",
    "validate_tait",
    "vertex_to_edge",
]

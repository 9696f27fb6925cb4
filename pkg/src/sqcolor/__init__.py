"""Coloring squares of planar graphs without 4-cycles: constructions, solvers and checkers."""

from .graph import Graph, square, distance2_neighborhood, classify_vertices, forbidden_cycles
from .plane import PlaneGraph, euler_check, trace_faces

__all__ = [
    "Graph",
    "PlaneGraph",
    "square",
    "distance2_neighborhood",
    "classify_vertices",
    "forbidden_cycles",
    "euler_check",
    "trace_faces",
]

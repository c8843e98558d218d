"""plumbing-calculus - exact calculus of symplectic divisor plumbing graphs.

GS criteria and the concave/convex flowchart, blow up / blow down / dual
blow up rewriting, boundary group invariants, the type (N)/(P)
classification of capping graphs and characterizing-number obstructions,
all in exact rational arithmetic.
"""

from plumbing_calculus.models import AugmentedGraph, PlumbingGraph, Vertex
from plumbing_calculus.report import build_report, build_report_async

__version__ = "0.3.0"
__all__ = ["AugmentedGraph", "PlumbingGraph", "Vertex", "build_report", "build_report_async"]

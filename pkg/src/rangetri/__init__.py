"""Range-pair query and edge-triangle problem laboratory."""

__version__ = "0.1.0"

from .core import (
    DenseMatrix,
    Graph,
    IntArray,
    Range,
    RangePair,
    TripartiteMultigraph,
)

__all__ = [
    "DenseMatrix",
    "Graph",
    "IntArray",
    "Range",
    "RangePair",
    "TripartiteMultigraph",
    "__version__",
]

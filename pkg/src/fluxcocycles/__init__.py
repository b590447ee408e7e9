"""Exact desk-scale model of flux cocycles on area-preserving surface diffeomorphisms."""
from .scalars import PolyScalar, SymElement, hat, project, sym_mul, symbols
from .symplectic import CohVector, ExtElement, HomVector
from .group_model import ModelSymp, compose, inverse
from .bar_calculus import BarChain, BarCochain, boundary, coboundary, evaluate

__all__ = [
    "PolyScalar", "SymElement", "hat", "project", "sym_mul", "symbols",
    "CohVector", "ExtElement", "HomVector",
    "ModelSymp", "compose", "inverse",
    "BarChain", "BarCochain", "boundary", "coboundary", "evaluate",
]

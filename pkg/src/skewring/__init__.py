"""Exact arithmetic in free skew extensions R[X; sigma, delta] of finite rings."""

from .errors import SkewRingError
from .rings import FiniteRing, Ideal, construct_ring
from .maps import RingMap, construct_map
from .skewpoly import SkewContext, SkewPoly, make_context

__all__ = ["SkewRingError", "FiniteRing", "Ideal", "construct_ring", "RingMap", "construct_map",
           "SkewContext", "SkewPoly", "make_context"]
__version__ = "0.1.0"

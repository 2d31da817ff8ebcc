"""Exact pentagram-map toolkit: twisted polygons, F-polynomials,
singularity confinement and desingularized iterates."""

from .polygon import TwistedPolygon, iterate, pentagram, random_polygon, random_polygon_in_XS
from .projective import ProjLine, ProjPoint, RandomSource
from .desing import DeformationOracle, main, t3_on_Xi, t4_on_X35

__all__ = [
    "TwistedPolygon", "iterate", "pentagram", "random_polygon", "random_polygon_in_XS",
    "ProjLine", "ProjPoint", "RandomSource",
    "DeformationOracle", "main", "t3_on_Xi", "t4_on_X35",
]
__version__ = "0.1.0"

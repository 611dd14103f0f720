"""Exact computations on moduli of framed torsion-free sheaves on the plane via ADHM data."""

from .adhm_core import AdhmDatum, FramedTorusElement, GaugeElement
from .fixed_points import adhm_representative, enumerate_fixed_points
from .flow_limits import limit_minus, limit_plus
from .tangent_bb import Cocharacter, poincare_polynomials, select_regular_cocharacter, tangent_weights

__all__ = [
    "AdhmDatum",
    "Cocharacter",
    "FramedTorusElement",
    "GaugeElement",
    "adhm_representative",
    "enumerate_fixed_points",
    "limit_minus",
    "limit_plus",
    "poincare_polynomials",
    "select_regular_cocharacter",
    "tangent_weights",
]

"""Twisted global sections of coherent sheaves on relative projective space.

Two engines compute the truncated module of twisted global sections of a
graded module over S = B[x0..xn]: an ideal transform colim Hom(m^l, M) and
a purely linear saturation of linear complexes over the exterior algebra.
"""

from .rings import BaseRing, Field, RingContext
from .modules import GradedModule, GradedModuleMap, hilbert_function, hilbert_series, truncate
from .regularity import (
    betti_table,
    castelnuovo_mumford_reg,
    is_saturated,
    linear_regularity,
    saturation_interval,
)
from .transform import defect_of_saturation, hom_from_power, ideal_transform, irrelevant_power
from .bgg import complex_linear_regularity, m_functor, r_functor, saturate_complex
from .sections import cross_verify, pushforward, twisted_global_sections

__all__ = [
    "BaseRing", "Field", "RingContext", "GradedModule", "GradedModuleMap", "hilbert_function",
    "hilbert_series", "truncate", "betti_table", "castelnuovo_mumford_reg", "is_saturated",
    "linear_regularity", "saturation_interval", "defect_of_saturation", "hom_from_power",
    "ideal_transform", "irrelevant_power", "complex_linear_regularity", "m_functor", "r_functor",
    "saturate_complex", "cross_verify", "pushforward", "twisted_global_sections",
]

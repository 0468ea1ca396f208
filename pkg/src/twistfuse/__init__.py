"""Twisted fusion rules of untwisted affine Lie algebras.

Exact folding algorithm (:mod:`twistfuse.fusion`) with a floating-point
S-matrix cross-check (:mod:`twistfuse.oracle`).
"""

from .folding import (Automorphism, SignedFold, diagram_automorphism, enumerate_B,
                      enumerate_P, enumerate_S, fold_to_fundamental, folded_reflection,
                      lattice_index, named_automorphism, project)
from .fusion import NimRepMatrix, nimrep, ordinary_fusion, twisted_fusion
from .oracle import character_ratio, fusion_numeric, twisted_smatrix
from .rootdata import AlgebraSpec, build_algebra, inner_product, parse_algebra, simple_reflection
from .weightsys import weight_system, weyl_dimension, weyl_orbit

__version__ = "0.1.0"

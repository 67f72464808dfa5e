"""Exact computations for root monoids on toric varieties and for normal reductive monoids."""

from .cones import Cone, Face, dual_cone, hilbert_basis
from .demazure import enumerate_demazure_roots, make_compatible_collection
from .laurent import LaurentPoly, TensorPoly
from .monoid import build, comultiply, counit, unit_group, verify_bialgebra
from .automorphisms import aut_report
from .reductive import RootDatum, VinbergCone, reductive_aut_report, validate_vinberg_cone

__all__ = [
    "Cone", "Face", "dual_cone", "hilbert_basis", "enumerate_demazure_roots", "make_compatible_collection",
    "LaurentPoly", "TensorPoly", "build", "comultiply", "counit", "unit_group", "verify_bialgebra",
    "aut_report", "RootDatum", "VinbergCone", "reductive_aut_report", "validate_vinberg_cone",
]

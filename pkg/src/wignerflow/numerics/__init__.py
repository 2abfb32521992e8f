"""Self-contained numerical kernels: quadrature, jets, and root finding."""

from wignerflow.numerics.jets import Jet, jet_const, jet_eval, jet_var
from wignerflow.numerics.quadrature import (
    PhaseGrid,
    QuadratureResult,
    integrate_1d,
    integrate_2d,
)
from wignerflow.numerics.rootfind import FieldZero, find_zeros_2d

__all__ = [
    "Jet",
    "jet_const",
    "jet_eval",
    "jet_var",
    "PhaseGrid",
    "QuadratureResult",
    "integrate_1d",
    "integrate_2d",
    "FieldZero",
    "find_zeros_2d",
]

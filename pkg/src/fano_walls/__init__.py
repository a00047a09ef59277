"""Exact wall-crossing and lattice computations for index-2 Fano threefolds."""
from .numclass import (
    UNIT,
    ChernCharacter,
    FanoContext,
    HilbertPolynomial,
    chi,
    class_from_hilbert,
    euler_pairing,
    hilbert_polynomial,
    line_bundle,
    point_class,
    tensor_line,
    twist,
)
from .kulattice import K1, K2, KuClass, embed, euler_matrix, kappa1, kappa2, resolve, rotation, serre_operator
from .walls import ScanBounds, Window, numerical_wall, scan_candidates, verify_strip_empty, largest_wall
from .weakstab import TiltPoint, q_form, z_tilt

__all__ = [
    "UNIT", "ChernCharacter", "FanoContext", "HilbertPolynomial", "chi", "class_from_hilbert",
    "euler_pairing", "hilbert_polynomial", "line_bundle", "point_class", "tensor_line", "twist",
    "K1", "K2", "KuClass", "embed", "euler_matrix", "kappa1", "kappa2", "resolve", "rotation", "serre_operator",
    "ScanBounds", "Window", "numerical_wall", "scan_candidates", "verify_strip_empty", "largest_wall",
    "TiltPoint", "q_form", "z_tilt",
]

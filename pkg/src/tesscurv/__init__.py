"""Combinatorial curvature of tessellations.

Build tessellations of closed surfaces and finite patches of planar and
hyperbolic ones, compute their curvature exactly and test geometric and
spectral consequences on them.
"""

__version__ = "0.1.0"

from .curvature import curvature_report, gauss_bonnet, vertex_curvature
from .errors import (
    AsymmetryError,
    ConstructionError,
    DanglingIdError,
    HypothesisError,
    NotInteriorError,
    ParseError,
    StructuralError,
    TessError,
    UnsupportedInputError,
)
from .exchange import dumps, load, loads, save
from .generators import GeneratorSpec, generate
from .surface import ClosedTessellation, Patch, RotationSystem, Tessellation, validate_tessellation

__all__ = [
    "__version__",
    "RotationSystem",
    "Tessellation",
    "ClosedTessellation",
    "Patch",
    "validate_tessellation",
    "load",
    "loads",
    "save",
    "dumps",
    "GeneratorSpec",
    "generate",
    "curvature_report",
    "vertex_curvature",
    "gauss_bonnet",
    "TessError",
    "StructuralError",
    "ParseError",
    "DanglingIdError",
    "AsymmetryError",
    "UnsupportedInputError",
    "NotInteriorError",
    "ConstructionError",
    "HypothesisError",
]

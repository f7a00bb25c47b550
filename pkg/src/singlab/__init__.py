"""singlab: exact singularity invariants and stable Tor pairings for hypersurfaces."""

from __future__ import annotations

from .errors import SinglabError
from .field import GF, QQ, field_from_spec
from .groebner import INFINITE, buchberger, groebner, normal_form, standard_basis
from .intersection import (
    DoubleRing,
    StableTorReport,
    build_double_ring,
    diagonal_module,
    graph_module,
    ks_pairing,
)
from .invariants import DMReport, deligne_milnor_check, milnor_number, milnor_orlik
from .mf import (
    KoszulDgModule,
    MatrixFactorization,
    Z2Complex,
    divided_differences,
    koszul_mf,
    stabilize_from_resolution,
    verify_mf,
    xi_fold,
    z2_homology,
)
from .modules import FpModule, FreeComplex, free_resolution, tor_dims
from .orders import GREVLEX, LEX, LOCAL
from .parser import infer_ring, parse_polynomial
from .poly import Polynomial, Ring, to_text

__version__ = "0.1.0"

__all__ = [
    "DMReport",
    "DoubleRing",
    "FpModule",
    "FreeComplex",
    "GF",
    "GREVLEX",
    "INFINITE",
    "KoszulDgModule",
    "LEX",
    "LOCAL",
    "MatrixFactorization",
    "Polynomial",
    "QQ",
    "Ring",
    "SinglabError",
    "StableTorReport",
    "Z2Complex",
    "annotations",
    "buchberger",
    "build_double_ring",
    "deligne_milnor_check",
    "diagonal_module",
    "divided_differences",
    "field_from_spec",
    "free_resolution",
    "graph_module",
    "groebner",
    "infer_ring",
    "koszul_mf",
    "ks_pairing",
    "milnor_number",
    "milnor_orlik",
    "normal_form",
    "parse_polynomial",
    "stabilize_from_resolution",
    "standard_basis",
    "to_text",
    "tor_dims",
    "verify_mf",
    "xi_fold",
    "z2_homology",
]

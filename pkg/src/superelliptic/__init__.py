"""Exact arithmetic for superelliptic curves y^n = h(x): Weierstrass points,
gap sequences and weights, and torsion experiments in hyperelliptic and
cyclic trigonal Jacobians."""

__version__ = "0.1.0"

from .fields import QQ, ExtensionField, PrimeField, field_from_obj
from .poly import Poly, RationalFunction, QuotientRing
from .series import TruncatedSeries
from .curve import (
    AT_INFINITY,
    Divisor,
    Place,
    SuperellipticCurve,
    TrigonalParams,
    build_trigonal,
    genus,
    places_over,
)
from .function_field import (
    DX,
    FunctionFieldElement,
    HolomorphicDifferential,
    differential_basis,
    div_dx,
    div_y,
    divisor_of,
    local_expansion,
)
from .weierstrass import (
    GapData,
    WeightReport,
    ell_ladder,
    vanishing_orders,
    weierstrass_report,
    wronskian_divisor,
)
from .jacobian import (
    MumfordClass,
    Verdict,
    ZetaData,
    cantor_add,
    cantor_mul,
    class_of_difference,
    normalize_odd_model,
    split_hyperelliptic,
    verify_trigonal_3torsion,
    weierstrass_subgroup_2torsion,
    zeta,
)

__all__ = [
    "QQ",
    "PrimeField",
    "ExtensionField",
    "field_from_obj",
    "Poly",
    "RationalFunction",
    "QuotientRing",
    "TruncatedSeries",
    "AT_INFINITY",
    "SuperellipticCurve",
    "TrigonalParams",
    "Place",
    "Divisor",
    "build_trigonal",
    "genus",
    "places_over",
    "DX",
    "FunctionFieldElement",
    "HolomorphicDifferential",
    "differential_basis",
    "div_dx",
    "div_y",
    "divisor_of",
    "local_expansion",
    "GapData",
    "WeightReport",
    "ell_ladder",
    "vanishing_orders",
    "weierstrass_report",
    "wronskian_divisor",
    "MumfordClass",
    "Verdict",
    "ZetaData",
    "cantor_add",
    "cantor_mul",
    "class_of_difference",
    "normalize_odd_model",
    "split_hyperelliptic",
    "verify_trigonal_3torsion",
    "weierstrass_subgroup_2torsion",
    "zeta",
    "__version__",
]

"""Geodesic q-expansions for real quadratic fields.

Computes diagonal restrictions of p-stabilized Eisenstein series over a
real quadratic field from intersection numbers of closed geodesics on
the modular curve of level p, together with the exact constant term
coming from partial zeta values.
"""

from .exact import INF, Mat2, QuadIrr, cmp, conjugate, mobius
from .field import (
    FieldData,
    NarrowClassGroup,
    ClassCharacter,
    QuadForm,
    build_field,
    narrow_class_group,
    all_characters,
    odd_characters,
    class_of_ideal,
)
from .geodesic import (
    ClosedGeodesic,
    InertPrime,
    NonTransverse,
    RChoice,
    TwistedCycle,
    choose_r,
    intersect_winding_cycle,
    intersect_winding_enum,
    rm_point,
    rm_point_pair,
    twisted_cycle,
)
from .hecke import (
    double_cosets,
    hecke_translate,
    pair_with_twisted_cycle,
    right_cosets,
    sigma1,
)
from .lvalue import (
    LValue,
    NotApplicable,
    L_value_genus_oracle,
    L_value_zagier,
    constant_term,
    euler_factor,
    partial_zeta_values,
)
from .series import (
    AlgorithmMismatch,
    QSeries,
    diagonal_restriction,
    eta_product_coeffs,
    modularity_check,
    sigma1_p,
)

__all__ = [
    "INF",
    "Mat2",
    "QuadIrr",
    "cmp",
    "conjugate",
    "mobius",
    "FieldData",
    "NarrowClassGroup",
    "ClassCharacter",
    "QuadForm",
    "build_field",
    "narrow_class_group",
    "all_characters",
    "odd_characters",
    "class_of_ideal",
    "ClosedGeodesic",
    "InertPrime",
    "NonTransverse",
    "RChoice",
    "TwistedCycle",
    "choose_r",
    "intersect_winding_cycle",
    "intersect_winding_enum",
    "rm_point",
    "rm_point_pair",
    "twisted_cycle",
    "double_cosets",
    "hecke_translate",
    "pair_with_twisted_cycle",
    "right_cosets",
    "sigma1",
    "LValue",
    "NotApplicable",
    "L_value_genus_oracle",
    "L_value_zagier",
    "constant_term",
    "euler_factor",
    "partial_zeta_values",
    "AlgorithmMismatch",
    "QSeries",
    "diagonal_restriction",
    "eta_product_coeffs",
    "modularity_check",
    "sigma1_p",
]

__version__ = "0.1.0"

"""Elliptic curves over Q: models, group law, torsion, local data, isogenies,
and canonical heights.  Everything except the archimedean height series runs
in exact rational arithmetic."""

from .curve import (
    CurvePoint,
    ModelChange,
    TorsionGroup,
    WeierstrassCurve,
    curve_from_list,
    division_polynomial,
    minimal_model,
    torsion_subgroup,
)
from .tate import LocalData, conductor, tate_local
from .isogeny import IsogenyData, dual_isogeny, kernel_polynomial_from_point, velu_quotient
from .height import canonical_height

__all__ = [
    "CurvePoint",
    "ModelChange",
    "TorsionGroup",
    "WeierstrassCurve",
    "curve_from_list",
    "division_polynomial",
    "minimal_model",
    "torsion_subgroup",
    "LocalData",
    "conductor",
    "tate_local",
    "IsogenyData",
    "dual_isogeny",
    "kernel_polynomial_from_point",
    "velu_quotient",
    "canonical_height",
]

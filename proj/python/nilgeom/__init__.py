"""Translation curves, translation triangle surfaces and incidence checks in Nil geometry."""

from ._core import (
    NilGeomError,
    TranslationCurve,
    TriangleSurface,
    apply,
    check_desargues,
    check_menelaus,
    check_pappus,
    check_scene,
    compose,
    curve_eval,
    curve_through,
    distance,
    intersect,
    perspective_points,
    property_run,
    rotate,
    simple_ratio,
    to_origin,
)

__all__ = [
    "NilGeomError",
    "TranslationCurve",
    "TriangleSurface",
    "apply",
    "check_desargues",
    "check_menelaus",
    "check_pappus",
    "check_scene",
    "compose",
    "curve_eval",
    "curve_through",
    "distance",
    "intersect",
    "perspective_points",
    "property_run",
    "rotate",
    "simple_ratio",
    "to_origin",
]

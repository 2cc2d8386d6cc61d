"""
Per-triangle features tracked by the sweeps: circumparabola and inparabola accessories.

Features carry a hashable key so a pipeline can cache their sweep; supersets lists the keys of
richer features whose sweeps also serve this one.
"""

from typing import Any, Callable, Dict

import numpy as np

from src.structures.common import EPS, DegenerateError
from src.structures.conics import parabola_elements
from src.structures.geom import HPoint
from src.structures.geometry_types import ConjugationKind, PolarMode
from src.structures.triangle import Triangle
from src.triconics import (
    circumparabola_at,
    inconic_from_perspector,
    inparabola_from_focus,
    perspector,
    polar_triangle,
)

Feature = Callable[[Triangle], Dict[str, Any]]


def require_clearance(triangle: Triangle, anchor: HPoint, clearance: float):
    gap = float(np.min(np.linalg.norm(triangle.vertices - anchor.xy, axis=1)))
    if gap < clearance:
        raise DegenerateError(f"vertex too close to the anchor: {gap:.2e}")


def circumparabola_feature(
    Q: HPoint, kind: ConjugationKind, clearance: float, with_perspector: bool = False
) -> Feature:
    """Focus, vertex, directrix and polar-triangle centroid of the circumparabola anchored at Q."""

    def feature(triangle: Triangle) -> Dict[str, Any]:
        require_clearance(triangle, Q, clearance)
        conic = circumparabola_at(triangle, kind, Q)
        elements = parabola_elements(conic)
        polar = polar_triangle(triangle, conic, PolarMode.CIRCUM)
        values = {
            "focus": elements.focus,
            "vertex": elements.vertex,
            "directrix": elements.directrix,
            "polar_centroid": polar.centroid,
        }
        if with_perspector:
            values["perspector"] = perspector(triangle, polar)
        return values

    anchor = ("circumparabola", kind.value, tuple(Q.coords), clearance)
    feature.key = (*anchor, with_perspector)
    feature.supersets = () if with_perspector else ((*anchor, True),)
    return feature


def inparabola_feature(F: HPoint, clearance: float = 1e-6, with_polar: bool = False, tol: float = EPS) -> Feature:
    """
    Vertex V, directrix foot C, directrix and Simson line of the inparabola with focus F; with
    polar, also the touchpoint-triangle circumcenter and the Brianchon point. F must lie on the
    circumcircle within tol.
    """

    def feature(triangle: Triangle) -> Dict[str, Any]:
        require_clearance(triangle, F, clearance)
        conic = inparabola_from_focus(triangle, F, tol)
        elements = parabola_elements(conic)
        values = {
            "vertex": elements.vertex,
            "foot": elements.directrix_foot,
            "directrix": elements.directrix,
            "simson": triangle.simson_steiner(F, tol).simson,
        }
        if with_polar:
            touch = polar_triangle(triangle, conic, PolarMode.IN)
            values["polar_circumcenter"] = touch.triangle_center("X3")
            values["brianchon"] = perspector(triangle, touch)
        return values

    focus = ("inparabola", tuple(F.coords), clearance, tol)
    feature.key = (*focus, with_polar)
    feature.supersets = () if with_polar else ((*focus, True),)
    return feature


def brianchon_feature(brianchon_point: HPoint, clearance: float) -> Feature:
    """Focus, vertex, directrix and touchpoint-triangle centroid of the inparabola with a fixed Brianchon point."""

    def feature(triangle: Triangle) -> Dict[str, Any]:
        require_clearance(triangle, brianchon_point, clearance)
        conic = inconic_from_perspector(triangle, brianchon_point)
        elements = parabola_elements(conic)
        touch = polar_triangle(triangle, conic, PolarMode.IN)
        return {
            "focus": elements.focus,
            "vertex": elements.vertex,
            "directrix": elements.directrix,
            "polar_centroid": touch.centroid,
        }

    feature.key = ("brianchon", tuple(brianchon_point.coords), clearance)
    return feature

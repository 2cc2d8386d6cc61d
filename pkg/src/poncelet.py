"""
Poncelet triangle families: the tangent-chord stepper, the triangle-at-t map and closed-form
inparabola oracles for families inscribed in a circle.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from src.structures.common import DegenerateError, GeometryError, PonceletClosureError
from src.structures.conics import Conic, second_intersection, touchpoints_from_point
from src.structures.family_spec import FamilySpec
from src.structures.geom import HPoint
from src.structures.geometry_types import ConicKind, FamilyKind
from src.structures.triangle import Triangle

logger = logging.getLogger("PonceletFamily")

CLOSURE_TOL = 1e-8
VERIFY_SAMPLES = 32
# outer-conic incidence tolerance for stepper inputs (Sampson distance)
ON_OUTER_TOL = 1e-8
# vertices closer than this make a sample degenerate
MIN_VERTEX_GAP = 1e-6


@dataclass(frozen=True)
class Family:
    """
    A verified Poncelet pair.

    Attributes:
        spec (FamilySpec): definition the pair was built from
        outer (Conic): conic the vertices run on
        inner (Conic): caustic touched by every side
        closure_error (float): worst third-step return error on the verification grid
    """

    spec: FamilySpec
    outer: Conic
    inner: Conic
    closure_error: float

    @property
    def kind(self) -> FamilyKind:
        return self.spec.kind

    @property
    def circle_inscribed(self) -> bool:
        return self.spec.circle_inscribed

    def outer_circle(self) -> Tuple[HPoint, float]:
        """Center and radius of a circular outer conic."""
        alpha, beta, _ = self.outer.semi_axes_and_angle()
        if not self.circle_inscribed or abs(alpha - beta) > 1e-9 * alpha:
            raise GeometryError(f"{self.kind.value} family is not inscribed in a circle")
        return self.outer.center(), alpha

    def outer_point(self, angle: float) -> HPoint:
        return self.outer.point_at(angle)


@dataclass(frozen=True)
class PonceletSample:
    """
    Attributes:
        t (float): outer-conic parameter of the first vertex
        vertices (Tuple[HPoint, ...]): the three stepped vertices
        triangle (Triangle): None for degenerate samples
        closure_error (float): distance of the fourth step from the first vertex
        degenerate (bool): two vertices closer than MIN_VERTEX_GAP
    """

    t: float
    vertices: Tuple[HPoint, HPoint, HPoint]
    triangle: Optional[Triangle]
    closure_error: float
    degenerate: bool


def next_vertex(family: Family, P: HPoint, orientation: int = 1) -> HPoint:
    """
    One Poncelet step: follow the tangent from P to the caustic whose touchpoint lies on the
    `orientation` side of the ray from the caustic center through P, to the outer conic.
    """
    if family.outer.sampson_distance(P) > ON_OUTER_TOL:
        raise GeometryError(f"{P!r} is not on the outer conic")
    touchpoints = touchpoints_from_point(family.inner, P)
    if len(touchpoints) != 2:
        raise DegenerateError(f"expected two tangents from {P!r} to the caustic")

    center = family.inner.center().xy
    ray = P.xy - center

    def signed_angle(point: HPoint) -> float:
        v = point.xy - center
        return float(np.arctan2(ray[0] * v[1] - ray[1] * v[0], ray @ v))

    chosen = max(touchpoints, key=lambda point: orientation * signed_angle(point))
    return second_intersection(family.outer, P, chosen.xy - P.xy)


def triangle_at(family: Family, t: float, orientation: int = 1) -> PonceletSample:
    first = family.outer_point(t)
    second = next_vertex(family, first, orientation)
    third = next_vertex(family, second, orientation)
    fourth = next_vertex(family, third, orientation)
    vertices = (first, second, third)

    gaps = [first.distance(second), second.distance(third), third.distance(first)]
    triangle, degenerate = None, min(gaps) < MIN_VERTEX_GAP
    if not degenerate:
        try:
            triangle = Triangle(*vertices)
        except DegenerateError:
            degenerate = True
    return PonceletSample(
        t=float(t),
        vertices=vertices,
        triangle=triangle,
        closure_error=fourth.distance(first),
        degenerate=degenerate,
    )


def _check_containment(outer: Conic, inner: Conic, samples: int):
    interior_sign = np.sign(outer.value(outer.center()))
    for theta in np.linspace(0.0, 2.0 * np.pi, samples, endpoint=False):
        p = inner.point_at(theta)
        if np.sign(outer.value(p)) != interior_sign or outer.sampson_distance(p) <= 1e-9:
            raise GeometryError("caustic is not strictly inside the outer conic")


def build_family(spec: FamilySpec, verify_samples: int = VERIFY_SAMPLES) -> Family:
    """
    Builds the pair for a spec and verifies closure on an evenly spaced grid.

    Args:
        spec (FamilySpec): family definition
        verify_samples (int): size of the closure verification grid
    Returns:
        family (Family)
    """
    outer, inner = spec.make_outer(), spec.make_inner()
    if outer.kind != ConicKind.ELLIPSE or inner.kind != ConicKind.ELLIPSE:
        raise GeometryError("Poncelet pairs are built from two ellipses")
    _check_containment(outer, inner, verify_samples)

    family = Family(spec=spec, outer=outer, inner=inner, closure_error=0.0)
    grid = np.linspace(0.0, 2.0 * np.pi, verify_samples, endpoint=False)
    closure_error = max(triangle_at(family, t).closure_error for t in grid)
    if closure_error >= CLOSURE_TOL:
        raise PonceletClosureError(
            f"Poncelet condition violated: closure error {closure_error:.3e} for {spec.as_dict()}"
        )
    logger.info(f"built {spec.kind.value} family, closure error {closure_error:.2e}")
    return Family(spec=spec, outer=outer, inner=inner, closure_error=closure_error)


@dataclass(frozen=True)
class InparabolaOracle:
    """
    Closed-form loci of the inparabolas with fixed focus F over a circle-inscribed family.

    Attributes:
        k (complex): f1 + f2 - f1*f2 for the caustic foci in the frame O = 0, R = 1, F = 1
        simson_pivot (HPoint): U, common point of the Simson lines
        directrix_pivot (HPoint): W, common point of the directrices
        vertex_center (HPoint): center of the vertex circle
        vertex_radius (float): radius of the vertex circle
    """

    k: complex
    simson_pivot: HPoint
    directrix_pivot: HPoint
    vertex_center: HPoint
    vertex_radius: float


class _FocusFrame:
    """Similarity taking the outer circle to the unit circle and F to 1."""

    def __init__(self, family: Family, F_angle: float):
        center, self.radius = family.outer_circle()
        self.origin = center.to_complex()
        self.rotation = complex(np.cos(F_angle), np.sin(F_angle))

    def to_frame(self, p: HPoint) -> complex:
        return (p.to_complex() - self.origin) / (self.radius * self.rotation)

    def from_frame(self, z: complex) -> HPoint:
        return HPoint.from_complex(self.origin + self.radius * self.rotation * z)


def _frame_k(family: Family, frame: _FocusFrame) -> complex:
    f1, f2 = (frame.to_frame(f) for f in family.inner.foci())
    return f1 + f2 - f1 * f2


def vertex_formula_oracle(family: Family, F_angle: float, t: float) -> HPoint:
    """
    Vertex of the inparabola with focus F = O + R e^(i F_angle) for the triangle at t:
    V = (3 + k + (1 - conj(k)) abc) / 4 in the focus frame, a, b, c the unit vertices.
    """
    return vertex_formula(family, F_angle, triangle_at(family, t).vertices)


def vertex_formula(family: Family, F_angle: float, vertices: Sequence[HPoint]) -> HPoint:
    frame = _FocusFrame(family, F_angle)
    k = _frame_k(family, frame)
    a, b, c = (frame.to_frame(v) for v in vertices)
    return frame.from_frame((3.0 + k + (1.0 - np.conj(k)) * a * b * c) / 4.0)


def inparabola_oracle(family: Family, F_angle: float) -> InparabolaOracle:
    frame = _FocusFrame(family, F_angle)
    k = _frame_k(family, frame)
    return InparabolaOracle(
        k=complex(k),
        simson_pivot=frame.from_frame((1.0 + k) / 2.0),
        directrix_pivot=frame.from_frame(k),
        vertex_center=frame.from_frame((3.0 + k) / 4.0),
        vertex_radius=frame.radius * abs(1.0 - k) / 4.0,
    )

"""
Parabolas attached to a triangle: circumparabolas as conjugation images of tangent lines,
inparabolas from a focus or a Brianchon point, polar triangles and perspectors.
"""

import logging
from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np

from src.structures.common import EPS, DegenerateError, GeometryError, NotPerspectiveError
from src.structures.conics import (
    Conic,
    line_discriminant,
    parabola_elements,
    parabola_from_focus_directrix,
    pole_polar,
)
from src.structures.geom import HLine, HPoint, join, least_squares_meet, meet
from src.structures.geometry_types import (
    ConjugationKind,
    InparabolaAnchor,
    NamedConic,
    PolarMode,
)
from src.structures.locus_fitter import LocusFitter
from src.structures.triangle import Triangle

logger = logging.getLogger("TriangleConics")

# carrier incidence tolerance for anchors (Sampson distance)
ANCHOR_TOL = 1e-8

# sample offsets along a parabola, in units of its focal length
_RECOVERY_OFFSETS = (-7.0, -3.0, -1.3, 0.9, 2.6, 5.5, 11.0)


@dataclass(frozen=True)
class CPSpec:
    """
    A circumparabola given by the tangency point of its pre-image line.

    Attributes:
        kind (ConjugationKind): isogonal (tangent to the circumcircle) or isotomic (tangent to the
            Steiner circumellipse)
        tangency_param (float): parameter of the tangency point on the carrier conic
    """

    kind: ConjugationKind
    tangency_param: float

    def tangency_point(self, triangle: Triangle) -> HPoint:
        return carrier_conic(triangle, self.kind).point_at(self.tangency_param)


@dataclass(frozen=True)
class IPSpec:
    """
    An inparabola given by its focus (on the circumcircle) or its Brianchon point (on the Steiner
    circumellipse).
    """

    kind: InparabolaAnchor
    anchor: HPoint


def carrier_conic(triangle: Triangle, kind: Union[str, ConjugationKind]) -> Conic:
    """The conic whose tangents map onto circumparabolas under the conjugation."""
    if ConjugationKind(kind) == ConjugationKind.ISOGONAL:
        return triangle.named_conic(NamedConic.CIRCUMCIRCLE)
    return triangle.named_conic(NamedConic.STEINER_CIRCUMELLIPSE)


def preimage_line(triangle: Triangle, kind: Union[str, ConjugationKind], Q: HPoint) -> HLine:
    """Tangent at Q to the carrier conic of the conjugation."""
    carrier = carrier_conic(triangle, kind)
    if carrier.sampson_distance(Q) > ANCHOR_TOL:
        raise GeometryError(f"{Q!r} is not on the {ConjugationKind(kind).value} carrier conic")
    return pole_polar(carrier, Q)


def circumparabola_from_line(
    triangle: Triangle, line: HLine, kind: Union[str, ConjugationKind]
) -> Conic:
    """
    Conjugation image of a line: the circumconic u*yz + v*zx + w*xy = 0 in barycentrics.

    Args:
        triangle (Triangle): reference triangle
        line (HLine): line avoiding the vertices
        kind (str | ConjugationKind): isogonal or isotomic
    Returns:
        conic (Conic): circumconic through A, B, C
    """
    coefficients = triangle.barycentric_line(line)
    if ConjugationKind(kind) == ConjugationKind.ISOGONAL:
        coefficients = coefficients * triangle.sidelengths**2
    if np.min(np.abs(coefficients)) <= EPS * np.linalg.norm(coefficients):
        raise DegenerateError("pre-image line passes through a vertex")
    u, v, w = coefficients
    N = 0.5 * np.array([[0.0, w, v], [w, 0.0, u], [v, u, 0.0]])
    return triangle.barycentric_conic(N)


def circumparabola(triangle: Triangle, spec: CPSpec) -> Conic:
    Q = spec.tangency_point(triangle)
    return circumparabola_from_line(triangle, preimage_line(triangle, spec.kind, Q), spec.kind)


def circumparabola_at(triangle: Triangle, kind: Union[str, ConjugationKind], Q: HPoint) -> Conic:
    """Circumparabola whose pre-image line touches the carrier conic at Q."""
    return circumparabola_from_line(triangle, preimage_line(triangle, kind, Q), kind)


def conic_preimage_line(
    triangle: Triangle, conic: Conic, kind: Union[str, ConjugationKind], tol: float = 1e-8
) -> HLine:
    """
    Pre-image line of a circumconic read off its barycentric coefficients u*yz + v*zx + w*xy.
    """
    N = triangle.conic_to_barycentric(conic)
    scale = np.linalg.norm(N)
    if np.max(np.abs(np.diag(N))) > tol * scale:
        raise GeometryError("conic does not pass through the vertices")
    coefficients = 2.0 * np.array([N[1, 2], N[0, 2], N[0, 1]])
    if ConjugationKind(kind) == ConjugationKind.ISOGONAL:
        coefficients = coefficients / triangle.sidelengths**2
    return triangle.cartesian_line(coefficients)


def recover_preimage_line(
    triangle: Triangle, conic: Conic, kind: Union[str, ConjugationKind]
) -> HLine:
    """
    Pre-image line of a circumparabola, recovered by conjugating sampled conic points and
    fitting a total-least-squares line through the images.
    """
    elements = parabola_elements(conic)
    images = []
    for offset in _RECOVERY_OFFSETS:
        p = elements.point_at(offset * elements.focal_length)
        try:
            images.append(triangle.conjugate(p, kind).xy)
        except GeometryError:
            continue
    report = LocusFitter().fit_line(np.array(images))
    return HLine.from_array(report.params["line"])


def inparabola_from_focus(triangle: Triangle, F: HPoint, tol: float = EPS) -> Conic:
    """Parabola with focus F on the circumcircle (within tol) and directrix the Steiner line of F."""
    lines = triangle.simson_steiner(F, tol)
    if lines.degenerate:
        raise DegenerateError("inparabola focus at a vertex")
    return parabola_from_focus_directrix(F, lines.steiner)


def inconic_from_perspector(triangle: Triangle, perspector_point: HPoint) -> Conic:
    """
    Inconic with barycentric perspector (p:q:r):
    x^2/p^2 + y^2/q^2 + z^2/r^2 - 2yz/(qr) - 2zx/(rp) - 2xy/(pq) = 0.
    """
    pqr = triangle.to_barycentric(perspector_point)
    if np.min(np.abs(pqr)) <= EPS * np.linalg.norm(pqr):
        raise GeometryError("perspector has a zero barycentric component")
    inv = 1.0 / pqr
    N = -np.outer(inv, inv)
    np.fill_diagonal(N, inv**2)
    return triangle.barycentric_conic(N)


def inparabola(triangle: Triangle, spec: IPSpec) -> Conic:
    kind = InparabolaAnchor(spec.kind)
    if kind == InparabolaAnchor.FOCUS:
        return inparabola_from_focus(triangle, spec.anchor)
    carrier = triangle.named_conic(NamedConic.STEINER_CIRCUMELLIPSE)
    if carrier.sampson_distance(spec.anchor) > ANCHOR_TOL:
        raise GeometryError(f"Brianchon point {spec.anchor!r} is off the Steiner circumellipse")
    return inconic_from_perspector(triangle, spec.anchor)


def polar_triangle(
    triangle: Triangle, conic: Conic, mode: Union[str, PolarMode], tol: float = 1e-8
) -> Triangle:
    """
    Circum mode: triangle bounded by the tangents at A, B, C of a circumconic.
    In mode: triangle of touchpoints of an inconic, A' on BC and so on.
    """
    mode = PolarMode(mode)
    if mode == PolarMode.CIRCUM:
        for vertex in triangle.points:
            if conic.sampson_distance(vertex) > tol:
                raise GeometryError(f"vertex {vertex!r} is not on the circumconic")
        ta, tb, tc = (pole_polar(conic, vertex) for vertex in triangle.points)
        return Triangle(meet(tb, tc), meet(tc, ta), meet(ta, tb))

    sides = triangle.sidelines()
    for side in sides:
        if abs(line_discriminant(conic, side)) > tol:
            raise GeometryError(f"sideline {side!r} is not tangent to the inconic")
    return Triangle(*(pole_polar(conic, side) for side in sides))


def cevian_concurrency(triangle: Triangle, other: Triangle) -> Tuple[HPoint, float]:
    """Least-squares meet of the lines joining corresponding vertices, with its max residual."""
    cevians: Sequence[HLine] = [join(p, q) for p, q in zip(triangle.points, other.points)]
    point, residual, _ = least_squares_meet(cevians)
    return point, residual


def perspector(triangle: Triangle, other: Triangle, tol: float = 1e-8) -> HPoint:
    point, residual = cevian_concurrency(triangle, other)
    if residual > tol:
        raise NotPerspectiveError(f"not perspective: concurrency residual {residual:.3e}")
    logger.debug(f"perspector {point!r} residual {residual:.3e}")
    return point

import numpy as np
import pytest

from src.structures.common import GeometryError, NotPerspectiveError
from src.structures.conics import line_discriminant, parabola_elements
from src.structures.geom import HPoint
from src.structures.geometry_types import (
    CenterId,
    ConicKind,
    ConjugationKind,
    InparabolaAnchor,
    NamedConic,
    PolarMode,
)
from src.structures.triangle import Triangle
from src.triconics import (
    CPSpec,
    IPSpec,
    carrier_conic,
    cevian_concurrency,
    circumparabola,
    circumparabola_at,
    conic_preimage_line,
    inconic_from_perspector,
    inparabola,
    inparabola_from_focus,
    perspector,
    polar_triangle,
    preimage_line,
    recover_preimage_line,
)


def same_line(a, b, tol):
    return min(np.linalg.norm(a.coords - b.coords), np.linalg.norm(a.coords + b.coords)) < tol


@pytest.mark.parametrize("kind", [ConjugationKind.ISOGONAL, ConjugationKind.ISOTOMIC])
@pytest.mark.parametrize("param", [0.4, 2.2, 4.9])
def test_circumparabola_passes_through_the_vertices(scalene, kind, param):
    conic = circumparabola(scalene, CPSpec(kind, param))
    assert conic.kind == ConicKind.PARABOLA
    for vertex in scalene.points:
        assert conic.sampson_distance(vertex) < 1e-10


@pytest.mark.parametrize("kind", [ConjugationKind.ISOGONAL, ConjugationKind.ISOTOMIC])
def test_preimage_line_is_read_back_from_the_conic(scalene, kind):
    Q = carrier_conic(scalene, kind).point_at(1.3)
    line = preimage_line(scalene, kind, Q)
    conic = circumparabola_at(scalene, kind, Q)
    assert same_line(conic_preimage_line(scalene, conic, kind), line, 1e-9)
    assert same_line(recover_preimage_line(scalene, conic, kind), line, 1e-7)


def test_preimage_line_needs_an_anchor_on_the_carrier(scalene):
    with pytest.raises(GeometryError, match="carrier conic"):
        preimage_line(scalene, ConjugationKind.ISOGONAL, HPoint(0.2, 0.1))


def test_preimage_line_of_a_non_circumconic(scalene):
    with pytest.raises(GeometryError, match="does not pass through the vertices"):
        conic_preimage_line(scalene, scalene.named_conic(NamedConic.STEINER_INELLIPSE), "isotomic")


def test_inparabola_from_focus(scalene):
    F = HPoint(np.cos(0.8), np.sin(0.8))
    conic = inparabola_from_focus(scalene, F)
    assert conic.kind == ConicKind.PARABOLA
    for side in scalene.sidelines():
        assert abs(line_discriminant(conic, side)) < 1e-9
    elements = parabola_elements(conic)
    assert elements.focus.distance(F) < 1e-9
    orthocenter = scalene.triangle_center(CenterId.X4)
    assert elements.directrix.residual(orthocenter) == pytest.approx(0.0, abs=1e-9)


def test_inparabola_focus_tolerance(scalene):
    center = scalene.triangle_center(CenterId.X3).xy
    F = HPoint.from_array(center + (1.0 + 5e-9) * np.array([np.cos(0.8), np.sin(0.8)]))
    with pytest.raises(GeometryError, match="not on the circumcircle"):
        inparabola_from_focus(scalene, F)
    assert inparabola_from_focus(scalene, F, tol=1e-8).kind == ConicKind.PARABOLA


def test_inparabola_from_a_brianchon_point(scalene):
    B = scalene.named_conic(NamedConic.STEINER_CIRCUMELLIPSE).point_at(2.5)
    conic = inparabola(scalene, IPSpec(InparabolaAnchor.BRIANCHON, B))
    assert conic.kind == ConicKind.PARABOLA
    for side in scalene.sidelines():
        assert abs(line_discriminant(conic, side)) < 1e-9
    touch = polar_triangle(scalene, conic, PolarMode.IN)
    assert perspector(scalene, touch).distance(B) < 1e-8


def test_inparabola_rejects_an_anchor_off_the_steiner_circumellipse(scalene):
    with pytest.raises(GeometryError, match="Steiner circumellipse"):
        inparabola(scalene, IPSpec(InparabolaAnchor.BRIANCHON, scalene.centroid))


def test_incircle_has_the_gergonne_perspector(raw_scalene):
    incircle = inconic_from_perspector(raw_scalene, raw_scalene.gergonne_point())
    alpha, beta, _ = incircle.semi_axes_and_angle()
    assert (alpha, beta) == pytest.approx((raw_scalene.inradius, raw_scalene.inradius))
    assert incircle.center().distance(raw_scalene.triangle_center(CenterId.X1)) < 1e-10


def test_tangential_triangle_is_perspective_at_the_symmedian_point(scalene):
    tangential = polar_triangle(scalene, scalene.named_conic(NamedConic.CIRCUMCIRCLE), PolarMode.CIRCUM)
    symmedian = scalene.conjugate(scalene.centroid, ConjugationKind.ISOGONAL)
    assert perspector(scalene, tangential).distance(symmedian) < 1e-9


def test_polar_triangle_checks_incidence(scalene):
    with pytest.raises(GeometryError, match="not on the circumconic"):
        polar_triangle(scalene, scalene.named_conic(NamedConic.STEINER_INELLIPSE), PolarMode.CIRCUM)
    with pytest.raises(GeometryError, match="not tangent"):
        polar_triangle(scalene, scalene.named_conic(NamedConic.CIRCUMCIRCLE), PolarMode.IN)


def test_unrelated_triangles_are_not_perspective(raw_scalene):
    other = Triangle((0.5, 0.4), (3.1, -0.9), (2.2, 3.3))
    _, residual = cevian_concurrency(raw_scalene, other)
    assert residual > 1e-3
    with pytest.raises(NotPerspectiveError):
        perspector(raw_scalene, other)

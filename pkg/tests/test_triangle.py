import numpy as np
import pytest

from src.presets import raw_seed_triangle, seed_triangle
from src.structures.common import (
    ConjugateUndefinedError,
    DegenerateError,
    GeometryError,
    UndefinedCenterError,
)
from src.structures.conics import line_discriminant, parabola_elements
from src.structures.geom import HPoint, join
from src.structures.geometry_types import CenterId, ConicKind, NamedConic
from src.structures.triangle import Triangle


def test_collinear_vertices_are_rejected():
    with pytest.raises(DegenerateError, match="collinear"):
        Triangle((0.0, 0.0), (1.0, 1.0), (2.0, 2.0))


def test_right_triangle_measures():
    tri = raw_seed_triangle("right-3-4-5")
    assert tri.sidelengths == pytest.approx([5.0, 3.0, 4.0])
    assert tri.area == pytest.approx(6.0)
    assert tri.inradius == pytest.approx(1.0)
    assert tri.circumradius == pytest.approx(2.5)
    assert tri.triangle_center(CenterId.X3).xy == pytest.approx([2.0, 1.5])
    assert tri.triangle_center(CenterId.X4).xy == pytest.approx([0.0, 0.0], abs=1e-12)


def test_normalized_seed(scalene):
    assert scalene.circumradius == pytest.approx(1.0)
    assert scalene.triangle_center(CenterId.X3).xy == pytest.approx([0.0, 0.0], abs=1e-12)
    assert scalene.is_scalene()
    assert not seed_triangle("equilateral").is_scalene()


def test_unknown_seed_preset():
    with pytest.raises(ValueError, match="Undefined seed preset for"):
        raw_seed_triangle("isosceles")


def test_euler_line(raw_scalene):
    x2, x3, x4, x5 = (raw_scalene.triangle_center(c).xy for c in ("X2", "X3", "X4", "X5"))
    assert x2 == pytest.approx((2.0 * x3 + x4) / 3.0)
    assert x5 == pytest.approx((x3 + x4) / 2.0)

    medial = raw_scalene.medial()
    assert medial.area == pytest.approx(raw_scalene.area / 4.0)
    assert medial.triangle_center(CenterId.X2).xy == pytest.approx(x2)
    assert medial.triangle_center(CenterId.X3).xy == pytest.approx(x5)


def test_coordinate_conversions(raw_scalene, rng):
    p = HPoint(*rng.uniform(0.5, 1.5, size=2))
    bary = raw_scalene.coords_convert(p, "cartesian", "barycentric")
    trilinear = raw_scalene.coords_convert(bary, "barycentric", "trilinear")
    back = raw_scalene.coords_convert(trilinear, "trilinear", "cartesian")
    assert back.distance(p) < 1e-12

    incenter = raw_scalene.triangle_center(CenterId.X1)
    trilinear = raw_scalene.coords_convert(incenter, "cartesian", "trilinear")
    assert trilinear / trilinear[0] == pytest.approx([1.0, 1.0, 1.0])

    with pytest.raises(GeometryError):
        raw_scalene.coords_convert([0.0, 0.0, 0.0], "barycentric", "cartesian")


def test_barycentric_line_round_trip(raw_scalene):
    line = join(HPoint(0.3, 0.1), HPoint(1.7, 2.0))
    back = raw_scalene.cartesian_line(raw_scalene.barycentric_line(line))
    assert back.coords == pytest.approx(line.coords)


def test_conjugations_are_involutions(raw_scalene, rng):
    for _ in range(5):
        p = raw_scalene.from_barycentric(rng.uniform(0.1, 1.0, size=3))
        for kind in ("isogonal", "isotomic"):
            twice = raw_scalene.conjugate(raw_scalene.conjugate(p, kind), kind)
            assert twice.distance(p) < 1e-10


def test_known_conjugate_pairs(raw_scalene):
    x1 = raw_scalene.triangle_center(CenterId.X1)
    x2 = raw_scalene.triangle_center(CenterId.X2)
    assert raw_scalene.conjugate(x1, "isogonal").distance(x1) < 1e-12
    assert raw_scalene.conjugate(x2, "isotomic").distance(x2) < 1e-12
    isogonal_x3 = raw_scalene.conjugate(raw_scalene.triangle_center(CenterId.X3), "isogonal")
    assert isogonal_x3.distance(raw_scalene.triangle_center(CenterId.X4)) < 1e-10


def test_conjugate_of_a_sideline_point_is_undefined(raw_scalene):
    with pytest.raises(ConjugateUndefinedError):
        raw_scalene.conjugate(HPoint(2.0, 0.0), "isogonal")


def test_steiner_point_and_focus_lie_on_the_circumcircle(scalene):
    for center_id in (CenterId.X99, CenterId.X110):
        assert np.linalg.norm(scalene.triangle_center(center_id).xy) == pytest.approx(1.0)


def test_symmetric_triangle_has_no_steiner_point():
    with pytest.raises(UndefinedCenterError):
        seed_triangle("equilateral").triangle_center(CenterId.X99)


def test_gergonne_point_is_on_the_contact_cevian(raw_scalene):
    a, b, _ = raw_scalene.sidelengths
    s = 0.5 * float(np.sum(raw_scalene.sidelengths))
    B, C = raw_scalene.vertices[1], raw_scalene.vertices[2]
    touch = HPoint.from_array(B + (s - b) / a * (C - B))
    cevian = join(raw_scalene.A, touch)
    assert cevian.residual(raw_scalene.gergonne_point()) == pytest.approx(0.0, abs=1e-12)


def test_simson_and_steiner_lines(scalene):
    F = HPoint(np.cos(2.0), np.sin(2.0))
    lines = scalene.simson_steiner(F)
    assert lines.residual < 1e-12
    assert not lines.degenerate
    orthocenter = scalene.triangle_center(CenterId.X4)
    assert lines.steiner.residual(orthocenter) == pytest.approx(0.0, abs=1e-10)
    assert lines.simson.residual(lines.feet[2]) == pytest.approx(0.0, abs=1e-12)


def test_simson_line_needs_a_circumcircle_point(scalene):
    with pytest.raises(GeometryError, match="not on the circumcircle"):
        scalene.simson_steiner(HPoint(0.5, 0.0))


def test_simson_line_circumcircle_tolerance(scalene):
    center = scalene.triangle_center(CenterId.X3).xy
    F = HPoint.from_array(center + (1.0 + 5e-9) * np.array([np.cos(2.0), np.sin(2.0)]))
    with pytest.raises(GeometryError, match="not on the circumcircle"):
        scalene.simson_steiner(F)
    assert scalene.simson_steiner(F, tol=1e-8).residual < 1e-8


@pytest.mark.parametrize(
    "name",
    [
        NamedConic.STEINER_INELLIPSE,
        NamedConic.MACBEATH_INELLIPSE,
        NamedConic.BROCARD_INELLIPSE,
        NamedConic.KIEPERT_PARABOLA,
    ],
)
def test_named_inconics_touch_all_sidelines(scalene, name):
    conic = scalene.named_conic(name)
    for side in scalene.sidelines():
        assert abs(line_discriminant(conic, side)) < 1e-9


def test_named_circumconics_pass_through_the_vertices(scalene):
    for name in (NamedConic.CIRCUMCIRCLE, NamedConic.STEINER_CIRCUMELLIPSE):
        conic = scalene.named_conic(name)
        for vertex in scalene.points:
            assert conic.sampson_distance(vertex) < 1e-12


def test_steiner_inellipse_is_centered_at_the_centroid(scalene):
    conic = scalene.named_conic(NamedConic.STEINER_INELLIPSE)
    assert conic.center().distance(scalene.centroid) < 1e-12


def test_kiepert_parabola_directrix_is_the_euler_line(scalene):
    conic = scalene.named_conic(NamedConic.KIEPERT_PARABOLA)
    assert conic.kind == ConicKind.PARABOLA
    directrix = parabola_elements(conic).directrix
    for center_id in (CenterId.X3, CenterId.X4):
        assert directrix.residual(scalene.triangle_center(center_id)) == pytest.approx(0.0, abs=1e-8)


def test_unknown_named_conic():
    with pytest.raises(ValueError):
        seed_triangle("scalene-B").named_conic("nine_point_circle")

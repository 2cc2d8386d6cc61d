import numpy as np
import pytest

from src.structures.common import DegenerateError, GeometryError
from src.structures.geom import (
    HLine,
    HPoint,
    foot_of_perpendicular,
    homothety,
    join,
    least_squares_meet,
    meet,
    midpoint,
    parallel_through,
    reflect,
    signed_area,
)


def test_point_normalization():
    p = HPoint(2.0, 4.0, 2.0)
    assert p.is_finite
    assert p.xy == pytest.approx([1.0, 2.0])
    assert HPoint.from_complex(1.0 + 2.0j).to_complex() == pytest.approx(1.0 + 2.0j)


def test_line_normalization_gives_signed_distance():
    line = HLine(3.0, 4.0, -10.0)
    assert np.linalg.norm(line.normal) == pytest.approx(1.0)
    assert line.residual(HPoint(0.0, 0.0)) == pytest.approx(-2.0)


def test_join_and_meet():
    p, q = HPoint(0.0, 0.0), HPoint(1.0, 1.0)
    line = join(p, q)
    assert line.residual(p) == pytest.approx(0.0, abs=1e-15)
    assert line.residual(q) == pytest.approx(0.0, abs=1e-15)

    crossing = meet(line, HLine(1.0, 0.0, -3.0))
    assert crossing.xy == pytest.approx([3.0, 3.0])


def test_parallel_lines_meet_at_infinity():
    point = meet(HLine(0.0, 1.0, 0.0), HLine(0.0, 1.0, -1.0))
    assert not point.is_finite
    assert point.coords == pytest.approx([1.0, 0.0, 0.0])


def test_degenerate_join():
    p = HPoint(1.0, 2.0)
    with pytest.raises(DegenerateError, match="degenerate join/meet"):
        join(p, HPoint(1.0, 2.0))


def test_join_rejects_mixed_elements():
    with pytest.raises(TypeError):
        join(HPoint(0.0, 0.0), HLine(1.0, 0.0, 0.0))


def test_reflections():
    p = HPoint(1.0, 2.0)
    assert reflect(p, HPoint(0.0, 0.0)).xy == pytest.approx([-1.0, -2.0])
    assert reflect(p, HLine(1.0, 0.0, 0.0)).xy == pytest.approx([-1.0, 2.0])
    with pytest.raises(GeometryError):
        reflect(p, HLine.at_infinity())


def test_perpendicular_foot_and_midpoint():
    foot = foot_of_perpendicular(HPoint(2.0, 3.0), HLine(0.0, 1.0, -1.0))
    assert foot.xy == pytest.approx([2.0, 1.0])
    assert midpoint(HPoint(0.0, 0.0), HPoint(2.0, 4.0)).xy == pytest.approx([1.0, 2.0])
    assert homothety(HPoint(1.0, 1.0), HPoint(3.0, 1.0), 0.5).xy == pytest.approx([2.0, 1.0])


def test_parallel_through():
    line = parallel_through(HLine(1.0, -1.0, 0.0), HPoint(0.0, 1.0))
    assert line.residual(HPoint(0.0, 1.0)) == pytest.approx(0.0, abs=1e-15)
    assert line.residual(HPoint(2.0, 3.0)) == pytest.approx(0.0, abs=1e-15)


def test_signed_area_orientation():
    a, b, c = HPoint(0.0, 0.0), HPoint(1.0, 0.0), HPoint(0.0, 1.0)
    assert signed_area(a, b, c) == pytest.approx(0.5)
    assert signed_area(a, c, b) == pytest.approx(-0.5)


def test_least_squares_meet_of_concurrent_pencil():
    center = HPoint(0.3, -0.7)
    lines = [join(center, HPoint(np.cos(a), np.sin(a))) for a in np.linspace(0.1, 3.0, 7)]
    point, residual, condition = least_squares_meet(lines)
    assert point.distance(center) < 1e-12
    assert residual < 1e-12
    assert np.isfinite(condition)


def test_least_squares_meet_of_parallel_pencil():
    lines = [HLine(1.0, 0.0, -float(k)) for k in range(4)]
    with pytest.raises(DegenerateError):
        least_squares_meet(lines)

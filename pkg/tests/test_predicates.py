import numpy as np
import pytest

from src.structures.common import GeometryError
from src.structures.conics import circle, conic_from_center_axes, parabola_from_focus_directrix
from src.structures.geom import HLine, HPoint
from src.structures.predicates import (
    axis_aligned,
    collinear,
    concentric,
    conic_tangent_conic,
    conic_tangent_conic_at,
    direction_along,
    line_tangent,
    lines_coincide,
    parallel,
    point_on_conic,
    point_on_line,
    points_coincide,
    stationary,
)

UNIT_CIRCLE = circle(HPoint(0.0, 0.0), 1.0)


def test_line_predicates():
    assert parallel(HLine(1.0, 1.0, 0.0), HLine(2.0, 2.0, -5.0))
    assert not parallel(HLine(1.0, 0.0, 0.0), HLine(0.0, 1.0, 0.0))
    assert lines_coincide(HLine(1.0, 2.0, 3.0), HLine(-2.0, -4.0, -6.0))
    assert point_on_line(HPoint(1.0, 1.0), HLine(1.0, -1.0, 0.0))
    assert direction_along(np.pi / 4.0, HLine(1.0, -1.0, 0.0))
    assert not direction_along(0.0, HLine(1.0, -1.0, 0.0))


def test_point_predicates():
    assert collinear(HPoint(0.0, 0.0), HPoint(1.0, 1.0), HPoint(3.0, 3.0))
    result = collinear(HPoint(0.0, 0.0), HPoint(1.0, 0.0), HPoint(0.0, 1.0))
    assert not result
    assert result.residual == pytest.approx(0.5)
    assert points_coincide(HPoint(0.1, 0.2), HPoint(0.1, 0.2 + 1e-12))

    cluster = stationary([HPoint(1.0, 1.0 + k * 1e-9) for k in range(5)])
    assert cluster
    assert cluster.witness.xy == pytest.approx([1.0, 1.0 + 2e-9])


def test_conic_incidence_and_tangency():
    assert point_on_conic(HPoint(0.6, 0.8), UNIT_CIRCLE)
    assert line_tangent(HLine(0.0, 1.0, -1.0), UNIT_CIRCLE)
    assert not line_tangent(HLine(0.0, 1.0, -0.5), UNIT_CIRCLE)


def test_parabola_tangent_to_a_circle():
    # focus at the center, directrix y = -3: the parabola touches the circle of radius 1.5 at (0, -1.5)
    parabola = parabola_from_focus_directrix(HPoint(0.0, 0.0), HLine(0.0, 1.0, 3.0))
    ellipse = circle(HPoint(0.0, 0.0), 1.5)
    result = conic_tangent_conic(parabola, ellipse)
    assert result
    assert result.witness.xy == pytest.approx([0.0, -1.5], abs=1e-6)
    assert conic_tangent_conic_at(parabola, ellipse, HPoint(0.0, -1.5))
    assert not conic_tangent_conic(parabola, circle(HPoint(0.0, 0.0), 1.0))


def test_tangency_scan_needs_an_ellipse():
    parabola = parabola_from_focus_directrix(HPoint(0.0, 0.0), HLine(0.0, 1.0, 3.0))
    with pytest.raises(GeometryError):
        conic_tangent_conic(UNIT_CIRCLE, parabola)


def test_ellipse_relations():
    a = conic_from_center_axes(HPoint(0.3, 0.1), (2.0, 1.0), 0.5)
    b = conic_from_center_axes(HPoint(0.3, 0.1), (1.0, 0.5), 0.5 + np.pi / 2.0)
    c = conic_from_center_axes(HPoint(0.0, 0.0), (1.0, 0.5), 0.9)
    assert concentric(a, b)
    assert not concentric(a, c)
    assert axis_aligned(a, b)
    assert not axis_aligned(a, c)
    assert axis_aligned(a, UNIT_CIRCLE)

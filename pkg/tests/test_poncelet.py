import numpy as np
import pytest

from src.poncelet import (
    CLOSURE_TOL,
    build_family,
    inparabola_oracle,
    next_vertex,
    triangle_at,
    vertex_formula,
    vertex_formula_oracle,
)
from src.presets import seed_triangle
from src.structures.common import GeometryError, PonceletClosureError
from src.structures.conics import circle, line_discriminant, parabola_elements
from src.structures.family_spec import (
    ORIGIN,
    BicentricSpec,
    InellipseSpec,
    MacBeathSpec,
    make_family_spec,
)
from src.structures.geom import HPoint
from src.structures.geometry_types import FamilyKind
from src.triconics import inparabola_from_focus

T_VALUES = (0.3, 1.7, 2.9, 4.1, 5.6)
KINDS = ["Inellipse", "Bicentric", "MacBeath", "Brocard", "Homothetic", "Generic"]


def cosines(triangle):
    a2, b2, c2 = triangle.sidelengths**2
    a, b, c = triangle.sidelengths
    return np.array([(b2 + c2 - a2) / (2 * b * c), (c2 + a2 - b2) / (2 * c * a), (a2 + b2 - c2) / (2 * a * b)])


@pytest.mark.parametrize("kind", KINDS)
def test_families_close(family, kind):
    fam = family(kind)
    assert fam.kind == FamilyKind(kind)
    assert fam.closure_error < CLOSURE_TOL
    for t in T_VALUES:
        sample = triangle_at(fam, t)
        assert not sample.degenerate
        assert sample.closure_error < CLOSURE_TOL
        for vertex in sample.vertices:
            assert fam.outer.sampson_distance(vertex) < 1e-9
        for side in sample.triangle.sidelines():
            assert abs(line_discriminant(fam.inner, side)) < 1e-9


def test_orientation_reverses_the_stepping(family):
    fam = family("MacBeath")
    forward, backward = triangle_at(fam, 1.1, 1), triangle_at(fam, 1.1, -1)
    assert forward.vertices[1].distance(backward.vertices[2]) < 1e-9
    assert forward.vertices[2].distance(backward.vertices[1]) < 1e-9


def test_bicentric_triangles_share_incircle_and_cosine_sum(family):
    fam = family("Bicentric", r=0.3)
    spec = fam.spec
    for t in T_VALUES:
        tri = triangle_at(fam, t).triangle
        assert tri.circumradius == pytest.approx(1.0)
        assert tri.inradius == pytest.approx(0.3)
        assert tri.triangle_center("X1").distance(spec.incenter) < 1e-9
        assert cosines(tri).sum() == pytest.approx(1.0 + 0.3)


def test_brocard_angle_is_conserved(family):
    fam = family("Brocard")
    expected = seed_triangle("scalene-A").brocard_angle
    for t in T_VALUES:
        assert triangle_at(fam, t).triangle.brocard_angle == pytest.approx(expected)


def test_homothetic_triangles_keep_area_and_centroid(family):
    fam = family("Homothetic")
    seed = seed_triangle("scalene-A")
    for t in T_VALUES:
        tri = triangle_at(fam, t).triangle
        assert tri.area == pytest.approx(seed.area)
        assert tri.centroid.distance(seed.centroid) < 1e-9


def test_homothetic_family_has_no_outer_circle(family):
    with pytest.raises(GeometryError, match="not inscribed in a circle"):
        family("Homothetic").outer_circle()


def test_stepper_needs_a_point_on_the_outer_conic(family):
    with pytest.raises(GeometryError, match="not on the outer conic"):
        next_vertex(family("Bicentric"), HPoint(0.2, 0.0))


@pytest.mark.parametrize(
    "build",
    [
        lambda: InellipseSpec(alpha=1.2),
        lambda: BicentricSpec(r=0.6),
        lambda: MacBeathSpec(seed=seed_triangle("equilateral")),
        lambda: MacBeathSpec(),
    ],
)
def test_invalid_family_parameters(build):
    with pytest.raises(GeometryError):
        build()


def test_unknown_family_kind():
    with pytest.raises(ValueError):
        make_family_spec("Excentral")


class _WideCaustic(InellipseSpec):
    def make_inner(self):
        return circle(ORIGIN, 0.3)


def test_non_poncelet_pair_is_rejected():
    with pytest.raises(PonceletClosureError, match="Poncelet condition violated"):
        build_family(_WideCaustic())


def test_concentric_oracle(family):
    oracle = inparabola_oracle(family("Bicentric", r=0.5), 0.0)
    assert abs(oracle.k) < 1e-12
    assert oracle.simson_pivot.xy == pytest.approx([0.5, 0.0], abs=1e-12)
    assert oracle.directrix_pivot.xy == pytest.approx([0.0, 0.0], abs=1e-12)
    assert oracle.vertex_center.xy == pytest.approx([0.75, 0.0], abs=1e-12)
    assert oracle.vertex_radius == pytest.approx(0.25)


def test_bicentric_oracle_constants(family):
    oracle = inparabola_oracle(family("Bicentric"), 0.0)
    d = np.sqrt(0.3)
    assert oracle.k.real == pytest.approx(2 * d - d * d)
    assert oracle.vertex_center.x == pytest.approx(0.9488613, abs=1e-7)
    assert oracle.vertex_radius == pytest.approx(0.0511387, abs=1e-7)
    assert oracle.simson_pivot.x == pytest.approx(0.8977226, abs=1e-7)


@pytest.mark.parametrize("kind", ["Bicentric", "MacBeath", "Brocard", "Generic"])
@pytest.mark.parametrize("F_angle", [0.0, 2.4])
def test_vertex_formula_matches_the_constructed_parabola(family, kind, F_angle):
    fam = family(kind)
    F = fam.outer_point(F_angle)
    oracle = inparabola_oracle(fam, F_angle)
    for t in T_VALUES:
        sample = triangle_at(fam, t)
        if sample.triangle.simson_steiner(F).degenerate:
            continue
        elements = parabola_elements(inparabola_from_focus(sample.triangle, F))
        assert vertex_formula_oracle(fam, F_angle, t).distance(elements.vertex) < 1e-9
        assert vertex_formula(fam, F_angle, sample.vertices).distance(elements.vertex) < 1e-9
        assert elements.vertex.distance(oracle.vertex_center) == pytest.approx(oracle.vertex_radius, abs=1e-9)
        assert elements.directrix.residual(oracle.directrix_pivot) == pytest.approx(0.0, abs=1e-9)
        simson = sample.triangle.simson_steiner(F).simson
        assert simson.residual(oracle.simson_pivot) == pytest.approx(0.0, abs=1e-9)

import numpy as np
import pytest

from src.structures.common import FitError
from src.structures.conics import circle, conic_from_center_axes, parabola_elements, parabola_from_focus_directrix
from src.structures.fit_report import FitReport, Subclaim, to_plain
from src.structures.geom import HLine, HPoint, join
from src.structures.geometry_types import LocusModel
from src.structures.locus_fitter import LocusFitter

THETA = np.linspace(0.0, 2.0 * np.pi, 60, endpoint=False)


@pytest.fixture
def fitter() -> LocusFitter:
    return LocusFitter()


def test_stationary_locus_is_a_point(fitter):
    points = np.tile([0.3, -0.4], (20, 1)) + 1e-10 * np.arange(20)[:, None]
    report, candidates = fitter.classify_locus(points)
    assert report.model == LocusModel.POINT
    assert len(candidates) == 1
    assert report.params["point"] == pytest.approx([0.3, -0.4], abs=1e-8)


def test_line_fit(fitter):
    s = np.linspace(-2.0, 3.0, 25)
    points = np.column_stack([1.0 + 0.6 * s, -0.5 + 0.8 * s])
    report = fitter.fit_line(points)
    assert report.model == LocusModel.LINE
    assert report.max_residual < 1e-12
    assert report.shape.residual(HPoint(1.0, -0.5)) == pytest.approx(0.0, abs=1e-12)
    assert abs(report.params["direction"] @ np.array([0.8, -0.6])) < 1e-12


def test_circle_fit_is_accepted_after_the_line(fitter):
    points = np.column_stack([0.2 + 1.5 * np.cos(THETA), -1.0 + 1.5 * np.sin(THETA)])
    report, candidates = fitter.classify_locus(points)
    assert report.model == LocusModel.CIRCLE
    assert [c.model for c in candidates] == [LocusModel.POINT, LocusModel.LINE, LocusModel.CIRCLE]
    assert report.params["center"] == pytest.approx([0.2, -1.0])
    assert report.params["radius"] == pytest.approx(1.5)


def test_circle_fit_of_collinear_samples(fitter):
    points = np.column_stack([np.linspace(0, 1, 10), np.zeros(10)])
    assert fitter.fit_circle(points).model == LocusModel.NONE


def test_ellipse_fit_parameters(fitter):
    ellipse = conic_from_center_axes(HPoint(0.5, 0.25), (2.0, 0.8), 0.7)
    points = [ellipse.point_at(t) for t in THETA]
    report, _ = fitter.classify_locus(points)
    assert report.model == LocusModel.ELLIPSE
    assert report.params["semi_axes"] == pytest.approx([2.0, 0.8])
    assert report.params["angle"] == pytest.approx(0.7)
    assert report.params["axis_ratio"] == pytest.approx(0.4)
    assert report.params["center"] == pytest.approx([0.5, 0.25])


def test_parabola_fit_recovers_focus_and_directrix(fitter):
    focus, directrix = HPoint(0.4, 1.1), HLine(0.3, -1.0, 0.2)
    elements = parabola_elements(parabola_from_focus_directrix(focus, directrix))
    points = [elements.point_at(s) for s in np.linspace(-3.0, 4.0, 40)]
    for report in (fitter.fit_parabola(points), fitter.fit_conic(points)):
        assert report.model == LocusModel.PARABOLA
        assert report.rms_residual < 1e-7
        assert report.params["focus"] == pytest.approx(focus.xy, abs=1e-6)
        assert report.params["focal_length"] == pytest.approx(elements.focal_length, rel=1e-6)


def test_noisy_locus_is_not_classified(rng):
    fitter = LocusFitter(curve_tol=1e-9)
    points = rng.normal(size=(30, 2))
    report, candidates = fitter.classify_locus(points)
    assert report.model == LocusModel.NONE
    assert np.isinf(report.rms_residual)
    assert len(candidates) == 4


def test_too_few_samples(fitter):
    with pytest.raises(FitError):
        fitter.fit_conic(np.zeros((4, 2)))
    with pytest.raises(FitError):
        fitter.fit_line(np.zeros((2, 2)))


def test_common_point_of_a_pencil(fitter):
    center = HPoint(1.2, -0.3)
    lines = [join(center, HPoint(np.cos(a), np.sin(a) + 3.0)) for a in np.linspace(0.0, 3.0, 10)]
    lines.append(HLine.at_infinity())
    report = fitter.common_point(lines)
    assert report.model == LocusModel.POINT
    assert report.dropped == 1
    assert report.shape.distance(center) < 1e-12


def test_common_point_of_parallel_lines_is_undefined(fitter):
    report = fitter.common_point([HLine(0.0, 1.0, -float(k)) for k in range(5)])
    assert report.model == LocusModel.NONE
    assert report.params["reason"] == "near-parallel pencil"


def test_envelope_of_circle_tangents(fitter):
    tangents = [HLine(np.cos(t), np.sin(t), -2.0) for t in THETA]
    points, dropped = fitter.envelope_points(tangents, t=THETA, closed=True)
    assert dropped == 0
    assert len(points) == len(THETA)
    assert np.linalg.norm(points, axis=1) == pytest.approx(np.full(len(THETA), 2.0), rel=1e-12)
    report = fitter.fit_circle(points)
    assert report.params["radius"] == pytest.approx(2.0)


def test_envelope_skips_parameter_gaps(fitter):
    t = np.concatenate([THETA[:20], THETA[40:]])
    tangents = [HLine(np.cos(a), np.sin(a), -1.0) for a in t]
    points, dropped = fitter.envelope_points(tangents, t=t)
    # both members next to the gap; the open ends have no characteristic point
    assert dropped == 2
    assert len(points) == len(t) - 4


def test_envelope_of_parabola_tangents_on_uneven_grid(fitter):
    # tangents s*x - y - s^2 = 0 of y = x^2 / 4 with s = tan(t), t bunched toward one end
    u = np.linspace(-1.0, 1.0, 201)
    t = u + 0.2 * (u ** 2 - 1.0)
    tangents = [HLine(np.tan(a), -1.0, -np.tan(a) ** 2) for a in t]
    points, dropped = fitter.envelope_points(tangents, t=t)
    assert dropped == 0
    assert len(points) == len(t) - 2
    assert points[:, 1] == pytest.approx(points[:, 0] ** 2 / 4.0, abs=5e-6)
    report = fitter.fit_parabola(points)
    assert report.max_residual < 5e-6
    assert report.params["focus"] == pytest.approx([0.0, 1.0], abs=1e-5)


def test_envelope_of_translated_circles(fitter):
    t = np.linspace(-1.0, 1.0, 201)
    conics = [circle(HPoint(a, 0.0), 1.0) for a in t]
    points, dropped = fitter.conic_envelope_points(conics, t=t)
    assert dropped == 0
    assert len(points) == 2 * (len(t) - 2)
    assert np.abs(points[:, 1]) == pytest.approx(np.ones(len(points)), abs=1e-6)
    upper = points[points[:, 1] > 0]
    assert np.sort(upper[:, 0]) == pytest.approx(t[1:-1], abs=1e-3)


def test_subclaims():
    report = FitReport.from_residuals(LocusModel.LINE, {"line": np.array([1.0, 0.0, 0.0])}, [1e-9, -2e-9])
    claim = Subclaim.from_fit("locus_line", report, 1e-8, expected=LocusModel.LINE)
    assert claim.passed
    assert not Subclaim.from_fit("locus_circle", report, 1e-8, expected=LocusModel.CIRCLE).passed
    assert not Subclaim.from_residual("gap", "distance", float("nan"), 1.0).passed
    worst = Subclaim.from_residuals("pencil", "point", [1e-10, 5e-8], 1e-8)
    assert not worst.passed
    assert worst.max == pytest.approx(5e-8)
    assert not Subclaim.from_residuals("empty", "point", [], 1e-8).passed


def test_plain_values():
    plain = to_plain({"p": HPoint(1.0, 2.0), "r": np.float64(np.inf), "flags": (np.bool_(True), np.int64(3))})
    assert plain == {"p": [1.0, 2.0, 1.0], "r": None, "flags": [True, 3]}

"""
Geometric predicates returning a verdict together with the residual it was decided on.
"""

from dataclasses import dataclass
from typing import Any, Optional, Sequence

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.spatial.distance import pdist

from src.structures.common import GeometryError
from src.structures.conics import Conic, line_discriminant
from src.structures.geom import HLine, HPoint, signed_area
from src.structures.geometry_types import ConicKind


@dataclass(frozen=True)
class PredicateResult:
    """
    Attributes:
        name (str): predicate name
        holds (bool): residual under threshold
        residual (float): the decision statistic
        threshold (float): tolerance used
        witness (object): optional supporting object (touch point, common point ...)
    """

    name: str
    holds: bool
    residual: float
    threshold: float
    witness: Optional[Any] = None

    def __bool__(self):
        return self.holds


def _result(name: str, residual: float, threshold: float, witness=None) -> PredicateResult:
    residual = float(residual)
    return PredicateResult(
        name=name,
        holds=bool(np.isfinite(residual) and residual < threshold),
        residual=residual,
        threshold=threshold,
        witness=witness,
    )


def parallel(l1: HLine, l2: HLine, tol: float = 1e-7) -> PredicateResult:
    n1, n2 = l1.normal, l2.normal
    return _result("parallel", abs(n1[0] * n2[1] - n1[1] * n2[0]), tol)


def lines_coincide(l1: HLine, l2: HLine, tol: float = 1e-9) -> PredicateResult:
    c1, c2 = l1.coords, l2.coords
    return _result("lines_coincide", min(np.linalg.norm(c1 - c2), np.linalg.norm(c1 + c2)), tol)


def collinear(p1: HPoint, p2: HPoint, p3: HPoint, tol: float = 1e-9, scale: float = 1.0) -> PredicateResult:
    return _result("collinear", abs(signed_area(p1, p2, p3)), tol * scale**2)


def stationary(points: Sequence[HPoint], tol: float = 1e-7) -> PredicateResult:
    xy = np.array([p.xy for p in points])
    diameter = float(np.max(pdist(xy))) if len(xy) > 1 else 0.0
    return _result("stationary", diameter, tol, witness=HPoint.from_array(xy.mean(axis=0)))


def point_on_line(p: HPoint, line: HLine, tol: float = 1e-9) -> PredicateResult:
    return _result("point_on_line", abs(line.residual(p)), tol)


def points_coincide(p: HPoint, q: HPoint, tol: float = 1e-9) -> PredicateResult:
    return _result("coincide", p.distance(q), tol)


def point_on_conic(p: HPoint, conic: Conic, tol: float = 1e-9) -> PredicateResult:
    return _result("point_on_conic", conic.sampson_distance(p), tol)


def line_tangent(line: HLine, conic: Conic, tol: float = 1e-9) -> PredicateResult:
    return _result("line_tangent", abs(line_discriminant(conic, line)), tol)


def conic_tangent_conic_at(c1: Conic, c2: Conic, p: HPoint, tol: float = 1e-9) -> PredicateResult:
    """Both conics pass through p with parallel normals there."""
    g1, g2 = c1.gradient(p), c2.gradient(p)
    sine = abs(g1[0] * g2[1] - g1[1] * g2[0]) / (np.linalg.norm(g1) * np.linalg.norm(g2))
    residual = max(c1.sampson_distance(p), c2.sampson_distance(p), sine)
    return _result("conic_tangent_conic_at", residual, tol, witness=p)


def conic_tangent_conic(c1: Conic, ellipse: Conic, tol: float = 1e-9, samples: int = 720) -> PredicateResult:
    """
    Tangency of c1 to an ellipse: the signed Sampson value of c1 along the ellipse touches zero at
    one of its local extrema. The witness is the touch point.
    """
    if ellipse.kind != ConicKind.ELLIPSE:
        raise GeometryError(f"tangency scan runs along an ellipse, got {ellipse.kind.value}")

    def signed(theta: float) -> float:
        p = ellipse.point_at(theta)
        return c1.value(p) / np.linalg.norm(c1.gradient(p))

    grid = np.linspace(0.0, 2.0 * np.pi, samples, endpoint=False)
    step = grid[1] - grid[0]
    values = np.array([signed(theta) for theta in grid])
    before, after = np.roll(values, 1), np.roll(values, -1)
    extrema = np.where(((values <= before) & (values <= after)) | ((values >= before) & (values >= after)))[0]

    best_residual, best_theta = float("inf"), None
    for i in extrema:
        sign = 1.0 if values[i] <= before[i] else -1.0
        found = minimize_scalar(
            lambda theta: sign * signed(theta),
            bounds=(grid[i] - step, grid[i] + step),
            method="bounded",
            options={"xatol": 1e-12},
        )
        residual = abs(found.fun)
        if residual < best_residual:
            best_residual, best_theta = residual, float(found.x)

    witness = ellipse.point_at(best_theta) if best_theta is not None else None
    return _result("conic_tangent_conic", best_residual, tol, witness=witness)


def concentric(c1: Conic, c2: Conic, tol: float = 1e-7) -> PredicateResult:
    return _result("concentric", c1.center().distance(c2.center()), tol)


def axis_aligned(c1: Conic, c2: Conic, tol: float = 1e-7, circle_tol: float = 1e-9) -> PredicateResult:
    """Axes of two ellipses lie along the same directions; trivial when either one is a circle."""
    a1, b1, t1 = c1.semi_axes_and_angle()
    a2, b2, t2 = c2.semi_axes_and_angle()
    if a1 - b1 <= circle_tol * a1 or a2 - b2 <= circle_tol * a2:
        return _result("axis_aligned", 0.0, tol)
    return _result("axis_aligned", min(abs(np.sin(t1 - t2)), abs(np.cos(t1 - t2))), tol)


def direction_along(angle: float, line: HLine, tol: float = 1e-7) -> PredicateResult:
    """An axis at the given angle runs parallel to the line."""
    d = line.direction
    return _result("direction_along", abs(np.cos(angle) * d[1] - np.sin(angle) * d[0]), tol)

"""
Model fitting for sampled loci and line families: points, lines, circles, conics, parabolas,
common points of pencils and envelopes of line and conic families.
"""

import logging
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.spatial.distance import pdist

from src.structures.common import DegenerateError, FitError, GeometryError
from src.structures.conics import Conic, conic_from_coefficients, intersect_conics, parabola_elements
from src.structures.fit_report import FitReport
from src.structures.geom import HLine, HPoint, least_squares_meet
from src.structures.geometry_types import ConicKind, LocusModel

logger = logging.getLogger("LocusFitter")

_CONIC_MODELS = {
    ConicKind.ELLIPSE: LocusModel.ELLIPSE,
    ConicKind.PARABOLA: LocusModel.PARABOLA,
    ConicKind.HYPERBOLA: LocusModel.HYPERBOLA,
}


def _as_points(points) -> np.ndarray:
    if len(points) and isinstance(points[0], HPoint):
        return np.array([p.xy for p in points])
    return np.asarray(points, dtype=float).reshape(-1, 2)


def _normalizing_transform(xy: np.ndarray) -> np.ndarray:
    """Similarity moving the centroid to the origin with mean distance sqrt(2)."""
    centroid = xy.mean(axis=0)
    spread = np.mean(np.linalg.norm(xy - centroid, axis=1))
    scale = np.sqrt(2.0) / spread if spread > 0 else 1.0
    return np.array(
        [
            [scale, 0.0, -scale * centroid[0]],
            [0.0, scale, -scale * centroid[1]],
            [0.0, 0.0, 1.0],
        ]
    )


def sampson_residuals(conic: Conic, xy: np.ndarray) -> np.ndarray:
    homogeneous = np.column_stack([xy, np.ones(len(xy))])
    values = np.einsum("ij,jk,ik->i", homogeneous, conic.M, homogeneous)
    gradients = 2.0 * (homogeneous @ conic.M)[:, :2]
    return np.abs(values) / np.linalg.norm(gradients, axis=1)


def conic_params(conic: Conic) -> dict:
    """Derived description of a fitted conic for reports."""
    params = {"matrix": conic.M, "kind": conic.kind.value}
    if conic.kind == ConicKind.ELLIPSE:
        alpha, beta, theta = conic.semi_axes_and_angle()
        params.update(
            center=conic.center().xy,
            semi_axes=[alpha, beta],
            angle=theta,
            axis_ratio=beta / alpha,
            foci=[f.xy for f in conic.foci()],
        )
    elif conic.kind == ConicKind.PARABOLA:
        elements = parabola_elements(conic)
        params.update(
            focus=elements.focus.xy,
            vertex=elements.vertex.xy,
            directrix=elements.directrix.coords,
            axis=elements.axis.coords,
            focal_length=elements.focal_length,
        )
    return params


def _central_differences(
    members: np.ndarray, t: Optional[Sequence[float]], closed: bool, gap_factor: float
) -> Iterator[Tuple[int, Optional[np.ndarray], float]]:
    """
    Three-point derivative of every member of an ordered family on a possibly uneven grid, with
    the neighbours sign-aligned to the member. Open families skip their ends; members next to a
    gap wider than gap_factor times the median step yield None.

    Yields:
        (index, derivative or None, mean step)
    """
    n = len(members)
    t = np.arange(n, dtype=float) if t is None else np.asarray(t, dtype=float)
    median_step = float(np.median(np.abs(np.diff(t))))
    max_step = gap_factor * median_step
    flat = members.reshape(n, -1)
    for i in range(n):
        if not closed and i in (0, n - 1):
            continue
        prev, nxt = (i - 1) % n, (i + 1) % n
        h1 = t[i] - t[prev] if i > 0 else median_step
        h2 = t[nxt] - t[i] if i < n - 1 else median_step
        if not (0.0 < h1 <= max_step and 0.0 < h2 <= max_step):
            yield i, None, 0.0
            continue
        before = members[prev] * np.sign(flat[prev] @ flat[i])
        after = members[nxt] * np.sign(flat[nxt] @ flat[i])
        derivative = (
            -h2 / (h1 * (h1 + h2)) * before
            + (h2 - h1) / (h1 * h2) * members[i]
            + h1 / (h2 * (h1 + h2)) * after
        )
        yield i, derivative, 0.5 * (h1 + h2)


class LocusFitter:
    """
    Fits locus models and accepts the first rung of the point -> line -> circle -> conic ladder
    whose residual is under its threshold.

    Attributes:
        point_tol (float): diameter threshold for a stationary locus
        curve_tol (float): rms threshold for line, circle and conic models
    """

    def __init__(self, point_tol: float = 1e-7, curve_tol: float = 1e-7):
        self.point_tol = point_tol
        self.curve_tol = curve_tol

    def fit_point(self, points) -> FitReport:
        xy = _as_points(points)
        if len(xy) < 1:
            raise FitError("point fit needs at least one sample")
        center = xy.mean(axis=0)
        diameter = float(np.max(pdist(xy))) if len(xy) > 1 else 0.0
        residuals = np.linalg.norm(xy - center, axis=1)
        return FitReport.from_residuals(
            LocusModel.POINT,
            {"point": center, "diameter": diameter},
            residuals,
            shape=HPoint.from_array(center),
        )

    def fit_line(self, points) -> FitReport:
        """
        Total-least-squares line: the normal is the least-variance direction of the scatter.
        """
        xy = _as_points(points)
        if len(xy) < 3:
            raise FitError(f"line fit needs at least 3 samples, got {len(xy)}")
        centroid = xy.mean(axis=0)
        centered = xy - centroid
        _, eigvecs = np.linalg.eigh(centered.T @ centered)
        normal = eigvecs[:, 0]
        line = HLine(normal[0], normal[1], -float(normal @ centroid))
        residuals = centered @ normal
        return FitReport.from_residuals(
            LocusModel.LINE,
            {"line": line.coords, "point": centroid, "direction": line.direction},
            residuals,
            shape=line,
        )

    def fit_circle(self, points) -> FitReport:
        """
        Algebraic circle fit x^2 + y^2 + D x + E y + G = 0 on centered data, geometric residuals.
        """
        xy = _as_points(points)
        if len(xy) < 4:
            raise FitError(f"circle fit needs at least 4 samples, got {len(xy)}")
        centroid = xy.mean(axis=0)
        centered = xy - centroid
        design = np.column_stack([centered, np.ones(len(xy))])
        rhs = -np.sum(centered**2, axis=1)
        solution, _, rank, _ = np.linalg.lstsq(design, rhs, rcond=None)
        if rank < 3:
            return FitReport.undefined(len(xy), "collinear samples")
        D, E, G = solution
        local_center = -0.5 * np.array([D, E])
        radius_sq = float(local_center @ local_center - G)
        if radius_sq <= 0:
            return FitReport.undefined(len(xy), "imaginary circle")
        radius = np.sqrt(radius_sq)
        center = centroid + local_center
        residuals = np.linalg.norm(xy - center, axis=1) - radius
        return FitReport.from_residuals(
            LocusModel.CIRCLE,
            {"center": center, "radius": radius},
            residuals,
            shape=(HPoint.from_array(center), radius),
        )

    def fit_conic(self, points) -> FitReport:
        """
        General conic: smallest right singular vector of the [x^2, xy, y^2, x, y, 1] design
        matrix on normalized data, with Sampson residuals in the original frame.
        """
        xy = _as_points(points)
        if len(xy) < 6:
            raise FitError(f"conic fit needs at least 6 samples, got {len(xy)}")
        H = _normalizing_transform(xy)
        q = xy @ H[:2, :2].T + H[:2, 2]
        x, y = q[:, 0], q[:, 1]
        design = np.column_stack([x * x, x * y, y * y, x, y, np.ones(len(q))])
        _, singular, vt = np.linalg.svd(design, full_matrices=False)
        if singular[-2] <= 1e-10 * singular[0]:
            return FitReport.undefined(len(xy), "rank-deficient design")
        try:
            conic = Conic(H.T @ conic_from_coefficients(*vt[-1]).M @ H)
        except DegenerateError:
            return FitReport.undefined(len(xy), "degenerate conic")
        if conic.kind == ConicKind.DEGENERATE:
            return FitReport.undefined(len(xy), "degenerate conic")
        residuals = sampson_residuals(conic, xy)
        return FitReport.from_residuals(
            _CONIC_MODELS[conic.kind], conic_params(conic), residuals, shape=conic
        )

    def fit_parabola(self, points) -> FitReport:
        """
        Exact-parabola fit: for an axis angle theta the samples obey s = A r^2 + B r + C in the
        axis frame, solved linearly; theta is refined by a bounded search around the axis of
        the general conic fit.
        """
        xy = _as_points(points)
        if len(xy) < 5:
            raise FitError(f"parabola fit needs at least 5 samples, got {len(xy)}")
        H = _normalizing_transform(xy)
        q = xy @ H[:2, :2].T + H[:2, 2]

        x, y = q[:, 0], q[:, 1]
        design = np.column_stack([x * x, x * y, y * y, x, y, np.ones(len(q))])
        _, _, vt = np.linalg.svd(design, full_matrices=False)
        a, b, c = vt[-1][:3]
        eigvals, eigvecs = np.linalg.eigh(np.array([[a, b / 2], [b / 2, c]]))
        axis = eigvecs[:, int(np.argmin(np.abs(eigvals)))]
        theta0 = float(np.arctan2(axis[1], axis[0]))

        def solve(theta: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
            u = np.array([np.cos(theta), np.sin(theta)])
            v = np.array([-u[1], u[0]])
            r, s = q @ v, q @ u
            coeffs, *_ = np.linalg.lstsq(np.column_stack([r * r, r, np.ones(len(r))]), s, rcond=None)
            algebraic = s - (coeffs[0] * r * r + coeffs[1] * r + coeffs[2])
            sampson = algebraic / np.sqrt(1.0 + (2.0 * coeffs[0] * r + coeffs[1]) ** 2)
            return coeffs, sampson, u, v

        result = minimize_scalar(
            lambda theta: float(np.sum(solve(theta)[1] ** 2)),
            bounds=(theta0 - 0.2, theta0 + 0.2),
            method="bounded",
            options={"xatol": 1e-12},
        )
        (A, B, C), _, u, v = solve(float(result.x))
        if abs(A) <= 1e-12:
            return FitReport.undefined(len(xy), "collinear samples")

        linear = B * v - u
        local = np.zeros((3, 3))
        local[:2, :2] = A * np.outer(v, v)
        local[:2, 2] = local[2, :2] = 0.5 * linear
        local[2, 2] = C
        conic = Conic(H.T @ local @ H)
        if conic.kind != ConicKind.PARABOLA:
            return FitReport.undefined(len(xy), f"constrained fit classified as {conic.kind.value}")
        residuals = sampson_residuals(conic, xy)
        return FitReport.from_residuals(
            LocusModel.PARABOLA, conic_params(conic), residuals, shape=conic
        )

    def common_point(self, lines: Sequence[HLine]) -> FitReport:
        """Least-squares common point of a pencil; residuals are point-line distances."""
        finite = [line for line in lines if not line.is_infinite]
        if len(finite) < 3:
            raise FitError(f"common point needs at least 3 finite lines, got {len(finite)}")
        try:
            point, _, condition = least_squares_meet(finite)
        except DegenerateError:
            return FitReport.undefined(len(finite), "near-parallel pencil")
        residuals = np.array([line.residual(point) for line in finite])
        return FitReport.from_residuals(
            LocusModel.POINT,
            {"point": point.xy, "condition": condition},
            residuals,
            dropped=len(lines) - len(finite),
            shape=point,
        )

    def envelope_points(
        self,
        lines: Sequence[HLine],
        t: Optional[Sequence[float]] = None,
        closed: bool = False,
        parallel_tol: float = 1e-9,
        gap_factor: float = 1.5,
        max_radius: Optional[float] = None,
    ) -> Tuple[np.ndarray, int]:
        """
        Characteristic points of a line family ordered by its parameter.

        Each member L_i is met with its derivative, estimated by the three-point difference
        over L_i-1, L_i, L_i+1 on the (possibly uneven) parameter grid. The point lies on L_i
        and its offset along L_i is second order in the step, so its distance to the envelope
        is fourth order.

        Args:
            lines (Sequence[HLine]): family members ordered by t
            t (Sequence[float]): parameters of the members; members next to a gap wider than
                gap_factor times the median step are skipped
            closed (bool): the family wraps around, the first and last members are neighbours
            parallel_tol (float): turn of the normal per step below which a member counts as stationary
            gap_factor (float): gap detection factor
            max_radius (float): drop characteristic points farther than this from the origin
        Returns:
            points (np.ndarray): characteristic points, one per usable member
            dropped (int): members skipped as stationary, far away or next to a gap
        """
        if len(lines) < 8:
            raise FitError(f"envelope needs at least 8 lines, got {len(lines)}")
        coords = np.array([line.coords for line in lines], dtype=float)

        points, dropped = [], 0
        for i, dL, step in _central_differences(coords, t, closed, gap_factor):
            if dL is None:
                dropped += 1
                continue
            p = np.cross(coords[i], dL)
            if abs(p[2]) * step <= parallel_tol:
                dropped += 1
                continue
            xy = p[:2] / p[2]
            if max_radius is not None and np.linalg.norm(xy) > max_radius:
                dropped += 1
                continue
            points.append(xy)

        if not points:
            raise FitError("every member of the line family is stationary")
        if dropped:
            logger.debug(f"envelope dropped {dropped} of {len(lines)} lines")
        return np.array(points), dropped

    def conic_envelope_points(
        self,
        conics: Sequence[Conic],
        t: Optional[Sequence[float]] = None,
        closed: bool = False,
        stationary_tol: float = 1e-9,
        gap_factor: float = 1.5,
        max_radius: Optional[float] = None,
    ) -> Tuple[np.ndarray, int]:
        """
        Characteristic points of a conic family ordered by its parameter: the real meets of each
        member C_i with its three-point derivative dC_i. Points common to the whole family (fixed
        points, touchpoints of common tangents) are characteristic too; callers filter them.

        Returns:
            points (np.ndarray): characteristic points, up to four per member
            dropped (int): members skipped as stationary, far away, next to a gap or without a real meet
        """
        if len(conics) < 8:
            raise FitError(f"envelope needs at least 8 conics, got {len(conics)}")
        matrices = np.array([conic.M for conic in conics], dtype=float)

        points, dropped = [], 0
        for i, dM, step in _central_differences(matrices, t, closed, gap_factor):
            if dM is None or np.linalg.norm(dM) * step <= stationary_tol:
                dropped += 1
                continue
            try:
                found = [p.xy for p in intersect_conics(conics[i], dM)]
            except GeometryError:
                found = []
            found = [xy for xy in found if max_radius is None or np.linalg.norm(xy) <= max_radius]
            if not found:
                dropped += 1
                continue
            points += found

        if not points:
            raise FitError("no member of the conic family meets its derivative")
        if dropped:
            logger.debug(f"conic envelope dropped {dropped} of {len(conics)} conics")
        return np.array(points).reshape(-1, 2), dropped

    def classify_locus(self, points) -> Tuple[FitReport, List[FitReport]]:
        """
        Runs the model ladder and returns the accepted report with every candidate tried.
        """
        xy = _as_points(points)
        candidates = [self.fit_point(xy)]
        if candidates[0].params["diameter"] < self.point_tol:
            return candidates[0], candidates

        for fit, min_samples in ((self.fit_line, 3), (self.fit_circle, 4), (self.fit_conic, 6)):
            if len(xy) < min_samples:
                break
            report = fit(xy)
            candidates.append(report)
            if report.accepted(self.curve_tol):
                return report, candidates

        logger.debug(
            "no locus model accepted: "
            + ", ".join(f"{c.model.value}={c.rms_residual:.2e}" for c in candidates)
        )
        return FitReport.undefined(len(xy), "no model under threshold"), candidates

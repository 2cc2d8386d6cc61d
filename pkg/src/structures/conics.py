"""
Conics as symmetric 3x3 coefficient matrices (point conics x^T M x = 0).

Matrices are stored with unit Frobenius norm and the sign of the first nonzero entry of the
upper triangle made positive, so two descriptions of the same conic compare equal entrywise.
"""

from dataclasses import dataclass
from typing import List, Tuple, Union

import numpy as np

from src.structures.common import EPS, IDEAL_EPS, DegenerateError, GeometryError
from src.structures.geom import HLine, HPoint, join
from src.structures.geometry_types import ConicKind

_UPPER = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]


def _normalize_matrix(M: np.ndarray) -> np.ndarray:
    M = 0.5 * (M + M.T)
    norm = np.linalg.norm(M)
    if norm == 0.0 or not np.all(np.isfinite(M)):
        raise DegenerateError("conic with zero or non-finite coefficients")
    M = M / norm
    for i, j in _UPPER:
        if abs(M[i, j]) > IDEAL_EPS:
            if M[i, j] < 0:
                M = -M
            break
    return M


def adjugate(M: np.ndarray) -> np.ndarray:
    c0, c1, c2 = M[:, 0], M[:, 1], M[:, 2]
    return np.array([np.cross(c1, c2), np.cross(c2, c0), np.cross(c0, c1)])


def _classify_matrix(M: np.ndarray, tol: float) -> ConicKind:
    if abs(np.linalg.det(M)) <= tol:
        return ConicKind.DEGENERATE
    delta = M[0, 0] * M[1, 1] - M[0, 1] ** 2
    if delta > tol:
        return ConicKind.ELLIPSE
    if delta < -tol:
        return ConicKind.HYPERBOLA
    return ConicKind.PARABOLA


class Conic:
    """
    A conic section of the real plane.

    Attributes:
        M (np.ndarray): normalized symmetric coefficient matrix
        kind (ConicKind): classification at the default tolerance
    """

    __slots__ = ("M", "kind")

    def __init__(self, M: np.ndarray):
        self.M = _normalize_matrix(np.asarray(M, dtype=float))
        self.kind = _classify_matrix(self.M, EPS)

    @property
    def quadratic_block(self) -> np.ndarray:
        return self.M[:2, :2]

    @property
    def delta(self) -> float:
        """Determinant of the quadratic block: positive ellipse, zero parabola, negative hyperbola."""
        return float(self.M[0, 0] * self.M[1, 1] - self.M[0, 1] ** 2)

    def value(self, p: HPoint) -> float:
        return float(p.coords @ self.M @ p.coords)

    def gradient(self, p: HPoint) -> np.ndarray:
        return 2.0 * (self.M @ p.coords)[:2]

    def sampson_distance(self, p: HPoint) -> float:
        """First-order distance |f(p)| / |grad f(p)| of a finite point to the conic."""
        g = np.linalg.norm(self.gradient(p))
        if g == 0.0:
            return float("inf")
        return abs(self.value(p)) / g

    def contains(self, p: HPoint, tol: float = EPS) -> bool:
        return abs(self.value(p)) <= tol

    def transformed(self, H: np.ndarray) -> "Conic":
        """Image of the conic under the point map p -> H p."""
        H_inv = np.linalg.inv(H)
        return Conic(H_inv.T @ self.M @ H_inv)

    def center(self) -> HPoint:
        A = self.quadratic_block
        if abs(np.linalg.det(A)) <= EPS:
            raise GeometryError("parabola has no finite center")
        return HPoint.from_array(np.linalg.solve(A, -self.M[:2, 2]))

    def semi_axes_and_angle(self) -> Tuple[float, float, float]:
        """
        Semi-axes (major first) and the major-axis angle in [0, pi) of an ellipse.

        Returns:
            (alpha, beta, theta) (Tuple[float, float, float])
        """
        if self.kind != ConicKind.ELLIPSE:
            raise GeometryError(f"semi-axes are defined for ellipses, not {self.kind.value}")
        c = self.center().xy
        value_at_center = float(self.M[2, 2] + self.M[:2, 2] @ c)
        eigvals, eigvecs = np.linalg.eigh(self.quadratic_block)
        semi = np.sqrt(-value_at_center / eigvals)
        major = int(np.argmax(semi))
        if abs(eigvals[0] - eigvals[1]) <= 1e-12 * np.max(np.abs(eigvals)):
            theta = 0.0
        else:
            vec = eigvecs[:, major]
            theta = float(np.arctan2(vec[1], vec[0]) % np.pi)
        return float(semi[major]), float(semi[1 - major]), theta

    def point_at(self, t: float) -> HPoint:
        """Point center + alpha*cos(t)*e1 + beta*sin(t)*e2 of an ellipse."""
        alpha, beta, theta = self.semi_axes_and_angle()
        c = self.center().xy
        e1 = np.array([np.cos(theta), np.sin(theta)])
        e2 = np.array([-np.sin(theta), np.cos(theta)])
        return HPoint.from_array(c + alpha * np.cos(t) * e1 + beta * np.sin(t) * e2)

    def foci(self) -> Tuple[HPoint, HPoint]:
        """Foci of an ellipse or hyperbola, on the axis with the largest signed squared semi-axis."""
        if self.kind not in (ConicKind.ELLIPSE, ConicKind.HYPERBOLA):
            raise GeometryError(f"foci are defined for central conics, not {self.kind.value}")
        c = self.center().xy
        value_at_center = float(self.M[2, 2] + self.M[:2, 2] @ c)
        eigvals, eigvecs = np.linalg.eigh(self.quadratic_block)
        semi_sq = -value_at_center / eigvals
        focal_axis = int(np.argmax(semi_sq))
        focal = np.sqrt(max(semi_sq[focal_axis] - semi_sq[1 - focal_axis], 0.0))
        e1 = eigvecs[:, focal_axis]
        return HPoint.from_array(c - focal * e1), HPoint.from_array(c + focal * e1)

    def __repr__(self):
        return f"Conic({self.kind.value}, M={np.array2string(self.M, precision=6)})"


@dataclass(frozen=True)
class ParabolaElements:
    focus: HPoint
    vertex: HPoint
    directrix: HLine
    axis: HLine
    focal_length: float

    @property
    def directrix_foot(self) -> HPoint:
        """Foot of the focus on the directrix (reflection of the focus about the vertex)."""
        return HPoint.from_array(2.0 * self.vertex.xy - self.focus.xy)

    def point_at(self, s: float) -> HPoint:
        """Point of the parabola at signed offset s from the axis."""
        u = self.focus.xy - self.vertex.xy
        u = u / np.linalg.norm(u)
        v = np.array([-u[1], u[0]])
        return HPoint.from_array(self.vertex.xy + s * v + s * s / (4.0 * self.focal_length) * u)


def classify_conic(conic: Conic, tol: float = EPS) -> ConicKind:
    if tol == EPS:
        return conic.kind
    return _classify_matrix(conic.M, tol)


def conic_from_coefficients(a: float, b: float, c: float, d: float, e: float, f: float) -> Conic:
    """Conic a*x^2 + b*x*y + c*y^2 + d*x + e*y + f = 0."""
    return Conic(
        np.array(
            [
                [a, b / 2.0, d / 2.0],
                [b / 2.0, c, e / 2.0],
                [d / 2.0, e / 2.0, f],
            ]
        )
    )


def conic_from_center_axes(center: HPoint, semiaxes: Tuple[float, float], angle: float) -> Conic:
    alpha, beta = semiaxes
    if alpha <= 0 or beta <= 0:
        raise GeometryError(f"semi-axes must be positive, got {semiaxes}")
    cos_t, sin_t = np.cos(angle), np.sin(angle)
    local_to_world = np.array(
        [
            [cos_t, -sin_t, center.x],
            [sin_t, cos_t, center.y],
            [0.0, 0.0, 1.0],
        ]
    )
    world_to_local = np.linalg.inv(local_to_world)
    local = np.diag([1.0 / alpha**2, 1.0 / beta**2, -1.0])
    return Conic(world_to_local.T @ local @ world_to_local)


def circle(center: HPoint, radius: float) -> Conic:
    return conic_from_center_axes(center, (radius, radius), 0.0)


def parabola_elements(conic: Conic, tol: float = EPS) -> ParabolaElements:
    """
    Focus, vertex, directrix and axis of a parabola via rotation to principal axes.

    Args:
        conic (Conic): a non-degenerate parabola
        tol (float): classification tolerance
    Returns:
        elements (ParabolaElements)
    """
    kind = classify_conic(conic, tol)
    if kind == ConicKind.DEGENERATE:
        raise DegenerateError("degenerate conic has no parabola elements")
    if kind != ConicKind.PARABOLA:
        raise GeometryError(f"expected a parabola, got {kind.value}")

    M = conic.M
    eigvals, eigvecs = np.linalg.eigh(M[:2, :2])
    kernel = int(np.argmin(np.abs(eigvals)))
    u = eigvecs[:, kernel]
    v = eigvecs[:, 1 - kernel]
    lam = eigvals[1 - kernel]
    g = M[:2, 2]
    gu, gv = float(g @ u), float(g @ v)
    if abs(gu) <= IDEAL_EPS:
        raise DegenerateError("parabola degenerates to parallel lines")

    # in the frame p = s*u + r*v the curve reads s - s0 = K (r - r0)^2
    r0 = -gv / lam
    s0 = (gv**2 / lam - M[2, 2]) / (2.0 * gu)
    K = -lam / (2.0 * gu)
    focal = 1.0 / (4.0 * K)

    vertex = s0 * u + r0 * v
    focus = vertex + focal * u
    directrix = HLine(u[0], u[1], -(s0 - focal))
    axis = HLine(v[0], v[1], -r0)
    return ParabolaElements(
        focus=HPoint.from_array(focus),
        vertex=HPoint.from_array(vertex),
        directrix=directrix,
        axis=axis,
        focal_length=abs(focal),
    )


def pole_polar(conic: Conic, x: Union[HPoint, HLine]) -> Union[HLine, HPoint]:
    """Polar line M*P of a point, or pole M^-1*L of a line."""
    if conic.kind == ConicKind.DEGENERATE:
        raise DegenerateError("pole/polar needs a non-degenerate conic")
    if isinstance(x, HPoint):
        return HLine.from_array(conic.M @ x.coords)
    return HPoint.from_array(np.linalg.solve(conic.M, x.coords))


def line_discriminant(conic: Conic, line: HLine) -> float:
    """
    Discriminant of the conic restricted to the line, -L^T adj(M) L on normalized inputs.

    Positive for a secant, zero for a tangent, negative for a line missing the conic.
    """
    return float(-(line.coords @ adjugate(conic.M) @ line.coords))


def _line_frame(line: HLine) -> Tuple[np.ndarray, np.ndarray]:
    if line.is_infinite:
        return np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0])
    l, m, n = line.coords
    return np.array([-n * l, -n * m, 1.0]), np.array([-m, l, 0.0])


def intersect_conic_line(conic: Conic, line: HLine, tol: float = EPS) -> List[HPoint]:
    """
    Real intersections of a conic and a line; a tangency yields one (double) point.
    """
    P0, D = _line_frame(line)
    M = conic.M
    a = float(D @ M @ D)
    b = float(P0 @ M @ D)
    c = float(P0 @ M @ P0)
    if abs(a) <= IDEAL_EPS:
        if abs(b) <= IDEAL_EPS:
            return []
        return [HPoint.from_array(P0 - c / (2.0 * b) * D)]
    disc = b * b - a * c
    if disc < -tol:
        return []
    if disc <= tol:
        return [HPoint.from_array(P0 - b / a * D)]
    q = -(b + np.copysign(np.sqrt(disc), b))
    roots = sorted([q / a, c / q])
    return [HPoint.from_array(P0 + lam * D) for lam in roots]


def _cross_matrix(p: np.ndarray) -> np.ndarray:
    return np.array([[0.0, p[2], -p[1]], [-p[2], 0.0, p[0]], [p[1], -p[0], 0.0]])


def split_degenerate_conic(M: np.ndarray, tol: float = EPS) -> List[HLine]:
    """
    Lines of a degenerate conic matrix: two lines for a real pair, one for a double line, none
    for a complex pair. The adjugate of a line pair is minus the outer square of their meet p;
    adding the cross matrix of p leaves a rank-one matrix whose row and column are the lines.
    """
    M = np.asarray(M, dtype=float)
    M = M / np.linalg.norm(M)
    B = adjugate(M)
    i = int(np.argmax(np.abs(np.diag(B))))
    if abs(B[i, i]) <= tol:
        return [HLine.from_array(M[int(np.argmax(np.linalg.norm(M, axis=1)))])]
    if B[i, i] > 0:
        return []
    C = M + _cross_matrix(B[:, i] / np.sqrt(-B[i, i]))
    r, c = np.unravel_index(int(np.argmax(np.abs(C))), C.shape)
    return [HLine.from_array(C[r, :]), HLine.from_array(C[:, c])]


def intersect_conics(first: Conic, second: Union[Conic, np.ndarray], tol: float = EPS) -> List[HPoint]:
    """
    Real finite intersections of two conics: the lines of a real degenerate member
    first + lam * second of their pencil, each met with first.

    Args:
        first (Conic): non-degenerate conic
        second (Conic or np.ndarray): second conic or any symmetric matrix
    Returns:
        points (List[HPoint]): up to four points, tangencies counted once
    """
    A = first.M
    B = second.M if isinstance(second, Conic) else np.asarray(second, dtype=float)
    B = B / np.linalg.norm(B)
    # det(A + lam B) is a cubic in lam, recovered exactly from four values
    lams = np.array([-1.0, 0.0, 1.0, 2.0])
    cubic = np.polyfit(lams, [np.linalg.det(A + lam * B) for lam in lams], 3)
    members = [B] if abs(cubic[0]) <= tol else []
    members += [
        A + float(r.real) * B for r in sorted(np.roots(cubic), key=abs) if abs(r.imag) <= 1e-7 * max(1.0, abs(r))
    ]

    for member in members:
        lines = split_degenerate_conic(member, tol)
        if len(lines) != 2:
            continue
        points: List[HPoint] = []
        for line in lines:
            if line.is_infinite:
                continue
            for p in intersect_conic_line(first, line, tol):
                if all(p.distance(q) > np.sqrt(tol) for q in points):
                    points.append(p)
        return points
    return []


def second_intersection(conic: Conic, p: HPoint, direction: np.ndarray) -> HPoint:
    """The other intersection of the conic with the line through p (on the conic) along direction."""
    D = np.array([direction[0], direction[1], 0.0])
    a = float(D @ conic.M @ D)
    if abs(a) <= IDEAL_EPS:
        raise DegenerateError("chord direction is asymptotic")
    lam = -2.0 * float(p.coords @ conic.M @ D) / a
    return HPoint.from_array(p.xy + lam * D[:2])


def touchpoints_from_point(conic: Conic, p: HPoint, tol: float = EPS) -> List[HPoint]:
    if conic.kind == ConicKind.DEGENERATE:
        raise DegenerateError("tangents need a non-degenerate conic")
    if conic.contains(p, tol):
        return [p]
    return intersect_conic_line(conic, pole_polar(conic, p), tol)


def tangents_from_point(conic: Conic, p: HPoint, tol: float = EPS) -> List[HLine]:
    """
    Tangent lines from p to the conic, found by meeting the polar of p with the conic.
    """
    if conic.kind != ConicKind.DEGENERATE and conic.contains(p, tol):
        return [pole_polar(conic, p)]
    return [join(p, t) for t in touchpoints_from_point(conic, p, tol)]


def parabola_from_focus_directrix(focus: HPoint, directrix: HLine) -> Conic:
    """The locus |PF| = dist(P, D) as a conic matrix."""
    if not focus.is_finite or directrix.is_infinite:
        raise GeometryError("parabola needs a finite focus and a finite directrix")
    if abs(directrix.residual(focus)) <= EPS:
        raise DegenerateError("focus lies on the directrix")
    l, m, n = directrix.coords
    fx, fy = focus.xy
    return Conic(
        np.array(
            [
                [1.0 - l * l, -l * m, -fx - l * n],
                [-l * m, 1.0 - m * m, -fy - m * n],
                [-fx - l * n, -fy - m * n, fx * fx + fy * fy - n * n],
            ]
        )
    )

"""
Homogeneous points and lines of the real projective plane, plus the handful of Euclidean
helpers (reflection, perpendicular foot, homothety) the constructions are built from.

Points are stored with w = 1 when finite and with a unit (x, y) part when ideal; lines are
stored with l^2 + m^2 = 1 unless they are the line at infinity (0, 0, 1).
"""

from typing import Iterable, Tuple, Union

import numpy as np

from src.structures.common import EPS, IDEAL_EPS, DegenerateError, GeometryError


def _normalize_point(v: np.ndarray) -> np.ndarray:
    norm = np.linalg.norm(v)
    if norm == 0.0 or not np.all(np.isfinite(v)):
        raise DegenerateError("point with zero or non-finite homogeneous coordinates")
    if abs(v[2]) > IDEAL_EPS * norm:
        return np.array([v[0] / v[2], v[1] / v[2], 1.0])
    xy = v[:2] / np.linalg.norm(v[:2])
    # canonical sign for points at infinity
    if xy[0] < -IDEAL_EPS or (abs(xy[0]) <= IDEAL_EPS and xy[1] < 0):
        xy = -xy
    return np.array([xy[0], xy[1], 0.0])


def _normalize_line(v: np.ndarray) -> np.ndarray:
    norm = np.linalg.norm(v)
    if norm == 0.0 or not np.all(np.isfinite(v)):
        raise DegenerateError("line with zero or non-finite homogeneous coordinates")
    normal = np.linalg.norm(v[:2])
    if normal <= IDEAL_EPS * norm:
        return np.array([0.0, 0.0, 1.0])
    return v / normal


class HPoint:
    """
    A point of the real projective plane.

    Attributes:
        coords (np.ndarray): normalized homogeneous triple (x, y, w)
    """

    __slots__ = ("coords",)

    def __init__(self, x: float, y: float, w: float = 1.0):
        self.coords = _normalize_point(np.array([x, y, w], dtype=float))

    @classmethod
    def from_array(cls, v: Iterable[float]) -> "HPoint":
        v = np.asarray(v, dtype=float)
        if v.shape == (2,):
            return cls(v[0], v[1], 1.0)
        return cls(v[0], v[1], v[2])

    @classmethod
    def from_complex(cls, z: complex) -> "HPoint":
        return cls(z.real, z.imag, 1.0)

    @property
    def is_finite(self) -> bool:
        return self.coords[2] != 0.0

    @property
    def x(self) -> float:
        return float(self.coords[0])

    @property
    def y(self) -> float:
        return float(self.coords[1])

    @property
    def xy(self) -> np.ndarray:
        if not self.is_finite:
            raise GeometryError("ideal point has no Cartesian coordinates")
        return self.coords[:2].copy()

    def to_complex(self) -> complex:
        return complex(self.coords[0], self.coords[1])

    def unit(self) -> np.ndarray:
        """Homogeneous coordinates scaled to unit Euclidean norm."""
        return self.coords / np.linalg.norm(self.coords)

    def distance(self, other: "HPoint") -> float:
        return float(np.linalg.norm(self.xy - other.xy))

    def is_close(self, other: "HPoint", tol: float = EPS) -> bool:
        if self.is_finite != other.is_finite:
            return False
        return bool(np.linalg.norm(self.coords - other.coords) <= tol)

    def __repr__(self):
        if self.is_finite:
            return f"HPoint({self.x:.12g}, {self.y:.12g})"
        return f"HPoint({self.x:.12g}, {self.y:.12g}, 0)"


class HLine:
    """
    A line l*x + m*y + n*w = 0 of the real projective plane.

    Attributes:
        coords (np.ndarray): normalized homogeneous triple (l, m, n)
    """

    __slots__ = ("coords",)

    def __init__(self, l: float, m: float, n: float):
        self.coords = _normalize_line(np.array([l, m, n], dtype=float))

    @classmethod
    def from_array(cls, v: Iterable[float]) -> "HLine":
        v = np.asarray(v, dtype=float)
        return cls(v[0], v[1], v[2])

    @classmethod
    def at_infinity(cls) -> "HLine":
        return cls(0.0, 0.0, 1.0)

    @property
    def is_infinite(self) -> bool:
        return self.coords[0] == 0.0 and self.coords[1] == 0.0

    @property
    def normal(self) -> np.ndarray:
        return self.coords[:2].copy()

    @property
    def direction(self) -> np.ndarray:
        return np.array([-self.coords[1], self.coords[0]])

    def residual(self, p: HPoint) -> float:
        """Signed incidence value; the Euclidean distance for finite p and finite lines."""
        return float(np.dot(self.coords, p.coords))

    def is_close(self, other: "HLine", tol: float = EPS) -> bool:
        # a line and its negation describe the same set
        return bool(
            min(
                np.linalg.norm(self.coords - other.coords),
                np.linalg.norm(self.coords + other.coords),
            )
            <= tol
        )

    def __repr__(self):
        return "HLine({:.12g}, {:.12g}, {:.12g})".format(*self.coords)


Element = Union[HPoint, HLine]


def join_meet(a: Element, b: Element) -> Element:
    """
    Joins two points into a line, or meets two lines in a point.

    Args:
        a (HPoint | HLine): first element
        b (HPoint | HLine): second element of the same kind
    Returns:
        (HLine | HPoint): the dual element through / on both inputs
    """
    if type(a) is not type(b):
        raise TypeError(f"join/meet needs two elements of the same kind, got {a!r}, {b!r}")
    ua = a.coords / np.linalg.norm(a.coords)
    ub = b.coords / np.linalg.norm(b.coords)
    v = np.cross(ua, ub)
    if np.linalg.norm(v) <= EPS:
        raise DegenerateError("degenerate join/meet")
    if isinstance(a, HPoint):
        return HLine.from_array(v)
    return HPoint.from_array(v)


def join(p: HPoint, q: HPoint) -> HLine:
    return join_meet(p, q)


def meet(l1: HLine, l2: HLine) -> HPoint:
    return join_meet(l1, l2)


def reflect(p: HPoint, mirror: Element) -> HPoint:
    """Point reflection 2*mirror - p, or the Euclidean mirror image across a line."""
    if not p.is_finite:
        raise GeometryError("cannot reflect an ideal point")
    if isinstance(mirror, HPoint):
        if not mirror.is_finite:
            raise GeometryError("cannot reflect about an ideal point")
        return HPoint.from_array(2.0 * mirror.xy - p.xy)
    if mirror.is_infinite:
        raise GeometryError("cannot reflect about the line at infinity")
    d = mirror.residual(p)
    return HPoint.from_array(p.xy - 2.0 * d * mirror.normal)


def foot_of_perpendicular(p: HPoint, line: HLine) -> HPoint:
    if not p.is_finite or line.is_infinite:
        raise GeometryError("perpendicular foot needs a finite point and a finite line")
    d = line.residual(p)
    return HPoint.from_array(p.xy - d * line.normal)


def midpoint(p: HPoint, q: HPoint) -> HPoint:
    return HPoint.from_array(0.5 * (p.xy + q.xy))


def homothety(center: HPoint, p: HPoint, ratio: float) -> HPoint:
    return HPoint.from_array(center.xy + ratio * (p.xy - center.xy))


def line_through(p: HPoint, direction: np.ndarray) -> HLine:
    """The line through finite p with the given direction vector."""
    normal = np.array([-direction[1], direction[0]], dtype=float)
    return HLine(normal[0], normal[1], -float(np.dot(normal, p.xy)))


def parallel_through(line: HLine, p: HPoint) -> HLine:
    return line_through(p, line.direction)


def signed_area(p: HPoint, q: HPoint, r: HPoint) -> float:
    u = q.xy - p.xy
    v = r.xy - p.xy
    return 0.5 * float(u[0] * v[1] - u[1] * v[0])


def least_squares_meet(lines: Iterable[HLine]) -> Tuple[HPoint, float, float]:
    """
    The point minimizing the sum of squared distances to finite lines.

    Args:
        lines (Iterable[HLine]): at least two non-parallel finite lines
    Returns:
        point (HPoint): least-squares common point
        max_residual (float): largest distance from the point to any input line
        condition (float): condition number of the 2x2 normal matrix
    """
    coords = np.array([l.coords for l in lines if not l.is_infinite])
    if len(coords) < 2:
        raise DegenerateError("least-squares meet needs two finite lines")
    normals = coords[:, :2]
    normal_matrix = normals.T @ normals
    condition = float(np.linalg.cond(normal_matrix))
    if not np.isfinite(condition) or condition > 1e12:
        raise DegenerateError("degenerate join/meet: near-parallel pencil")
    xy = np.linalg.solve(normal_matrix, -normals.T @ coords[:, 2])
    residuals = normals @ xy + coords[:, 2]
    return HPoint.from_array(xy), float(np.max(np.abs(residuals))), condition

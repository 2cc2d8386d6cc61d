"""
Reference triangle: coordinate systems, conjugations, the named centers and conics.

Barycentric and trilinear triples are homogeneous numpy arrays; the Cartesian image of a
barycentric triple [u, v, w] is (u*A + v*B + w*C) / (u + v + w), an ideal point when the sum
vanishes.
"""

from dataclasses import dataclass
from typing import Iterable, Tuple, Union

import numpy as np

from src.structures.common import (
    EPS,
    ConjugateUndefinedError,
    DegenerateError,
    GeometryError,
    UndefinedCenterError,
)
from src.structures.conics import Conic, circle, conic_from_center_axes, line_discriminant
from src.structures.geom import HLine, HPoint, foot_of_perpendicular, join, line_through
from src.structures.geometry_types import (
    CenterId,
    ConjugationKind,
    CoordinateSystem,
    NamedConic,
)

PointLike = Union[HPoint, Iterable[float]]


def _as_point(p: PointLike) -> HPoint:
    if isinstance(p, HPoint):
        return p
    return HPoint.from_array(p)


@dataclass(frozen=True)
class SimsonSteiner:
    """
    Simson line of a circumcircle point F and its double homothet about F (the Steiner line).

    Attributes:
        simson (HLine): line through the three pedal feet
        steiner (HLine): line through the reflections of F over the sidelines
        feet (Tuple[HPoint, HPoint, HPoint]): pedal feet on BC, CA, AB
        residual (float): distance of the third foot from the line through the other two
        degenerate (bool): F coincides with a vertex (two feet collapse onto it)
    """

    simson: HLine
    steiner: HLine
    feet: Tuple[HPoint, HPoint, HPoint]
    residual: float
    degenerate: bool


class Triangle:
    """
    A non-degenerate triangle ABC with sidelengths a = |BC|, b = |CA|, c = |AB|.

    Attributes:
        A, B, C (HPoint): finite vertices
        vertices (np.ndarray): 3x2 array of Cartesian vertex coordinates
        sidelengths (np.ndarray): (a, b, c)
    """

    def __init__(self, A: PointLike, B: PointLike, C: PointLike):
        self.A, self.B, self.C = _as_point(A), _as_point(B), _as_point(C)
        if not (self.A.is_finite and self.B.is_finite and self.C.is_finite):
            raise DegenerateError("degenerate triangle: ideal vertex")
        self.vertices = np.array([self.A.xy, self.B.xy, self.C.xy])
        u = self.vertices[1] - self.vertices[0]
        v = self.vertices[2] - self.vertices[0]
        self.twice_signed_area = float(u[0] * v[1] - u[1] * v[0])
        if abs(self.twice_signed_area) <= EPS:
            raise DegenerateError("degenerate triangle: collinear vertices")
        self.sidelengths = np.array(
            [
                np.linalg.norm(self.vertices[1] - self.vertices[2]),
                np.linalg.norm(self.vertices[2] - self.vertices[0]),
                np.linalg.norm(self.vertices[0] - self.vertices[1]),
            ]
        )
        self._frame = np.vstack([self.vertices.T, np.ones(3)])
        self._frame_inv = np.linalg.inv(self._frame)

    @property
    def points(self) -> Tuple[HPoint, HPoint, HPoint]:
        return self.A, self.B, self.C

    @property
    def area(self) -> float:
        return 0.5 * abs(self.twice_signed_area)

    @property
    def inradius(self) -> float:
        return 2.0 * self.area / float(np.sum(self.sidelengths))

    @property
    def circumradius(self) -> float:
        return float(np.prod(self.sidelengths)) / (4.0 * self.area)

    @property
    def brocard_angle(self) -> float:
        return float(np.arctan(4.0 * self.area / np.sum(self.sidelengths**2)))

    @property
    def centroid(self) -> HPoint:
        return HPoint.from_array(self.vertices.mean(axis=0))

    def sidelines(self) -> Tuple[HLine, HLine, HLine]:
        """Sidelines BC, CA, AB."""
        return join(self.B, self.C), join(self.C, self.A), join(self.A, self.B)

    def is_scalene(self, tol: float = 1e-6) -> bool:
        sq = self.sidelengths**2
        return bool(min(abs(sq[1] - sq[2]), abs(sq[2] - sq[0]), abs(sq[0] - sq[1])) > tol * sq.max())

    def medial(self) -> "Triangle":
        v = self.vertices
        return Triangle((v[1] + v[2]) / 2, (v[2] + v[0]) / 2, (v[0] + v[1]) / 2)

    def normalized(self) -> "Triangle":
        """Similar copy with the circumcenter at the origin and unit circumradius."""
        center = self.triangle_center(CenterId.X3).xy
        scale = 1.0 / self.circumradius
        return Triangle(*((self.vertices - center) * scale))

    # coordinate systems

    def to_barycentric(self, p: HPoint) -> np.ndarray:
        return self._frame_inv @ p.coords

    def from_barycentric(self, v: Iterable[float]) -> HPoint:
        return HPoint.from_array(self._frame @ np.asarray(v, dtype=float))

    def barycentric_line(self, line: HLine) -> np.ndarray:
        """Barycentric coefficients (p, q, r) of the line p*x + q*y + r*z = 0."""
        return self._frame.T @ line.coords

    def cartesian_line(self, coefficients: Iterable[float]) -> HLine:
        return HLine.from_array(self._frame_inv.T @ np.asarray(coefficients, dtype=float))

    def barycentric_conic(self, N: np.ndarray) -> Conic:
        """Cartesian conic of the barycentric conic x^T N x = 0."""
        return Conic(self._frame_inv.T @ N @ self._frame_inv)

    def conic_to_barycentric(self, conic: Conic) -> np.ndarray:
        return self._frame.T @ conic.M @ self._frame

    def coords_convert(
        self,
        v: Union[HPoint, Iterable[float]],
        from_system: Union[str, CoordinateSystem],
        to_system: Union[str, CoordinateSystem],
    ) -> Union[np.ndarray, HPoint]:
        """
        Converts homogeneous coordinates between trilinear, barycentric and Cartesian systems.

        Args:
            v (HPoint | Iterable[float]): the coordinates (an HPoint or (x, y) for Cartesian input)
            from_system (str | CoordinateSystem): system of v
            to_system (str | CoordinateSystem): target system
        Returns:
            (np.ndarray | HPoint): homogeneous triple, or an HPoint for Cartesian output
        """
        from_system = CoordinateSystem(from_system)
        to_system = CoordinateSystem(to_system)

        if from_system == CoordinateSystem.CARTESIAN:
            bary = self.to_barycentric(_as_point(v))
        else:
            v = np.asarray(v, dtype=float)
            if not np.any(v):
                raise GeometryError("zero coordinate triple")
            bary = v * self.sidelengths if from_system == CoordinateSystem.TRILINEAR else v

        if to_system == CoordinateSystem.CARTESIAN:
            return self.from_barycentric(bary)
        if to_system == CoordinateSystem.TRILINEAR:
            return bary / self.sidelengths
        return bary

    def conjugate(self, p: HPoint, kind: Union[str, ConjugationKind]) -> HPoint:
        """
        Isogonal (trilinear reciprocal) or isotomic (barycentric reciprocal) conjugate of p.
        """
        kind = ConjugationKind(kind)
        bary = self.to_barycentric(p)
        if np.min(np.abs(bary)) <= EPS * np.linalg.norm(bary):
            raise ConjugateUndefinedError("conjugate undefined")
        if kind == ConjugationKind.ISOTOMIC:
            return self.from_barycentric(1.0 / bary)
        return self.from_barycentric(self.sidelengths**2 / bary)

    # centers

    def _circumcenter(self) -> np.ndarray:
        (ax, ay), (bx, by), (cx, cy) = self.vertices
        d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
        a2, b2, c2 = ax * ax + ay * ay, bx * bx + by * by, cx * cx + cy * cy
        ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d
        uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d
        return np.array([ux, uy])

    def _side_square_differences(self) -> np.ndarray:
        a2, b2, c2 = self.sidelengths**2
        diffs = np.array([b2 - c2, c2 - a2, a2 - b2])
        if np.min(np.abs(diffs)) <= EPS * max(a2, b2, c2):
            raise UndefinedCenterError("undefined center for symmetric triangle")
        return diffs

    def triangle_center(self, center_id: Union[str, CenterId]) -> HPoint:
        center_id = CenterId(center_id)
        a, b, c = self.sidelengths
        a2, b2, c2 = self.sidelengths**2

        if center_id == CenterId.X1:
            return self.from_barycentric([a, b, c])
        if center_id == CenterId.X2:
            return self.centroid
        if center_id == CenterId.X3:
            return HPoint.from_array(self._circumcenter())
        if center_id == CenterId.X4:
            return HPoint.from_array(self.vertices.sum(axis=0) - 2.0 * self._circumcenter())
        if center_id == CenterId.X5:
            circumcenter = self._circumcenter()
            orthocenter = self.vertices.sum(axis=0) - 2.0 * circumcenter
            return HPoint.from_array(0.5 * (circumcenter + orthocenter))
        if center_id == CenterId.X39:
            return self.from_barycentric([a2 * (b2 + c2), b2 * (c2 + a2), c2 * (a2 + b2)])
        if center_id == CenterId.X99:
            return self.from_barycentric(1.0 / self._side_square_differences())
        if center_id == CenterId.X110:
            return self.from_barycentric(self.sidelengths**2 / self._side_square_differences())
        if center_id == CenterId.X140:
            x3 = self._circumcenter()
            x5 = self.triangle_center(CenterId.X5).xy
            return HPoint.from_array(0.5 * (x3 + x5))
        if center_id == CenterId.X1385:
            x1 = self.triangle_center(CenterId.X1).xy
            return HPoint.from_array(0.5 * (x1 + self._circumcenter()))
        if center_id == CenterId.OMEGA1:
            return self.from_barycentric([a * c / b, b * a / c, c * b / a])
        if center_id == CenterId.OMEGA2:
            return self.from_barycentric([a * b / c, b * c / a, c * a / b])
        raise ValueError(f"Undefined triangle center for: {center_id!r}")

    def gergonne_point(self) -> HPoint:
        s = 0.5 * float(np.sum(self.sidelengths))
        return self.from_barycentric(1.0 / (s - self.sidelengths))

    # lines

    def simson_steiner(self, F: HPoint, tol: float = EPS) -> SimsonSteiner:
        """
        Simson and Steiner lines of a point F on the circumcircle.

        Args:
            F (HPoint): point on the circumcircle
            tol (float): allowed circumcircle residual, relative to the circumradius when it exceeds 1
        Returns:
            lines (SimsonSteiner)
        """
        center = self._circumcenter()
        radius = self.circumradius
        if abs(np.linalg.norm(F.xy - center) - radius) > tol * max(1.0, radius):
            raise GeometryError(f"{F!r} is not on the circumcircle")

        sides = self.sidelines()
        feet = tuple(foot_of_perpendicular(F, side) for side in sides)
        degenerate = bool(np.min(np.linalg.norm(self.vertices - F.xy, axis=1)) <= EPS)

        pairs = [(0, 1, 2), (1, 2, 0), (2, 0, 1)]
        i, j, k = max(pairs, key=lambda ijk: feet[ijk[0]].distance(feet[ijk[1]]))
        simson = join(feet[i], feet[j])
        residual = abs(simson.residual(feet[k]))
        reflection = HPoint.from_array(2.0 * feet[i].xy - F.xy)
        steiner = line_through(reflection, simson.direction)
        return SimsonSteiner(
            simson=simson,
            steiner=steiner,
            feet=feet,
            residual=residual,
            degenerate=degenerate,
        )

    # conics

    def inconic_from_foci(self, f1: HPoint, f2: HPoint, tol: float = 1e-9) -> Conic:
        """
        Inellipse with the given foci: tangent to BC by construction, checked against CA and AB.

        The product of the focal distances to any tangent equals the squared semi-minor axis.
        """
        sides = self.sidelines()
        d1, d2 = sides[0].residual(f1), sides[0].residual(f2)
        if d1 * d2 <= 0:
            raise GeometryError("foci must lie on the same side of every sideline")
        semi_minor = np.sqrt(d1 * d2)
        offset = f2.xy - f1.xy
        focal = 0.5 * float(np.linalg.norm(offset))
        angle = float(np.arctan2(offset[1], offset[0])) if focal > EPS else 0.0
        center = HPoint.from_array(0.5 * (f1.xy + f2.xy))
        conic = conic_from_center_axes(center, (np.hypot(semi_minor, focal), semi_minor), angle)

        for side in sides[1:]:
            if abs(line_discriminant(conic, side)) > tol:
                raise GeometryError(f"foci {f1!r}, {f2!r} do not define an inconic")
        return conic

    def named_conic(self, name: Union[str, NamedConic]) -> Conic:
        name = NamedConic(name)
        if name == NamedConic.CIRCUMCIRCLE:
            return circle(HPoint.from_array(self._circumcenter()), self.circumradius)
        if name == NamedConic.STEINER_CIRCUMELLIPSE:
            return self.barycentric_conic(0.5 * (np.ones((3, 3)) - np.eye(3)))
        if name == NamedConic.STEINER_INELLIPSE:
            gx, gy = self.centroid.xy
            half = np.array([[0.5, 0.0, 0.5 * gx], [0.0, 0.5, 0.5 * gy], [0.0, 0.0, 1.0]])
            return self.named_conic(NamedConic.STEINER_CIRCUMELLIPSE).transformed(half)
        if name == NamedConic.MACBEATH_INELLIPSE:
            return self.inconic_from_foci(
                self.triangle_center(CenterId.X3), self.triangle_center(CenterId.X4)
            )
        if name == NamedConic.BROCARD_INELLIPSE:
            return self.inconic_from_foci(
                self.triangle_center(CenterId.OMEGA1), self.triangle_center(CenterId.OMEGA2)
            )
        if name == NamedConic.KIEPERT_PARABOLA:
            # the inparabola constructions build on this module
            from src.triconics import inparabola_from_focus

            return inparabola_from_focus(self, self.triangle_center(CenterId.X110))
        raise ValueError(f"Undefined named conic for: {name!r}")

    def __repr__(self):
        return "Triangle({}, {}, {})".format(*(tuple(np.round(v, 9)) for v in self.vertices))

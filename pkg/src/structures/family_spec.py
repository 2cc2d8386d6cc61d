"""
Definitions of the Poncelet triangle families: each spec knows its outer conic and caustic.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np

from src.structures.common import GeometryError
from src.structures.conics import Conic, circle, conic_from_center_axes
from src.structures.geom import HPoint
from src.structures.geometry_types import FamilyKind, NamedConic
from src.structures.triangle import Triangle

ORIGIN = HPoint(0.0, 0.0)


class FamilySpec(ABC):
    """
    A Poncelet pair definition. Subclasses validate their parameters on construction.
    """

    kind: FamilyKind

    @property
    def circle_inscribed(self) -> bool:
        return self.kind != FamilyKind.HOMOTHETIC

    @abstractmethod
    def make_outer(self) -> Conic:
        raise NotImplementedError

    @abstractmethod
    def make_inner(self) -> Conic:
        raise NotImplementedError

    @abstractmethod
    def as_dict(self) -> Dict[str, Any]:
        raise NotImplementedError


def _seed_dict(seed: Triangle) -> Dict[str, Any]:
    return {"seed": seed.vertices.tolist()}


@dataclass(frozen=True)
class InellipseSpec(FamilySpec):
    """Circle of radius R around an axis-parallel concentric ellipse with alpha + beta = R."""

    R: float = 1.0
    alpha: float = 0.6
    kind = FamilyKind.INELLIPSE

    def __post_init__(self):
        if not 0.0 < self.alpha < self.R:
            raise GeometryError(f"inellipse family needs 0 < alpha < R, got alpha={self.alpha}, R={self.R}")

    @property
    def beta(self) -> float:
        return self.R - self.alpha

    def make_outer(self) -> Conic:
        return circle(ORIGIN, self.R)

    def make_inner(self) -> Conic:
        return conic_from_center_axes(ORIGIN, (self.alpha, self.beta), 0.0)

    def as_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind.value, "R": self.R, "alpha": self.alpha}


@dataclass(frozen=True)
class BicentricSpec(FamilySpec):
    """Circumcircle of radius R and incircle of radius r, centers d = sqrt(R(R - 2r)) apart."""

    R: float = 1.0
    r: float = 0.35
    kind = FamilyKind.BICENTRIC

    def __post_init__(self):
        if not 0.0 < self.r <= self.R / 2.0:
            raise GeometryError(f"bicentric family needs 0 < r <= R/2, got r={self.r}, R={self.R}")

    @property
    def d(self) -> float:
        return float(np.sqrt(self.R * (self.R - 2.0 * self.r)))

    @property
    def incenter(self) -> HPoint:
        return HPoint(self.d, 0.0)

    def make_outer(self) -> Conic:
        return circle(ORIGIN, self.R)

    def make_inner(self) -> Conic:
        return circle(self.incenter, self.r)

    def as_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind.value, "R": self.R, "r": self.r}


@dataclass(frozen=True)
class _SeededSpec(FamilySpec):
    seed: Optional[Triangle] = None
    requires_scalene = True

    def __post_init__(self):
        if self.seed is None:
            raise GeometryError(f"{self.kind.value} family needs a seed triangle")
        if self.requires_scalene and not self.seed.is_scalene():
            raise GeometryError(f"{self.kind.value} family needs a scalene seed triangle")

    def make_outer(self) -> Conic:
        return self.seed.named_conic(NamedConic.CIRCUMCIRCLE)

    def as_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind.value, **_seed_dict(self.seed)}


@dataclass(frozen=True)
class MacBeathSpec(_SeededSpec):
    """Circumcircle of the seed around its MacBeath inellipse (foci X3 and X4)."""

    kind = FamilyKind.MACBEATH

    def make_inner(self) -> Conic:
        return self.seed.named_conic(NamedConic.MACBEATH_INELLIPSE)


@dataclass(frozen=True)
class BrocardSpec(_SeededSpec):
    """Circumcircle of the seed around its Brocard inellipse (foci at the Brocard points)."""

    kind = FamilyKind.BROCARD

    def make_inner(self) -> Conic:
        return self.seed.named_conic(NamedConic.BROCARD_INELLIPSE)


@dataclass(frozen=True)
class HomotheticSpec(_SeededSpec):
    """Steiner circumellipse of the seed around its Steiner inellipse."""

    kind = FamilyKind.HOMOTHETIC
    requires_scalene = False

    def make_outer(self) -> Conic:
        return self.seed.named_conic(NamedConic.STEINER_CIRCUMELLIPSE)

    def make_inner(self) -> Conic:
        return self.seed.named_conic(NamedConic.STEINER_INELLIPSE)


@dataclass(frozen=True)
class GenericSpec(_SeededSpec):
    """Circumcircle of the seed around the inellipse with the given barycentric perspector."""

    perspector: Tuple[float, float, float] = (1.0, 1.0, 1.0)
    kind = FamilyKind.GENERIC
    requires_scalene = False

    def make_inner(self) -> Conic:
        # inconic constructions live with the other triangle parabolas
        from src.triconics import inconic_from_perspector

        return inconic_from_perspector(self.seed, self.seed.from_barycentric(self.perspector))

    def as_dict(self) -> Dict[str, Any]:
        return {**super().as_dict(), "perspector": list(self.perspector)}


def make_family_spec(kind, seed: Optional[Triangle] = None, **params) -> FamilySpec:
    """Factory from a kind name and parameter overrides."""
    kind = FamilyKind(kind)
    if kind == FamilyKind.INELLIPSE:
        return InellipseSpec(**params)
    elif kind == FamilyKind.BICENTRIC:
        return BicentricSpec(**params)
    elif kind == FamilyKind.MACBEATH:
        return MacBeathSpec(seed=seed)
    elif kind == FamilyKind.BROCARD:
        return BrocardSpec(seed=seed)
    elif kind == FamilyKind.HOMOTHETIC:
        return HomotheticSpec(seed=seed)
    elif kind == FamilyKind.GENERIC:
        return GenericSpec(seed=seed, **params)
    else:
        raise ValueError(f"Undefined mapping to family spec for: {kind!r}")

import dataclasses
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from src.poncelet import Family, build_family
from src.presets import GENERIC_PERSPECTOR, seed_triangle
from src.structures.common import FitError, GeometryError
from src.structures.conics import Conic, circle
from src.structures.family_spec import make_family_spec
from src.structures.fit_report import FitReport, Subclaim, to_plain
from src.structures.geom import HLine, HPoint
from src.structures.geometry_types import FamilyKind, LocusModel
from src.structures.locus_fitter import LocusFitter
from src.structures.triangle import Triangle
from src.sweep_pipeline import LocusSweep, SweepPipeline

logger = logging.getLogger("ExperimentRunner")

MAX_DROP_RATIO = 0.05
# envelope characteristic points farther than this many outer semi-major axes are dropped
ENVELOPE_RADIUS = 5.0
# triangles drawn per overlay
DRAWN_TRIANGLES = 4
# half-grid refits of over-all-anchor loci: allowed rms growth, and the roundoff floor as a fraction of the threshold
HALF_GRID_RATIO = 4.0
HALF_GRID_FLOOR = 1e-3


@dataclass
class ExperimentConfig:
    """
    Grid sizes, thresholds and family overrides shared by all experiments.

    Attributes:
        samples (int): triangles per direct-locus sweep
        envelope_samples (int): triangles per envelope sweep
        anchors (int): anchors (F, Q or Pi) in over-all-anchor sweeps
        anchor_samples (int): triangles per sweep at each non-fixed anchor of an over-all-anchor sweep
        envelope_anchors (int): anchors in sweeps whose per-anchor lines are enveloped over the anchor
        pencil_samples (int): circumparabolas in fixed-triangle pencils
        tol_direct (float): rms threshold for direct loci
        tol_envelope (float): rms threshold for envelope-derived loci
        tol_predicate (float): residual threshold for direct predicates
        tol_predicate_envelope (float): residual threshold for envelope-derived predicates
        tol_alignment (float): threshold for centers, axes and reference values of fitted loci
        anchor_clearance (float): triangles with a vertex this close to a circumparabola anchor are skipped
        seed_preset (str): seed triangle name for seeded families and fixed-triangle experiments
        family (dict): family parameter overrides, e.g. {"r": 0.4} or {"alpha": 0.7}
        anchor (float): parameter of the fixed anchor on the outer conic
        branch_check (bool): also sweep the opposite Poncelet branch where supported
    """

    samples: int = 360
    envelope_samples: int = 720
    anchors: int = 36
    anchor_samples: int = 32
    envelope_anchors: int = 180
    pencil_samples: int = 72
    tol_direct: float = 1e-7
    tol_envelope: float = 1e-4
    tol_predicate: float = 1e-8
    tol_predicate_envelope: float = 1e-5
    tol_alignment: float = 1e-6
    anchor_clearance: float = 1e-2
    seed_preset: str = "scalene-A"
    family: Dict[str, Any] = field(default_factory=dict)
    anchor: float = 1.0
    branch_check: bool = True

    @classmethod
    def from_dict(cls, params: Dict[str, Any]) -> "ExperimentConfig":
        names = {f.name for f in dataclasses.fields(cls)}
        return cls(**{k: v for k, v in params.items() if k in names and v is not None})

    def as_dict(self) -> Dict[str, Any]:
        return dataclasses.asdict(self)

    def replace(self, **changes) -> "ExperimentConfig":
        return dataclasses.replace(self, **changes)


@dataclass
class FigureSpec:
    """Objects an experiment wants drawn on its overlay."""

    conics: List[Tuple[str, Conic]] = field(default_factory=list)
    triangles: List[Triangle] = field(default_factory=list)
    loci: Dict[str, np.ndarray] = field(default_factory=dict)
    lines: List[Tuple[str, HLine]] = field(default_factory=list)
    points: Dict[str, np.ndarray] = field(default_factory=dict)
    viewport: Optional[Conic] = None


@dataclass
class ExperimentResult:
    id: str
    title: str
    reference: str
    config: Dict[str, Any]
    subclaims: List[Subclaim]
    dropped: int
    total: int
    tables: Dict[str, pd.DataFrame] = field(default_factory=dict)
    figure: FigureSpec = field(default_factory=FigureSpec)
    notes: List[str] = field(default_factory=list)

    @property
    def drop_ratio(self) -> float:
        return self.dropped / self.total if self.total else 0.0

    @property
    def passed(self) -> bool:
        return bool(self.subclaims) and all(c.passed for c in self.subclaims) and self.drop_ratio < MAX_DROP_RATIO

    def subclaim(self, name: str) -> Subclaim:
        for claim in self.subclaims:
            if claim.name == name:
                return claim
        raise KeyError(f"Invalid subclaim: {name!r}")

    def as_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "title": self.title,
            "reference": self.reference,
            "config": to_plain(self.config),
            "subclaims": [c.as_dict() for c in self.subclaims],
            "dropped": self.dropped,
            "total": self.total,
            "pass": self.passed,
            "notes": list(self.notes),
        }


def _freeze(params: Dict[str, Any]) -> Tuple[Tuple[str, Any], ...]:
    return tuple(sorted((k, tuple(v) if isinstance(v, list) else v) for k, v in params.items()))


@lru_cache(maxsize=None)
def cached_family(kind: str, seed_preset: str, params: Tuple[Tuple[str, Any], ...]) -> Family:
    kind = FamilyKind(kind)
    seed = None if kind in (FamilyKind.INELLIPSE, FamilyKind.BICENTRIC) else seed_triangle(seed_preset)
    params = dict(params)
    if kind == FamilyKind.GENERIC:
        params.setdefault("perspector", GENERIC_PERSPECTOR)
    return build_family(make_family_spec(kind, seed=seed, **params))


@lru_cache(maxsize=None)
def cached_pipeline(
    kind: str, seed_preset: str, params: Tuple[Tuple[str, Any], ...], samples: int, orientation: int
) -> SweepPipeline:
    return SweepPipeline(cached_family(kind, seed_preset, params), samples, orientation)


_FAMILY_PARAMS = {
    FamilyKind.INELLIPSE: ("R", "alpha"),
    FamilyKind.BICENTRIC: ("R", "r"),
    FamilyKind.GENERIC: ("perspector",),
}


class SweepContext:
    """
    Families, cached sweeps, fitting and drop counting under one run configuration.

    Attributes:
        config (ExperimentConfig): run configuration
    """

    family_kind: Optional[FamilyKind] = None
    defaults: Dict[str, Any] = {}

    def __init__(self, config: Optional[ExperimentConfig] = None):
        self.config = config or ExperimentConfig()
        self._dropped = 0
        self._total = 0

    def family_params(self, kind: FamilyKind) -> Dict[str, Any]:
        params = {k: v for k, v in self.defaults.items() if k in _FAMILY_PARAMS.get(kind, ())}
        params.update({k: v for k, v in self.config.family.items() if k in _FAMILY_PARAMS.get(kind, ())})
        return params

    def family(self, kind: Optional[FamilyKind] = None, **params) -> Family:
        kind = kind or self.family_kind
        merged = {**self.family_params(kind), **params}
        return cached_family(kind.value, self.config.seed_preset, _freeze(merged))

    def pipeline(
        self, kind: Optional[FamilyKind] = None, samples: Optional[int] = None, orientation: int = 1, **params
    ) -> SweepPipeline:
        kind = kind or self.family_kind
        merged = {**self.family_params(kind), **params}
        return cached_pipeline(
            kind.value, self.config.seed_preset, _freeze(merged), samples or self.config.samples, orientation
        )

    def seed(self) -> Triangle:
        return seed_triangle(self.config.seed_preset)

    def anchor_angles(self, count: Optional[int] = None) -> np.ndarray:
        count = count or self.config.anchors
        return self.config.anchor + np.linspace(0.0, 2.0 * np.pi, count, endpoint=False)

    def anchor_samples(self, angle: float) -> int:
        """Grid size at an anchor of an over-all-anchor sweep: full at the fixed anchor, reduced elsewhere."""
        if np.isclose(angle, self.config.anchor):
            return self.config.samples
        return min(self.config.anchor_samples, self.config.samples)

    @property
    def fitter(self) -> LocusFitter:
        return LocusFitter(point_tol=self.config.tol_direct, curve_tol=self.config.tol_direct)

    def envelope(self, family: Family, lines: List[HLine], t: np.ndarray) -> Tuple[np.ndarray, int]:
        """Characteristic points of an ordered line family, cut off far outside the outer conic."""
        reach = ENVELOPE_RADIUS * family.outer.semi_axes_and_angle()[0]
        center = family.outer.center().xy
        shifted = [HLine(l.coords[0], l.coords[1], l.coords[2] + l.coords[:2] @ center) for l in lines]
        points, dropped = self.fitter.envelope_points(shifted, t=t, max_radius=reach)
        return points + center, dropped

    def count(self, sweep: Optional[LocusSweep] = None, dropped: int = 0, total: int = 0):
        """Adds a sweep's drops (or explicit counts) to the totals."""
        if sweep is not None:
            dropped, total = sweep.dropped, sweep.total
        self._dropped += dropped
        self._total += total


class Experiment(SweepContext, ABC):
    """
    A checked statement about a Poncelet family or a fixed triangle.

    Subclasses set the registry attributes and implement evaluate, which records subclaims,
    tables and overlay objects through the helpers below.
    """

    id: str = ""
    title: str = ""
    reference: str = ""

    def __init__(self, config: Optional[ExperimentConfig] = None):
        super().__init__(config)
        self._subclaims: List[Subclaim] = []
        self._tables: Dict[str, pd.DataFrame] = {}
        self._notes: List[str] = []
        self.figure = FigureSpec()

    # recording

    def claim(self, subclaim: Subclaim) -> Subclaim:
        logger.debug(
            f"{self.id} {subclaim.name}: {subclaim.rms:.3e} (threshold {subclaim.threshold:.0e}) "
            f"{'pass' if subclaim.passed else 'FAIL'}"
        )
        self._subclaims.append(subclaim)
        return subclaim

    def claim_fit(self, name: str, report: FitReport, threshold: float, expected=None, **extra) -> Subclaim:
        return self.claim(Subclaim.from_fit(name, report, threshold, expected, **extra))

    def claim_residual(self, name: str, model: str, residual: float, threshold: float, **params) -> Subclaim:
        return self.claim(Subclaim.from_residual(name, model, residual, threshold, **params))

    def claim_residuals(self, name: str, model: str, residuals, threshold: float, **params) -> Subclaim:
        return self.claim(Subclaim.from_residuals(name, model, residuals, threshold, **params))

    def claim_circle(self, name: str, points: np.ndarray) -> FitReport:
        """Circle fit plus the stronger check that the general conic fit is round."""
        report = self.fitter.fit_circle(points)
        self.claim_fit(name, report, self.config.tol_direct, LocusModel.CIRCLE)
        conic = self.fitter.fit_conic(points)
        ratio = conic.params.get("axis_ratio", float("nan"))
        self.claim_residual(
            f"{name}_axis_ratio", "ellipse", abs(1.0 - ratio), self.config.tol_alignment,
            axis_ratio=ratio, conic_rms=conic.rms_residual,
        )
        return report

    def claim_half_grid(
        self, name: str, full: FitReport, refit: Callable[[], FitReport], threshold: float
    ) -> Optional[Subclaim]:
        """
        Refits an over-all-anchor locus on every other anchor. Holds when the half-grid fit is
        accepted with the same model and its rms stays within HALF_GRID_RATIO times the full-grid
        rms; rms below HALF_GRID_FLOOR times the threshold counts as roundoff.
        """
        try:
            half = refit()
        except FitError as e:
            self.note(f"{name}: no half-grid refit, {e}")
            return None
        bound = HALF_GRID_RATIO * max(full.rms_residual, HALF_GRID_FLOOR * threshold)
        passed = half.accepted(threshold) and half.model == full.model and half.rms_residual <= bound
        return self.claim(
            Subclaim(
                name=f"{name}_half_grid",
                model=half.model.value,
                params={"full_rms": full.rms_residual, "bound": bound},
                rms=half.rms_residual,
                max=half.max_residual,
                threshold=threshold,
                passed=bool(passed),
                note="refit on every other anchor",
            )
        )

    def claim_locus(
        self,
        name: str,
        points: np.ndarray,
        half_points: np.ndarray,
        model: LocusModel = LocusModel.ELLIPSE,
        threshold: Optional[float] = None,
    ) -> FitReport:
        """Circle or conic fit of an over-all-anchor locus, with its half-grid refit."""
        fit = self.fitter.fit_circle if model == LocusModel.CIRCLE else self.fitter.fit_conic
        threshold = threshold or self.config.tol_direct
        report = fit(points)
        self.claim_fit(name, report, threshold, model)
        self.claim_half_grid(name, report, lambda: fit(half_points), threshold)
        return report

    def table(self, name: str, frame: pd.DataFrame):
        self._tables[name] = frame

    def note(self, text: str):
        self._notes.append(text)

    # overlay

    def draw_family(self, family: Family, pipeline: Optional[SweepPipeline] = None):
        self.figure.conics += [("outer", family.outer), ("caustic", family.inner)]
        self.figure.viewport = self.figure.viewport or family.outer
        if pipeline is not None:
            triangles = pipeline.triangles()
            step = max(1, len(triangles) // DRAWN_TRIANGLES)
            self.figure.triangles += [triangle for _, triangle in triangles[::step][:DRAWN_TRIANGLES]]

    def draw_locus(self, name: str, points: np.ndarray):
        self.figure.loci[name] = np.asarray(points, dtype=float).reshape(-1, 2)

    def draw_point(self, name: str, point: HPoint):
        self.figure.points[name] = point.xy

    def draw_fit(self, name: str, report: FitReport):
        if report.model == LocusModel.LINE:
            self.figure.lines.append((name, report.shape))
        elif report.model == LocusModel.CIRCLE:
            center, radius = report.shape
            self.figure.conics.append((name, circle(center, radius)))
        elif report.model == LocusModel.POINT:
            self.draw_point(name, report.shape)
        elif report.shape is not None:
            self.figure.conics.append((name, report.shape))

    # running

    @abstractmethod
    def evaluate(self):
        raise NotImplementedError

    def run(self) -> ExperimentResult:
        logger.info(f"running {self.id}: {self.title}")
        try:
            self.evaluate()
        except GeometryError as e:
            logger.error(f"{self.id} aborted: {e}")
            self.claim(Subclaim("evaluation", "none", {}, float("inf"), float("inf"), 0.0, False, str(e)))
        result = ExperimentResult(
            id=self.id,
            title=self.title,
            reference=self.reference,
            config={**self.config.as_dict(), "defaults": dict(self.defaults)},
            subclaims=list(self._subclaims),
            dropped=self._dropped,
            total=self._total,
            tables=dict(self._tables),
            figure=self.figure,
            notes=list(self._notes),
        )
        logger.info(
            f"{self.id} {'passed' if result.passed else 'FAILED'}: "
            f"{sum(c.passed for c in result.subclaims)}/{len(result.subclaims)} subclaims, "
            f"dropped {result.dropped}/{result.total}"
        )
        return result
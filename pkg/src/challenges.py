"""
Raw locus dumps for the open questions that have no verdict. Each dump sweeps the object over the
anchor grid and returns its samples; nothing is asserted.
"""

import logging
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from src.experiments.base import ExperimentConfig, SweepContext
from src.experiments.circumparabola_experiments import CircumparabolaSweeps
from src.experiments.features import brianchon_feature
from src.structures.common import GeometryError
from src.structures.geometry_types import ConjugationKind, FamilyKind, LocusModel
from src.structures.triangle import Triangle

logger = logging.getLogger("Challenges")

COLUMNS = ["family", "object", "anchor", "t", "x", "y", "l", "m", "n", "rms"]


class Exploration(CircumparabolaSweeps, SweepContext):
    """Circumparabola sweeps and envelopes without subclaims."""

    def directrix_parabola_focus(self, angle: float, kind: FamilyKind) -> Tuple[Optional[np.ndarray], float]:
        family = self.family(kind)
        _, sweep = self.cp_sweep(angle, kind, self.config.envelope_samples)
        points, _ = self.envelope(family, sweep.lines("directrix"), sweep.t)
        report = self.fitter.fit_parabola(points)
        if report.model != LocusModel.PARABOLA:
            return None, report.rms_residual
        return report.params["focus"], report.rms_residual


def point_row(family: FamilyKind, name: str, anchor: float, xy, rms: float = float("nan"), t=float("nan")) -> dict:
    return {"family": family.value, "object": name, "anchor": anchor, "t": t, "x": xy[0], "y": xy[1], "rms": rms}


def line_row(family: FamilyKind, name: str, anchor: float, line, rms: float = float("nan")) -> dict:
    l, m, n = line.coords
    return {"family": family.value, "object": name, "anchor": anchor, "l": l, "m": m, "n": n, "rms": rms}


def focus_line_envelope(explorer: Exploration) -> List[dict]:
    """Bicentric focus lines over all anchors Q, and the characteristic points of that line family."""
    kind = FamilyKind.BICENTRIC
    rows, lines = [], []
    angles = explorer.anchor_angles()
    for angle in angles:
        _, _, report = explorer.focus_line(angle, kind)
        lines.append(report.shape)
        rows.append(line_row(kind, "focus_line", angle, report.shape, report.rms_residual))
    points, dropped = explorer.fitter.envelope_points(lines, t=angles, closed=True)
    logger.info(f"focus-line envelope: {len(points)} points, {dropped} lines dropped")
    rows += [point_row(kind, "focus_line_envelope", float("nan"), xy) for xy in points]
    return rows


def directrix_parabola_foci(explorer: Exploration, kinds) -> List[dict]:
    rows = []
    for kind in kinds:
        for angle in explorer.anchor_angles():
            focus, rms = explorer.directrix_parabola_focus(angle, kind)
            if focus is None:
                logger.warning(f"{kind.value} anchor {angle:.4f}: directrix envelope is not a parabola")
                continue
            rows.append(point_row(kind, "envelope_focus", angle, focus, rms))
    return rows


def circle_inscribed_envelope_foci(explorer: Exploration) -> List[dict]:
    return directrix_parabola_foci(explorer, (FamilyKind.MACBEATH, FamilyKind.BROCARD, FamilyKind.INELLIPSE))


def perspector_centers(explorer: Exploration) -> List[dict]:
    """Center of the perspector ellipse over all anchors Q."""
    rows = []
    for kind in (FamilyKind.BICENTRIC, FamilyKind.MACBEATH, FamilyKind.BROCARD):
        for angle in explorer.anchor_angles():
            _, sweep = explorer.cp_sweep(angle, kind, with_perspector=True)
            report = explorer.fitter.fit_conic(sweep.points("perspector"))
            if report.model != LocusModel.ELLIPSE:
                continue
            rows.append(point_row(kind, "perspector_center", angle, report.params["center"], report.rms_residual))
    return rows


def homothetic_envelope_foci(explorer: Exploration) -> List[dict]:
    explorer.conjugation = ConjugationKind.ISOTOMIC
    return directrix_parabola_foci(explorer, (FamilyKind.HOMOTHETIC,))


def brianchon_sweep(explorer: Exploration, angle: float, with_simson: bool = False):
    kind = FamilyKind.HOMOTHETIC
    point = explorer.family(kind).outer_point(angle)
    base = brianchon_feature(point, explorer.config.anchor_clearance)

    def feature(triangle: Triangle):
        values = base(triangle)
        if with_simson:
            values["simson"] = triangle.simson_steiner(values["focus"], explorer.config.tol_predicate).simson
        return values

    return explorer.pipeline(kind).run_sweep(feature)


def brianchon_line_envelopes(explorer: Exploration) -> List[dict]:
    """Envelopes of the directrix and the Simson line of the focus, for the fixed Brianchon point."""
    kind = FamilyKind.HOMOTHETIC
    angle = explorer.config.anchor
    sweep = brianchon_sweep(explorer, angle, with_simson=True)
    rows = []
    for key in ("directrix", "simson"):
        points, dropped = explorer.fitter.envelope_points(sweep.lines(key), t=sweep.t, closed=True)
        logger.info(f"{key} envelope: {len(points)} points, {dropped} lines dropped")
        rows += [point_row(kind, f"{key}_envelope", angle, xy) for xy in points]
    return rows


def focus_circle_centers(explorer: Exploration) -> List[dict]:
    """Center of the focus circle over all Brianchon points on the outer ellipse."""
    kind = FamilyKind.HOMOTHETIC
    rows = []
    for angle in explorer.anchor_angles():
        report = explorer.fitter.fit_circle(brianchon_sweep(explorer, angle).points("focus"))
        if report.model != LocusModel.CIRCLE:
            continue
        rows.append(point_row(kind, "focus_circle_center", angle, report.params["center"], report.rms_residual))
    return rows


CHALLENGES: Dict[int, Tuple[str, Callable[[Exploration], List[dict]]]] = {
    1: ("envelope of the bicentric focus line over all anchors Q", focus_line_envelope),
    2: ("focus of the directrix-envelope parabola over all Q, circle-inscribed families", circle_inscribed_envelope_foci),
    3: ("center of the perspector ellipse over all Q", perspector_centers),
    4: ("focus of the isotomic directrix-envelope parabola over all Q, homothetic family", homothetic_envelope_foci),
    5: ("envelopes of the directrix and Simson line for a fixed Brianchon point", brianchon_line_envelopes),
    6: ("center of the focus circle over all Brianchon points", focus_circle_centers),
}


def dump_challenge(number: int, config: Optional[ExperimentConfig] = None) -> Tuple[str, pd.DataFrame]:
    """
    Samples the object of one open question.

    Args:
        number (int): 1..6
        config (ExperimentConfig): grids and presets
    Returns:
        description (str): what the rows hold
        frame (pd.DataFrame): one row per sample, columns COLUMNS
    """
    if number not in CHALLENGES:
        raise ValueError(f"Undefined mapping to challenge for: {number!r}")
    description, dump = CHALLENGES[number]
    explorer = Exploration(config)
    logger.info(f"dumping challenge {number}: {description}")
    try:
        rows = dump(explorer)
    except GeometryError as e:
        logger.error(f"challenge {number} aborted: {e}")
        rows = []
    return description, pd.DataFrame(rows, columns=COLUMNS)

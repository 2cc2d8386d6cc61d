"""
Inparabola experiments: inparabolas with a fixed focus F over circle-inscribed families and with a
fixed Brianchon point over the homothetic family.
"""

import logging
from typing import Optional, Tuple

import numpy as np
import pandas as pd

from src.experiments.base import Experiment
from src.experiments.features import brianchon_feature, inparabola_feature
from src.poncelet import Family, inparabola_oracle, vertex_formula
from src.structures.conics import circle
from src.structures.fit_report import FitReport, Subclaim
from src.structures.geom import HPoint, foot_of_perpendicular, join, midpoint
from src.structures.geometry_types import CenterId, ConjugationKind, FamilyKind, LocusModel
from src.structures.predicates import (
    axis_aligned,
    concentric,
    conic_tangent_conic_at,
    direction_along,
    line_tangent,
    point_on_line,
    stationary,
)
from src.structures.triangle import Triangle
from src.sweep_pipeline import LocusSweep

logger = logging.getLogger("ExperimentRunner")

# agreement of the direct vertex with the closed-form vertex
ORACLE_TOL = 1e-9
# agreement of fitted vertex circles with their closed form
FORMULA_TOL = 1e-8
# triangles per anchor when a fixed-F line is refitted for every F of an envelope
LINE_SAMPLES = 12
# a locus is reported as non-conic when its conic fit is this many times worse than the direct threshold
NON_CONIC_FACTOR = 10.0


def locus_xy(frame: pd.DataFrame, key: str) -> np.ndarray:
    return frame[[f"{key}_x", f"{key}_y"]].to_numpy()


def half_grid(frame: pd.DataFrame) -> pd.DataFrame:
    """Rows of every other anchor of an over-all-anchor table."""
    return frame[frame["F_index"] % 2 == 0]


class InparabolaExperiment(Experiment):
    """Sweeps of the inparabola whose focus F is a fixed point of the circumcircle."""

    def ip_sweep(
        self,
        angle: float,
        kind: Optional[FamilyKind] = None,
        samples: Optional[int] = None,
        with_polar: bool = False,
        orientation: int = 1,
        counted: bool = True,
        **params,
    ) -> Tuple[HPoint, LocusSweep]:
        F = self.family(kind, **params).outer_point(angle)
        feature = inparabola_feature(F, with_polar=with_polar, tol=self.config.tol_predicate)
        sweep = self.pipeline(kind, samples, orientation, **params).run_sweep(feature)
        if counted:
            self.count(sweep)
        return F, sweep

    def focus_loci(
        self, kind: Optional[FamilyKind] = None, angles: Optional[np.ndarray] = None, with_polar: bool = False
    ) -> pd.DataFrame:
        """
        Per focus F: center O and radius of the vertex circle, the common point U of the Simson
        lines and the common point W of the directrices.
        """
        angles = self.anchor_angles() if angles is None else angles
        rows = []
        for index, angle in enumerate(angles):
            F, sweep = self.ip_sweep(angle, kind, self.anchor_samples(angle), with_polar)
            vertex = self.fitter.fit_circle(sweep.points("vertex"))
            simson = self.fitter.common_point(sweep.lines("simson"))
            directrix = self.fitter.common_point(sweep.lines("directrix"))
            if LocusModel.NONE in (vertex.model, simson.model, directrix.model):
                logger.warning(f"{self.id}: focus angle {angle:.4f} skipped, undefined vertex circle or pencil")
                continue
            center, radius = vertex.shape
            rows.append(
                {
                    "F_index": index,
                    "F_angle": angle,
                    "F_x": F.x,
                    "F_y": F.y,
                    "O_x": center.x,
                    "O_y": center.y,
                    "radius": radius,
                    "U_x": simson.shape.x,
                    "U_y": simson.shape.y,
                    "W_x": directrix.shape.x,
                    "W_y": directrix.shape.y,
                    "vertex_rms": vertex.rms_residual,
                    "simson_residual": simson.max_residual,
                    "directrix_residual": directrix.max_residual,
                }
            )
        if len(rows) < len(angles):
            self.note(f"{len(angles) - len(rows)} of {len(angles)} focus positions skipped")
        return pd.DataFrame(rows)

    def claim_focus_locus(
        self, name: str, loci: pd.DataFrame, key: str, model: LocusModel = LocusModel.ELLIPSE
    ) -> FitReport:
        return self.claim_locus(name, locus_xy(loci, key), locus_xy(half_grid(loci), key), model)

    def claim_distance(self, name: str, p: HPoint, q: HPoint, threshold: Optional[float] = None):
        return self.claim_residual(
            name, "coincide", p.distance(q), threshold or self.config.tol_alignment, found=p.xy, expected=q.xy
        )

    def claim_equal(self, name: str, model: str, value: float, expected: float):
        return self.claim_residual(
            name, model, abs(value - expected), self.config.tol_alignment, found=value, expected=expected
        )

    def draw_focus_sweep(self, family: Family, F: HPoint, sweep: LocusSweep):
        self.draw_family(family, self.pipeline(family.kind))
        self.draw_point("F", F)
        self.draw_locus("vertex", sweep.points("vertex"))


def is_central(report) -> bool:
    return report.model in (LocusModel.ELLIPSE, LocusModel.HYPERBOLA)


class VertexCircleExperiment(InparabolaExperiment):
    id = "E14"
    title = "Inellipse family: the inparabola vertex sweeps a circle through F tangent to the caustic"
    reference = '"a circle passing through F and tangent to the inellipse (Poncelet caustic) at the antipode U"'
    family_kind = FamilyKind.INELLIPSE

    def evaluate(self):
        family = self.family()
        F, sweep = self.ip_sweep(self.config.anchor)
        report = self.claim_circle("vertex_circle", sweep.points("vertex"))
        self.table("vertex", sweep.frame())
        self.draw_focus_sweep(family, F, sweep)
        self.draw_fit("vertex circle", report)
        if report.model != LocusModel.CIRCLE:
            return

        center, radius = report.shape
        U = HPoint.from_array(2.0 * center.xy - F.xy)
        oracle = inparabola_oracle(family, self.config.anchor)
        self.claim_equal("passes_through_F", "point_on_conic", center.distance(F), radius)
        self.claim_residual(
            "antipode_on_caustic", "point_on_conic", family.inner.sampson_distance(U), self.config.tol_alignment
        )
        self.claim_residual(
            "tangent_to_caustic_at_antipode", "conic_tangent_conic_at",
            conic_tangent_conic_at(circle(center, radius), family.inner, U).residual, self.config.tol_alignment,
        )
        self.claim_distance("center_matches_formula", center, oracle.vertex_center)
        self.claim_equal("radius_matches_formula", "circle", radius, oracle.vertex_radius)
        self.draw_point("U", U)

        if self.config.branch_check:
            _, opposite = self.ip_sweep(
                self.config.anchor, samples=max(16, self.config.samples // 4), orientation=-1, counted=False
            )
            other = self.fitter.fit_circle(opposite.points("vertex"))
            message = f"opposite Poncelet branch: vertex circle rms {other.rms_residual:.2e}"
            if other.accepted(self.config.tol_direct):
                logger.info(message)
            else:
                logger.warning(message + " disagrees with the main branch")
            self.note(message)


class FootCircleExperiment(InparabolaExperiment):
    id = "E15"
    title = "Inellipse family: the directrix foot C sweeps a circle of twice the radius centered on U"
    reference = '"a circle of radius 2 rho centered on U"'
    family_kind = FamilyKind.INELLIPSE

    def evaluate(self):
        family = self.family()
        F, sweep = self.ip_sweep(self.config.anchor)
        report = self.fitter.fit_circle(sweep.points("foot"))
        self.claim_fit("foot_circle", report, self.config.tol_direct, LocusModel.CIRCLE)
        self.table("foot", sweep.frame())
        self.draw_focus_sweep(family, F, sweep)
        self.draw_locus("foot", sweep.points("foot"))
        self.draw_fit("foot circle", report)
        if report.model != LocusModel.CIRCLE:
            return

        center, radius = report.shape
        oracle = inparabola_oracle(family, self.config.anchor)
        self.claim_distance("centered_on_U", center, oracle.simson_pivot)
        self.claim_equal("radius_twice_vertex_radius", "circle", radius, 2.0 * oracle.vertex_radius)
        self.draw_point("U", oracle.simson_pivot)


class PivotExperiment(InparabolaExperiment):
    id = "E16"
    title = "Inellipse family: directrices pass through W, Simson lines through U, W the reflection of F about U"
    reference = '"let W denote the reflection of F about U"'
    family_kind = FamilyKind.INELLIPSE

    def evaluate(self):
        family = self.family()
        F, sweep = self.ip_sweep(self.config.anchor, samples=self.config.envelope_samples)
        oracle = inparabola_oracle(family, self.config.anchor)
        threshold = self.config.tol_predicate_envelope

        directrix = self.fitter.common_point(sweep.lines("directrix"))
        simson = self.fitter.common_point(sweep.lines("simson"))
        self.claim_residuals("directrix_pencil", "point", directrix.residuals, threshold, point=directrix.params.get("point"))
        self.claim_residuals("simson_pencil", "point", simson.residuals, threshold, point=simson.params.get("point"))
        self.table("pencils", sweep.frame())
        self.draw_focus_sweep(family, F, sweep)
        if LocusModel.NONE in (directrix.model, simson.model):
            return

        W, U = directrix.shape, simson.shape
        self.claim_distance("W_matches_formula", W, oracle.directrix_pivot)
        self.claim_distance("U_matches_formula", U, oracle.simson_pivot)
        self.claim_distance("W_reflects_F_about_U", W, HPoint.from_array(2.0 * U.xy - F.xy))
        self.draw_point("U", U)
        self.draw_point("W", W)


class OverFocusExperiment(InparabolaExperiment):
    id = "E17"
    title = "Inellipse family over all F: U sweeps the caustic, O an aligned ellipse, W a concentric circle"
    reference = '"the locus of O is an ellipse, concentric and axis-aligned with the caustic"'
    family_kind = FamilyKind.INELLIPSE

    def evaluate(self):
        family = self.family()
        loci = self.focus_loci()
        self.table("over_F", loci)
        self.claim_residuals("vertex_circle_over_F", "circle", loci["vertex_rms"], self.config.tol_direct)
        self.claim_residuals(
            "U_on_caustic", "point_on_conic",
            [family.inner.sampson_distance(HPoint.from_array(p)) for p in locus_xy(loci, "U")],
            self.config.tol_alignment,
        )
        O_report = self.claim_focus_locus("O_ellipse", loci, "O")
        if O_report.model == LocusModel.ELLIPSE:
            self.claim_residual(
                "O_concentric_with_caustic", "concentric", concentric(O_report.shape, family.inner).residual,
                self.config.tol_alignment,
            )
            self.claim_residual(
                "O_axis_aligned_with_caustic", "axis_aligned", axis_aligned(O_report.shape, family.inner).residual,
                self.config.tol_alignment,
            )
        W_report = self.claim_focus_locus("W_circle", loci, "W", LocusModel.CIRCLE)
        if W_report.model == LocusModel.CIRCLE:
            self.claim_distance("W_circle_concentric", W_report.shape[0], family.inner.center())

        self.draw_family(family)
        for key in ("O", "U", "W"):
            self.draw_locus(key, locus_xy(loci, key))
        self.draw_fit("O ellipse", O_report)
        self.draw_fit("W circle", W_report)


class BicentricFocusExperiment(InparabolaExperiment):
    id = "E18"
    title = "Bicentric family: vertex and foot circles, U and W pencils, and their loci over all F"
    reference = '"whose center is that segment\'s midpoint X1385"'
    family_kind = FamilyKind.BICENTRIC
    defaults = {"r": 0.35}

    def evaluate(self):
        family = self.family()
        triangle = self.pipeline().triangles()[0][1]
        X1, X3 = triangle.triangle_center(CenterId.X1), triangle.triangle_center(CenterId.X3)
        X1385 = triangle.triangle_center(CenterId.X1385)
        axis = join(X1, X3)
        r = family.spec.r

        F, sweep = self.ip_sweep(self.config.anchor)
        vertex = self.fitter.fit_circle(sweep.points("vertex"))
        self.claim_fit("vertex_circle", vertex, self.config.tol_direct, LocusModel.CIRCLE)
        self.claim_fit("foot_circle", self.fitter.fit_circle(sweep.points("foot")), self.config.tol_direct, LocusModel.CIRCLE)
        simson = self.fitter.common_point(sweep.lines("simson"))
        directrix = self.fitter.common_point(sweep.lines("directrix"))
        self.claim_residuals("simson_pencil", "point", simson.residuals, self.config.tol_predicate_envelope)
        self.claim_residuals("directrix_pencil", "point", directrix.residuals, self.config.tol_predicate_envelope)
        if vertex.model == LocusModel.CIRCLE and simson.model == LocusModel.POINT:
            center, _ = vertex.shape
            self.claim_distance("U_antipode_of_F", simson.shape, HPoint.from_array(2.0 * center.xy - F.xy))
        if simson.model == LocusModel.POINT and directrix.model == LocusModel.POINT:
            self.claim_distance("W_reflects_F_about_U", directrix.shape, HPoint.from_array(2.0 * simson.shape.xy - F.xy))

        loci = self.focus_loci()
        self.table("over_F", loci)

        O_report = self.claim_focus_locus("O_ellipse", loci, "O")
        if O_report.model == LocusModel.ELLIPSE:
            _, _, theta = O_report.shape.semi_axes_and_angle()
            self.claim_distance("O_centered_on_X1385", O_report.shape.center(), X1385)
            self.claim_residual(
                "O_minor_axis_on_X1X3", "direction_along", direction_along(theta + np.pi / 2, axis).residual,
                self.config.tol_alignment,
            )

        U_report = self.claim_focus_locus("U_ellipse", loci, "U")
        if U_report.model == LocusModel.ELLIPSE:
            ellipse = U_report.shape
            _, semi_minor, theta = ellipse.semi_axes_and_angle()
            self.claim_distance("U_centered_on_X1", ellipse.center(), X1)
            self.claim_equal("U_semi_minor_is_r", "ellipse", semi_minor, r)
            self.claim_residual(
                "U_minor_axis_on_X1X3", "direction_along", direction_along(theta + np.pi / 2, axis).residual,
                self.config.tol_alignment,
            )
            touch = HPoint.from_array(X1.xy + r * axis.direction)
            self.claim_residual(
                "U_tangent_to_caustic", "conic_tangent_conic_at",
                conic_tangent_conic_at(ellipse, family.inner, touch).residual, self.config.tol_alignment,
            )

        W_report = self.claim_focus_locus("W_circle", loci, "W", LocusModel.CIRCLE)
        if W_report.model == LocusModel.CIRCLE:
            self.claim_residual(
                "W_center_on_X1X3", "point_on_line", point_on_line(W_report.shape[0], axis).residual,
                self.config.tol_alignment,
            )

        self.draw_family(family, self.pipeline())
        self.draw_point("X1", X1)
        self.draw_point("X1385", X1385)
        for key in ("O", "U", "W"):
            self.draw_locus(key, locus_xy(loci, key))
        self.draw_fit("O ellipse", O_report)
        self.draw_fit("U ellipse", U_report)
        self.draw_fit("W circle", W_report)


class MacBeathFocusExperiment(InparabolaExperiment):
    id = "E19"
    title = "MacBeath family: directrices through X4, O and U circles, X3' lines and Brianchon ellipses"
    reference = '"the directrix of P passes through (the right) focus of the MacBeath caustic"'
    family_kind = FamilyKind.MACBEATH

    def evaluate(self):
        family = self.family()
        seed = family.spec.seed
        X3, X4, X5 = (seed.triangle_center(c) for c in (CenterId.X3, CenterId.X4, CenterId.X5))
        X140 = seed.triangle_center(CenterId.X140)
        R = seed.circumradius
        semi_major = family.inner.semi_axes_and_angle()[0]

        F, pencil = self.ip_sweep(self.config.anchor, samples=self.config.envelope_samples)
        directrix = self.fitter.common_point(pencil.lines("directrix"))
        self.claim_residuals(
            "directrix_pencil", "point", directrix.residuals, self.config.tol_predicate_envelope
        )
        if directrix.model == LocusModel.POINT:
            self.claim_distance("directrix_point_is_X4", directrix.shape, X4, self.config.tol_predicate_envelope)

        loci = self.focus_loci(with_polar=True)
        self.table("over_F", loci)
        O_report = self.claim_focus_locus("O_circle", loci, "O", LocusModel.CIRCLE)
        if O_report.model == LocusModel.CIRCLE:
            center, radius = O_report.shape
            self.claim_distance("O_centered_on_X140", center, X140)
            self.claim_equal("O_radius", "circle", radius, 0.75 * R)
        U_report = self.claim_focus_locus("U_circle", loci, "U", LocusModel.CIRCLE)
        if U_report.model == LocusModel.CIRCLE:
            center, radius = U_report.shape
            self.claim_distance("U_centered_on_X5", center, X5)
            self.claim_equal("U_radius_is_caustic_semi_major", "circle", radius, semi_major)
            self.claim_residual(
                "U_tangent_at_caustic_vertex", "conic_tangent_conic_at",
                conic_tangent_conic_at(circle(center, radius), family.inner, family.inner.point_at(0.0)).residual,
                self.config.tol_alignment,
            )

        F, sweep = self.ip_sweep(self.config.anchor, with_polar=True)
        polar_line = self.fitter.fit_line(sweep.points("polar_circumcenter"))
        self.claim_fit("X3'_line", polar_line, self.config.tol_direct, LocusModel.LINE)
        envelope = self.polar_line_envelope(family, X3, X4, X5)

        brianchon = self.fitter.fit_conic(sweep.points("brianchon"))
        self.claim_fit("brianchon_ellipse", brianchon, self.config.tol_direct, LocusModel.ELLIPSE)
        self.brianchon_center_locus()
        self.table("polar", sweep.frame())

        self.draw_focus_sweep(family, F, sweep)
        self.draw_point("X4", X4)
        self.draw_point("X5", X5)
        self.draw_locus("X3'", sweep.points("polar_circumcenter"))
        self.draw_locus("Brianchon", sweep.points("brianchon"))
        self.draw_fit("X3' line", polar_line)
        self.draw_fit("X3' envelope", envelope)
        self.draw_fit("Brianchon ellipse", brianchon)

    def polar_line_envelope(self, family: Family, X3: HPoint, X4: HPoint, X5: HPoint):
        """Envelope over F of the fixed-F lines of polar-triangle circumcenters."""
        angles = self.anchor_angles(self.config.envelope_anchors)
        kept, lines = [], []
        for angle in angles:
            _, sweep = self.ip_sweep(angle, samples=LINE_SAMPLES, with_polar=True)
            if len(sweep) < 3:
                continue
            kept.append(angle)
            lines.append(self.fitter.fit_line(sweep.points("polar_circumcenter")).shape)
        kept = np.array(kept)
        points, dropped = self.envelope(family, lines, kept)
        report = self.fitter.fit_conic(points)
        self.claim_fit("X3'_envelope_conic", report, self.config.tol_envelope, envelope_dropped=dropped)
        self.claim_half_grid(
            "X3'_envelope_conic", report,
            lambda: self.fitter.fit_conic(self.envelope(family, lines[::2], kept[::2])[0]), self.config.tol_envelope,
        )
        if is_central(report):
            foci = report.shape.foci()
            near, far = sorted(foci, key=lambda f: f.distance(X5))
            self.claim_distance("envelope_focus_at_X5", near, X5, self.config.tol_envelope)
            self.claim_residual(
                "envelope_major_axis_on_X3X4", "point_on_line", point_on_line(far, join(X3, X4)).residual,
                self.config.tol_envelope,
            )
        return report

    def brianchon_center_locus(self):
        centers = []
        for angle in self.anchor_angles():
            _, sweep = self.ip_sweep(angle, samples=self.anchor_samples(angle), with_polar=True)
            report = self.fitter.fit_conic(sweep.points("brianchon"))
            if report.model == LocusModel.ELLIPSE:
                centers.append(report.params["center"])
        report = self.fitter.fit_conic(np.array(centers))
        non_conic = not report.accepted(NON_CONIC_FACTOR * self.config.tol_direct)
        message = f"Brianchon ellipse centers: conic fit rms {report.rms_residual:.2e} over {len(centers)} foci"
        logger.warning(message)
        self.note(message)
        self.claim(
            Subclaim(
                name="brianchon_center_locus_not_conic",
                model=report.model.value,
                params={"centers": len(centers)},
                rms=report.rms_residual,
                max=report.max_residual,
                threshold=NON_CONIC_FACTOR * self.config.tol_direct,
                passed=non_conic,
                note="holds when the conic fit is worse than the threshold",
            )
        )
        self.draw_locus("Brianchon centers", np.array(centers))


class BrocardFocusExperiment(InparabolaExperiment):
    id = "E20"
    title = "Brocard family: W circle, O and U ellipses on the X3X39 axis, and the Brianchon circle"
    reference = '"tangent internally at both co-vertices"'
    family_kind = FamilyKind.BROCARD

    def evaluate(self):
        family = self.family()
        caustic = family.inner
        seed = family.spec.seed
        X3, X39 = seed.triangle_center(CenterId.X3), seed.triangle_center(CenterId.X39)
        axis = join(X3, X39)
        _, caustic_minor, caustic_theta = caustic.semi_axes_and_angle()

        loci = self.focus_loci(with_polar=True)
        self.table("over_F", loci)
        self.claim_residuals("vertex_circle_over_F", "circle", loci["vertex_rms"], self.config.tol_direct)

        W_report = self.claim_focus_locus("W_circle", loci, "W", LocusModel.CIRCLE)
        if W_report.model == LocusModel.CIRCLE:
            self.claim_residual(
                "W_center_on_X3X39", "point_on_line", point_on_line(W_report.shape[0], axis).residual,
                self.config.tol_alignment,
            )

        O_report = self.claim_focus_locus("O_ellipse", loci, "O")
        if O_report.model == LocusModel.ELLIPSE:
            _, _, theta = O_report.shape.semi_axes_and_angle()
            self.claim_distance("O_centered_on_mid_X3X39", O_report.shape.center(), midpoint(X3, X39))
            self.claim_residual(
                "O_minor_axis_on_X3X39", "direction_along", direction_along(theta + np.pi / 2, axis).residual,
                self.config.tol_alignment,
            )
            self.claim_residual(
                "O_axis_aligned_with_caustic", "axis_aligned", axis_aligned(O_report.shape, caustic).residual,
                self.config.tol_alignment,
            )

        U_report = self.claim_focus_locus("U_ellipse", loci, "U")
        if U_report.model == LocusModel.ELLIPSE:
            ellipse = U_report.shape
            _, semi_minor, theta = ellipse.semi_axes_and_angle()
            self.claim_residual(
                "U_concentric_with_caustic", "concentric", concentric(ellipse, caustic).residual,
                self.config.tol_alignment,
            )
            self.claim_residual(
                "U_majors_parallel", "direction_along",
                abs(np.sin(theta - caustic_theta)), self.config.tol_alignment,
            )
            self.claim_equal("U_semi_minor_is_caustic_semi_minor", "ellipse", semi_minor, caustic_minor)
            for label, t in (("first", 0.5 * np.pi), ("second", 1.5 * np.pi)):
                self.claim_residual(
                    f"U_tangent_at_{label}_co_vertex", "conic_tangent_conic_at",
                    conic_tangent_conic_at(ellipse, caustic, caustic.point_at(t)).residual, self.config.tol_alignment,
                )

        F, sweep = self.ip_sweep(self.config.anchor, with_polar=True)
        brianchon = self.claim_circle("brianchon_circle", sweep.points("brianchon"))
        self.table("brianchon", sweep.frame())
        centers = self.brianchon_centers()
        self.table("brianchon_centers", centers)
        center_report = self.claim_locus(
            "brianchon_center_conic", locus_xy(centers, "center"), locus_xy(half_grid(centers), "center")
        )
        if center_report.model == LocusModel.ELLIPSE:
            _, _, theta = center_report.shape.semi_axes_and_angle()
            self.claim_residual(
                "brianchon_center_conic_on_X3X39", "point_on_line",
                point_on_line(center_report.shape.center(), axis).residual, self.config.tol_alignment,
            )
            self.claim_residual(
                "brianchon_center_major_axis_on_X3X39", "direction_along",
                direction_along(theta, axis).residual, self.config.tol_alignment,
            )

        self.draw_focus_sweep(family, F, sweep)
        self.draw_point("X39", X39)
        for key in ("O", "U", "W"):
            self.draw_locus(key, locus_xy(loci, key))
        self.draw_locus("Brianchon", sweep.points("brianchon"))
        self.draw_locus("Brianchon centers", locus_xy(centers, "center"))
        self.draw_fit("O ellipse", O_report)
        self.draw_fit("U ellipse", U_report)
        self.draw_fit("Brianchon circle", brianchon)

    def brianchon_centers(self) -> pd.DataFrame:
        rows = []
        for index, angle in enumerate(self.anchor_angles()):
            _, sweep = self.ip_sweep(angle, samples=self.anchor_samples(angle), with_polar=True)
            report = self.fitter.fit_circle(sweep.points("brianchon"))
            if report.model == LocusModel.CIRCLE:
                center_x, center_y = report.params["center"]
                rows.append({"F_index": index, "F_angle": angle, "center_x": center_x, "center_y": center_y})
        return pd.DataFrame(rows)


class CircleInscribedVertexExperiment(InparabolaExperiment):
    id = "E21"
    title = "Circle-inscribed families: closed-form vertex circle, conjugate tangent line and Simson pivot"
    reference = '"the locus of the perpendicular projection of F onto the Simson line is a circle"'
    family_kind = FamilyKind.GENERIC
    defaults = {"r": 0.35}
    oracle_kinds = (FamilyKind.GENERIC, FamilyKind.BICENTRIC, FamilyKind.MACBEATH, FamilyKind.BROCARD)

    def evaluate(self):
        for kind in self.oracle_kinds:
            self.check_vertex_formula(kind)

        family = self.family()
        center_F, R = family.outer_circle()
        angle = self.config.anchor
        F = family.outer_point(angle)
        base = inparabola_feature(F, tol=self.config.tol_predicate)

        def feature(triangle: Triangle):
            values = base(triangle)
            values["vertex_conjugate"] = triangle.conjugate(values["vertex"], ConjugationKind.ISOGONAL)
            return values

        sweep = self.pipeline().run_sweep(feature)
        self.count(sweep)
        self.table("vertex", sweep.frame())
        oracle = inparabola_oracle(family, angle)

        vertex = self.fitter.fit_circle(sweep.points("vertex"))
        self.claim_fit("vertex_circle", vertex, self.config.tol_direct, LocusModel.CIRCLE, k=[oracle.k.real, oracle.k.imag])
        if vertex.model == LocusModel.CIRCLE:
            O, radius = vertex.shape
            self.claim_distance("vertex_center_matches_formula", O, oracle.vertex_center, FORMULA_TOL)
            self.claim_residual(
                "vertex_radius_matches_formula", "circle", abs(radius - oracle.vertex_radius), FORMULA_TOL
            )
            simson = self.fitter.common_point(sweep.lines("simson"))
            self.claim_residuals(
                "simson_pencil", "point", simson.residuals, self.config.tol_predicate_envelope
            )
            if simson.model == LocusModel.POINT:
                self.claim_distance(
                    "simson_point_antipode_of_F", simson.shape, HPoint.from_array(2.0 * O.xy - F.xy),
                    self.config.tol_predicate_envelope,
                )
            self.draw_fit("vertex circle", vertex)

        conjugates = sweep.points("vertex_conjugate")
        line = self.fitter.fit_line(conjugates)
        self.claim_fit("conjugate_line", line, self.config.tol_direct, LocusModel.LINE)
        if line.model == LocusModel.LINE:
            antipode = HPoint.from_array(2.0 * center_F.xy - F.xy)
            touch = foot_of_perpendicular(center_F, line.shape)
            self.claim_residual(
                "conjugate_line_tangent_to_circumcircle", "line_tangent",
                line_tangent(line.shape, family.outer).residual, self.config.tol_direct,
            )
            self.claim_distance("touchpoint_is_antipode_of_F", touch, antipode, self.config.tol_direct)
            rotation = complex(np.cos(angle), np.sin(angle))
            frame = [(p.to_complex() - center_F.to_complex()) / (R * rotation) for p in sweep.hpoints("vertex_conjugate")]
            self.claim_residuals(
                "conjugate_real_part", "line", [abs(2.0 * z.real + 2.0) for z in frame], self.config.tol_direct
            )
            self.draw_fit("conjugate line", line)

        loci = self.focus_loci()
        self.table("over_F", loci)
        U_report = self.claim_focus_locus("simson_point_ellipse", loci, "U")
        if U_report.model == LocusModel.ELLIPSE:
            self.claim_residual(
                "simson_point_ellipse_concentric", "concentric", concentric(U_report.shape, family.inner).residual,
                self.config.tol_alignment,
            )
        W_report = self.claim_focus_locus("W_locus_circle", loci, "W", LocusModel.CIRCLE)
        if W_report.model == LocusModel.CIRCLE:
            self.check_directrix_circle(family, W_report)
        O_report = self.fitter.fit_conic(locus_xy(loci, "O"))
        if O_report.model == LocusModel.ELLIPSE:
            alpha, beta, theta = O_report.shape.semi_axes_and_angle()
            self.note(
                f"O locus over F (reported): center {np.round(O_report.shape.center().xy, 9).tolist()}, "
                f"semi-axes {alpha:.9f}, {beta:.9f}, angle {theta:.9f}, rms {O_report.rms_residual:.2e}"
            )

        self.check_concentric()

        self.draw_focus_sweep(family, F, sweep)
        self.draw_locus("conjugate", conjugates)
        self.draw_locus("U", locus_xy(loci, "U"))
        self.draw_locus("W", locus_xy(loci, "W"))
        self.draw_fit("U ellipse", U_report)
        self.draw_fit("W circle", W_report)

    def check_directrix_circle(self, family: Family, report: FitReport):
        """
        The directrices of a fixed F meet at W, which sweeps a circle over F: with the circumcenter
        at the origin its center is f1 + f2 and its radius |f1| |f2| / R, for caustic foci f1, f2.
        That center sits at twice the caustic center, so the W circle is not concentric with the
        caustic unless the caustic is centered on the circumcenter.
        """
        center_F, R = family.outer_circle()
        caustic_center = family.inner.center()
        f1, f2 = (f.xy - center_F.xy for f in family.inner.foci())
        center, radius = report.shape
        expected = HPoint.from_array(center_F.xy + 2.0 * (caustic_center.xy - center_F.xy))
        self.claim_distance("W_center_is_twice_caustic_offset", center, expected)
        self.claim_equal(
            "W_radius_matches_foci", "circle", radius, float(np.linalg.norm(f1) * np.linalg.norm(f2) / R)
        )
        offset = center.distance(caustic_center)
        refuted = offset > self.config.tol_alignment
        if refuted:
            message = f"W circle center is {offset:.6f} off the caustic center: the concentric W conjecture fails"
            logger.warning(message)
            self.note(message)
        self.claim(
            Subclaim(
                name="W_concentric_conjecture_refuted",
                model="concentric",
                params={"W_center": center.xy.tolist(), "caustic_center": caustic_center.xy.tolist()},
                rms=offset,
                max=offset,
                threshold=self.config.tol_alignment,
                passed=bool(refuted),
                note="holds when the W circle center is off the caustic center",
            )
        )

    def check_vertex_formula(self, kind: FamilyKind):
        """Direct vertices against the closed form, over the anchor grid, on the cached triangles."""
        family = self.family(kind)
        gaps = []
        for angle in self.anchor_angles():
            samples = self.anchor_samples(angle)
            vertices = {s.t: s.vertices for s in self.pipeline(kind, samples).poncelet_samples()}
            _, sweep = self.ip_sweep(angle, kind, samples)
            gaps += [
                value["vertex"].distance(vertex_formula(family, angle, vertices[t]))
                for t, value in zip(sweep.t, sweep.values)
            ]
        self.claim_residuals(f"{kind.value.lower()}_vertex_formula", "coincide", gaps, ORACLE_TOL, samples=len(gaps))

    def check_concentric(self):
        """Concentric bicentric pair: the vertex circle has center 3F/4, radius R/4 and U stays at F/2."""
        family = self.family(FamilyKind.BICENTRIC, r=0.5)
        center, R = family.outer_circle()
        F, sweep = self.ip_sweep(self.config.anchor, FamilyKind.BICENTRIC, r=0.5)
        vertex = self.fitter.fit_circle(sweep.points("vertex"))
        if vertex.model == LocusModel.CIRCLE:
            O, radius = vertex.shape
            self.claim_distance(
                "concentric_vertex_center", O, HPoint.from_array(center.xy + 0.75 * (F.xy - center.xy)), FORMULA_TOL
            )
            self.claim_residual("concentric_vertex_radius", "circle", abs(radius - 0.25 * R), FORMULA_TOL)
        points, _ = self.fitter.envelope_points(sweep.lines("simson"), t=sweep.t)
        still = stationary([HPoint.from_array(p) for p in points], ORACLE_TOL)
        self.claim_residual("concentric_U_stationary", "stationary", still.residual, ORACLE_TOL)
        self.claim_distance(
            "concentric_U_at_half_F", still.witness, HPoint.from_array(0.5 * (F.xy + center.xy)), ORACLE_TOL
        )


class BrianchonFocusCircleExperiment(InparabolaExperiment):
    id = "E22"
    title = "Homothetic family, fixed Brianchon point: the inparabola focus sweeps a circle"
    reference = '"the locus of the focus is a circle"'
    family_kind = FamilyKind.HOMOTHETIC

    def brianchon_sweep(self) -> Tuple[HPoint, LocusSweep]:
        family = self.family()
        point = family.outer_point(self.config.anchor)
        sweep = self.pipeline().run_sweep(brianchon_feature(point, self.config.anchor_clearance))
        self.count(sweep)
        self.draw_family(family, self.pipeline())
        self.draw_point("Brianchon point", point)
        return point, sweep

    def evaluate(self):
        _, sweep = self.brianchon_sweep()
        report = self.claim_circle("focus_circle", sweep.points("focus"))
        self.table("focus", sweep.frame())
        self.draw_locus("focus", sweep.points("focus"))
        self.draw_fit("focus circle", report)


class BrianchonPolarCentroidExperiment(BrianchonFocusCircleExperiment):
    id = "E23"
    title = "Homothetic family, fixed Brianchon point: the touchpoint-triangle centroid sweeps a line"
    reference = '"the locus of the barycenter of the polar triangle is a straight line"'

    def evaluate(self):
        _, sweep = self.brianchon_sweep()
        report = self.fitter.fit_line(sweep.points("polar_centroid"))
        self.claim_fit("polar_centroid_line", report, self.config.tol_direct, LocusModel.LINE)
        self.note("centroid locus tested against the line model only")
        self.table("polar_centroid", sweep.frame())
        self.draw_locus("polar centroid", sweep.points("polar_centroid"))
        self.draw_fit("polar centroid line", report)

import logging
from typing import Tuple

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd
import seaborn as sns

from src.structures.conics import Conic
from src.structures.geometry_types import ConicKind

logger = logging.getLogger("Visualizer")

# fraction of the outer conic's extent added around the viewport
VIEWPORT_MARGIN = 0.1
# grid resolution of the zero-level contour used to draw conics
CONTOUR_GRID = 400
FAMILY_CONICS = ("outer", "caustic")

plt.rcParams["svg.hashsalt"] = "poncelet-parabolas"


def conic_extent(conic: Conic) -> Tuple[np.ndarray, np.ndarray]:
    """Axis-aligned bounding box (lower, upper) of an ellipse."""
    alpha, beta, theta = conic.semi_axes_and_angle()
    half = np.array(
        [
            np.hypot(alpha * np.cos(theta), beta * np.sin(theta)),
            np.hypot(alpha * np.sin(theta), beta * np.cos(theta)),
        ]
    )
    center = conic.center().xy
    return center - half, center + half


def viewport(conic: Conic, margin: float = VIEWPORT_MARGIN) -> Tuple[np.ndarray, np.ndarray]:
    lower, upper = conic_extent(conic)
    pad = margin * (upper - lower)
    return lower - pad, upper + pad


class Visualizer:
    """
    Draws experiment overlays and the suite summary as SVG with seaborn styling.

    Attributes:
        palette (str): seaborn palette for loci and fitted models
    """

    def __init__(self, palette: str = "dark"):
        self.palette = palette

    def draw_conic(self, ax, conic: Conic, lower: np.ndarray, upper: np.ndarray, **style):
        x = np.linspace(lower[0], upper[0], CONTOUR_GRID)
        y = np.linspace(lower[1], upper[1], CONTOUR_GRID)
        X, Y = np.meshgrid(x, y)
        M = conic.M
        Z = M[0, 0] * X**2 + 2 * M[0, 1] * X * Y + M[1, 1] * Y**2 + 2 * M[0, 2] * X + 2 * M[1, 2] * Y + M[2, 2]
        ax.contour(X, Y, Z, levels=[0.0], colors=[style.get("color", "k")], linestyles=style.get("linestyle", "-"),
                   linewidths=style.get("linewidth", 1.0))

    def plot_overlay(self, figure, title: str, path: str):
        """
        Family conics, decimated triangles, locus polylines, fitted models (dashed) and named points.

        Args:
            figure (FigureSpec): objects collected by the experiment
            title (str): plot title
            path (str): output SVG path
        """
        sns.set_theme(style="whitegrid")
        fig, ax = plt.subplots(figsize=(7, 7))
        if figure.viewport is not None and figure.viewport.kind == ConicKind.ELLIPSE:
            lower, upper = viewport(figure.viewport)
        else:
            points = np.vstack(list(figure.loci.values()) or [np.zeros((1, 2))])
            lower, upper = points.min(axis=0) - 1.0, points.max(axis=0) + 1.0

        colors = sns.color_palette(self.palette, max(3, len(figure.loci) + len(figure.conics) + len(figure.lines)))
        color_index = 0

        for triangle in figure.triangles:
            closed = np.vstack([triangle.vertices, triangle.vertices[:1]])
            ax.plot(closed[:, 0], closed[:, 1], color="0.6", linewidth=0.6)

        for name, conic in figure.conics:
            if name in FAMILY_CONICS:
                self.draw_conic(ax, conic, lower, upper, color="k", linewidth=1.2)
            else:
                self.draw_conic(ax, conic, lower, upper, color=colors[color_index], linestyle="--")
                color_index += 1

        for name, line in figure.lines:
            anchor = -line.coords[2] * line.normal
            ax.axline(anchor, anchor + line.direction, color=colors[color_index], linestyle="--", linewidth=1.0)
            color_index += 1

        for name, points in figure.loci.items():
            if len(points):
                ax.plot(points[:, 0], points[:, 1], "-", color=colors[color_index], linewidth=1.0, label=name)
            color_index += 1

        for name, xy in figure.points.items():
            ax.plot(xy[0], xy[1], "o", color="k", markersize=3)
            ax.annotate(name, xy, textcoords="offset points", xytext=(4, 4), fontsize=8)

        ax.set_xlim(lower[0], upper[0])
        ax.set_ylim(lower[1], upper[1])
        ax.set_aspect("equal")
        ax.set_title(title, fontsize=9)
        if figure.loci:
            ax.legend(loc="upper right", fontsize=7)
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
        logger.debug(f"overlay written to {path}")

    def plot_summary(self, summary_df: pd.DataFrame, path: str):
        """
        Bar plot of log10(max residual / threshold) per experiment; bars under zero passed.
        """
        sns.set_theme(style="whitegrid")
        data = summary_df.copy()
        ratio = pd.to_numeric(data["max"], errors="coerce") / data["threshold"].astype(float)
        data["log_ratio"] = np.log10(ratio.replace(np.inf, 1e2).fillna(1e2).clip(1e-12, 1e2))
        plot = sns.catplot(
            data=data,
            kind="bar",
            x="id",
            y="log_ratio",
            hue="pass",
            errorbar=("pi", 100),
            palette=self.palette,
            alpha=0.6,
            height=4,
            aspect=3,
        )
        plot.despine(left=True)
        plot.set_axis_labels("Experiment", "log10(max residual / threshold)")
        plot.ax.axhline(0.0, color="k", linewidth=0.8)
        if plot.legend is not None:
            plot.legend.set_title("Pass")
        plot.savefig(path, format="svg", metadata={"Date": None})
        plt.close(plot.figure)
        logger.debug(f"summary plot written to {path}")

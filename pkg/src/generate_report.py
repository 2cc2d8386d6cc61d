"""
Run configuration and artifact writers: one JSON report per experiment, plus the per-sample CSV
and the SVG overlay unless suppressed, and the suite summary.
"""

import json
import logging
import os
from dataclasses import dataclass, field, fields
from typing import Any, Dict, List, Optional

import pandas as pd

from src.experiments import experiment_ids, get_experiment_from_id
from src.experiments.base import ExperimentConfig, ExperimentResult
from src.structures.fit_report import to_plain
from src.structures.visualizer import Visualizer

logger = logging.getLogger("GenerateReport")

MIN_SAMPLES = 16
MIN_ANCHORS = 4
CSV_FLOAT_FORMAT = "%.17g"


@dataclass
class RunConfig:
    """
    Command-line state of a run; every field maps onto one flag.

    Attributes:
        experiments (List[str]): experiment ids, or ["all"]
        out_dir (str): artifact directory
        samples (int): triangles per direct sweep (envelope sweeps use twice as many)
        anchors (int): anchors in over-all-anchor sweeps
        tol (float): direct-locus rms threshold
        seed_preset (str): seed triangle preset
        family (dict): family parameter overrides
        json_only (bool): write JSON reports only
        svg (bool): write SVG overlays even with json_only
    """

    experiments: List[str] = field(default_factory=lambda: ["all"])
    out_dir: str = "reports"
    samples: Optional[int] = None
    anchors: Optional[int] = None
    tol: Optional[float] = None
    seed_preset: str = "scalene-A"
    family: Dict[str, Any] = field(default_factory=dict)
    json_only: bool = False
    svg: bool = False

    def __post_init__(self):
        if self.samples is not None and self.samples < MIN_SAMPLES:
            raise ValueError(f"samples must be at least {MIN_SAMPLES}, got {self.samples}")
        if self.anchors is not None and self.anchors < MIN_ANCHORS:
            raise ValueError(f"anchors must be at least {MIN_ANCHORS}, got {self.anchors}")

    @classmethod
    def from_dict(cls, params):
        class_fields = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in params.items() if k in class_fields and v is not None})

    @property
    def emit_csv(self) -> bool:
        return not self.json_only

    @property
    def emit_svg(self) -> bool:
        return self.svg or not self.json_only

    def experiment_ids(self) -> List[str]:
        """Resolves "all" and validates every id against the registry."""
        if any(exp_id.lower() == "all" for exp_id in self.experiments):
            return experiment_ids()
        return [get_experiment_from_id(exp_id).id for exp_id in self.experiments]

    def experiment_config(self) -> ExperimentConfig:
        overrides = {"seed_preset": self.seed_preset, "family": dict(self.family)}
        if self.samples is not None:
            overrides.update(samples=self.samples, envelope_samples=2 * self.samples)
        if self.anchors is not None:
            overrides["anchors"] = self.anchors
        if self.tol is not None:
            overrides["tol_direct"] = self.tol
        return ExperimentConfig.from_dict(overrides)


def summary_frame(results: List[ExperimentResult]) -> pd.DataFrame:
    """One row per subclaim of every experiment."""
    rows = []
    for result in results:
        for claim in result.subclaims:
            rows.append(
                {
                    "id": result.id,
                    "subclaim": claim.name,
                    "model": claim.model,
                    "rms": claim.rms,
                    "max": claim.max,
                    "threshold": claim.threshold,
                    "pass": claim.passed,
                    "experiment_pass": result.passed,
                    "dropped": result.dropped,
                    "total": result.total,
                }
            )
    return pd.DataFrame(
        rows,
        columns=["id", "subclaim", "model", "rms", "max", "threshold", "pass", "experiment_pass", "dropped", "total"],
    )


class ReportWriter:
    """
    Writes the artifacts of a run into one directory.

    Attributes:
        run_config (RunConfig): emit flags and output directory
        visualizer (Visualizer): SVG renderer
    """

    def __init__(self, run_config: RunConfig, visualizer: Optional[Visualizer] = None):
        self.run_config = run_config
        self.out_dir = run_config.out_dir
        self.visualizer = visualizer or Visualizer()

    def prepare(self):
        """Creates the output directory; raises OSError when it cannot be written."""
        os.makedirs(self.out_dir, exist_ok=True)
        if not os.access(self.out_dir, os.W_OK):
            raise PermissionError(f"output directory is not writable: {self.out_dir}")

    def path(self, file_name: str) -> str:
        return os.path.join(self.out_dir, file_name)

    def write_table(self, frame: pd.DataFrame, file_name: str) -> str:
        file_path = self.path(file_name)
        frame.to_csv(file_path, index=False, float_format=CSV_FLOAT_FORMAT)
        return file_path

    def write_json(self, data: Dict[str, Any], file_name: str) -> str:
        file_path = self.path(file_name)
        with open(file_path, "w", encoding="utf-8") as f_out:
            json.dump(to_plain(data), f_out, indent=2, sort_keys=True)
            f_out.write("\n")
        return file_path

    def write_result(self, result: ExperimentResult) -> List[str]:
        """Writes <id>.csv and <id>.svg when enabled, then <id>.json listing them."""
        artifacts = []
        if self.run_config.emit_csv and result.tables:
            frames = [frame.assign(table=name) for name, frame in result.tables.items()]
            frame = pd.concat(frames, ignore_index=True)
            frame = frame[["table"] + [c for c in frame.columns if c != "table"]]
            artifacts.append(self.write_table(frame, f"{result.id}.csv"))
        if self.run_config.emit_svg:
            svg_path = self.path(f"{result.id}.svg")
            self.visualizer.plot_overlay(result.figure, f"{result.id}: {result.title}", svg_path)
            artifacts.append(svg_path)

        report = result.as_dict()
        report["artifacts"] = [os.path.basename(p) for p in artifacts]
        json_path = self.write_json(report, f"{result.id}.json")
        logger.info(f"{result.id} report written to {json_path}")
        return [json_path] + artifacts

    def write_summary(self, summary_df: pd.DataFrame) -> List[str]:
        paths = [self.write_table(summary_df, "summary.csv")]
        if self.run_config.emit_svg and not summary_df.empty:
            svg_path = self.path("summary.svg")
            self.visualizer.plot_summary(summary_df, svg_path)
            paths.append(svg_path)
        logger.info(f"summary written to {paths[0]}")
        return paths

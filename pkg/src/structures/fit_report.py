from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import numpy as np

from src.structures.geometry_types import LocusModel


def to_plain(value: Any) -> Any:
    """Converts numpy containers and scalars into JSON-ready Python values."""
    if isinstance(value, dict):
        return {str(k): to_plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_plain(value.tolist())
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return value if np.isfinite(value) else None
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if hasattr(value, "coords"):
        return to_plain(value.coords)
    if hasattr(value, "M"):
        return to_plain(value.M)
    return value


@dataclass
class FitReport:
    """
    Outcome of fitting one model to a sampled locus.

    Attributes:
        model (LocusModel): fitted model, NONE when the fit is undefined
        params (dict): model parameters (line coords, circle center and radius, conic matrix ...)
        rms_residual (float): root mean square of the per-sample residuals
        max_residual (float): largest per-sample residual
        n_samples (int): number of samples fitted
        dropped (int): samples discarded before fitting
        residuals (np.ndarray): per-sample residuals backing the two statistics
        shape (object): the fitted geometric object (HLine, Conic, HPoint) when there is one
    """

    model: LocusModel
    params: Dict[str, Any]
    rms_residual: float
    max_residual: float
    n_samples: int
    dropped: int = 0
    residuals: np.ndarray = field(default_factory=lambda: np.zeros(0), repr=False)
    shape: Optional[Any] = field(default=None, repr=False)

    @classmethod
    def from_residuals(
        cls,
        model: LocusModel,
        params: Dict[str, Any],
        residuals: np.ndarray,
        dropped: int = 0,
        shape: Optional[Any] = None,
    ) -> "FitReport":
        residuals = np.abs(np.asarray(residuals, dtype=float))
        return cls(
            model=model,
            params=params,
            rms_residual=float(np.sqrt(np.mean(residuals**2))),
            max_residual=float(np.max(residuals)),
            n_samples=len(residuals),
            dropped=dropped,
            residuals=residuals,
            shape=shape,
        )

    @classmethod
    def undefined(cls, n_samples: int, reason: str, dropped: int = 0) -> "FitReport":
        return cls(
            model=LocusModel.NONE,
            params={"reason": reason},
            rms_residual=float("inf"),
            max_residual=float("inf"),
            n_samples=n_samples,
            dropped=dropped,
        )

    def accepted(self, threshold: float) -> bool:
        return self.model != LocusModel.NONE and self.rms_residual < threshold

    def as_dict(self) -> Dict[str, Any]:
        return {
            "model": self.model.value,
            "params": to_plain(self.params),
            "rms": to_plain(self.rms_residual),
            "max": to_plain(self.max_residual),
            "n_samples": self.n_samples,
            "dropped": self.dropped,
        }


@dataclass
class Subclaim:
    """
    One checked statement of an experiment.

    Attributes:
        name (str): short identifier, unique within the experiment
        model (str): the fitted model or predicate name
        params (dict): fitted parameters and reference values
        rms (float): residual statistic compared against the threshold
        max (float): worst per-sample residual
        threshold (float): acceptance threshold for rms
        passed (bool): rms under threshold (informational claims may override)
        note (str): free-text remark carried into the report
    """

    name: str
    model: str
    params: Dict[str, Any]
    rms: float
    max: float
    threshold: float
    passed: bool
    note: str = ""

    @classmethod
    def from_fit(
        cls, name: str, report: FitReport, threshold: float, expected: Optional[LocusModel] = None, **extra
    ) -> "Subclaim":
        expected_ok = expected is None or report.model == expected
        params = dict(report.params)
        params.update(extra)
        return cls(
            name=name,
            model=report.model.value,
            params=params,
            rms=report.rms_residual,
            max=report.max_residual,
            threshold=threshold,
            passed=bool(expected_ok and report.accepted(threshold)),
        )

    @classmethod
    def from_residual(
        cls, name: str, model: str, residual: float, threshold: float, max_residual: Optional[float] = None, **params
    ) -> "Subclaim":
        residual = float(residual)
        return cls(
            name=name,
            model=model,
            params=params,
            rms=residual,
            max=residual if max_residual is None else float(max_residual),
            threshold=threshold,
            passed=bool(np.isfinite(residual) and residual < threshold),
        )

    @classmethod
    def from_residuals(cls, name: str, model: str, residuals, threshold: float, **params) -> "Subclaim":
        """Aggregates per-sample residuals: the claim holds when the worst one is under threshold."""
        residuals = np.abs(np.asarray(residuals, dtype=float))
        if residuals.size == 0:
            return cls(name, model, params, float("inf"), float("inf"), threshold, False, "no samples")
        worst = float(np.max(residuals))
        return cls(
            name=name,
            model=model,
            params=params,
            rms=float(np.sqrt(np.mean(residuals**2))),
            max=worst,
            threshold=threshold,
            passed=bool(np.isfinite(worst) and worst < threshold),
        )

    def as_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "model": self.model,
            "params": to_plain(self.params),
            "rms": to_plain(self.rms),
            "max": to_plain(self.max),
            "threshold": self.threshold,
            "pass": bool(self.passed),
            "note": self.note,
        }

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Hashable, List, Tuple

import numpy as np
import pandas as pd

from src.poncelet import Family, PonceletSample, triangle_at
from src.structures.common import GeometryError
from src.structures.geom import HLine, HPoint
from src.structures.triangle import Triangle

logger = logging.getLogger("SweepPipeline")


@dataclass
class LocusSweep:
    """
    Features tracked over a family sweep.

    Attributes:
        t (np.ndarray): parameters of the kept samples
        values (List[Dict[str, Any]]): per-sample features (HPoint, HLine or float values)
        dropped (int): samples skipped as degenerate or failing a construction
        total (int): samples attempted
    """

    t: np.ndarray
    values: List[Dict[str, Any]]
    dropped: int
    total: int
    errors: Dict[str, int] = field(default_factory=dict)

    def __len__(self):
        return len(self.values)

    def points(self, key: str) -> np.ndarray:
        return np.array([v[key].xy for v in self.values]).reshape(-1, 2)

    def hpoints(self, key: str) -> List[HPoint]:
        return [v[key] for v in self.values]

    def lines(self, key: str) -> List[HLine]:
        return [v[key] for v in self.values]

    def scalars(self, key: str) -> np.ndarray:
        return np.array([v[key] for v in self.values], dtype=float)

    def frame(self) -> pd.DataFrame:
        """One row per kept sample; points give _x/_y columns, lines give _l/_m/_n columns."""
        rows = []
        for t, value in zip(self.t, self.values):
            row = {"t": t}
            for key, item in value.items():
                if isinstance(item, HPoint):
                    row[f"{key}_x"], row[f"{key}_y"] = item.x, item.y
                elif isinstance(item, HLine):
                    row[f"{key}_l"], row[f"{key}_m"], row[f"{key}_n"] = item.coords
                elif np.isscalar(item):
                    row[key] = item
            rows.append(row)
        return pd.DataFrame(rows)


class SweepPipeline:
    """
    Samples a Poncelet family once on an evenly spaced grid and evaluates features on the cached
    triangles.

    Attributes:
        family (Family): the Poncelet pair
        samples (int): grid size
        orientation (int): Poncelet branch, +1 or -1
    """

    def __init__(self, family: Family, samples: int, orientation: int = 1):
        self.family = family
        self.samples = samples
        self.orientation = orientation
        self._cache: List[PonceletSample] = []
        self._sweeps: Dict[Hashable, LocusSweep] = {}

    @property
    def grid(self) -> np.ndarray:
        return np.linspace(0.0, 2.0 * np.pi, self.samples, endpoint=False)

    def poncelet_samples(self) -> List[PonceletSample]:
        if not self._cache:
            self._cache = [triangle_at(self.family, t, self.orientation) for t in self.grid]
            degenerate = sum(s.degenerate for s in self._cache)
            if degenerate:
                logger.warning(
                    f"{degenerate} degenerate triangles in {self.family.kind.value} sweep of {self.samples}"
                )
        return self._cache

    def triangles(self) -> List[Tuple[float, Triangle]]:
        return [(s.t, s.triangle) for s in self.poncelet_samples() if not s.degenerate]

    def closure_errors(self) -> np.ndarray:
        return np.array([s.closure_error for s in self.poncelet_samples()])

    def run_sweep(self, feature: Callable[[Triangle], Dict[str, Any]]) -> LocusSweep:
        """
        Evaluates feature on every non-degenerate triangle; geometry failures drop the sample.

        Features carrying a key are cached per pipeline; a cached sweep under one of the
        feature's superset keys serves it as well.
        """
        key = getattr(feature, "key", None)
        if key is not None:
            for candidate in (key, *getattr(feature, "supersets", ())):
                if candidate in self._sweeps:
                    return self._sweeps[candidate]

        kept_t, values, errors = [], [], {}
        samples = self.poncelet_samples()
        for sample in samples:
            if sample.degenerate:
                errors["degenerate triangle"] = errors.get("degenerate triangle", 0) + 1
                continue
            try:
                values.append(feature(sample.triangle))
            except GeometryError as e:
                reason = str(e).split(":")[0]
                errors[reason] = errors.get(reason, 0) + 1
                continue
            kept_t.append(sample.t)

        dropped = len(samples) - len(values)
        if dropped > 0.01 * len(samples):
            logger.warning(f"dropped {dropped} of {len(samples)} samples: {errors}")
        elif dropped:
            logger.debug(f"dropped {dropped} of {len(samples)} samples: {errors}")
        sweep = LocusSweep(
            t=np.array(kept_t), values=values, dropped=dropped, total=len(samples), errors=errors
        )
        if key is not None:
            self._sweeps[key] = sweep
        return sweep

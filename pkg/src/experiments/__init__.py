from typing import Dict, List, Optional, Type

from src.experiments.base import Experiment, ExperimentConfig, ExperimentResult
from src.experiments.circumparabola_experiments import (
    BicentricDirectrixEnvelopeExperiment,
    BrocardPerspectorCircleExperiment,
    CircleInscribedDirectrixEnvelopeExperiment,
    FocusLineExperiment,
    HomotheticDirectrixEnvelopeExperiment,
    HomotheticPolarCentroidExperiment,
    InellipseDirectrixEnvelopeExperiment,
    KiepertImageExperiment,
    PerspectorEllipseExperiment,
    PolarCentroidLineExperiment,
    ReflectedTangentExperiment,
    StationaryPerspectorExperiment,
    SteinerPointCollinearityExperiment,
)
from src.experiments.inparabola_experiments import (
    BicentricFocusExperiment,
    BrianchonFocusCircleExperiment,
    BrianchonPolarCentroidExperiment,
    BrocardFocusExperiment,
    CircleInscribedVertexExperiment,
    FootCircleExperiment,
    MacBeathFocusExperiment,
    OverFocusExperiment,
    PivotExperiment,
    VertexCircleExperiment,
)

_EXPERIMENT_CLASSES: List[Type[Experiment]] = [
    FocusLineExperiment,
    PolarCentroidLineExperiment,
    BicentricDirectrixEnvelopeExperiment,
    InellipseDirectrixEnvelopeExperiment,
    CircleInscribedDirectrixEnvelopeExperiment,
    PerspectorEllipseExperiment,
    BrocardPerspectorCircleExperiment,
    ReflectedTangentExperiment,
    HomotheticDirectrixEnvelopeExperiment,
    HomotheticPolarCentroidExperiment,
    StationaryPerspectorExperiment,
    SteinerPointCollinearityExperiment,
    KiepertImageExperiment,
    VertexCircleExperiment,
    FootCircleExperiment,
    PivotExperiment,
    OverFocusExperiment,
    BicentricFocusExperiment,
    MacBeathFocusExperiment,
    BrocardFocusExperiment,
    CircleInscribedVertexExperiment,
    BrianchonFocusCircleExperiment,
    BrianchonPolarCentroidExperiment,
]

EXPERIMENTS: Dict[str, Type[Experiment]] = {cls.id: cls for cls in _EXPERIMENT_CLASSES}


def experiment_ids() -> List[str]:
    return sorted(EXPERIMENTS, key=lambda exp_id: int(exp_id[1:]))


def get_experiment_from_id(exp_id: str) -> Type[Experiment]:
    if exp_id not in EXPERIMENTS:
        raise ValueError(f"Undefined mapping to experiment for: {exp_id!r}")
    return EXPERIMENTS[exp_id]


def list_experiments(config: Optional[ExperimentConfig] = None) -> List[dict]:
    """Registry summary: id, title, quoted reference, family and the merged default configuration."""
    config = config or ExperimentConfig()
    entries = []
    for exp_id in experiment_ids():
        cls = EXPERIMENTS[exp_id]
        entries.append(
            {
                "id": cls.id,
                "title": cls.title,
                "reference": cls.reference,
                "family": cls.family_kind.value if cls.family_kind else None,
                "config": {**config.as_dict(), "defaults": dict(cls.defaults)},
            }
        )
    return entries


def run_experiment(exp_id: str, config: Optional[ExperimentConfig] = None) -> ExperimentResult:
    return get_experiment_from_id(exp_id)(config).run()

from .config import ExperimentConfig, ExperimentKind, check_preconditions, load_config, parse_config
from .experiments import manifest, run
from .qq import QQReport, QQTable, qq_experiment
from .writer import ArtifactWriter

__all__ = [
    "ArtifactWriter",
    "ExperimentConfig",
    "ExperimentKind",
    "QQReport",
    "QQTable",
    "check_preconditions",
    "load_config",
    "manifest",
    "parse_config",
    "qq_experiment",
    "run",
]

from __future__ import annotations

import pathlib
from typing import List, Literal, Optional, Tuple

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from rmcorr.config import Settings
from rmcorr.distributions import DistributionSpec
from rmcorr.exceptions import ConfigError, InvalidParameter, ModelConstructionError, NotPositiveSemiDefinite
from rmcorr.population import build_model


class ExperimentKind:
    SIMULATE = "simulate"
    MP = "mp"
    LSD = "lsd"
    DIAGNOSE = "diagnose"
    QQ = "qq"
    VALIDATE = "validate"
    MOMENTS = "moments"

    all = [SIMULATE, MP, LSD, DIAGNOSE, QQ, VALIDATE, MOMENTS]


class ModelConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    mode: Literal["identity", "banded_toeplitz", "sparse_root"] = "identity"
    coeffs: List[float] = Field(default_factory=list)


class DistConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: str
    dof: Optional[float] = None
    alpha: Optional[float] = None

    def to_spec(self) -> DistributionSpec:
        return DistributionSpec.from_dict(self.model_dump(exclude_none=True))


class SizeConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    p: int = Field(gt=0)
    n: int = Field(ge=2)


class ToleranceConfig(BaseModel):
    """Per-run overrides of the solver and Monte Carlo defaults in Settings"""

    model_config = ConfigDict(extra="forbid")

    lsd_damping: Optional[float] = Field(default=None, gt=0, le=1)
    lsd_tol: Optional[float] = Field(default=None, gt=0)
    lsd_max_iter: Optional[int] = Field(default=None, gt=0)
    lsd_epsilon: Optional[float] = Field(default=None, gt=0)
    batches: Optional[int] = Field(default=None, ge=2)

    def solver_kwargs(self) -> dict:
        return dict(damping=self.lsd_damping, tol=self.lsd_tol, max_iter=self.lsd_max_iter)


class ExperimentConfig(BaseModel):
    """Schema of an experiment document. See files/configs for one example per experiment kind"""

    model_config = ConfigDict(extra="forbid")

    experiment: Literal["simulate", "mp", "lsd", "diagnose", "qq", "validate", "moments"]
    model: ModelConfig = Field(default_factory=ModelConfig)
    distributions: List[DistConfig] = Field(default_factory=lambda: [DistConfig(kind="gaussian")])
    p: Optional[int] = Field(default=None, gt=0)
    n: Optional[int] = Field(default=None, ge=2)
    sizes: List[SizeConfig] = Field(default_factory=list)
    gamma: Optional[float] = Field(default=None, gt=0)
    replicates: int = Field(default=Settings.replicates, ge=2)
    seed: int = Field(default=0, ge=0, lt=2**64)
    z_grid: List[Tuple[float, float]] = Field(default_factory=lambda: [(0.0, 1.0)])
    q_list: List[float] = Field(default_factory=lambda: list(Settings.q_list))
    grid_points: int = Field(default=Settings.grid_points, ge=2)
    output_dir: Optional[str] = None
    tolerances: ToleranceConfig = Field(default_factory=ToleranceConfig)
    threads: Optional[int] = Field(default=None, ge=1)

    @field_validator("z_grid")
    @classmethod
    def _upper_half_plane(cls, value):
        for re, im in value:
            if im <= 0:
                raise ValueError(f"z_grid points need a positive imaginary part, got [{re}, {im}]")
        return value

    @field_validator("q_list")
    @classmethod
    def _unit_interval(cls, value):
        for q in value:
            if not 0 < q < 1:
                raise ValueError(f"Quantile levels must lie in (0, 1), got {q}")
        return value

    @model_validator(mode="after")
    def _sizes_given(self):
        if (self.p is None) != (self.n is None):
            raise ValueError("p and n must be given together")
        if self.experiment == ExperimentKind.MP:
            if self.gamma is None and not self.size_list:
                raise ValueError("The mp experiment needs gamma or at least one (p, n) pair")
        elif not self.size_list:
            raise ValueError(f"The {self.experiment} experiment needs p and n or a list of sizes")
        if self.experiment == ExperimentKind.QQ and len(self.distributions) != 2:
            raise ValueError(f"The qq experiment compares exactly two distributions, got {len(self.distributions)}")
        return self

    @property
    def size_list(self) -> List[Tuple[int, int]]:
        sizes = [(s.p, s.n) for s in self.sizes]
        if self.p is not None:
            sizes.insert(0, (self.p, self.n))
        return sizes

    @property
    def specs(self) -> List[DistributionSpec]:
        return [d.to_spec() for d in self.distributions]

    def destination(self) -> pathlib.Path:
        if self.output_dir is not None:
            return pathlib.Path(self.output_dir)
        return Settings.output_dir / self.experiment


def _node_line(node: yaml.Node, loc: tuple) -> Optional[int]:
    """1-based line of the YAML node found by following a pydantic error location"""
    line = node.start_mark.line + 1 if node is not None else None
    for key in loc:
        if isinstance(node, yaml.MappingNode):
            match = [v for k, v in node.value if k.value == str(key)]
            if not match:
                return line
            node = match[0]
        elif isinstance(node, yaml.SequenceNode) and isinstance(key, int) and key < len(node.value):
            node = node.value[key]
        else:
            return line
        line = node.start_mark.line + 1
    return line


def parse_config(text: str, experiment: str = None) -> ExperimentConfig:
    """Parse and validate an experiment document. A manifest written by an earlier run is accepted as well.

    :param experiment: Experiment kind used when the document does not name one
    """
    try:
        data = yaml.safe_load(text)
        root = yaml.compose(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        raise ConfigError(f"Malformed config: {getattr(e, 'problem', e)}", None if mark is None else mark.line + 1)

    if not isinstance(data, dict):
        raise ConfigError("Config document must be a mapping", 1)

    if "manifest_version" in data:
        data = data.get("config", {})
        root = [v for k, v in root.value if k.value == "config"][0] if isinstance(root, yaml.MappingNode) else root

    if experiment is not None:
        data.setdefault("experiment", experiment)

    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as e:
        err = e.errors()[0]
        loc = tuple(err["loc"])
        where = ".".join(str(x) for x in loc) or "config"
        raise ConfigError(f"{where}: {err['msg']}", _node_line(root, loc))


def load_config(config_file, experiment: str = None) -> ExperimentConfig:
    config_file = pathlib.Path(config_file)
    if not config_file.is_file():
        raise ConfigError(f'Config file "{config_file}" does not exist')
    with open(config_file, "r") as f:
        return parse_config(f.read(), experiment)


def check_preconditions(config: ExperimentConfig) -> None:
    """Build every population model and distribution the run will touch before any computation starts"""
    try:
        config.specs
    except InvalidParameter as e:
        raise ConfigError(f"distributions: {e}")

    for p, n in config.size_list:
        try:
            model = build_model(config.model.mode, p, config.model.coeffs)
        except (InvalidParameter, ModelConstructionError, NotPositiveSemiDefinite, ValidationError) as e:
            raise ConfigError(f"model at p={p}, n={n}: {e}")
        if config.experiment == ExperimentKind.DIAGNOSE and not model.is_identity:
            raise ConfigError("The diagnose experiment evaluates the master equation, which needs the identity model")

"""
Scenario configuration: beam, damping, boundary condition and run knobs
Loaded from TOML scenario files and validated against every type invariant
"""
import dataclasses
import hashlib
import json
import logging
import math
import os
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from config.scenario_keys import (
    BOUNDARY_TYPES,
    DAMPING_MODELS,
    PROFILE_KEYS,
    PROFILE_KIND_KEYS,
    PROFILE_NAMES,
    RUN_KEY_TYPES,
    SCENARIO_KEYS,
)
from config.settings import EVOLVE_CONFIG, LAB_CONFIG, SWEEP_CONFIG, WITNESS_CONFIG
from utils.errors import ScenarioError
from .damping import DampingModel, DampingProfile, DampingSpec
from .params import BeamParameters

logger = logging.getLogger('lab.scenario')


class BoundaryCondition(Enum):
    FULL_DIRICHLET = "dddd"
    DIRICHLET_NEUMANN_NEUMANN = "dnnd"


@dataclass(frozen=True)
class RunSettings:
    """Run-specific knobs; None means 'derive from the mesh'"""

    n_elements: int = 100
    dt: Optional[float] = None
    t_max: float = EVOLVE_CONFIG["t_max"]
    sample_every: int = EVOLVE_CONFIG["sample_every"]
    lambda_min: Optional[float] = None
    lambda_max: Optional[float] = None
    samples: int = SWEEP_CONFIG["samples"]
    spacing: str = SWEEP_CONFIG["spacing"]
    seed: int = 0
    modes: Tuple[int, ...] = tuple(WITNESS_CONFIG["modes"])

    def violations(self) -> List[str]:
        problems = []
        if self.n_elements < LAB_CONFIG["min_elements"]:
            problems.append(f"run.n_elements: must be >= {LAB_CONFIG['min_elements']} (got {self.n_elements})")
        for name in ("dt", "t_max", "lambda_min", "lambda_max"):
            value = getattr(self, name)
            if value is not None and not (math.isfinite(value) and value > 0.0):
                problems.append(f"run.{name}: must be positive (got {value})")
        for name in ("sample_every", "samples"):
            if getattr(self, name) <= 0:
                problems.append(f"run.{name}: must be positive (got {getattr(self, name)})")
        if self.seed < 0:
            problems.append(f"run.seed: must be nonnegative (got {self.seed})")
        if self.spacing not in ("log", "linear"):
            problems.append(f"run.spacing: must be 'log' or 'linear' (got {self.spacing!r})")
        if any(m < 1 for m in self.modes):
            problems.append("run.modes: mode indices must be >= 1")
        if (self.lambda_min is not None and self.lambda_max is not None
                and self.lambda_min >= self.lambda_max):
            problems.append("run.lambda_min: must be below run.lambda_max")
        return problems


@dataclass(frozen=True)
class ScenarioConfig:
    params: BeamParameters
    damping: DampingSpec
    bc: BoundaryCondition
    run: RunSettings = field(default_factory=RunSettings)
    name: str = "scenario"

    @property
    def n_elements(self) -> int:
        return self.run.n_elements

    def with_run(self, **overrides) -> "ScenarioConfig":
        """Copy with run knobs replaced; None values are ignored so flags only win when given"""
        changes = {k: v for k, v in overrides.items() if v is not None}
        return dataclasses.replace(self, run=dataclasses.replace(self.run, **changes))

    def config_hash(self) -> str:
        payload = json.dumps(_plain(self), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def scenario_violations(cfg: ScenarioConfig) -> List[str]:
    """Every broken invariant, one human-readable line each"""
    problems = list(cfg.params.violations())
    length = cfg.params.length
    for name, profile in zip(PROFILE_NAMES, cfg.damping.profiles):
        problems.extend(profile.violations(length, f"damping.{name}"))
    problems.extend(cfg.run.violations())
    if cfg.bc is BoundaryCondition.DIRICHLET_NEUMANN_NEUMANN:
        n = resonant_index(cfg.params)
        if n is not None:
            problems.append(f"beam.length: L = n*pi/ell for n={n} (DNND energy is not a norm)")
    return problems


def validate_scenario(cfg: ScenarioConfig) -> ScenarioConfig:
    """Return cfg unchanged when valid; otherwise raise ScenarioError with the violation list"""
    problems = scenario_violations(cfg)
    if problems:
        for p in problems:
            logger.warning(f"Scenario '{cfg.name}' invalid: {p}")
        raise ScenarioError(problems)
    return cfg


def resonant_index(params: BeamParameters) -> Optional[int]:
    """Smallest n >= 1 with L = n*pi/ell up to the relative admissibility margin"""
    if params.ell <= 0.0:
        return None
    margin = LAB_CONFIG["dnnd_margin"]
    n_max = int(math.ceil(params.length * params.ell / math.pi * (1.0 + margin))) + 1
    for n in range(1, n_max + 1):
        if abs(params.length - n * math.pi / params.ell) <= margin * params.length:
            return n
    return None


def satisfies_ssc(damping: DampingSpec) -> bool:
    """At least one coefficient bounded below by a positive constant on a subinterval"""
    return any(profile.support() for profile in damping.profiles)


# ---- scenario files --------------------------------------------------

def load_scenario(path: str, validate: bool = True) -> ScenarioConfig:
    """Parse a TOML scenario file; unknown tables/keys and invariant breaks raise ScenarioError"""
    if not os.path.isfile(path):
        raise ScenarioError([f"scenario file not found: {path}"])
    try:
        with open(path, "rb") as handle:
            raw = tomllib.load(handle)
    except tomllib.TOMLDecodeError as e:
        raise ScenarioError([f"{path}: not valid TOML ({e})"])

    name = os.path.splitext(os.path.basename(path))[0]
    cfg = scenario_from_dict(raw, name=name)
    logger.info(f"Loaded scenario '{name}' from {path}")
    return validate_scenario(cfg) if validate else cfg


def scenario_from_dict(raw: Dict[str, Any], name: str = "scenario") -> ScenarioConfig:
    problems = _unknown_keys(raw)
    if problems:
        raise ScenarioError(problems)

    beam = raw.get("beam", {})
    missing = [k for k in SCENARIO_KEYS["beam"] if k not in beam]
    if missing:
        raise ScenarioError([f"beam.{k}: required" for k in missing])
    problems = []
    values = {k: _typed(beam[k], "number", f"beam.{k}", problems) for k in SCENARIO_KEYS["beam"]}
    if problems:
        raise ScenarioError(problems)
    params = BeamParameters(**values)

    damping_raw = raw.get("damping", {})
    model_key = _typed(damping_raw.get("model", "kelvin_voigt"), "string", "damping.model", problems)
    if model_key is not None and model_key not in DAMPING_MODELS:
        problems.append(f"damping.model: unknown model {model_key!r}")
    bc_key = _typed(raw.get("bc", {}).get("type", "dddd"), "string", "bc.type", problems)
    if bc_key is not None and bc_key not in BOUNDARY_TYPES:
        problems.append(f"bc.type: unknown boundary condition {bc_key!r}")
    run_raw = {key: _typed(value, RUN_KEY_TYPES[key], f"run.{key}", problems)
               for key, value in raw.get("run", {}).items()}
    if problems:
        raise ScenarioError(problems)

    profiles = []
    for pname in PROFILE_NAMES:
        profiles.append(_profile_from_dict(damping_raw.get(pname, {"kind": "zero"}), params.length, pname))
    damping = DampingSpec(*profiles, model=DampingModel(model_key))
    return ScenarioConfig(params, damping, BoundaryCondition(bc_key), RunSettings(**run_raw), name)


def _typed(value: Any, expected: str, key: str, problems: List[str]) -> Any:
    """TOML value checked against its registered type; None (with a problem recorded) on mismatch"""
    integer = isinstance(value, int) and not isinstance(value, bool)
    if expected == "integer" and integer:
        return value
    if expected == "number" and (integer or isinstance(value, float)):
        return float(value)
    if expected == "string" and isinstance(value, str):
        return value
    if expected == "list of integers" and isinstance(value, list) and all(
            isinstance(v, int) and not isinstance(v, bool) for v in value):
        return tuple(value)
    problems.append(f"{key}: expected {expected}, got {type(value).__name__} {value!r}")
    return None


def _profile_from_dict(spec: Dict[str, Any], length: float, pname: str) -> DampingProfile:
    problems: List[str] = []
    kind = _typed(spec.get("kind", "zero"), "string", f"damping.{pname}.kind", problems)
    if problems:
        raise ScenarioError(problems)
    if kind not in PROFILE_KIND_KEYS:
        raise ScenarioError([f"damping.{pname}.kind: unknown kind {kind!r}"])
    needed = PROFILE_KIND_KEYS[kind]
    missing = [k for k in needed if k not in spec]
    if missing:
        raise ScenarioError([f"damping.{pname}.{k}: required for kind={kind}" for k in missing])
    values = {k: _typed(spec[k], "number", f"damping.{pname}.{k}", problems) for k in needed}
    if problems:
        raise ScenarioError(problems)
    if "d0" in values and values["d0"] <= 0.0:
        problems.append(f"damping.{pname}.d0: must be positive (got {values['d0']})")
    if "alpha" in values and not (0.0 <= values["alpha"] < values["beta"] <= length):
        problems.append(f"damping.{pname}: need 0 <= alpha < beta <= L")
    if "ramp" in values and not (0.0 < 2.0 * values["ramp"] <= values["beta"] - values["alpha"]):
        problems.append(f"damping.{pname}.ramp: need 0 < 2*ramp <= beta - alpha")
    if problems:
        raise ScenarioError(problems)

    if kind == "zero":
        return DampingProfile.zero(length)
    if kind == "global":
        return DampingProfile.global_(length, values["d0"])
    if kind == "indicator":
        return DampingProfile.indicator(length, values["alpha"], values["beta"], values["d0"])
    return DampingProfile.smoothstep(length, values["alpha"], values["beta"], values["d0"], values["ramp"])


def _unknown_keys(raw: Dict[str, Any]) -> List[str]:
    problems = []
    for table, content in raw.items():
        if table not in SCENARIO_KEYS:
            problems.append(f"unknown table [{table}]")
            continue
        if not isinstance(content, dict):
            problems.append(f"[{table}] must be a table")
            continue
        for key, value in content.items():
            if table == "damping" and key in PROFILE_NAMES:
                if not isinstance(value, dict):
                    problems.append(f"[damping.{key}] must be a table")
                    continue
                for sub in value:
                    if sub not in PROFILE_KEYS:
                        problems.append(f"unknown key damping.{key}.{sub}")
            elif key not in SCENARIO_KEYS[table]:
                problems.append(f"unknown key {table}.{key}")
    return problems


def _plain(obj):
    if isinstance(obj, Enum):
        return obj.value
    if dataclasses.is_dataclass(obj):
        return {f.name: _plain(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj

"""
Shared plumbing for the subcommand tools: scenario loading with flag overrides,
run manifests, artifact writing and the result-dictionary convention
"""
import dataclasses
import functools
import hashlib
import json
import logging
import os
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from config.settings import TOOL_VERSION
from fem.assembly import DiscreteOperator
from fem.export import dump_matrices
from model.scenario import ScenarioConfig, load_scenario, validate_scenario
from utils.csv_writers import write_csv
from utils.errors import BresseLabError, UsageError
from utils.report_builders import ReportBuilder

logger = logging.getLogger('lab.tools')

# command-line flag -> RunSettings field
RUN_OVERRIDES = {
    "n_elements": "n_elements",
    "tmax": "t_max",
    "dt": "dt",
    "lmin": "lambda_min",
    "lmax": "lambda_max",
    "samples": "samples",
    "spacing": "spacing",
    "seed": "seed",
    "modes": "modes",
}


@dataclass(frozen=True)
class RunManifest:
    scenario_path: str
    subcommand: str
    output_dir: str
    seed: int
    tool_version: str
    config_hash: str

    @property
    def digest(self) -> str:
        """sha256 over what determines the numbers; paths are excluded so reruns elsewhere match"""
        payload = json.dumps(
            {"subcommand": self.subcommand, "seed": self.seed, "tool_version": self.tool_version,
             "config_hash": self.config_hash},
            sort_keys=True, separators=(",", ":"),
        )
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()

    def write(self) -> str:
        path = os.path.join(self.output_dir, "manifest.json")
        record = dataclasses.asdict(self)
        record["digest"] = self.digest
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            json.dump(record, handle, indent=2, sort_keys=True)
            handle.write("\n")
        return path


def lab_tool(subcommand: str) -> Callable:
    """Turn BresseLabError into a failure dictionary carrying the exit code"""

    def decorate(fn: Callable[[dict], Dict[str, Any]]) -> Callable[[dict], Dict[str, Any]]:
        @functools.wraps(fn)
        def wrapper(arguments: dict) -> Dict[str, Any]:
            try:
                return fn(arguments)
            except BresseLabError as e:
                logger.error(f"{subcommand} failed: {e}")
                return {"success": False, "error": str(e), "exit_code": e.exit_code}

        return wrapper

    return decorate


def load_run_scenario(arguments: dict) -> ScenarioConfig:
    """Scenario file with command-line overrides applied (flags win)"""
    path = arguments.get("scenario")
    if not path:
        raise UsageError("--scenario is required")
    cfg = load_scenario(path, validate=False)
    overrides = {field: arguments.get(flag) for flag, field in RUN_OVERRIDES.items()}
    if overrides.get("modes") is not None:
        overrides["modes"] = tuple(int(m) for m in overrides["modes"])
    return validate_scenario(cfg.with_run(**overrides))


def start_run(arguments: dict, subcommand: str, cfg: Optional[ScenarioConfig] = None,
              config_hash: Optional[str] = None) -> Tuple[str, RunManifest]:
    out_dir = arguments.get("out") or "out"
    os.makedirs(out_dir, exist_ok=True)
    manifest = RunManifest(
        scenario_path=arguments.get("scenario") or "",
        subcommand=subcommand,
        output_dir=out_dir,
        seed=cfg.run.seed if cfg is not None else int(arguments.get("seed") or 0),
        tool_version=TOOL_VERSION,
        config_hash=config_hash or (cfg.config_hash() if cfg is not None else ""),
    )
    return out_dir, manifest


def write_table(manifest: RunManifest, name: str, header: Sequence[str], rows, comments: Sequence[str] = ()) -> str:
    path = os.path.join(manifest.output_dir, name)
    write_csv(path, header, rows, list(comments) + [f"manifest={manifest.digest}"])
    return path


def write_text(manifest: RunManifest, name: str, lines: Sequence[str]) -> str:
    path = os.path.join(manifest.output_dir, name)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(ReportBuilder.render(list(lines) + [f"manifest={manifest.digest}"]))
    return path


def write_plot(manifest: RunManifest, name: str, script: str) -> str:
    path = os.path.join(manifest.output_dir, name)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(script)
        handle.write(f"# manifest={manifest.digest}\n")
    return path


def maybe_dump(arguments: dict, op: DiscreteOperator, manifest: RunManifest) -> List[str]:
    if not arguments.get("dump_matrices"):
        return []
    paths = dump_matrices(op, os.path.join(manifest.output_dir, "matrices"), manifest.digest)
    return list(paths.values())


def finish(manifest: RunManifest, outputs: List[str], **summary) -> Dict[str, Any]:
    outputs = outputs + [manifest.write()]
    logger.info(f"{manifest.subcommand}: wrote {len(outputs)} file(s) to {manifest.output_dir}")
    return {"success": True, "outputs": outputs, "manifest": manifest.digest, **summary}

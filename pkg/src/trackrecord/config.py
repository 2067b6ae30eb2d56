"""Service configuration: one JSON file, optionally overridden by env.

Shape (all sections optional unless the consuming command needs them):

    {
      "listen": {"host": "127.0.0.1", "port": 8080},
      "dataset_year": 2021,
      "data": {
        "graph": "out/graph.jsonl",
        "scores": "out/scores.csv",
        "profiles": "out/profiles.json",
        "tokens": "out/tokens.json",
        "records": "out/orcid_records.json"
      },
      "params": {
        "pagerank": {"damping": 0.85, "tolerance": 1e-10, "max_iterations": 100},
        "attrank": {"alpha": 0.5, "beta": 0.25, "gamma": 0.25, "rho": -0.5,
                     "attention_window_years": 3, "tolerance": 1e-10,
                     "max_iterations": 100},
        "impulse": {"window_years": 3}
      }
    }

When the TRACKRECORD_CONFIG environment variable is set, it overrides
whatever path the command line named.
"""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError, ValidationError
from .workscores import AttRankParams, ImpulseParams, IndicatorParams, PageRankParams

CONFIG_ENV_VAR = "TRACKRECORD_CONFIG"


@dataclass(frozen=True)
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8080
    dataset_year: int | None = None
    graph_path: str | None = None
    scores_path: str | None = None
    profiles_path: str | None = None
    tokens_path: str | None = None
    records_path: str | None = None
    params: IndicatorParams = IndicatorParams()


def resolve_config_path(cli_path: str | None) -> str | None:
    """The environment variable wins over the command-line path."""
    return os.environ.get(CONFIG_ENV_VAR) or cli_path


def _params_from(obj: dict) -> IndicatorParams:
    def build(cls, section: dict):
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(section) - known
        if unknown:
            raise ConfigError(f"unknown {cls.__name__} keys: {sorted(unknown)}")
        return cls(**section)

    try:
        return IndicatorParams(
            pagerank=build(PageRankParams, obj.get("pagerank", {})),
            attrank=build(AttRankParams, obj.get("attrank", {})),
            impulse=build(ImpulseParams, obj.get("impulse", {})),
        )
    except (TypeError, ValidationError) as exc:
        raise ConfigError(f"bad indicator params: {exc}") from exc


def load_config(path: str | Path) -> ServiceConfig:
    """Parse and validate a config file; raises ConfigError."""
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: config root must be a JSON object")

    listen = raw.get("listen", {})
    if not isinstance(listen, dict):
        raise ConfigError("'listen' must be an object")
    host = str(listen.get("host", "127.0.0.1"))
    port = listen.get("port", 8080)
    if not isinstance(port, int) or isinstance(port, bool) or not 1 <= port <= 65535:
        raise ConfigError(f"bad listen.port: {port!r}")

    dataset_year = raw.get("dataset_year")
    if dataset_year is not None and not isinstance(dataset_year, int):
        raise ConfigError(f"bad dataset_year: {dataset_year!r}")

    data = raw.get("data", {})
    if not isinstance(data, dict):
        raise ConfigError("'data' must be an object")

    def data_path(key: str) -> str | None:
        value = data.get(key)
        if value is None:
            return None
        # Relative paths are resolved against the config file's directory.
        p = Path(value)
        return str(p if p.is_absolute() else Path(path).parent / p)

    params_obj = raw.get("params", {})
    if not isinstance(params_obj, dict):
        raise ConfigError("'params' must be an object")

    return ServiceConfig(
        host=host,
        port=port,
        dataset_year=dataset_year,
        graph_path=data_path("graph"),
        scores_path=data_path("scores"),
        profiles_path=data_path("profiles"),
        tokens_path=data_path("tokens"),
        records_path=data_path("records"),
        params=_params_from(params_obj),
    )

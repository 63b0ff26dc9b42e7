"""Lab configuration files: one ring, one skew context and the scenarios to check on it."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .errors import RingSpecError
from .rings import FiniteRing, construct_ring
from .skewpoly import SkewContext, make_context

DEFAULT_BOUNDS = {"mul_cap": 8, "trace_degree": 1, "closure_degree": 3, "window": 2}
DEFAULT_SAMPLES = {"mul_pairs": 1000, "triples": 1000, "hom_pairs": 500, "families": 1000,
                   "corollary": 10000, "qskew": 10000, "ring_axioms": 1000, "directness": 20000}
SCENARIO_KEYS = ("lemma1", "prop2", "trace", "qskew", "corollary", "homs", "quasi_inverse")


class ConfigError(RingSpecError):
    pass


def _per_variable(value: Any, variables: list[str], what: str) -> list:
    if isinstance(value, dict) and "kind" not in value:
        missing = [v for v in variables if v not in value]
        if missing:
            raise ConfigError(f"{what} has no entry for {missing}")
        return [value[v] for v in variables]
    if isinstance(value, dict):
        return [value] * len(variables)
    if isinstance(value, list):
        if len(value) != len(variables):
            raise ConfigError(f"{what} needs {len(variables)} entries, got {len(value)}")
        return value
    raise ConfigError(f"{what} must be a list, a per-variable object or a single map spec")


@dataclass
class LabConfig:
    name: str
    ring_spec: dict
    variables: list[str]
    sigma_specs: list
    delta_specs: list
    bounds: dict = field(default_factory=lambda: dict(DEFAULT_BOUNDS))
    samples: dict = field(default_factory=lambda: dict(DEFAULT_SAMPLES))
    seed: int = 0
    format: str = "text"
    scenarios: dict = field(default_factory=dict)
    _ring: FiniteRing | None = field(default=None, repr=False)
    _ctx: SkewContext | None = field(default=None, repr=False)

    @classmethod
    def from_dict(cls, data: dict, name: str = "config") -> "LabConfig":
        if not isinstance(data, dict):
            raise ConfigError("a config must be a JSON object")
        for key in ("ring", "variables"):
            if key not in data:
                raise ConfigError(f"config is missing {key!r}")
        variables = data["variables"]
        if not isinstance(variables, list) or not all(isinstance(v, str) for v in variables):
            raise ConfigError("variables must be a list of names")
        identity, zero = {"kind": "identity"}, {"kind": "zero"}
        sigma = _per_variable(data.get("sigma", identity), variables, "sigma")
        delta = _per_variable(data.get("delta", zero), variables, "delta")
        bounds = {**DEFAULT_BOUNDS, **data.get("bounds", {})}
        samples = {**DEFAULT_SAMPLES, **data.get("samples", {})}
        for table, label in ((bounds, "bound"), (samples, "sample size")):
            for k, v in table.items():
                if not isinstance(v, int) or isinstance(v, bool) or v <= 0:
                    raise ConfigError(f"{label} {k!r} must be a positive integer, got {v!r}")
        fmt = data.get("format", "text")
        if fmt not in ("text", "json"):
            raise ConfigError(f"format must be text or json, got {fmt!r}")
        scenarios = data.get("scenarios", {})
        unknown = set(scenarios) - set(SCENARIO_KEYS)
        if unknown:
            raise ConfigError(f"unknown scenarios {sorted(unknown)}")
        seed = data.get("seed", 0)
        if not isinstance(seed, int):
            raise ConfigError("seed must be an integer")
        return cls(data.get("name", name), data["ring"], variables, sigma, delta, bounds, samples,
                   seed, fmt, scenarios)

    @classmethod
    def load(cls, path: str | Path) -> "LabConfig":
        path = Path(path)
        try:
            data = json.loads(path.read_text())
        except FileNotFoundError:
            raise ConfigError(f"no such config file: {path}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON ({exc})") from None
        return cls.from_dict(data, name=path.stem)

    @property
    def ring(self) -> FiniteRing:
        if self._ring is None:
            self._ring = construct_ring(self.ring_spec, seed=self.seed)
        return self._ring

    @property
    def context(self) -> SkewContext:
        """The validated skew context; map validation failures propagate."""
        if self._ctx is None:
            self._ctx = make_context(self.ring, self.variables, self.sigma_specs, self.delta_specs,
                                     degree_cap=self.bounds["mul_cap"])
        return self._ctx

    def scenario(self, key: str, default):
        return self.scenarios.get(key, default)

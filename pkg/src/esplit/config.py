"""Run configuration shared by the CLI and the experiment scripts."""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .arith import ZetaSpec, choose_zeta, is_prime, prime_power_base
from .refl import ReflectionCoset, load_coset_config


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    cartan_type: str | None = None
    twist: str = "id"
    gens_file: str | None = None
    ell: int | None = None
    q: int | None = None
    mode: str = "principal"
    dataset: str | None = None
    json: bool = False
    d_max: int | None = None
    workers: int = 1
    zeta_order: int | None = None

    def __post_init__(self):
        if self.ell is not None:
            if not is_prime(self.ell):
                raise ConfigError(f"ell={self.ell} is not prime")
            if self.q is None:
                raise ConfigError("--q is required together with --ell")
            if prime_power_base(self.q) is None:
                raise ConfigError(f"q={self.q} is not a prime power")
            if self.q % self.ell == 0:
                raise ConfigError(f"ell={self.ell} divides q={self.q}")
        if self.mode not in ("principal", "dataset"):
            raise ConfigError(f"unknown mode {self.mode!r}")
        if (self.mode == "dataset") != (self.dataset is not None):
            raise ConfigError("--dataset is required iff --mode dataset")
        if self.workers < 1:
            raise ConfigError("--workers must be positive")
        if self.cartan_type is not None and self.gens_file is not None:
            raise ConfigError("give either --type or --gens-file, not both")

    def coset(self) -> ReflectionCoset:
        if self.gens_file is not None:
            try:
                cfg = json.loads(Path(self.gens_file).read_text())
            except (OSError, json.JSONDecodeError) as exc:
                raise ConfigError(f"cannot read {self.gens_file}: {exc}") from exc
            return load_coset_config(cfg)
        if self.cartan_type is None:
            raise ConfigError("a coset is required (--type or --gens-file)")
        cartan_type, twist = self.cartan_type, self.twist
        if cartan_type.startswith("2") and twist in ("id", "graph"):
            cartan_type, twist = cartan_type[1:], "graph"     # 2A2 = A2 with graph twist
        return ReflectionCoset.from_type(cartan_type, twist)

    def zeta(self) -> ZetaSpec:
        if self.ell is None:
            raise ConfigError("--ell and --q are required")
        try:
            return choose_zeta(self.q, self.ell, self.zeta_order)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

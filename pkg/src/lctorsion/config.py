"""Run configuration: resource caps, bounds, output and parallelism.

Values come from defaults, then an optional ``key = value`` file, then
``LCTORSION_*`` environment variables, then command-line flags.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from typing import Optional

from .errors import InputError
from .frobmod import DEFAULT_E_MAX
from .groebner import Caps
from .oracle import DEFAULT_BOUND

ENV_PREFIX = "LCTORSION_"


@dataclass(frozen=True)
class RunConfig:
    max_basis: int = Caps.max_basis
    max_coef_bits: int = Caps.max_coef_bits
    e_max: int = DEFAULT_E_MAX
    oracle_degree: int = DEFAULT_BOUND
    workers: int = 1
    output: Optional[str] = None

    def __post_init__(self):
        for name in ("max_basis", "max_coef_bits", "e_max", "oracle_degree", "workers"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int) or v <= 0:
                raise InputError(f"{name} must be a positive integer, got {v!r}")

    @property
    def caps(self) -> Caps:
        return Caps(max_basis=self.max_basis, max_coef_bits=self.max_coef_bits)

    def updated(self, **values) -> "RunConfig":
        known = {f.name for f in fields(self)}
        clean = {}
        for k, v in values.items():
            if v is None:
                continue
            if k not in known:
                raise InputError(f"unknown config key {k!r}")
            clean[k] = v if k == "output" else _as_int(k, v)
        return replace(self, **clean)


def _as_int(key, v) -> int:
    try:
        return int(v)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{key} must be an integer, got {v!r}") from exc


def parse_config_text(text: str) -> dict:
    out = {}
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"config line {n}: expected key = value")
        k, v = (s.strip() for s in line.split("=", 1))
        out[k.replace("-", "_")] = v
    return out


def env_overrides(environ=None) -> dict:
    environ = os.environ if environ is None else environ
    out = {}
    for f in fields(RunConfig):
        key = ENV_PREFIX + f.name.upper()
        if key in environ:
            out[f.name] = environ[key]
    return out


def load_config(path: Optional[str] = None, environ=None, **flags) -> RunConfig:
    cfg = RunConfig()
    if path:
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read config {path}: {exc}") from exc
        cfg = cfg.updated(**parse_config_text(text))
    cfg = cfg.updated(**env_overrides(environ))
    return cfg.updated(**flags)

"""Runtime configuration: defaults, key=value config files, seed override."""
from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from fractions import Fraction

from .errors import PreconditionError


@dataclass(frozen=True)
class Config:
    epsilon: Fraction = Fraction(1, 10**9)
    fm_row_cap: int = 10_000
    search_budget: int = 2_000
    enum_cap: int = 100_000
    seed: int = 0
    model_bound: int = 3


def _coerce(name: str, raw: str):
    if name == "epsilon":
        return Fraction(raw)
    return int(raw)


def load_config(path: str | None = None, **overrides) -> Config:
    """Defaults, then the config file, then KBGEOM_SEED, then explicit overrides."""
    cfg = Config()
    known = {f.name for f in fields(Config)}
    if path:
        vals = {}
        with open(path, encoding="utf-8") as fh:
            for n, line in enumerate(fh, 1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise PreconditionError(f"{path}:{n}: expected key=value")
                k, v = (s.strip() for s in line.split("=", 1))
                if k not in known:
                    raise PreconditionError(f"{path}:{n}: unknown key {k!r}")
                try:
                    vals[k] = _coerce(k, v)
                except (ValueError, ZeroDivisionError):
                    raise PreconditionError(f"{path}:{n}: bad value for {k}") from None
        cfg = replace(cfg, **vals)
    env_seed = os.environ.get("KBGEOM_SEED")
    if env_seed is not None:
        try:
            cfg = replace(cfg, seed=int(env_seed))
        except ValueError:
            raise PreconditionError(f"KBGEOM_SEED must be an integer, got {env_seed!r}") from None
    clean = {k: v for k, v in overrides.items() if v is not None}
    cfg = replace(cfg, **clean)
    for f in fields(Config):
        v = getattr(cfg, f.name)
        if v < 0 or (v == 0 and f.name != "seed"):
            raise PreconditionError(f"{f.name} must be positive, got {v}")
    return cfg

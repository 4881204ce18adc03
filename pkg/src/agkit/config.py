"""Numeric tolerances and truncations, with a small key=value file format.

Lookup order for the config file: explicit path, then ``$AGKIT_CONFIG``,
then ``./agkit.toml``, then built-in defaults.
"""

from __future__ import annotations

import configparser
import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

ENV_VAR = "AGKIT_CONFIG"
DEFAULT_FILE = "agkit.toml"


@dataclass(frozen=True)
class Config:
    pole_guard: float = 1e-8
    identity_tol: float = 1e-10
    period_tol: float = 1e-6
    cubic_tol: float = 1e-5
    group_tol: float = 1e-6
    assoc_tol: float = 1e-7
    curve_tol: float = 1e-6
    tangent_tol: float = 1e-10
    theta_cutoff: float = 1e-18
    eisenstein_tol: float = 1e-4
    cross_tol: float = 1e-6
    lattice_radius: int = 400
    eisenstein_radius: int = 300
    q_terms: int = 10
    seed: int = 20240611
    output: str = "human"

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if f.name in ("output", "seed"):
                continue
            if not v > 0:
                raise ValueError(f"{f.name} must be positive, got {v}")
        if self.output not in ("human", "json"):
            raise ValueError("output must be 'human' or 'json'")

    def to_text(self) -> str:
        return "".join(f"{k} = {v}\n" for k, v in asdict(self).items())

    @classmethod
    def from_text(cls, text: str) -> "Config":
        parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
        parser.read_string("[agkit]\n" + text)
        raw = dict(parser["agkit"])
        types = {f.name: f.type for f in fields(cls)}
        values = {}
        for key, val in raw.items():
            key = key.replace("-", "_")
            if key not in types:
                raise ValueError(f"unknown config key {key!r}")
            val = val.strip().strip('"').strip("'")
            kind = types[key]
            values[key] = int(val) if kind == "int" else float(val) if kind == "float" else val
        return cls(**values)

    def with_overrides(self, **kw) -> "Config":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


DEFAULT = Config()


def load_config(path: str | os.PathLike | None = None) -> Config:
    if path is None:
        path = os.environ.get(ENV_VAR) or (DEFAULT_FILE if Path(DEFAULT_FILE).exists() else None)
    if path is None:
        return DEFAULT
    return Config.from_text(Path(path).read_text())

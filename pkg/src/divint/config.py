"""Layered runtime configuration.

Precedence, highest first: command-line flags, then DIVINT_* environment
variables, then a `divisor-intersect.toml` file in the working directory,
then built-in defaults.  The file format is deliberately minimal (key = value
lines, `#` comments, optional quotes); there is no seed anywhere because
every computation is deterministic.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Optional

from .antichains import DEFAULT_K_CAP
from .lattice import MAX_DIVISORS
from .oracle import MATERIALIZE_CAP
from .restricted import UNIVERSE_CAP

CONFIG_FILENAME = "divisor-intersect.toml"
ENV_PREFIX = "DIVINT_"
FORMATS = ("text", "json", "csv")

_INT_KEYS = frozenset(
    {"threads", "k_cap", "divisor_cap", "materialize_cap", "universe_cap"}
)
_BOOL_KEYS = frozenset({"no_cache"})
_PATH_KEYS = frozenset({"cache_dir"})
_STR_KEYS = frozenset({"format"})
KEYS = _INT_KEYS | _BOOL_KEYS | _PATH_KEYS | _STR_KEYS


@dataclass(frozen=True)
class RunConfig:
    threads: int = 1
    format: str = "text"
    cache_dir: Optional[Path] = None
    no_cache: bool = False
    k_cap: int = DEFAULT_K_CAP
    divisor_cap: int = MAX_DIVISORS
    materialize_cap: int = MATERIALIZE_CAP
    universe_cap: int = UNIVERSE_CAP

    def __post_init__(self):
        if self.format not in FORMATS:
            raise ValueError(
                f"format must be one of {FORMATS}, got {self.format!r}"
            )
        if self.threads < 1:
            raise ValueError(f"threads must be positive, got {self.threads}")
        for f in fields(self):
            if f.name.endswith("_cap") and getattr(self, f.name) < 1:
                raise ValueError(
                    f"{f.name} must be positive, got {getattr(self, f.name)}"
                )


def _coerce(key: str, value):
    if key in _INT_KEYS:
        return value if isinstance(value, int) else int(str(value), 10)
    if key in _BOOL_KEYS:
        if isinstance(value, bool):
            return value
        text = str(value).strip().lower()
        if text in ("1", "true", "yes", "on"):
            return True
        if text in ("0", "false", "no", "off"):
            return False
        raise ValueError(f"cannot read {value!r} as a boolean for {key}")
    if key in _PATH_KEYS:
        return Path(value)
    return str(value)


def parse_config_file(path: Path) -> dict:
    """key = value pairs from a minimal toml-style file."""
    out: dict = {}
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#") or line.startswith("["):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key = value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip().lower().replace("-", "_")
        value = value.strip()
        if len(value) >= 2 and value[0] in "\"'" and value[-1] == value[0]:
            value = value[1:-1]
        else:
            value = value.split("#", 1)[0].strip()
        if key not in KEYS:
            raise ValueError(
                f"{path}:{lineno}: unknown key {key!r} (known: {sorted(KEYS)})"
            )
        out[key] = value
    return out


def resolve_config(flags: Optional[dict] = None, *,
                   cwd: Optional[Path] = None,
                   env: Optional[dict] = None) -> RunConfig:
    """Merge the four layers into a validated RunConfig.

    `flags` entries with value None count as unset.  `cwd` and `env` exist
    for tests; they default to the real working directory and environment.
    """
    env = dict(os.environ) if env is None else env
    settings: dict = {}
    path = (Path(cwd) if cwd is not None else Path.cwd()) / CONFIG_FILENAME
    if path.is_file():
        settings.update(parse_config_file(path))
    for key in KEYS:
        name = ENV_PREFIX + key.upper()
        if name in env:
            settings[key] = env[name]
    for key, value in (flags or {}).items():
        if key not in KEYS:
            raise ValueError(f"unknown configuration flag {key!r}")
        if value is not None:
            settings[key] = value
    return RunConfig(**{k: _coerce(k, v) for k, v in settings.items()})

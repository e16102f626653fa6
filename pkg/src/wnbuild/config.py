"""Run configuration: one JSON file, every key overridable from the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields
from fractions import Fraction
from pathlib import Path

from wnbuild.errors import ConfigError
from wnbuild.linker import Combiner
from wnbuild.taxonomy import DEFAULT_CHAIN, parse_filter_spec, resolve_chain

_PATH_KEYS = (
    "wordnet", "monolingual", "stoplist", "precisions", "confidences", "gold_links", "gold_tags",
)
_FRACTION_KEYS = ("link_threshold", "distance_threshold", "merge_threshold")


@dataclass
class RunConfig:
    wordnet: Path | None = None
    bilinguals: list[Path] = field(default_factory=list)
    monolingual: Path | None = None
    stoplist: Path | None = None
    precisions: Path | None = None
    confidences: Path | None = None
    gold_links: Path | None = None
    gold_tags: Path | None = None
    out: Path = Path("out")

    link_threshold: Fraction = Fraction(85, 100)
    distance_threshold: Fraction = Fraction(1)
    combiner: Combiner = Combiner.NOISY_OR
    exclude_accepted: bool = True
    top_filter: str = "F2+(F3>9)"
    heuristics: tuple[str, ...] = DEFAULT_CHAIN
    merge_threshold: Fraction = Fraction(85, 100)
    max_path: int = 1
    max_iters: int = 10
    combine_patterns: bool = True

    def validate(self) -> "RunConfig":
        for key in ("link_threshold", "merge_threshold"):
            v = getattr(self, key)
            if not 0 <= v <= 1:
                raise ConfigError(f"{key} must lie in [0,1], got {v}")
        if self.distance_threshold < 0:
            raise ConfigError(f"distance_threshold must be non-negative, got {self.distance_threshold}")
        if self.max_path < 1 or self.max_iters < 1:
            raise ConfigError("max_path and max_iters must be at least 1")
        parse_filter_spec(self.top_filter)
        resolve_chain(self.heuristics)
        for key in _PATH_KEYS:
            p = getattr(self, key)
            if p is not None and not Path(p).is_file():
                raise ConfigError(f"{key}: file not found: {p}")
        for p in self.bilinguals:
            if not Path(p).is_file():
                raise ConfigError(f"bilinguals: file not found: {p}")
        return self

    def require(self, *keys: str) -> None:
        for key in keys:
            value = getattr(self, key)
            if value is None or value == []:
                raise ConfigError(f"configuration key '{key}' is required for this stage")


def _coerce(key: str, value, base: Path | None):
    if value is None:
        return None
    try:
        if key in _PATH_KEYS or key == "out":
            p = Path(value)
            return p if p.is_absolute() or base is None else base / p
        if key == "bilinguals":
            if isinstance(value, str):
                value = [value]
            return [_coerce("out", v, base) for v in value]
        if key in _FRACTION_KEYS:
            return Fraction(str(value))
        if key == "combiner":
            return Combiner(str(value).upper())
        if key == "heuristics":
            if isinstance(value, str):
                value = value.split(",")
            return tuple(v.strip().upper() for v in value if v.strip())
        if key in ("max_path", "max_iters"):
            return int(value)
        if key in ("exclude_accepted", "combine_patterns"):
            if isinstance(value, str):
                return value.strip().lower() in ("1", "true", "yes", "on")
            return bool(value)
        return str(value)
    except ValueError as exc:
        raise ConfigError(f"bad value for {key}: {value!r} ({exc})") from None


def load_config(path: str | Path | None = None, overrides: dict | None = None, validate: bool = True) -> RunConfig:
    """Read ``path`` (JSON) then apply ``overrides``. Relative paths in the
    file resolve against the file's directory; override paths against the
    working directory."""
    known = {f.name for f in fields(RunConfig)}
    values: dict = {}
    if path is not None:
        path = Path(path)
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {path}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON: {exc}") from None
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(f"{path}: unknown configuration keys {sorted(unknown)}")
        for key, value in raw.items():
            values[key] = _coerce(key, value, path.parent)
    for key, value in (overrides or {}).items():
        if key not in known:
            raise ConfigError(f"unknown configuration key {key!r}")
        if value is not None:
            values[key] = _coerce(key, value, None)
    cfg = RunConfig(**values)
    return cfg.validate() if validate else cfg

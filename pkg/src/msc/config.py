"""Run configuration. Defaults are the published experimental settings."""
from __future__ import annotations

from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Mapping

from .pathfinder import PENN_VERB_TAGS


@dataclass(frozen=True)
class MSCConfig:
    k: int = 150
    mu: float = 0.4
    min_words: int = 8
    verb_tags: frozenset = field(default=PENN_VERB_TAGS)
    order: int = 7
    tr_window: int = 10
    tr_damping: float = 0.85
    tr_eps: float = 1e-6
    density_threshold: float = 0.05
    use_mwe: bool = True
    use_synonyms: bool = True
    pad: bool = True

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if not 0.0 <= self.mu <= 1.0:
            raise ValueError("mu must be in [0, 1]")
        if self.min_words < 0:
            raise ValueError("min_words must be >= 0")
        if self.order < 2:
            raise ValueError("order must be >= 2")
        object.__setattr__(self, "verb_tags", frozenset(self.verb_tags))

    def updated(self, values: Mapping[str, Any]) -> "MSCConfig":
        """Copy with ``values`` applied; strings are coerced to field types."""
        known = {f.name: f for f in fields(self)}
        changes = {}
        for name, value in values.items():
            name = name.replace("-", "_")
            if name not in known:
                raise KeyError(f"unknown configuration key {name!r}")
            if value is None:
                continue
            changes[name] = _coerce(getattr(self, name), value)
        return replace(self, **changes)

    @classmethod
    def from_file(cls, path: str | Path, base: "MSCConfig | None" = None) -> "MSCConfig":
        return (base or cls()).updated(read_config_file(path))


def _coerce(current, value):
    if not isinstance(value, str):
        return value
    if isinstance(current, bool):
        v = value.strip().lower()
        if v in ("1", "true", "yes", "on"):
            return True
        if v in ("0", "false", "no", "off"):
            return False
        raise ValueError(f"not a boolean: {value!r}")
    if isinstance(current, int):
        return int(value)
    if isinstance(current, float):
        return float(value)
    if isinstance(current, frozenset):
        return frozenset(value.replace(",", " ").split())
    return value


def read_config_file(path: str | Path) -> dict[str, str]:
    """Flat ``key = value`` lines; ``#`` comments and blank lines ignored."""
    out = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"{path}:{lineno}: expected key=value")
        out[key.strip().replace("-", "_")] = value.strip()
    return out

"""Layout configuration.

All lengths are layout units (lu); 1 lu is 1 CSS px at the reference
viewport. Column content widths are derived, not configured: the cell
padding is taken off both sides.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, fields
from pathlib import Path


class ConfigError(ValueError):
    """Raised for malformed or out-of-range configuration values."""


@dataclass(frozen=True)
class LayoutConfig:
    leftColumnWidth: float = 420
    rightColumnWidth: float = 560
    columnGap: float = 80
    cellGap: float = 16
    cellPadding: float = 12
    lineHeight: float = 20
    avgCharWidth: float = 8
    minCellHeight: float = 40
    defaultTextHeight: float = 120

    def __post_init__(self) -> None:
        for f in fields(self):
            value = getattr(self, f.name)
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ConfigError(f"{f.name} must be a number, got {value!r}")
            if value <= 0:
                raise ConfigError(f"{f.name} must be positive, got {value!r}")
        if self.defaultTextHeight < self.minCellHeight:
            raise ConfigError(
                "defaultTextHeight must be at least minCellHeight "
                f"({self.defaultTextHeight} < {self.minCellHeight})"
            )
        # Content widths must survive the padding.
        if self.leftTextWidth <= 0:
            raise ConfigError("cellPadding leaves no text width in the left column")
        if self.rightContentWidth <= 0:
            raise ConfigError("cellPadding leaves no content width in the right column")

    @property
    def leftTextWidth(self) -> float:
        return self.leftColumnWidth - 2 * self.cellPadding

    @property
    def rightContentWidth(self) -> float:
        return self.rightColumnWidth - 2 * self.cellPadding

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


_FIELD_NAMES = {f.name for f in fields(LayoutConfig)}


def load_config(path: str | Path) -> LayoutConfig:
    """Read a JSON config file of LayoutConfig overrides.

    Unknown keys are errors: a typo silently falling back to a default
    would be invisible in the output.
    """
    raw = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: config must be a JSON object")
    unknown = sorted(set(data) - _FIELD_NAMES)
    if unknown:
        raise ConfigError(f"{path}: unknown config keys: {', '.join(unknown)}")
    try:
        return LayoutConfig(**data)
    except ConfigError as exc:
        raise ConfigError(f"{path}: {exc}") from exc

"""Byte-deterministic JSON output.

Numbers are written as minimal decimals: any float with no fractional
part is emitted as an integer, everything else uses Python's shortest
round-trip repr. Key order is insertion order, which the serializers
keep fixed.
"""

from __future__ import annotations

import json


def normalize_numbers(value):
    if isinstance(value, bool):
        return value
    if isinstance(value, float):
        return int(value) if value.is_integer() else value
    if isinstance(value, dict):
        return {key: normalize_numbers(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [normalize_numbers(item) for item in value]
    return value


def dumps(value) -> str:
    """Pretty form for files people diff (golden layouts, lint output)."""
    return json.dumps(normalize_numbers(value), ensure_ascii=False, indent=2) + "\n"


def dumps_compact(value) -> str:
    """Compact form for embedded payloads."""
    return json.dumps(normalize_numbers(value), ensure_ascii=False, separators=(",", ":"))

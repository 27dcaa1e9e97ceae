"""Enumeration bounds.

Defaults can be overridden with the ``MULTINET_BOUND`` environment variable,
either a single integer (the switching bound) or comma-separated
``key=value`` pairs with keys ``partitions`` and ``switchings``::

    MULTINET_BOUND=partitions=11,switchings=4000000
"""
from __future__ import annotations

import os

DEFAULT_PARTITION_BOUND = 10
DEFAULT_SWITCHING_BOUND = 2**20

# Set by front ends; takes precedence over the environment.
_overrides: dict[str, int] = {}


def set_override(key: str, value: int | None) -> None:
    if value is None:
        _overrides.pop(key, None)
    else:
        _overrides[key] = value


def _parse_env(raw: str | None) -> dict[str, int]:
    if not raw:
        return {}
    raw = raw.strip()
    if raw.isdigit():
        return {"switchings": int(raw)}
    out = {}
    for item in raw.split(","):
        key, _, value = item.partition("=")
        key = key.strip()
        if key not in ("partitions", "switchings") or not value.strip().isdigit():
            raise ValueError(f"bad MULTINET_BOUND entry: {item!r}")
        out[key] = int(value)
    return out


def partition_bound() -> int:
    if "partitions" in _overrides:
        return _overrides["partitions"]
    return _parse_env(os.environ.get("MULTINET_BOUND")).get(
        "partitions", DEFAULT_PARTITION_BOUND
    )


def switching_bound() -> int:
    if "switchings" in _overrides:
        return _overrides["switchings"]
    return _parse_env(os.environ.get("MULTINET_BOUND")).get(
        "switchings", DEFAULT_SWITCHING_BOUND
    )

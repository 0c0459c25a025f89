"""Color-range rules over 8-bit RGB pixels.

A rule is an axis-aligned box in 24-bit color space: one inclusive integer
interval per channel. A pixel matches a rule when all three of its channels
lie inside the rule's intervals. Two presets ship with the package:

* ``purity_red``  -- the single color (255, 0, 0).
* ``range_ratio`` -- the blood-red band r in [75, 127], g in [14, 25],
  b in [0, 15].

Strict thresholds are canonicalized to inclusive bounds at definition time
(on 8-bit integers, ``r < 128`` is exactly ``r <= 127``), so a rule never
needs per-bound inclusivity flags.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import NamedTuple


class Rgb8(NamedTuple):
    """One pixel as raw 8-bit red, green, blue levels."""

    r: int
    g: int
    b: int


@dataclass(frozen=True)
class ChannelBound:
    """Inclusive integer interval on one 8-bit channel."""

    lo: int
    hi: int

    def __post_init__(self) -> None:
        for name, value in (("lo", self.lo), ("hi", self.hi)):
            if isinstance(value, bool) or not isinstance(value, int):
                raise ValueError(f"{name} must be an integer, got {value!r}")
        if not 0 <= self.lo <= self.hi <= 255:
            raise ValueError(
                f"bounds must satisfy 0 <= lo <= hi <= 255, got [{self.lo}, {self.hi}]"
            )

    def contains(self, value: int) -> bool:
        return self.lo <= value <= self.hi

    @property
    def width(self) -> int:
        """Number of integer levels inside the interval."""
        return self.hi - self.lo + 1


@dataclass(frozen=True)
class ColorRangeRule:
    """Named axis-aligned box in RGB color space."""

    id: str
    r: ChannelBound
    g: ChannelBound
    b: ChannelBound

    def __post_init__(self) -> None:
        if not isinstance(self.id, str) or not self.id:
            raise ValueError("rule id must be a non-empty string")


def pixel_matches(pixel: Rgb8 | tuple[int, int, int], rule: ColorRangeRule) -> bool:
    """True iff every channel of ``pixel`` lies inside the rule's interval."""
    r, g, b = pixel
    return (
        rule.r.lo <= r <= rule.r.hi
        and rule.g.lo <= g <= rule.g.hi
        and rule.b.lo <= b <= rule.b.hi
    )


def preset_purity() -> ColorRangeRule:
    """Rule matching exactly the pure red color (255, 0, 0)."""
    return ColorRangeRule(
        "purity_red", ChannelBound(255, 255), ChannelBound(0, 0), ChannelBound(0, 0)
    )


def preset_range_ratio() -> ColorRangeRule:
    """Rule matching the blood-red band: r 75-127, g 14-25, b 0-15."""
    return ColorRangeRule(
        "range_ratio", ChannelBound(75, 127), ChannelBound(14, 25), ChannelBound(0, 15)
    )


PRESETS = {
    "purity_red": preset_purity,
    "range_ratio": preset_range_ratio,
}


def rule_volume(rule: ColorRangeRule) -> int:
    """Number of distinct 24-bit colors inside the rule's box."""
    return rule.r.width * rule.g.width * rule.b.width


class RuleFormatError(ValueError):
    """Raised when a rule document cannot be parsed into a valid rule."""


_CHANNELS = ("r", "g", "b")


def _parse_bound(channel: str, value: object) -> ChannelBound:
    if not isinstance(value, dict):
        raise RuleFormatError(f"{channel}: must be an object with 'lo' and 'hi'")
    unknown = set(value) - {"lo", "hi"}
    if unknown:
        raise RuleFormatError(f"{channel}: unknown field {sorted(unknown)[0]!r}")
    for key in ("lo", "hi"):
        if key not in value:
            raise RuleFormatError(f"{channel}: missing field {key!r}")
        v = value[key]
        if isinstance(v, bool) or not isinstance(v, int):
            raise RuleFormatError(f"{channel}.{key}: must be an integer, got {v!r}")
        if not 0 <= v <= 255:
            raise RuleFormatError(f"{channel}.{key}: must be in [0, 255], got {v}")
    if value["lo"] > value["hi"]:
        raise RuleFormatError(f"{channel}: lo > hi")
    return ChannelBound(value["lo"], value["hi"])


def parse_rule(text: str) -> ColorRangeRule:
    """Parse a JSON rule document.

    Schema: ``{"id": str, "r": {"lo": int, "hi": int}, "g": {...}, "b": {...}}``
    with all bounds inclusive integers in [0, 255]. Unknown fields are
    rejected. Errors name the offending field.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise RuleFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise RuleFormatError("document root must be an object")
    unknown = set(doc) - {"id", *_CHANNELS}
    if unknown:
        raise RuleFormatError(f"unknown field {sorted(unknown)[0]!r}")
    if "id" not in doc:
        raise RuleFormatError("missing field 'id'")
    if not isinstance(doc["id"], str) or not doc["id"]:
        raise RuleFormatError("id: must be a non-empty string")
    for channel in _CHANNELS:
        if channel not in doc:
            raise RuleFormatError(f"missing field {channel!r}")
    return ColorRangeRule(doc["id"], *(_parse_bound(c, doc[c]) for c in _CHANNELS))


def serialize_rule(rule: ColorRangeRule) -> str:
    """Serialize a rule to its JSON document; inverse of :func:`parse_rule`."""
    doc = {
        "id": rule.id,
        "r": {"lo": rule.r.lo, "hi": rule.r.hi},
        "g": {"lo": rule.g.lo, "hi": rule.g.hi},
        "b": {"lo": rule.b.lo, "hi": rule.b.hi},
    }
    return json.dumps(doc, indent=2) + "\n"

"""Independent reference implementations used to cross-check the library.

These stay deliberately naive: frame counts re-derive membership one pixel
at a time, and color-space counts enumerate the whole 24-bit cube, so they
share no code path with the vectorized kernels they validate.
"""

from __future__ import annotations

import numpy as np

from wcescan import ColorRangeRule, Frame, Rgb8, pixel_matches


def count_matching_reference(frame: Frame, rule: ColorRangeRule) -> int:
    """Naive double loop over pixel_matches."""
    total = 0
    for row in frame.pixels.tolist():
        for r, g, b in row:
            if pixel_matches(Rgb8(r, g, b), rule):
                total += 1
    return total


_CUBE: tuple[np.ndarray, np.ndarray, np.ndarray] | None = None


def color_cube() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Component arrays (r, g, b) covering every one of the 2**24 colors.

    Built once per process; ~50 MB total.
    """
    global _CUBE
    if _CUBE is None:
        r = np.repeat(np.arange(256, dtype=np.uint8), 65536)
        g = np.tile(np.repeat(np.arange(256, dtype=np.uint8), 256), 256)
        b = np.tile(np.arange(256, dtype=np.uint8), 65536)
        _CUBE = (r, g, b)
    return _CUBE


def exhaustive_match_mask(rule: ColorRangeRule) -> np.ndarray:
    """Membership of every 24-bit color, by direct interval tests."""
    r, g, b = color_cube()
    return (
        (r >= rule.r.lo) & (r <= rule.r.hi)
        & (g >= rule.g.lo) & (g <= rule.g.hi)
        & (b >= rule.b.lo) & (b <= rule.b.hi)
    )


def exhaustive_match_count(rule: ColorRangeRule) -> int:
    return int(exhaustive_match_mask(rule).sum())

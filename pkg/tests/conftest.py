from __future__ import annotations

import numpy as np
import pytest

from wcescan import Frame


def make_frame(rows, source="fixture") -> Frame:
    """Frame from a nested list of (r, g, b) rows."""
    return Frame.from_array(np.array(rows, dtype=np.uint8), source=source)


def random_frame(rng: np.random.Generator, width: int, height: int) -> Frame:
    return Frame.from_array(
        rng.integers(0, 256, size=(height, width, 3), dtype=np.uint8),
        source=f"random:{width}x{height}",
    )


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)

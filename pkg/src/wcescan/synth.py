"""Deterministic synthetic frames and labeled corpora.

Generated frames mimic the look of capsule-endoscopy video: a pinkish
tissue background inside a near-black circular vignette, optionally with
one filled elliptical blood-colored blob. The palettes are chosen so the
labels are exact ground truth for the bundled presets:

* tissue: r in [140, 230], g in [60, 160], b in [90, 150]
* border: every channel in [0, 10]
* blob:   sampled uniformly from the range_ratio box

Tissue (g >= 60) and border (g <= 10) pixels can never match range_ratio
(which needs g in [14, 25]), and no generated pixel reaches r = 255, so
purity_red matches nothing at all. Blob pixels always match range_ratio
and never purity_red (blob r <= 127).

Reproducibility: every random quantity is an integer draw from numpy's
PCG64 (`numpy.random.default_rng`), seeded through `SeedSequence`, and the
blob is rasterized with integer arithmetic in half-pixel units. Identical
seeds give byte-identical frames across runs and platforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .frames import Frame, write_ppm
from .rules import preset_range_ratio

MUCOSA_R = (140, 230)
MUCOSA_G = (60, 160)
MUCOSA_B = (90, 150)
BORDER_MAX = 10

DEFAULT_SIZE = 64
DEFAULT_BLOB_FRACTION = 0.02

# SeedSequence stream tags so corpus label shuffling and per-frame pixel
# streams never collide.
_LABEL_STREAM = 0
_FRAME_STREAM = 1


@dataclass(frozen=True)
class GenSpec:
    """Parameters for one synthetic frame."""

    seed: int
    width: int = DEFAULT_SIZE
    height: int = DEFAULT_SIZE
    blob_fraction: float = DEFAULT_BLOB_FRACTION

    def __post_init__(self) -> None:
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.width < 16 or self.height < 16:
            raise ValueError(
                f"frame must be at least 16x16, got {self.width}x{self.height}"
            )
        if not 0 < self.blob_fraction <= 0.25:
            raise ValueError(
                f"blob_fraction must be in (0, 0.25], got {self.blob_fraction}"
            )


def _border_mask(width: int, height: int) -> np.ndarray:
    """Vignette: True outside the circle inscribed on the shorter side.

    Distances are measured in half-pixel units so the circle is centered
    even on even-sized frames.
    """
    y, x = np.ogrid[:height, :width]
    dx = 2 * x - (width - 1)
    dy = 2 * y - (height - 1)
    return dx * dx + dy * dy > min(width, height) ** 2


def _ellipse_mask(
    width: int, height: int, cx2: int, cy2: int, rx2: int, ry2: int
) -> np.ndarray:
    """Filled ellipse; center and semi-axes are in half-pixel units."""
    y, x = np.ogrid[:height, :width]
    dx = 2 * x - cx2
    dy = 2 * y - cy2
    return (dx * dx) * (ry2 * ry2) + (dy * dy) * (rx2 * rx2) <= (rx2 * rx2) * (ry2 * ry2)


def _sized_radii(
    target: int, aspect: int, width: int, height: int, inner2: int
) -> tuple[int, int] | None:
    """Smallest half-pixel semi-axes whose centered raster covers ``target``
    pixels, or None if no such ellipse fits inside the interior circle."""
    cx2, cy2 = width - 1, height - 1
    # pi * (rx2/2) * (ry2/2) ~ target with ry2 = rx2 * aspect / 100
    rx2 = max(2, 2 * math.isqrt(math.ceil(100 * target / (math.pi * aspect))))
    while True:
        ry2 = max(2, (rx2 * aspect) // 100)
        if max(rx2, ry2) > inner2:
            return None
        count = int(_ellipse_mask(width, height, cx2, cy2, rx2, ry2).sum())
        if count >= target:
            return rx2, ry2
        rx2 += 1


def _blob_mask(rng: np.random.Generator, spec: GenSpec) -> np.ndarray:
    """Place one elliptical blob of at least ``blob_fraction`` of the frame
    area fully inside the vignette's interior circle."""
    w, h = spec.width, spec.height
    target = math.ceil(spec.blob_fraction * w * h)
    inner2 = min(w, h)  # interior circle radius, half-pixel units

    aspect = int(rng.integers(70, 101))
    sized = _sized_radii(target, aspect, w, h, inner2)
    if sized is None and aspect != 100:
        # An elongated ellipse may not fit where a disc still does.
        aspect = 100
        sized = _sized_radii(target, aspect, w, h, inner2)
    if sized is None:
        raise ValueError(
            f"blob cannot fit: fraction {spec.blob_fraction} needs {target} pixels "
            f"inside the interior circle of a {w}x{h} frame"
        )
    rx2, ry2 = sized

    # Keep 2 half-pixel units of headroom so re-growing after off-center
    # placement cannot leave the interior circle.
    margin2 = max(0, inner2 - max(rx2, ry2) - 2)
    while True:
        ox = int(rng.integers(-margin2, margin2 + 1))
        oy = int(rng.integers(-margin2, margin2 + 1))
        if ox * ox + oy * oy <= margin2 * margin2:
            break
    cx2, cy2 = (w - 1) + ox, (h - 1) + oy

    # Half-pixel alignment changes the raster count slightly; grow within
    # the reserved headroom if the placed blob came up short.
    grown = 0
    while True:
        mask = _ellipse_mask(w, h, cx2, cy2, rx2, ry2)
        if int(mask.sum()) >= target:
            return mask
        if grown >= 2:
            raise ValueError(
                f"blob cannot fit: fraction {spec.blob_fraction} in a {w}x{h} frame"
            )
        rx2 += 1
        ry2 = max(2, (rx2 * aspect) // 100)
        grown += 1


def _generate(spec: GenSpec, with_blob: bool) -> Frame:
    rng = np.random.default_rng(np.random.SeedSequence(spec.seed))
    w, h = spec.width, spec.height
    px = np.empty((h, w, 3), dtype=np.uint8)
    for c, (lo, hi) in enumerate((MUCOSA_R, MUCOSA_G, MUCOSA_B)):
        px[:, :, c] = rng.integers(lo, hi + 1, size=(h, w), dtype=np.uint8)

    border = _border_mask(w, h)
    n_border = int(border.sum())
    for c in range(3):
        px[:, :, c][border] = rng.integers(0, BORDER_MAX + 1, size=n_border, dtype=np.uint8)

    tag = "mucosa"
    if with_blob:
        blob = _blob_mask(rng, spec)
        n_blob = int(blob.sum())
        box = preset_range_ratio()
        for c, bound in enumerate((box.r, box.g, box.b)):
            px[:, :, c][blob] = rng.integers(
                bound.lo, bound.hi + 1, size=n_blob, dtype=np.uint8
            )
        tag = "bleeding"
    return Frame.from_array(px, source=f"synthetic:{tag}:seed={spec.seed}:{w}x{h}")


def gen_mucosa_frame(spec: GenSpec) -> Frame:
    """Background-only frame; zero matches under both presets by construction."""
    return _generate(spec, with_blob=False)


def gen_bleeding_frame(spec: GenSpec) -> Frame:
    """Background frame plus one blob; at least ``ceil(blob_fraction * area)``
    pixels match range_ratio, and still zero match purity_red."""
    return _generate(spec, with_blob=True)


def gen_corpus(
    seed: int,
    n: int,
    bleeding_fraction: float,
    out_dir: str | Path,
    *,
    width: int = DEFAULT_SIZE,
    height: int = DEFAULT_SIZE,
    blob_fraction: float = DEFAULT_BLOB_FRACTION,
) -> Path:
    """Write ``n`` labeled frames as PPM files plus a manifest; returns the
    manifest path.

    ``round(n * bleeding_fraction)`` frames are bleeding (Python banker's
    rounding); labels are spread over indices by a seeded permutation. The
    whole corpus, file bytes included, is a pure function of the arguments.
    """
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    if n < 2:
        raise ValueError(f"corpus needs at least 2 frames, got {n}")
    if not 0.0 <= bleeding_fraction <= 1.0:
        raise ValueError(f"bleeding_fraction must be in [0, 1], got {bleeding_fraction}")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    n_bleeding = round(n * bleeding_fraction)
    labels = np.zeros(n, dtype=bool)
    labels[:n_bleeding] = True
    shuffler = np.random.default_rng(np.random.SeedSequence([seed, _LABEL_STREAM]))
    labels = labels[shuffler.permutation(n)]

    lines = []
    for i in range(n):
        frame_seed = int(
            np.random.SeedSequence([seed, _FRAME_STREAM, i]).generate_state(1, np.uint64)[0]
        )
        spec = GenSpec(
            seed=frame_seed, width=width, height=height, blob_fraction=blob_fraction
        )
        frame = gen_bleeding_frame(spec) if labels[i] else gen_mucosa_frame(spec)
        name = f"frame_{i:05d}.ppm"
        write_ppm(frame, out_dir / name)
        lines.append(f"{name},{'bleeding' if labels[i] else 'non_bleeding'}")

    manifest = out_dir / "manifest.csv"
    manifest.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return manifest

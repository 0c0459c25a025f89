"""Decoded image frames and file decoding.

A frame holds its pixels as a read-only numpy array of shape
``(height, width, 3)``, dtype uint8, row-major with the top-left pixel
first. Channel order is fixed R, G, B; decoders normalize whatever the
source stores.

Decoding accepts PNG, JPEG, BMP and binary PPM. Thresholding is defined on
raw 8-bit levels, so anything that would require requantizing samples is
rejected rather than rescaled: 16-bit PNG, PPM with maxval != 255, 16-bit
BMP, 1-bit images. Alpha channels are dropped; grayscale is replicated
into all three channels.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError


class DecodeError(Exception):
    """Raised when an image file cannot be decoded into a frame."""


_SUPPORTED_FORMATS = {"PNG", "JPEG", "BMP", "PPM"}


@dataclass(frozen=True, eq=False)
class Frame:
    """Decoded raster: ``pixels[y, x]`` is ``(r, g, b)``, dtype uint8."""

    width: int
    height: int
    pixels: np.ndarray
    source: str = ""

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise ValueError(
                f"frame dimensions must be >= 1, got {self.width}x{self.height}"
            )
        px = self.pixels
        if not isinstance(px, np.ndarray) or px.dtype != np.uint8:
            raise ValueError("pixels must be a numpy array of dtype uint8")
        if px.shape != (self.height, self.width, 3):
            raise ValueError(
                f"pixels shape {px.shape} does not match "
                f"(height={self.height}, width={self.width}, 3)"
            )
        # The frame takes ownership of the buffer; it must not change afterwards.
        px.setflags(write=False)

    @classmethod
    def from_array(cls, pixels: np.ndarray, source: str = "") -> Frame:
        """Build a frame from any (h, w, 3) array-like of 8-bit values."""
        px = np.ascontiguousarray(pixels, dtype=np.uint8)
        if px.ndim != 3 or px.shape[2] != 3:
            raise ValueError(f"expected shape (height, width, 3), got {px.shape}")
        return cls(width=px.shape[1], height=px.shape[0], pixels=px, source=source)

    def tobytes(self) -> bytes:
        """Raw row-major RGB bytes; equal frames have equal bytes."""
        return self.pixels.tobytes()


def _png_depth_and_color_type(path: Path) -> tuple[int, int]:
    # IHDR is always the first chunk: bit depth at byte 24, color type at 25.
    with open(path, "rb") as fh:
        head = fh.read(26)
    if len(head) < 26:
        raise DecodeError(f"{path}: truncated PNG header")
    return head[24], head[25]


def _ppm_header(path: Path) -> tuple[bytes, int]:
    """Return (magic, maxval) from a binary PNM header; '#' comments allowed."""
    with open(path, "rb") as fh:
        data = fh.read(2048)
    tokens: list[bytes] = []
    i = 0
    while i < len(data) and len(tokens) < 4:
        c = data[i : i + 1]
        if c == b"#":
            while i < len(data) and data[i : i + 1] not in (b"\n", b"\r"):
                i += 1
        elif c.isspace():
            i += 1
        else:
            j = i
            while j < len(data) and not data[j : j + 1].isspace() and data[j : j + 1] != b"#":
                j += 1
            tokens.append(data[i:j])
            i = j
    if not tokens:
        raise DecodeError(f"{path}: empty PNM header")
    magic = tokens[0]
    if magic == b"P4":  # 1-bit bitmap, no maxval token
        raise DecodeError(f"{path}: P4 bitmaps store 1 bit per pixel, need 8-bit samples")
    if len(tokens) < 4:
        raise DecodeError(f"{path}: truncated PNM header")
    try:
        maxval = int(tokens[3])
    except ValueError as exc:
        raise DecodeError(f"{path}: bad PNM maxval {tokens[3]!r}") from exc
    return magic, maxval


def _bmp_bit_count(path: Path) -> int:
    with open(path, "rb") as fh:
        head = fh.read(30)
    if len(head) < 30:
        raise DecodeError(f"{path}: truncated BMP header")
    dib_size = struct.unpack_from("<I", head, 14)[0]
    # BITMAPCOREHEADER stores the bit count two WORDs earlier than the
    # BITMAPINFOHEADER family.
    offset = 24 if dib_size == 12 else 28
    return struct.unpack_from("<H", head, offset)[0]


def _check_bit_depth(path: Path, fmt: str) -> None:
    """Reject files whose samples are not stored as exact 8-bit levels."""
    if fmt == "PNG":
        depth, color_type = _png_depth_and_color_type(path)
        # Palette entries are 8-bit RGB whatever the index depth, so indexed
        # images never requantize; all other color types must store 8-bit
        # samples.
        if color_type != 3 and depth != 8:
            raise DecodeError(f"{path}: PNG declares {depth} bits per sample, need 8")
    elif fmt == "PPM":
        _, maxval = _ppm_header(path)
        if maxval != 255:
            raise DecodeError(f"{path}: PNM maxval {maxval}, need 255 (8-bit samples)")
    elif fmt == "BMP":
        bits = _bmp_bit_count(path)
        if bits not in (8, 24, 32):
            raise DecodeError(f"{path}: BMP stores {bits} bits per pixel, need 8-bit samples")
    # JPEG: baseline decoding is always 8 bits per sample; exotic depths fail
    # to open at all.


def decode_frame(path: str | Path) -> Frame:
    """Decode one image file into a frame.

    Raises :class:`DecodeError` for unreadable files, unsupported or corrupt
    formats, and sample depths other than 8 bits per channel.
    """
    path = Path(path)
    try:
        img = Image.open(path)
        img.load()
    except UnidentifiedImageError as exc:
        raise DecodeError(f"{path}: unsupported or corrupt image format") from exc
    except OSError as exc:
        raise DecodeError(f"{path}: cannot read file ({exc})") from exc

    fmt = img.format or "unknown"
    if fmt not in _SUPPORTED_FORMATS:
        raise DecodeError(f"{path}: unsupported format {fmt} (want PNG, JPEG, BMP or PPM)")
    _check_bit_depth(path, fmt)

    mode = img.mode
    if mode == "RGB":
        arr = np.asarray(img)
    elif mode == "RGBA":
        arr = np.asarray(img)[:, :, :3]
    elif mode == "P":
        arr = np.asarray(img.convert("RGB"))
    elif mode == "L":
        arr = np.repeat(np.asarray(img)[:, :, np.newaxis], 3, axis=2)
    elif mode == "LA":
        arr = np.repeat(np.asarray(img)[:, :, :1], 3, axis=2)
    else:
        raise DecodeError(f"{path}: cannot take 8-bit RGB from color mode {mode!r}")
    return Frame.from_array(arr, source=str(path))


def write_ppm(frame: Frame, path: str | Path) -> None:
    """Write a frame as binary PPM (P6, maxval 255); output bytes are stable."""
    with open(path, "wb") as fh:
        fh.write(b"P6\n%d %d\n255\n" % (frame.width, frame.height))
        fh.write(frame.pixels.tobytes())

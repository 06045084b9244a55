"""Minimal PGM (P5 binary / P2 ASCII) image I/O.

Intensities map linearly between the 8-bit range [0, 255] and [0.0, 1.0];
values are clamped to [0, 1] on export only.
"""

from __future__ import annotations

import os

import numpy as np


def _read_tokens(data: bytes, count: int) -> tuple[list[bytes], int]:
    """First ``count`` whitespace-separated header tokens, skipping
    '#' comments; returns the tokens and the offset just past the final
    whitespace byte."""
    tokens: list[bytes] = []
    pos = 0
    while len(tokens) < count:
        if pos >= len(data):
            raise ValueError("truncated PGM header")
        ch = data[pos:pos + 1]
        if ch.isspace():
            pos += 1
        elif ch == b"#":
            end = data.find(b"\n", pos)
            pos = len(data) if end < 0 else end + 1
        else:
            end = pos
            while end < len(data) and not data[end:end + 1].isspace():
                end += 1
            tokens.append(data[pos:end])
            pos = end
    return tokens, pos + 1  # single whitespace byte terminates the header


def read_pgm(path: os.PathLike | str) -> np.ndarray:
    """Load a PGM file as float64 pixels in [0, 1], shape (height, width)."""
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:2] not in (b"P5", b"P2"):
        raise ValueError(f"{path}: not a PGM file")
    tokens, offset = _read_tokens(data, 4)
    magic = tokens[0].decode("ascii")
    try:
        width, height, maxval = (int(t) for t in tokens[1:4])
    except ValueError as exc:
        raise ValueError(f"{path}: malformed PGM header") from exc
    if width <= 0 or height <= 0 or not 1 <= maxval <= 255:
        raise ValueError(f"{path}: unsupported PGM geometry "
                         f"{width}x{height} maxval={maxval}")
    if magic == "P5":
        raster = np.frombuffer(data, dtype=np.uint8, count=width * height,
                               offset=offset)
        if raster.size != width * height:
            raise ValueError(f"{path}: truncated PGM raster")
    else:
        values = data[offset - 1:].split()
        if len(values) < width * height:
            raise ValueError(f"{path}: truncated PGM raster")
        try:
            raster = np.array([int(t) for t in values[:width * height]])
        except ValueError as exc:
            raise ValueError(f"{path}: non-numeric PGM sample") from exc
        if raster.min() < 0 or raster.max() > maxval:
            raise ValueError(f"{path}: sample outside [0, maxval]")
    return raster.reshape(height, width).astype(float) / float(maxval)


def write_pgm(path: os.PathLike | str, pixels: np.ndarray,
              binary: bool = True) -> None:
    """Write pixels in [0, 1] (clamped) as P5 (binary) or P2 (ASCII)."""
    pix = np.asarray(pixels, dtype=float)
    if pix.ndim != 2:
        raise ValueError(f"PGM pixels must be 2D, got {pix.ndim} axes")
    levels = np.rint(np.clip(pix, 0.0, 1.0) * 255.0).astype(np.uint8)
    height, width = levels.shape
    header = f"{'P5' if binary else 'P2'}\n{width} {height}\n255\n"
    with open(path, "wb") as fh:
        fh.write(header.encode("ascii"))
        if binary:
            fh.write(levels.tobytes(order="C"))
        else:
            body = "\n".join(" ".join(str(v) for v in row) for row in levels)
            fh.write(body.encode("ascii") + b"\n")

"""FPFLD1 field snapshot files.

Layout: one ASCII header line ``FPFLD1 <d> <n_1> ... <n_d> <repr>`` with
repr either ``grid`` or ``mode``, a newline, then the payload of
little-endian 64-bit floats interleaved (re, im) in the canonical ordering
(row-major over nodes for grid, row-major over shifted wave indices for
mode). Round-trips are bit-exact.
"""

from __future__ import annotations

import os

import numpy as np

from .spectral import GridField, GridSpec, ModeField

MAGIC = "FPFLD1"


def write_field(path: os.PathLike | str, field: GridField | ModeField) -> None:
    if isinstance(field, GridField):
        repr_tag, data = "grid", field.values
    elif isinstance(field, ModeField):
        repr_tag, data = "mode", field.coeffs
    else:
        raise TypeError(f"cannot serialize {type(field).__name__}")
    n = field.spec.n
    header = " ".join([MAGIC, str(len(n)), *map(str, n), repr_tag])
    interleaved = np.empty(data.shape + (2,), dtype="<f8")
    interleaved[..., 0] = data.real
    interleaved[..., 1] = data.imag
    with open(path, "wb") as fh:
        fh.write(header.encode("ascii") + b"\n")
        fh.write(interleaved.tobytes(order="C"))


def read_field(path: os.PathLike | str) -> GridField | ModeField:
    with open(path, "rb") as fh:
        header = fh.readline().decode("ascii", errors="replace").strip()
        payload = fh.read()
    parts = header.split()
    if len(parts) < 4 or parts[0] != MAGIC:
        raise ValueError(f"{path}: not an {MAGIC} file (header {header!r})")
    try:
        d = int(parts[1])
        n = tuple(int(v) for v in parts[2:2 + d])
        repr_tag = parts[2 + d]
    except (ValueError, IndexError) as exc:
        raise ValueError(f"{path}: malformed {MAGIC} header {header!r}") from exc
    if repr_tag not in ("grid", "mode") or len(parts) != 3 + d:
        raise ValueError(f"{path}: malformed {MAGIC} header {header!r}")
    spec = GridSpec(n)
    expected = spec.num_points * 2 * 8
    if len(payload) != expected:
        raise ValueError(
            f"{path}: payload is {len(payload)} bytes, expected {expected}")
    flat = np.frombuffer(payload, dtype="<f8").reshape(spec.shape + (2,))
    data = flat[..., 0] + 1j * flat[..., 1]
    return GridField(spec, data) if repr_tag == "grid" else ModeField(spec, data)

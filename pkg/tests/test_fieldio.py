"""FPFLD1 snapshot format round-trips and error handling."""

import numpy as np
import pytest

from conftest import random_grid_field
from fracspec.fieldio import read_field, write_field
from fracspec.spectral import GridField, GridSpec, ModeField


def test_grid_roundtrip_bit_exact(tmp_path, rng):
    spec = GridSpec((4, 6))
    field = GridField(spec, random_grid_field(spec, rng))
    path = tmp_path / "f.fpfld"
    write_field(path, field)
    back = read_field(path)
    assert isinstance(back, GridField)
    assert back.spec == spec
    assert np.array_equal(back.values, field.values)


def test_mode_roundtrip_bit_exact(tmp_path, rng):
    spec = GridSpec((8,))
    field = ModeField(spec, random_grid_field(spec, rng))
    path = tmp_path / "m.fpfld"
    write_field(path, field)
    back = read_field(path)
    assert isinstance(back, ModeField)
    assert np.array_equal(back.coeffs, field.coeffs)


def test_rewrite_is_byte_identical(tmp_path, rng):
    spec = GridSpec((6,))
    field = GridField(spec, random_grid_field(spec, rng))
    a, b = tmp_path / "a.fpfld", tmp_path / "b.fpfld"
    write_field(a, field)
    write_field(b, read_field(a))
    assert a.read_bytes() == b.read_bytes()


def test_header_layout(tmp_path):
    spec = GridSpec((4, 8))
    path = tmp_path / "h.fpfld"
    write_field(path, GridField(spec, np.zeros((4, 8))))
    first_line = path.read_bytes().split(b"\n", 1)[0]
    assert first_line == b"FPFLD1 2 4 8 grid"


def test_rejects_bad_magic(tmp_path):
    path = tmp_path / "bad.fpfld"
    path.write_bytes(b"NOTFLD 1 4 grid\n" + b"\x00" * 64)
    with pytest.raises(ValueError):
        read_field(path)


def test_rejects_truncated_payload(tmp_path):
    path = tmp_path / "short.fpfld"
    path.write_bytes(b"FPFLD1 1 4 grid\n" + b"\x00" * 16)
    with pytest.raises(ValueError):
        read_field(path)


def test_rejects_unknown_repr(tmp_path):
    path = tmp_path / "repr.fpfld"
    path.write_bytes(b"FPFLD1 1 4 nodal\n" + b"\x00" * 64)
    with pytest.raises(ValueError):
        read_field(path)

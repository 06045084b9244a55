"""PGM reader/writer."""

import numpy as np
import pytest

from fracspec.pgm import read_pgm, write_pgm


def checker(h, w):
    i, j = np.meshgrid(np.arange(h), np.arange(w), indexing="ij")
    return ((i + j) % 2).astype(float)


def test_p5_roundtrip(tmp_path):
    pix = checker(6, 4) * 0.8 + 0.1
    path = tmp_path / "img.pgm"
    write_pgm(path, pix, binary=True)
    back = read_pgm(path)
    assert back.shape == (6, 4)
    assert np.max(np.abs(back - pix)) <= 0.5 / 255 + 1e-12


def test_p2_roundtrip(tmp_path):
    pix = np.linspace(0, 1, 24).reshape(4, 6)
    path = tmp_path / "img.pgm"
    write_pgm(path, pix, binary=False)
    assert path.read_bytes().startswith(b"P2\n6 4\n255\n")
    back = read_pgm(path)
    assert np.max(np.abs(back - pix)) <= 0.5 / 255 + 1e-12


def test_export_clamps(tmp_path):
    pix = np.array([[-0.5, 0.0], [1.0, 1.7]])
    path = tmp_path / "img.pgm"
    write_pgm(path, pix)
    back = read_pgm(path)
    assert back[0, 0] == 0.0
    assert back[1, 1] == 1.0


def test_quantization_is_exact_on_levels(tmp_path):
    levels = np.arange(256, dtype=float).reshape(16, 16) / 255.0
    path = tmp_path / "img.pgm"
    write_pgm(path, levels)
    assert np.array_equal(read_pgm(path), levels)


def test_comments_and_whitespace(tmp_path):
    path = tmp_path / "img.pgm"
    path.write_bytes(b"P2 # magic\n# a comment line\n 2\t2\n255\n0 64\n128 255\n")
    back = read_pgm(path)
    assert back.shape == (2, 2)
    assert back[1, 1] == 1.0


def test_smaller_maxval_scales(tmp_path):
    path = tmp_path / "img.pgm"
    path.write_bytes(b"P2\n2 1\n100\n0 100\n")
    back = read_pgm(path)
    assert np.array_equal(back, [[0.0, 1.0]])


def test_rejects_bad_magic(tmp_path):
    path = tmp_path / "img.pgm"
    path.write_bytes(b"P6\n2 2\n255\n" + b"\x00" * 12)
    with pytest.raises(ValueError):
        read_pgm(path)


def test_rejects_truncated_raster(tmp_path):
    path = tmp_path / "img.pgm"
    path.write_bytes(b"P5\n4 4\n255\n" + b"\x00" * 7)
    with pytest.raises(ValueError):
        read_pgm(path)


def test_rejects_wide_maxval(tmp_path):
    path = tmp_path / "img.pgm"
    path.write_bytes(b"P5\n2 2\n65535\n" + b"\x00" * 8)
    with pytest.raises(ValueError):
        read_pgm(path)


def test_rejects_sample_above_maxval(tmp_path):
    path = tmp_path / "img.pgm"
    path.write_bytes(b"P2\n2 1\n10\n0 11\n")
    with pytest.raises(ValueError):
        read_pgm(path)

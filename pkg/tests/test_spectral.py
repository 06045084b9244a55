"""Transforms, inner products, interpolation, projection and norms."""

import numpy as np
import pytest

from conftest import (TWO_PI, naive_forward, naive_inverse,
                      random_grid_field, random_mean_free_modes)
from fracspec.spectral import (CoefficientSource, GridField, GridSpec,
                               ModeField, basis_mode, discrete_inner,
                               forward_transform, interpolate,
                               inverse_transform, l2_norm, project,
                               sobolev_norm)


def rel_err(a, b):
    scale = max(np.max(np.abs(a)), np.max(np.abs(b)), 1e-300)
    return np.max(np.abs(np.asarray(a) - np.asarray(b))) / scale


class TestGridSpec:
    def test_validation(self):
        with pytest.raises(ValueError):
            GridSpec((5,))
        with pytest.raises(ValueError):
            GridSpec((2,))
        with pytest.raises(ValueError):
            GridSpec((4, 4, 4, 4))
        assert GridSpec((4, 6)).num_points == 24

    def test_wave_axis_bounds(self):
        spec = GridSpec((8,))
        assert spec.wave_axis(0).min() == -4
        assert spec.wave_axis(0).max() == 3
        assert spec.zero_mode_index == (4,)

    def test_nodes(self):
        spec = GridSpec((4, 8))
        assert spec.axis_nodes(0)[1] == pytest.approx(np.pi / 2)
        assert spec.axis_nodes(1)[1] == pytest.approx(np.pi / 4)


class TestForwardTransform:
    def test_constant_field(self):
        spec = GridSpec((4,))
        C = forward_transform(GridField(spec, np.ones(4)))
        expected = np.zeros(4, dtype=complex)
        expected[2] = TWO_PI
        assert rel_err(C.coeffs, expected) < 1e-12

    def test_single_exponential(self):
        spec = GridSpec((8,))
        x = spec.axis_nodes(0)
        C = forward_transform(GridField(spec, np.exp(1j * x)))
        expected = np.zeros(8, dtype=complex)
        expected[4 + 1] = TWO_PI
        assert rel_err(C.coeffs, expected) < 1e-12

    @pytest.mark.parametrize("n", [(6,), (4, 6), (4, 4, 4)])
    def test_matches_bruteforce_definition(self, n, rng):
        spec = GridSpec(n)
        values = random_grid_field(spec, rng)
        C = forward_transform(GridField(spec, values))
        assert rel_err(C.coeffs, naive_forward(spec, values)) < 1e-12

    @pytest.mark.parametrize("n", [(16,), (8, 8), (4, 12)])
    def test_roundtrip(self, n, rng):
        spec = GridSpec(n)
        values = random_grid_field(spec, rng)
        back = inverse_transform(forward_transform(GridField(spec, values)))
        assert rel_err(back.values, values) < 1e-12


class TestInverseTransform:
    def test_zero_mode_only(self):
        spec = GridSpec((8,))
        coeffs = np.zeros(8, dtype=complex)
        coeffs[4] = TWO_PI
        V = inverse_transform(ModeField(spec, coeffs))
        assert rel_err(V.values, np.ones(8)) < 1e-12

    def test_single_mode_2d(self):
        spec = GridSpec((8, 8))
        V = inverse_transform(basis_mode(spec, (1, 0)))
        x1, _ = spec.meshgrid()
        assert rel_err(V.values, np.exp(1j * x1)) < 1e-12

    def test_matches_bruteforce_definition(self, rng):
        spec = GridSpec((4, 6))
        coeffs = random_grid_field(spec, rng)
        V = inverse_transform(ModeField(spec, coeffs))
        assert rel_err(V.values, naive_inverse(spec, coeffs)) < 1e-12


class TestDiscreteInner:
    def test_basis_norm(self):
        spec = GridSpec((8, 8))
        phi = inverse_transform(basis_mode(spec, (3, -2)))
        assert discrete_inner(phi, phi) == pytest.approx(TWO_PI ** 2, rel=1e-13)

    def test_orthogonality(self):
        spec = GridSpec((8,))
        a = inverse_transform(basis_mode(spec, (2,)))
        b = inverse_transform(basis_mode(spec, (-3,)))
        assert abs(discrete_inner(a, b)) < 1e-12 * TWO_PI

    def test_self_inner_nonnegative_real(self, rng):
        spec = GridSpec((4, 6))
        V = GridField(spec, random_grid_field(spec, rng))
        val = discrete_inner(V, V)
        assert val.imag == pytest.approx(0.0, abs=1e-12 * abs(val))
        assert val.real >= 0.0

    def test_spec_mismatch(self, rng):
        V = GridField(GridSpec((4,)), np.ones(4))
        W = GridField(GridSpec((6,)), np.ones(6))
        with pytest.raises(ValueError):
            discrete_inner(V, W)


class TestInterpolate:
    def test_reproduces_basis(self):
        spec = GridSpec((8, 8))
        C = interpolate(lambda x1, x2: np.exp(1j * (2 * x1 - 3 * x2)), spec)
        expected = basis_mode(spec, (2, -3)).coeffs
        assert rel_err(C.coeffs, expected) < 1e-12

    def test_cosine(self):
        # cos = (phi^1 + phi^-1)/2, so each of the two modes carries pi
        spec = GridSpec((8,))
        C = interpolate(np.cos, spec)
        expected = np.zeros(8, dtype=complex)
        expected[4 + 1] = np.pi
        expected[4 - 1] = np.pi
        assert rel_err(C.coeffs, expected) < 1e-12

    def test_aliasing_of_nyquist_mode(self):
        # exp(i(n/2)x_j) samples identically to exp(-i(n/2)x_j); the mass
        # lands on k = -n/2, the only representable alias
        spec = GridSpec((8,))
        C = interpolate(lambda x: np.exp(1j * 4 * x), spec)
        expected = np.zeros(8, dtype=complex)
        expected[0] = TWO_PI
        assert rel_err(C.coeffs, expected) < 1e-12

    def test_matches_nodal_values(self, rng):
        spec = GridSpec((16,))
        v = lambda x: np.cos(3 * x) + 0.5 * np.sin(x) ** 2
        nodal = inverse_transform(interpolate(v, spec))
        assert rel_err(nodal.values, v(spec.axis_nodes(0))) < 1e-12


class TestProject:
    def test_copies_coefficients(self):
        from fracspec.bench import hat_coeffs
        spec = GridSpec((16,))
        src = hat_coeffs()
        C = project(src, spec)
        for k in range(-8, 8):
            assert C.coeffs[k + 8] == src.at((k,))

    def test_point_support(self):
        src = CoefficientSource(d=1, fn=lambda k: np.where(k == 0, 3.5, 0.0) + 0j)
        C = project(src, GridSpec((8,)))
        assert C.coeffs[4] == 3.5
        assert np.count_nonzero(C.coeffs) == 1

    def test_idempotent_on_own_coefficients(self, rng):
        spec = GridSpec((8,))
        C = ModeField(spec, random_grid_field(spec, rng))
        src = CoefficientSource(d=1, fn=lambda k: C.coeffs[np.asarray(k) + 4])
        assert np.array_equal(project(src, spec).coeffs, C.coeffs)

    def test_source_determinism(self):
        from fracspec.bench import hat_coeffs
        src = hat_coeffs()
        assert src.at((7,)) == src.at((7,))


class TestSobolevNorm:
    def test_unit_wavenumber_mode_all_orders(self):
        spec = GridSpec((8, 8))
        C = basis_mode(spec, (1, 0))
        for mu in (-1.0, -0.3, 0.0, 0.5, 1.0, 2.0):
            assert sobolev_norm(C, mu) == pytest.approx(TWO_PI, rel=1e-13)

    def test_single_mode_weight(self):
        # |k| = 2 and mu = 1/2 contribute a factor sqrt(2)
        spec = GridSpec((8, 8))
        C = basis_mode(spec, (2, 0))
        expected = np.sqrt(2.0) * TWO_PI ** (spec.d / 2)
        assert sobolev_norm(C, 0.5) == pytest.approx(expected, rel=1e-13)

    def test_plancherel(self, rng):
        spec = GridSpec((8, 6))
        V = GridField(spec, random_grid_field(spec, rng))
        C = forward_transform(V)
        assert l2_norm(C) ** 2 == pytest.approx(discrete_inner(V, V).real,
                                                rel=1e-12)

    def test_negative_order_requires_mean_free(self):
        spec = GridSpec((8,))
        C = basis_mode(spec, (0,))
        with pytest.raises(ValueError):
            sobolev_norm(C, -0.5)

    def test_mean_free_flag(self):
        spec = GridSpec((8,))
        assert basis_mode(spec, (1,)).mean_free
        assert not basis_mode(spec, (0,)).mean_free


class TestNormInequalities:
    orders = [0.0, 0.3, 1.0, 2.0]

    def test_inverse_estimate(self, rng):
        for spec in (GridSpec((16,)), GridSpec((8, 12))):
            C = ModeField(spec, random_grid_field(spec, rng))
            nmax = max(spec.n)
            for s in self.orders:
                for r in self.orders:
                    if r < s:
                        continue
                    lhs = sobolev_norm(C, r)
                    rhs = (nmax / 2) ** (r - s) * sobolev_norm(C, s)
                    assert lhs <= rhs * (1 + 1e-12)

    def test_embedding_mean_free(self, rng):
        spec = GridSpec((16, 8))
        C = ModeField(spec, random_mean_free_modes(spec, rng))
        for s, r in [(-1.0, 0.0), (0.0, 0.5), (0.3, 1.0), (-0.5, 2.0)]:
            assert sobolev_norm(C, s) <= sobolev_norm(C, r) * (1 + 1e-12)


class TestProjectionErrorRate:
    def test_hat_solution_l2_rate(self):
        # coefficients decay like k^-2, so |u - P_n u|_0 ~ n^{-3/2}
        from fracspec.bench import product_solution
        src = product_solution(1)
        n_ref = 8192
        ref = GridSpec((n_ref,))
        u_hat = src.on_modes(ref)
        errors = []
        n_list = [16, 32, 64, 128, 256, 512]
        for n in n_list:
            tail = u_hat.copy()
            lo = (n_ref - n) // 2
            tail[lo:lo + n] = 0.0
            errors.append(np.sqrt(np.sum(np.abs(tail) ** 2) / TWO_PI))
        slope = np.polyfit(np.log(n_list[1:]), np.log(errors[1:]), 1)[0]
        assert -1.65 < slope < -1.4


class TestImmutability:
    def test_fields_are_read_only(self):
        V = GridField(GridSpec((4,)), np.ones(4))
        with pytest.raises(ValueError):
            V.values[0] = 2.0

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            GridField(GridSpec((4,)), [1.0, np.nan, 0.0, 0.0])

    def test_rejects_wrong_shape(self):
        with pytest.raises(ValueError):
            ModeField(GridSpec((4, 4)), np.zeros(4))

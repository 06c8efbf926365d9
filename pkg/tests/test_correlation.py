"""Tests for planar correlation tensors and the correlation function."""

import itertools
import math
from functools import reduce

import numpy as np
import pytest

from rotbell import (
    AngleSettings,
    CorrelationTensor,
    DensityMatrix,
    DomainError,
    InvalidSizeError,
    ShapeError,
    build_ghz,
    correlation_function,
    correlation_value,
    ghz_planar_tensor,
    mix_with_white_noise,
    rotate_frames,
    tensor_from_state,
)

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
PLANAR_ORACLE = {1: SX, 2: SY}


def oracle_tensor(rho_entries, n):
    """Independent planar tensor: explicit kron products and traces."""
    vals = {}
    for idx in itertools.product((1, 2), repeat=n):
        product = reduce(np.kron, [PLANAR_ORACLE[i] for i in idx])
        vals[idx] = float(np.trace(rho_entries @ product).real)
    return vals


def brute_force_value(tensor, angles):
    """Independent correlation value: explicit sum over all multi-indices."""
    total = 0.0
    for idx in itertools.product((1, 2), repeat=tensor.n_parties):
        factor = 1.0
        for j, i in enumerate(idx):
            factor *= math.cos(angles[j]) if i == 1 else math.sin(angles[j])
        total += tensor.entry(idx) * factor
    return total


def random_tensor(rng, n):
    return CorrelationTensor(n, rng.uniform(-1, 1, size=(2,) * n))


class TestTensorFromState:
    def test_ghz2_pure(self):
        rho = mix_with_white_noise(build_ghz(2), 1.0)
        tensor = tensor_from_state(rho)
        expected = oracle_tensor(rho.entries, 2)
        for idx, value in expected.items():
            assert tensor.entry(idx) == pytest.approx(value, abs=1e-12)
        assert tensor.entry((1, 1)) == pytest.approx(1.0, abs=1e-10)
        assert tensor.entry((2, 2)) == pytest.approx(-1.0, abs=1e-10)
        assert tensor.entry((1, 2)) == pytest.approx(0.0, abs=1e-12)
        assert tensor.entry((2, 1)) == pytest.approx(0.0, abs=1e-12)

    def test_white_noise_gives_zero_tensor(self):
        for n in (1, 2, 3):
            rho = DensityMatrix(n, np.eye(2**n, dtype=complex) / 2**n)
            tensor = tensor_from_state(rho)
            np.testing.assert_allclose(tensor.values, 0.0, atol=1e-12)

    def test_ghz3_pure_against_trace_oracle(self):
        rho = mix_with_white_noise(build_ghz(3), 1.0)
        tensor = tensor_from_state(rho)
        expected = oracle_tensor(rho.entries, 3)
        for idx, value in expected.items():
            assert tensor.entry(idx) == pytest.approx(value, abs=1e-12)
        assert tensor.entry((1, 1, 1)) == pytest.approx(1.0, abs=1e-10)
        for idx in ((1, 2, 2), (2, 1, 2), (2, 2, 1)):
            assert tensor.entry(idx) == pytest.approx(-1.0, abs=1e-10)
        for idx in ((1, 1, 2), (1, 2, 1), (2, 1, 1), (2, 2, 2)):
            assert tensor.entry(idx) == pytest.approx(0.0, abs=1e-12)


class TestGhzPlanarTensor:
    def test_n4_sign_rule(self):
        tensor = ghz_planar_tensor(4, 0.8)
        assert tensor.entry((1, 1, 1, 1)) == pytest.approx(0.8)
        assert tensor.entry((1, 1, 2, 2)) == pytest.approx(-0.8)
        assert tensor.entry((2, 2, 2, 2)) == pytest.approx(0.8)
        assert tensor.entry((1, 2, 2, 2)) == 0.0

    def test_n4_against_measured_tensor(self):
        closed = ghz_planar_tensor(4, 0.8)
        measured = tensor_from_state(mix_with_white_noise(build_ghz(4), 0.8))
        np.testing.assert_allclose(closed.values, measured.values, atol=1e-10)

    def test_zero_visibility(self):
        np.testing.assert_array_equal(ghz_planar_tensor(3, 0.0).values, 0.0)

    def test_nonzero_count_is_half(self):
        tensor = ghz_planar_tensor(5, 0.7)
        assert np.count_nonzero(tensor.values) == 16  # 2^(N-1)
        assert np.all(np.abs(tensor.values[tensor.values != 0]) == 0.7)

    def test_domain_errors(self):
        with pytest.raises(InvalidSizeError):
            ghz_planar_tensor(0, 0.5)
        with pytest.raises(DomainError):
            ghz_planar_tensor(3, 1.5)


class TestCorrelationValue:
    def test_ghz_closed_form_and_brute_force(self):
        rng = np.random.default_rng(3)
        for n in (1, 2, 3, 4):
            tensor = ghz_planar_tensor(n, 0.6)
            for _ in range(5):
                angles = rng.uniform(0, 2 * np.pi, n)
                value = correlation_value(tensor, AngleSettings(angles))
                assert value == pytest.approx(0.6 * math.cos(angles.sum()), abs=1e-12)
                assert value == pytest.approx(brute_force_value(tensor, angles), abs=1e-12)

    def test_zero_angles_pick_first_entry(self):
        rng = np.random.default_rng(4)
        tensor = random_tensor(rng, 3)
        value = correlation_value(tensor, AngleSettings([0.0, 0.0, 0.0]))
        assert value == pytest.approx(tensor.entry((1, 1, 1)), abs=1e-12)

    def test_zero_tensor(self):
        tensor = CorrelationTensor(2, np.zeros((2, 2)))
        assert correlation_value(tensor, AngleSettings([0.3, 1.2])) == 0.0

    def test_length_mismatch(self):
        with pytest.raises(ShapeError):
            correlation_value(ghz_planar_tensor(2, 1.0), AngleSettings([0.1]))

    def test_multilinear_per_party(self):
        # for fixed other angles the value is A cos(a_j) + B sin(a_j)
        rng = np.random.default_rng(6)
        tensor = random_tensor(rng, 3)
        base = rng.uniform(0, 2 * np.pi, 3)
        for j in range(3):
            def at(angle):
                angles = base.copy()
                angles[j] = angle
                return correlation_value(tensor, AngleSettings(angles))

            coef_cos, coef_sin = at(0.0), at(np.pi / 2)
            for a in rng.uniform(0, 2 * np.pi, 4):
                assert at(a) == pytest.approx(
                    coef_cos * math.cos(a) + coef_sin * math.sin(a), abs=1e-12
                )

    def test_rotational_invariance(self):
        # counter-rotated tensor at shifted angles reproduces the value;
        # entries scaled by 2^(-N/2) so every rotated entry stays in [-1, 1]
        rng = np.random.default_rng(7)
        for n in (1, 2, 3, 4):
            tensor = CorrelationTensor(
                n, rng.uniform(-1, 1, size=(2,) * n) * 2.0 ** (-n / 2)
            )
            for _ in range(5):
                angles = rng.uniform(0, 2 * np.pi, n)
                deltas = rng.uniform(0, 2 * np.pi, n)
                original = correlation_value(tensor, AngleSettings(angles))
                counter = correlation_value(
                    rotate_frames(tensor, -deltas), AngleSettings(angles + deltas)
                )
                assert counter == pytest.approx(original, abs=1e-10)


class TestCorrelationFunctionCallable:
    def test_matches_pointwise_values(self):
        rng = np.random.default_rng(8)
        tensor = random_tensor(rng, 3)
        fn = correlation_function(tensor)
        angles = rng.uniform(0, 2 * np.pi, 3)
        assert float(fn(*angles)) == pytest.approx(
            correlation_value(tensor, AngleSettings(angles)), abs=1e-12
        )

    def test_broadcasts_over_grids(self):
        tensor = ghz_planar_tensor(2, 0.5)
        fn = correlation_function(tensor)
        a1 = np.linspace(0, 2 * np.pi, 7)[:, None]
        a2 = np.linspace(0, 2 * np.pi, 5)[None, :]
        out = fn(a1, a2)
        assert out.shape == (7, 5)
        np.testing.assert_allclose(out, 0.5 * np.cos(a1 + a2), atol=1e-12)


class TestTensorLayoutAndJson:
    def test_flat_is_little_endian(self):
        vals = np.zeros((2, 2, 2))
        vals[1, 0, 0] = 0.5  # multi-index (2, 1, 1): party 1 has index 2
        tensor = CorrelationTensor(3, vals)
        assert tensor.flat[1] == 0.5  # bit 0 set
        restored = CorrelationTensor.from_flat(3, tensor.flat)
        np.testing.assert_array_equal(restored.values, tensor.values)

    def test_json_round_trip(self):
        rng = np.random.default_rng(9)
        tensor = random_tensor(rng, 3)
        restored = CorrelationTensor.from_json_dict(tensor.to_json_dict())
        np.testing.assert_allclose(restored.values, tensor.values, atol=0)

    def test_json_omits_zeros(self):
        doc = ghz_planar_tensor(3, 0.5).to_json_dict()
        assert doc["n"] == 3
        assert len(doc["entries"]) == 4  # 2^(N-1)
        assert set(doc["entries"]) == {"111", "122", "212", "221"}

    def test_json_missing_keys_mean_zero(self):
        tensor = CorrelationTensor.from_json_dict({"n": 2, "entries": {"11": 1.0}})
        assert tensor.entry((1, 1)) == 1.0
        assert tensor.entry((2, 2)) == 0.0

    def test_json_rejects_bad_keys(self):
        with pytest.raises(DomainError):
            CorrelationTensor.from_json_dict({"n": 2, "entries": {"13": 1.0}})
        with pytest.raises(DomainError):
            CorrelationTensor.from_json_dict({"n": 2, "entries": {"111": 1.0}})

    def test_entry_validation(self):
        tensor = ghz_planar_tensor(2, 1.0)
        with pytest.raises(DomainError):
            tensor.entry((0, 1))
        with pytest.raises(ShapeError):
            tensor.entry((1, 1, 1))

    def test_tensor_bounds_validation(self):
        with pytest.raises(DomainError):
            CorrelationTensor(1, np.array([1.5, 0.0]))
        with pytest.raises(ShapeError):
            CorrelationTensor(2, np.zeros((2, 3)))
        with pytest.raises(InvalidSizeError):
            CorrelationTensor(0, np.zeros(()))

    def test_values_read_only(self):
        tensor = ghz_planar_tensor(2, 1.0)
        with pytest.raises(ValueError):
            tensor.values[0, 0] = 0.0

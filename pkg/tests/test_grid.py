import numpy as np
import pytest

from qentropy.grid import (
    DegenerateAmplitudeError,
    GridSpec,
    SampledAmplitude,
    born_density,
    fourier_transform,
    inverse_fourier_transform,
    normalize,
    reflect_values,
    shift_values,
)


def gauss(grid, x0=0.0, k0=0.0):
    x = grid.axis()
    return np.pi**-0.25 * np.exp(-0.5 * (x - x0) ** 2 + 1j * k0 * x)


@pytest.fixture
def g1():
    return GridSpec(1, 1024, 80.0)


def test_grid_validation():
    with pytest.raises(ValueError):
        GridSpec(4, 64, 1.0)
    with pytest.raises(ValueError):
        GridSpec(1, 4, 1.0)
    with pytest.raises(ValueError):
        GridSpec(1, 64, -1.0)


def test_dual_grid_extent(g1):
    k = g1.freq_axis()
    assert np.isclose(g1.freq_spacing, 2 * np.pi / 80.0)
    assert np.isclose(k[0], -np.pi * 1024 / 80.0)
    assert np.isclose(k[-1] + g1.freq_spacing, np.pi * 1024 / 80.0)


def test_gaussian_self_transform(g1):
    a = SampledAmplitude(g1, gauss(g1))
    f = fourier_transform(a)
    k = g1.freq_axis()
    np.testing.assert_allclose(f.values, np.pi**-0.25 * np.exp(-0.5 * k**2), atol=1e-6)


def test_modulation_shifts_spectrum(g1):
    k0 = 3 * g1.freq_spacing * round(3 / (3 * g1.freq_spacing))  # grid-aligned near 3
    f = fourier_transform(SampledAmplitude(g1, gauss(g1, k0=k0)))
    k = g1.freq_axis()
    np.testing.assert_allclose(f.values, np.pi**-0.25 * np.exp(-0.5 * (k - k0) ** 2), atol=1e-6)


def test_modulation_off_grid_peak(g1):
    f = fourier_transform(SampledAmplitude(g1, gauss(g1, k0=3.0)))
    k = g1.freq_axis()
    np.testing.assert_allclose(f.values, np.pi**-0.25 * np.exp(-0.5 * (k - 3.0) ** 2), atol=1e-6)


def test_round_trip_and_parseval(g1):
    rng = np.random.default_rng(0)
    v = rng.normal(size=1024) + 1j * rng.normal(size=1024)
    a = normalize(SampledAmplitude(g1, v))
    f = fourier_transform(a)
    assert abs(f.norm2() - a.norm2()) < 1e-9
    back = inverse_fourier_transform(f)
    assert np.max(np.abs(back.values - a.values)) < 1e-9


def test_round_trip_3d():
    g = GridSpec(3, 16, 10.0)
    rng = np.random.default_rng(1)
    v = rng.normal(size=g.shape) + 1j * rng.normal(size=g.shape)
    a = normalize(SampledAmplitude(g, v))
    f = fourier_transform(a)
    assert abs(f.norm2() - 1) < 1e-9
    assert np.max(np.abs(inverse_fourier_transform(f).values - a.values)) < 1e-9


def test_shift_theorem(g1):
    a = SampledAmplitude(g1, gauss(g1))
    steps = 37
    x0 = steps * g1.spacing
    shifted = SampledAmplitude(g1, shift_values(a.values, g1, steps))
    k = g1.freq_axis()
    lhs = fourier_transform(shifted).values
    rhs = np.exp(-1j * k * x0) * fourier_transform(a).values
    assert np.max(np.abs(lhs - rhs)) < 1e-8


def test_hermitian_symmetry(g1):
    rng = np.random.default_rng(2)
    a = normalize(SampledAmplitude(g1, rng.normal(size=1024)))
    phi = fourier_transform(a).values
    # phi(-k) on the even grid is reflect_values
    np.testing.assert_allclose(reflect_values(phi, g1), np.conj(phi), atol=1e-9)


def test_reflect_odd_grid_rejected():
    g = GridSpec(1, 9, 1.0)
    with pytest.raises(ValueError):
        reflect_values(np.zeros(9), g)


def test_reflect_matches_negated_nodes(g1):
    x = g1.axis()
    v = np.exp(-(x - 1.3) ** 2)
    np.testing.assert_allclose(reflect_values(v, g1), np.exp(-(-x - 1.3) ** 2), atol=1e-15)


def test_uniform_density():
    g = GridSpec(1, 64, 5.0)
    a = SampledAmplitude(g, np.full(64, 1 / np.sqrt(5.0)))
    d = born_density(a)
    np.testing.assert_allclose(d.values, 1 / 5.0)


def test_gaussian_density_variance(g1):
    d = born_density(SampledAmplitude(g1, gauss(g1)))
    assert abs(d.variance()[0] - 0.5) < 1e-9


def test_spinor_density_sums_components():
    g = GridSpec(1, 32, 4.0)
    rng = np.random.default_rng(3)
    v = rng.normal(size=(4, 32)) + 1j * rng.normal(size=(4, 32))
    a = normalize(SampledAmplitude(g, v))
    d = born_density(a)
    np.testing.assert_allclose(d.values, np.sum(np.abs(a.values) ** 2, axis=0))
    assert abs(d.total() - 1) < 1e-12


def test_normalize(g1):
    a = SampledAmplitude(g1, gauss(g1))
    np.testing.assert_allclose(normalize(a.replace(values=2 * a.values)).values, a.values, atol=1e-12)
    np.testing.assert_allclose(normalize(a).values, a.values, atol=1e-12)
    assert abs(normalize(a).norm2() - 1) < 1e-12
    with pytest.raises(DegenerateAmplitudeError, match="degenerate amplitude"):
        normalize(a.replace(values=np.zeros(1024)))


def test_nan_rejected(g1):
    v = gauss(g1)
    v[3] = np.nan
    with pytest.raises(ValueError):
        fourier_transform(SampledAmplitude(g1, v))


def test_born_density_unnormalized_rejected(g1):
    with pytest.raises(ValueError):
        born_density(SampledAmplitude(g1, 2 * gauss(g1)))


def test_immutable(g1):
    a = SampledAmplitude(g1, gauss(g1))
    with pytest.raises(ValueError):
        a.values[0] = 1.0

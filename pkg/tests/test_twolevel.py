import numpy as np
import pytest
from scipy.linalg import expm

from qentropy.grid import GridSpec, SampledAmplitude, normalize
from qentropy.qcurve import Label, classify
from qentropy.twolevel import (
    OscillationBasis,
    TwoLevelSystem,
    coefficients,
    density_period,
    eigenvalues,
    fermi_approximation,
    harmonic_oscillator_basis,
    mixing_angle,
    n_level_transition,
    oscillation_coefficients,
    oscillation_densities,
    oscillation_entropy_series,
    recurrence_report,
    superposition_coefficients,
    superposition_entropy,
    transition_probability,
)


def random_sys(rng):
    return TwoLevelSystem(*rng.uniform(-3, 3, size=5))


def oracle(sys, t, init=(1, 0)):
    return expm(-1j * sys.matrix() * t) @ np.asarray(init, complex)


def test_mixing_angle_cases():
    assert mixing_angle(TwoLevelSystem.resonant(1.0)).theta == pytest.approx(np.pi / 4)
    assert mixing_angle(TwoLevelSystem(2, 0)).theta == 0.0
    a = mixing_angle(TwoLevelSystem(2, 0, w12i=1))
    assert a.theta == pytest.approx(np.pi / 8)
    assert a.sin2 == pytest.approx(2**-0.5)
    d = mixing_angle(TwoLevelSystem(1, 1))
    assert d.theta == 0.0 and d.degenerate
    # range (-pi/2, pi/2]
    assert mixing_angle(TwoLevelSystem(-1, 1, w12i=0)).theta == pytest.approx(np.pi / 2)


def test_mixing_angle_matches_definition():
    rng = np.random.default_rng(0)
    for _ in range(100):
        s = random_sys(rng)
        a = mixing_angle(s)
        assert a.sin2 == pytest.approx(2 * s.w12i / s.discriminant, abs=1e-12)
        assert a.cos2 == pytest.approx((s.omega11 - s.omega22) / s.discriminant, abs=1e-12)
        assert -np.pi / 2 < a.theta <= np.pi / 2


def test_eigenvalues():
    assert eigenvalues(TwoLevelSystem.resonant(1.0)) == pytest.approx((1, -1))
    assert eigenvalues(TwoLevelSystem(2, 0)) == pytest.approx((2, 0))
    s = TwoLevelSystem(2, 0, w12i=1)
    l1, l2 = eigenvalues(s)
    assert (l1, l2) == pytest.approx((1 + np.sqrt(2), 1 - np.sqrt(2)), abs=1e-12)
    np.testing.assert_allclose(sorted((l1, l2)), np.linalg.eigvalsh(s.matrix()), atol=1e-12)


def test_coefficients_vs_expm_and_unitarity():
    rng = np.random.default_rng(1)
    for _ in range(1000):
        s = random_sys(rng)
        t = rng.uniform(0, 10)
        a1, a2 = coefficients(s, t)
        ref = oracle(s, t)
        assert abs(a1 - ref[0]) < 1e-10 and abs(a2 - ref[1]) < 1e-10
        assert abs(abs(a1) ** 2 + abs(a2) ** 2 - 1) < 1e-12
        assert abs(abs(a2) ** 2 - transition_probability(s, t)) < 1e-12


def test_t0_and_full_transfer():
    a1, a2 = coefficients(TwoLevelSystem(3, 1, 0.2, 0.1, 0.4), 0.0)
    assert a1 == pytest.approx(1) and a2 == pytest.approx(0)
    _, a2 = coefficients(TwoLevelSystem.resonant(1.0), np.pi / 2)
    assert abs(abs(a2) ** 2 - 1) < 1e-12


def test_superposition():
    rng = np.random.default_rng(2)
    s = random_sys(rng)
    assert superposition_coefficients(s, 0.8, 1, 0) == pytest.approx(coefficients(s, 0.8))
    diag = TwoLevelSystem(1.0, 2.5, 0.3, 0.2, 0.0)
    b1, b2 = superposition_coefficients(diag, 1.3, 0, 1)
    assert abs(b1) < 1e-15 and b2 == pytest.approx(np.exp(-1j * diag.omega22 * 1.3))
    for _ in range(200):
        s = random_sys(rng)
        z = rng.normal(size=2) + 1j * rng.normal(size=2)
        z /= np.linalg.norm(z)
        t = rng.uniform(0, 10)
        got = superposition_coefficients(s, t, *z)
        np.testing.assert_allclose(got, oracle(s, t, z), atol=1e-10)
    with pytest.raises(ValueError):
        superposition_coefficients(s, 1.0, 1.0, 1.0)


def test_fermi_approximation():
    s = TwoLevelSystem(100, 1, 0.01, 0.01, 0.01)
    t = np.linspace(0, 1, 201)
    assert np.max(np.abs(fermi_approximation(s, t) - transition_probability(s, t))) < 1e-5
    assert np.all(fermi_approximation(TwoLevelSystem(5, 1, 0.1, 0.2, 0.0), t) == 0)
    assert fermi_approximation(s, 0.0) == 0
    with pytest.raises(ValueError, match="resonant"):
        fermi_approximation(TwoLevelSystem(1, 1, 0, 0, 0.1), 1.0)


def test_fermi_regime_error_shrinks():
    t = np.linspace(0, 20, 400)
    errs = []
    for gap in np.geomspace(1, 10, 6):
        s = TwoLevelSystem(1 + gap, 1, 0, 0, 0.1)
        exact = transition_probability(s, t)
        errs.append(np.max(np.abs(fermi_approximation(s, t) - exact)) / np.max(exact))
    assert np.all(np.diff(errs) < 0)


def test_n_level_two_reduces():
    rng = np.random.default_rng(3)
    for _ in range(50):
        s = random_sys(rng)
        hi = np.array([[s.w11i, s.w12i], [s.w12i, s.w22i]])
        t = rng.uniform(0, 5)
        p = n_level_transition([s.omega1, s.omega2], hi, 1, t)
        assert abs(p - transition_probability(s, t)) < 1e-12


@pytest.mark.parametrize("n", range(2, 9))
def test_n_level_oracle(n):
    rng = np.random.default_rng(n)
    h0 = rng.uniform(-2, 2, n)
    a = rng.normal(size=(n, n))
    hi = 0.5 * (a + a.T)
    for t in (0.0, 0.7, 3.1):
        u = expm(-1j * (np.diag(h0) + hi) * t)[:, 0]
        probs = [n_level_transition(h0, hi, j, t) for j in range(n)]
        np.testing.assert_allclose(probs, np.abs(u) ** 2, atol=1e-10)
        assert abs(sum(probs) - 1) < 1e-10
    assert n_level_transition(h0, hi, 0, 0.0) == pytest.approx(1.0)


def test_n_level_validation():
    with pytest.raises(ValueError):
        n_level_transition([0, 1], [[0, 1], [2, 0]], 1, 1.0)
    with pytest.raises(ValueError):
        n_level_transition([0, 1, 2], np.eye(2), 1, 1.0)


@pytest.fixture(scope="module")
def hob():
    return harmonic_oscillator_basis(GridSpec(1, 512, 30.0))


def test_basis_orthonormal(hob):
    assert abs(hob.psi1.norm2() - 1) < 1e-12
    assert abs(np.vdot(hob.psi1.values, hob.psi2.values)) * hob.psi1.volume < 1e-12


def test_basis_rejects_nonorthogonal():
    g = GridSpec(1, 256, 20.0)
    x = g.axis()
    a = normalize(SampledAmplitude(g, np.exp(-x**2 / 2)))
    b = normalize(SampledAmplitude(g, np.exp(-(x - 0.5) ** 2 / 2)))
    with pytest.raises(ValueError, match="orthogonal"):
        OscillationBasis.from_position(a, b)


def test_densities_t0(hob):
    s = TwoLevelSystem.resonant(1.0)
    p, k = oscillation_densities(hob, s, 0.0)
    np.testing.assert_allclose(p.values, np.abs(hob.psi1.values) ** 2, atol=1e-15)
    np.testing.assert_allclose(k.values, np.abs(hob.phi1.values) ** 2, atol=1e-15)


def test_expansion_matches_direct(hob):
    rng = np.random.default_rng(7)
    for _ in range(50):
        s = random_sys(rng)
        t = rng.uniform(0, 10)
        pe, ke = oscillation_densities(hob, s, t, "expansion")
        pd, kd = oscillation_densities(hob, s, t, "direct")
        assert np.max(np.abs(pe.values - pd.values)) < 1e-10
        assert np.max(np.abs(ke.values - kd.values)) < 1e-10


def test_expansion_with_complex_basis():
    # complex psi pair makes the A3 field nonzero
    g = GridSpec(1, 512, 30.0)
    b0 = harmonic_oscillator_basis(g)
    x = g.axis()
    p1 = b0.psi1.replace(values=b0.psi1.values * np.exp(0.7j * x))
    p2 = b0.psi2.replace(values=b0.psi2.values * np.exp(-0.3j * x ** 2))
    q2 = p2.values - np.vdot(p1.values, p2.values) * g.spacing * p1.values
    basis = OscillationBasis.from_position(p1, normalize(p2.replace(values=q2)))
    s = TwoLevelSystem(1.0, 0.2, 0.1, -0.3, 0.6)
    assert np.max(np.abs(oscillation_coefficients(basis, s).a3)) > 1e-3
    for t in (0.4, 2.2, 5.9):
        pe, ke = oscillation_densities(basis, s, t, "expansion")
        pd, kd = oscillation_densities(basis, s, t, "direct")
        assert np.max(np.abs(pe.values - pd.values)) < 1e-10
        assert np.max(np.abs(ke.values - kd.values)) < 1e-10


def test_full_transfer_density(hob):
    s = TwoLevelSystem.resonant(1.0)
    l1, l2 = eigenvalues(s)
    t = np.pi / abs(l2 - l1)
    p, _ = oscillation_densities(hob, s, t)
    np.testing.assert_allclose(p.values, np.abs(hob.psi2.values) ** 2, atol=1e-12)


def test_entropy_series_oscillates_and_recurs(hob):
    s = TwoLevelSystem.resonant(1.0)
    T = density_period(s)
    ts = np.linspace(0, T, 61)
    ser = oscillation_entropy_series(hob, s, ts)
    assert classify(ser).label == Label.O
    assert abs(ser.values[-1] - ser.values[0]) < 1e-9
    # a window longer than pi/|D| shows both directions
    win = ts <= 1.2 * np.pi / abs(np.subtract(*eigenvalues(s)))
    d = np.diff(ser.values[win])
    assert d.max() > 0 and d.min() < 0


def test_entropy_series_matches_fft_route(hob):
    s = TwoLevelSystem(0.4, 0.0, 0.0, 0.1, 0.5)
    ser = oscillation_entropy_series(hob, s, [0.3, 1.7])
    for t, v in zip(ser.times, ser.values):
        assert abs(superposition_entropy(hob, s, t).total - v) < 1e-9


def test_constant_without_coupling(hob):
    s = TwoLevelSystem(2.0, 1.0, 0.3, 0.0, 0.0)
    ser = oscillation_entropy_series(hob, s, np.linspace(0, 5, 11))
    assert classify(ser).label == Label.C


def test_recurrence_report(hob):
    rep = recurrence_report(hob, TwoLevelSystem.resonant(1.0))
    assert rep["full_period_recurs"]
    assert rep["a3_sup"] == 0.0 and rep["b3_sup"] > 1e-3
    assert not rep["half_period_recurs"]

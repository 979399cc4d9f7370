"""Exact two-level (and N-level) transition amplitudes and entropy oscillations.

A particle starts in the first eigenstate of an unperturbed Hamiltonian with
frequencies ``omega1, omega2``. A constant real-symmetric perturbation with
elements ``w11i, w22i, w12i`` mixes the levels. Writing
``omega11 = omega1 + w11i`` and ``omega22 = omega2 + w22i`` the full matrix is

    [[omega11, w12i],
     [w12i,    omega22]]

with eigenvalues ``lambda_{1,2} = (omega11 + omega22 +- D) / 2`` and mixing
angle ``theta`` defined by ``sin 2 theta = 2 w12i / D`` and
``cos 2 theta = (omega11 - omega22) / D``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .entropy import amplitude_entropy, total_entropy
from .grid import Density, GridSpec, SampledAmplitude, fourier_transform, normalize
from .qcurve import EntropySeries


@dataclass(frozen=True)
class TwoLevelSystem:
    omega1: float
    omega2: float
    w11i: float = 0.0
    w22i: float = 0.0
    w12i: float = 0.0

    @property
    def omega11(self) -> float:
        return self.omega1 + self.w11i

    @property
    def omega22(self) -> float:
        return self.omega2 + self.w22i

    @property
    def discriminant(self) -> float:
        return float(np.hypot(self.omega11 - self.omega22, 2.0 * self.w12i))

    def matrix(self) -> np.ndarray:
        """Full Hamiltonian (divided by hbar) in the unperturbed basis."""
        return np.array([[self.omega11, self.w12i], [self.w12i, self.omega22]], dtype=float)

    @classmethod
    def resonant(cls, coupling: float = 1.0, omega: float = 0.0) -> "TwoLevelSystem":
        return cls(omega, omega, 0.0, 0.0, coupling)


class MixingAngle(NamedTuple):
    theta: float
    degenerate: bool

    @property
    def sin2(self) -> float:
        return float(np.sin(2 * self.theta))

    @property
    def cos2(self) -> float:
        return float(np.cos(2 * self.theta))


def mixing_angle(sys: TwoLevelSystem) -> MixingAngle:
    """Mixing angle in ``(-pi/2, pi/2]``.

    A fully degenerate system (equal diagonal, no coupling) has no preferred
    direction; ``theta = 0`` is returned with ``degenerate=True``.
    """
    d = sys.discriminant
    if d == 0.0:
        return MixingAngle(0.0, True)
    theta = 0.5 * np.arctan2(2.0 * sys.w12i, sys.omega11 - sys.omega22)
    # atan2 range (-pi, pi] halves to (-pi/2, pi/2]
    return MixingAngle(float(theta), False)


def eigenvalues(sys: TwoLevelSystem) -> tuple[float, float]:
    """``(lambda1, lambda2)`` with ``lambda1 >= lambda2``."""
    s = sys.omega11 + sys.omega22
    d = sys.discriminant
    return (0.5 * (s + d), 0.5 * (s - d))


def _phases(sys: TwoLevelSystem, t):
    l1, l2 = eigenvalues(sys)
    t = np.asarray(t, dtype=float)
    return np.exp(-1j * l1 * t), np.exp(-1j * l2 * t)


def coefficients(sys: TwoLevelSystem, t):
    """Amplitudes ``(alpha1, alpha2)`` at time ``t`` starting from level 1.

    ``alpha1 = cos^2 theta e^{-i l1 t} + sin^2 theta e^{-i l2 t}`` and
    ``alpha2 = sin 2 theta (e^{-i l1 t} - e^{-i l2 t}) / 2``.
    """
    th = mixing_angle(sys).theta
    e1, e2 = _phases(sys, t)
    c2, s2 = np.cos(th) ** 2, np.sin(th) ** 2
    return c2 * e1 + s2 * e2, 0.5 * np.sin(2 * th) * (e1 - e2)


def transition_probability(sys: TwoLevelSystem, t):
    """``|alpha2|^2 = sin^2(2 theta) sin^2((l2 - l1) t / 2)``."""
    th = mixing_angle(sys).theta
    l1, l2 = eigenvalues(sys)
    return np.sin(2 * th) ** 2 * np.sin(0.5 * (l2 - l1) * np.asarray(t, dtype=float)) ** 2


def superposition_coefficients(sys: TwoLevelSystem, t, alpha1_0: complex, alpha2_0: complex):
    """Amplitudes at ``t`` from a general normalized initial superposition."""
    n2 = abs(alpha1_0) ** 2 + abs(alpha2_0) ** 2
    if abs(n2 - 1.0) > 1e-10:
        raise ValueError(f"initial amplitudes not normalized (|a1|^2+|a2|^2 = {n2:.12g})")
    th = mixing_angle(sys).theta
    c, s = np.cos(th), np.sin(th)
    e1, e2 = _phases(sys, t)
    # U = R diag(e1, e2) R^T with eigenvectors (c, s) and (-s, c)
    u11 = c * c * e1 + s * s * e2
    u22 = s * s * e1 + c * c * e2
    u12 = c * s * (e1 - e2)
    return u11 * alpha1_0 + u12 * alpha2_0, u12 * alpha1_0 + u22 * alpha2_0


def fermi_approximation(sys: TwoLevelSystem, t):
    """Weak-coupling estimate ``4 w12i^2 / (w1 - w2)^2 sin^2((w2 - w1) t / 2)``.

    Valid only far from resonance with small perturbation elements; the
    caller decides whether the regime applies.
    """
    gap = sys.omega1 - sys.omega2
    if gap == 0.0:
        raise ValueError("resonant: approximation invalid")
    t = np.asarray(t, dtype=float)
    return 4.0 * sys.w12i**2 / gap**2 * np.sin(0.5 * gap * t) ** 2


def _eigvecs_signed(h: np.ndarray):
    lam, v = np.linalg.eigh(h)
    # first nonzero component positive, column by column
    for j in range(v.shape[1]):
        nz = np.flatnonzero(np.abs(v[:, j]) > 1e-14)
        if nz.size and v[nz[0], j] < 0:
            v[:, j] = -v[:, j]
    return lam, v


def n_level_transition(h0_diag, hi, j: int, t):
    """Probability of level ``j`` (0-based) at time ``t`` starting from level 0.

    Uses the eigen-decomposition ``H0 + HI = V diag(lambda) V^T``:

        |alpha_j|^2 = sum_i v_ji^2 v_0i^2
                      + 2 sum_{i<k} v_ji v_0i v_jk v_0k cos((lambda_i - lambda_k) t)

    Parameters
    ----------
    h0_diag : array_like
        Unperturbed frequencies, length ``N``.
    hi : array_like
        Real symmetric ``N x N`` perturbation.
    j : int
        Target level.
    t : float or array_like
    """
    h0 = np.asarray(h0_diag, dtype=float)
    hi = np.asarray(hi, dtype=float)
    n = h0.size
    if hi.shape != (n, n):
        raise ValueError(f"perturbation shape {hi.shape} does not match {n} levels")
    if not np.allclose(hi, hi.T, rtol=0, atol=1e-12 * max(1.0, np.abs(hi).max())):
        raise ValueError("perturbation must be symmetric")
    if not 0 <= j < n:
        raise IndexError(f"level {j} out of range for {n} levels")
    lam, v = _eigvecs_signed(np.diag(h0) + 0.5 * (hi + hi.T))
    w = v[j, :] * v[0, :]
    t = np.asarray(t, dtype=float)
    out = np.sum(w**2) * np.ones_like(t)
    for i in range(n):
        for k in range(i + 1, n):
            out = out + 2.0 * w[i] * w[k] * np.cos((lam[i] - lam[k]) * t)
    return out


# ---------------------------------------------------------------------------
# entropy oscillations


@dataclass(frozen=True)
class OscillationBasis:
    """Orthonormal spatial pair with their frequency representations."""

    psi1: SampledAmplitude
    psi2: SampledAmplitude
    phi1: SampledAmplitude
    phi2: SampledAmplitude

    @classmethod
    def from_position(cls, psi1: SampledAmplitude, psi2: SampledAmplitude, tol: float = 1e-8):
        if psi1.grid != psi2.grid:
            raise ValueError("basis functions live on different grids")
        for p in (psi1, psi2):
            if abs(p.norm2() - 1.0) > tol:
                raise ValueError("basis function not normalized")
        overlap = abs(np.vdot(psi1.values, psi2.values)) * psi1.volume
        if overlap > tol:
            raise ValueError(f"basis not orthogonal: |<psi1|psi2>| = {overlap:.3g}")
        return cls(psi1, psi2, fourier_transform(psi1), fourier_transform(psi2))

    @property
    def grid(self) -> GridSpec:
        return self.psi1.grid


def _hermite_function(n: int, x: np.ndarray) -> np.ndarray:
    # normalized oscillator eigenfunctions by the stable three-term recurrence
    h_prev = np.pi**-0.25 * np.exp(-0.5 * x * x)
    if n == 0:
        return h_prev
    h = np.sqrt(2.0) * x * h_prev
    for m in range(1, n):
        h, h_prev = np.sqrt(2.0 / (m + 1)) * x * h - np.sqrt(m / (m + 1)) * h_prev, h
    return h


def harmonic_oscillator_basis(grid: GridSpec | None = None, levels=(0, 1), width: float = 1.0) -> OscillationBasis:
    """Oscillator eigenfunctions of the given levels as an oscillation basis.

    Parameters
    ----------
    grid : GridSpec, optional
        1D grid; defaults to 1024 points on a length-40 box.
    levels : pair of int
        Oscillator quantum numbers, default ``(0, 1)``.
    width : float
        Length scale of the oscillator.
    """
    grid = grid or GridSpec(1, 1024, 40.0)
    if grid.dim != 1:
        raise ValueError("oscillator basis is one-dimensional")
    x = grid.axis() / width
    a, b = (normalize(SampledAmplitude(grid, _hermite_function(n, x))) for n in levels)
    return OscillationBasis.from_position(a, b)


class OscillationCoefficients(NamedTuple):
    a1: np.ndarray
    a2: np.ndarray
    a3: np.ndarray
    b1: np.ndarray
    b2: np.ndarray
    b3: np.ndarray


def _expansion_terms(f1: np.ndarray, f2: np.ndarray, sin2: float, cos2: float):
    cross = np.conj(f1) * f2
    c1 = np.abs(f1) ** 2
    c2 = sin2**2 * (np.abs(f2) ** 2 - c1) + 2.0 * sin2 * cos2 * np.real(cross)
    c3 = -sin2 * np.imag(cross)
    return c1, c2, c3


def oscillation_coefficients(basis: OscillationBasis, sys: TwoLevelSystem) -> OscillationCoefficients:
    """Coefficient fields of the density expansion.

    With ``D = lambda2 - lambda1`` the position density is

        rho_r(t) = A1 + A2 sin^2(D t / 2) + A3 sin(D t)

    where ``A1 = |psi1|^2``,
    ``A2 = sin^2 2th (|psi2|^2 - |psi1|^2) + 2 sin 2th cos 2th Re(psi1* psi2)``
    and ``A3 = -sin 2th Im(psi1* psi2)``; the frequency density uses the same
    form with ``phi`` in place of ``psi`` (coefficients ``B1..B3``).
    """
    ang = mixing_angle(sys)
    a = _expansion_terms(basis.psi1.values, basis.psi2.values, ang.sin2, ang.cos2)
    b = _expansion_terms(basis.phi1.values, basis.phi2.values, ang.sin2, ang.cos2)
    return OscillationCoefficients(*a, *b)


def oscillation_densities(basis: OscillationBasis, sys: TwoLevelSystem, t: float,
                          method: str = "expansion") -> tuple[Density, Density]:
    """Position and frequency densities of ``alpha1 psi1 + alpha2 psi2``.

    ``method="expansion"`` uses the coefficient fields; ``method="direct"``
    squares the superposition. Both give the same densities.
    """
    g = basis.grid
    if method == "direct":
        a1, a2 = coefficients(sys, t)
        pos = np.abs(a1 * basis.psi1.values + a2 * basis.psi2.values) ** 2
        freq = np.abs(a1 * basis.phi1.values + a2 * basis.phi2.values) ** 2
    elif method == "expansion":
        c = oscillation_coefficients(basis, sys)
        l1, l2 = eigenvalues(sys)
        d = l2 - l1
        s_half, s_full = np.sin(0.5 * d * t) ** 2, np.sin(d * t)
        pos = c.a1 + c.a2 * s_half + c.a3 * s_full
        freq = c.b1 + c.b2 * s_half + c.b3 * s_full
    else:
        raise ValueError(f"unknown method {method!r}")
    return Density(g, pos, "position"), Density(g, freq, "frequency")


def oscillation_entropy_series(basis: OscillationBasis, sys: TwoLevelSystem, t_grid,
                               method: str = "expansion") -> EntropySeries:
    """Total entropy of the two-level superposition at each time."""
    t_grid = np.asarray(t_grid, dtype=float)
    rows = [total_entropy(*oscillation_densities(basis, sys, t, method)) for t in t_grid]
    meta = {
        "generator": "two-state",
        "s_r": np.array([r.s_r for r in rows]),
        "s_k": np.array([r.s_k for r in rows]),
        "p2": np.asarray(transition_probability(sys, t_grid)),
    }
    return EntropySeries(t_grid, np.array([r.total for r in rows]), meta)


def density_period(sys: TwoLevelSystem) -> float:
    """Exact recurrence period ``2 pi / |lambda2 - lambda1|`` of the densities."""
    l1, l2 = eigenvalues(sys)
    if l1 == l2:
        return float("inf")
    return 2.0 * np.pi / abs(l2 - l1)


def recurrence_report(basis: OscillationBasis, sys: TwoLevelSystem, t0: float = 0.3,
                      tol: float = 1e-9) -> dict:
    """Check density recurrence after one full and one half period.

    Returns a dict with the maximum density mismatches at ``t0 + T`` and
    ``t0 + T/2`` (``T = 2 pi / |D|``), flags for each against ``tol``, and the
    sup norms of the ``A3`` / ``B3`` fields.
    """
    period = density_period(sys)

    def mismatch(dt):
        p0, k0 = oscillation_densities(basis, sys, t0, "direct")
        p1, k1 = oscillation_densities(basis, sys, t0 + dt, "direct")
        return max(np.max(np.abs(p1.values - p0.values)), np.max(np.abs(k1.values - k0.values)))

    full, half = mismatch(period), mismatch(0.5 * period)
    c = oscillation_coefficients(basis, sys)
    s0 = total_entropy(*oscillation_densities(basis, sys, t0, "direct")).total
    s_half = total_entropy(*oscillation_densities(basis, sys, t0 + 0.5 * period, "direct")).total
    return {
        "period": period,
        "full_period_mismatch": float(full),
        "full_period_recurs": bool(full <= tol),
        "half_period_mismatch": float(half),
        "half_period_recurs": bool(half <= tol),
        "half_period_entropy_gap": float(abs(s_half - s0)),
        "a3_sup": float(np.max(np.abs(c.a3))),
        "b3_sup": float(np.max(np.abs(c.b3))),
    }


def superposition_amplitude(basis: OscillationBasis, sys: TwoLevelSystem, t: float) -> SampledAmplitude:
    a1, a2 = coefficients(sys, t)
    return basis.psi1.replace(values=a1 * basis.psi1.values + a2 * basis.psi2.values, time=t)


def superposition_entropy(basis: OscillationBasis, sys: TwoLevelSystem, t: float):
    """Entropy via an FFT of the evolved superposition (independent route)."""
    return amplitude_entropy(superposition_amplitude(basis, sys, t))

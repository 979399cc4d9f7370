"""Hydrogen 1s and 2p0 entropies and the Lyman-alpha entropy budget.

Position and momentum amplitudes are closed forms in spherical coordinates.
Entropies are computed by tensor-product quadrature: Gauss-Legendre in
``cos(theta)``, the azimuth integrated analytically (all amplitudes here are
azimuth-free) and a mapped Gauss-Legendre rule ``r = s u / (1 - u)`` on the
half line.

The ``alt`` variant uses the separable momentum amplitudes written in the
spherical conjugate-momentum variables ``(p, theta_p, phi_p)``; their entropy
is taken with the plain measure ``dp dtheta_p dphi_p`` over
``(0, inf) x (0, pi] x (0, 2 pi]`` after normalization.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss

STANDARD = "standard"
ALT = "alt"
LYMAN_ALPHA_EV = 10.2
LYMAN_ALPHA_NM = 121.567
SUPPORTED = {(1, 0, 0), (2, 1, 0)}
CONVERGENCE_TOL = 1e-3


class QuadratureError(RuntimeError):
    """Entropy quadrature did not converge under refinement."""


@dataclass(frozen=True)
class HydrogenState:
    n: int
    l: int  # noqa: E741
    m: int
    a0: float = 1.0
    p0: float | None = None

    def __post_init__(self):
        if (self.n, self.l, self.m) not in SUPPORTED:
            raise ValueError(f"unsupported state {(self.n, self.l, self.m)}; only 1s and 2p0")
        if not self.a0 > 0:
            raise ValueError("a0 must be positive")
        if self.p0 is None:
            object.__setattr__(self, "p0", 1.0 / self.a0)

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.n, self.l, self.m)


GROUND = HydrogenState(1, 0, 0)
EXCITED = HydrogenState(2, 1, 0)


def position_amplitude(state: HydrogenState, r, theta, phi=0.0):
    """Position-space amplitude, ``rho = r / a0``."""
    r, theta = np.asarray(r, dtype=float), np.asarray(theta, dtype=float)
    rho = r / state.a0
    pref = state.a0**-1.5
    if state.key == (1, 0, 0):
        out = pref / np.sqrt(np.pi) * np.exp(-rho) * np.ones_like(theta)
    else:
        out = pref / np.sqrt(32 * np.pi) * rho * np.exp(-0.5 * rho) * np.cos(theta)
    return out.astype(complex)


# raw momentum amplitudes integrate to these norms over R^3
_RAW_NORM2 = {(1, 0, 0): 4 * np.pi, (2, 1, 0): 2 * np.pi}


def momentum_amplitude_standard(state: HydrogenState, p, theta_p, phi_p=0.0, normalized: bool = True):
    """Momentum-space amplitude.

    Parameters
    ----------
    normalized : bool
        The textbook-style expressions ``sqrt(32 / (pi p0^3)) (1 + (p/p0)^2)^-2``
        and ``sqrt(128^2 / (2 pi p0^3)) (p/p0) (1 + (2p/p0)^2)^-3 cos(theta_p)``
        integrate to ``4 pi`` and ``2 pi`` respectively. With ``normalized``
        (default) they are rescaled to unit norm; pass ``False`` for the raw
        expressions.
    """
    p, theta_p = np.asarray(p, dtype=float), np.asarray(theta_p, dtype=float)
    q = p / state.p0
    if state.key == (1, 0, 0):
        out = np.sqrt(32 / (np.pi * state.p0**3)) * (1 + q * q) ** -2 * np.ones_like(theta_p)
    else:
        out = np.sqrt(128**2 / (2 * np.pi * state.p0**3)) * q * (1 + 4 * q * q) ** -3 * np.cos(theta_p)
    if normalized:
        out = out / np.sqrt(_RAW_NORM2[state.key])
    return out.astype(complex)


def _sinc_like(theta):
    # sin(t) / t with the t -> 0 limit 1
    return np.sinc(theta / np.pi)


def _dipole_like(theta):
    # (t cos t - sin t) / t^2, limit 0; series below |t| < 1e-3 avoids cancellation
    t = np.asarray(theta, dtype=float)
    small = np.abs(t) < 1e-3
    safe = np.where(small, 1.0, t)
    exact = (safe * np.cos(safe) - np.sin(safe)) / safe**2
    series = -t / 3 + t**3 / 30
    return np.where(small, series, exact)


def _azimuth_factor(phi):
    # (exp(2 i pi phi) - 1) / phi, limit 2 i pi
    f = np.asarray(phi, dtype=float)
    small = np.abs(f) < 1e-8
    safe = np.where(small, 1.0, f)
    return np.where(small, 2j * np.pi, np.expm1(2j * np.pi * safe) / safe)


def momentum_amplitude_alt(state: HydrogenState, p, theta_p, phi_p):
    """Separable amplitudes in spherical conjugate-momentum variables.

    ``p`` is measured in units of ``p0``. Removable singularities at
    ``theta_p = 0`` and ``phi_p = 0`` take their limiting values.
    """
    q = np.asarray(p, dtype=float) / state.p0
    if state.key == (1, 0, 0):
        pref = (-1 + 1j) / (2 * np.pi**2) * np.sqrt(2)
        return pref / (1j - q) ** 2 * _sinc_like(theta_p) * _azimuth_factor(phi_p)
    pref = 2 * (-1 + 1j) / np.pi**2 * np.sqrt(2)
    return pref / (1j - 2 * q) ** 3 * _dipole_like(theta_p) * _azimuth_factor(phi_p)


# ---------------------------------------------------------------------------
# quadrature


def radial_rule(n: int, scale: float = 1.0) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes on ``(0, inf)`` via ``r = scale * u / (1 - u)``."""
    u, w = leggauss(n)
    u, w = 0.5 * (u + 1), 0.5 * w
    return scale * u / (1 - u), scale * w / (1 - u) ** 2


def interval_rule(n: int, a: float, b: float, pieces: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre rule on ``[a, b]`` with ``pieces`` equal panels."""
    return panel_rule(n, np.linspace(a, b, pieces + 1))


def panel_rule(n: int, breaks) -> tuple[np.ndarray, np.ndarray]:
    """``n``-point Gauss-Legendre on each panel between consecutive breaks."""
    x, w = leggauss(n)
    nodes, weights = [], []
    for lo, hi in zip(breaks[:-1], breaks[1:]):
        nodes.append(0.5 * (hi - lo) * (x + 1) + lo)
        weights.append(0.5 * (hi - lo) * w)
    return np.concatenate(nodes), np.concatenate(weights)


def _weighted_entropy(rho: np.ndarray, w: np.ndarray) -> tuple[float, float]:
    norm = float(np.sum(rho * w))
    with np.errstate(divide="ignore", invalid="ignore"):
        plogp = np.where(rho > 0, rho * np.log(np.where(rho > 0, rho, 1.0)), 0.0)
    return norm, float(-np.sum(plogp * w))


def spherical_entropy(amplitude, scale: float, n_radial: int = 256, n_polar: int = 64,
                      normalize: bool = True) -> tuple[float, float]:
    """Norm and entropy of an azimuth-free amplitude ``f(r, theta)`` on R^3.

    If ``normalize`` the density is rescaled to unit mass first, so the
    returned entropy is that of the normalized density (the raw norm is still
    returned).
    """
    r, wr = radial_rule(n_radial, scale)
    x, wx = leggauss(n_polar)
    rr, xx = np.meshgrid(r, x, indexing="ij")
    rho = np.abs(amplitude(rr, np.arccos(xx))) ** 2
    w = 2 * np.pi * (wr * r * r)[:, None] * wx[None, :]
    norm = float(np.sum(rho * w))
    if normalize:
        rho = rho / norm
    return norm, _weighted_entropy(rho, w)[1]


def alt_entropy(state: HydrogenState, n_radial: int = 256, n_polar: int = 64,
                n_azimuth: int = 32) -> tuple[float, float]:
    """Norm and entropy of the alt amplitude under the plain measure.

    The azimuthal factor vanishes at integer ``phi_p``, so the ``phi_p`` rule
    uses one panel per unit interval.
    """
    p, wp = radial_rule(n_radial, state.p0 * (0.5 if state.key == (2, 1, 0) else 1.0))
    th, wt = interval_rule(n_polar, 0.0, np.pi)
    breaks = np.append(np.arange(0.0, 7.0), 2 * np.pi)
    breaks = np.unique(np.clip(breaks, 0, 2 * np.pi))
    ph, wf = panel_rule(n_azimuth, breaks)
    pp, tt, ff = np.meshgrid(p, th, ph, indexing="ij")
    rho = np.abs(momentum_amplitude_alt(state, pp, tt, ff)) ** 2
    w = wp[:, None, None] * wt[None, :, None] * wf[None, None, :]
    norm = float(np.sum(rho * w))
    return norm, _weighted_entropy(rho / norm, w)[1]


def _scale(state: HydrogenState, space: str) -> float:
    if space == "position":
        return state.a0 * (2.0 if state.key == (2, 1, 0) else 1.0)
    return state.p0 * (0.5 if state.key == (2, 1, 0) else 1.0)


def position_entropy(state: HydrogenState, n_radial: int = 256, n_polar: int = 64) -> float:
    return spherical_entropy(lambda r, t: position_amplitude(state, r, t),
                             _scale(state, "position"), n_radial, n_polar)[1]


def momentum_entropy(state: HydrogenState, variant: str = STANDARD,
                     n_radial: int = 256, n_polar: int = 64) -> float:
    if variant == STANDARD:
        return spherical_entropy(lambda p, t: momentum_amplitude_standard(state, p, t),
                                 _scale(state, "momentum"), n_radial, n_polar)[1]
    if variant == ALT:
        return alt_entropy(state, n_radial, n_polar)[1]
    raise ValueError(f"unknown variant {variant!r}")


def _converged(fn, label: str, n_radial: int, n_polar: int) -> float:
    coarse = fn(n_radial, n_polar)
    fine = fn(2 * n_radial, 2 * n_polar)
    if abs(fine - coarse) > CONVERGENCE_TOL:
        raise QuadratureError(
            f"{label}: quadrature not converged (n_radial={n_radial}, n_polar={n_polar}: "
            f"{coarse:.6f}; doubled: {fine:.6f})"
        )
    return fine


@lru_cache(maxsize=8)
def hydrogen_entropy_budget(variant: str = STANDARD, a0: float = 1.0,
                            n_radial: int = 128, n_polar: int = 48) -> dict:
    """Electron entropies of 2p0 and 1s and their change in the transition.

    Each entropy is computed at the given resolution and at double it; the
    doubled value is reported and a ``QuadratureError`` raised if they differ
    by more than ``1e-3``.

    Returns
    -------
    dict
        ``s_r_210``, ``s_r_100`` (with their ``- ln pi`` parts), ``s_p_210``,
        ``s_p_100``, ``delta_s`` and the photon lower bound.
    """
    if variant not in (STANDARD, ALT):
        raise ValueError(f"unknown variant {variant!r}")
    exc = HydrogenState(2, 1, 0, a0)
    gnd = HydrogenState(1, 0, 0, a0)
    s_r = {
        s.key: _converged(lambda nr, nt, s=s: position_entropy(s, nr, nt), f"S_r{s.key}", n_radial, n_polar)
        for s in (exc, gnd)
    }
    s_p = {
        s.key: _converged(lambda nr, nt, s=s: momentum_entropy(s, variant, nr, nt), f"S_p{s.key}",
                          n_radial, n_polar)
        for s in (exc, gnd)
    }
    delta = s_r[(1, 0, 0)] + s_p[(1, 0, 0)] - s_r[(2, 1, 0)] - s_p[(2, 1, 0)]
    s_q, s_rq, _ = photon_angular_entropy(None)
    return {
        "schema_version": "1",
        "variant": variant,
        "a0": a0,
        "p0": 1.0 / a0,
        "measure": "d^3r, d^3p" if variant == STANDARD else "dp dtheta_p dphi_p on (0,inf)x(0,pi]x(0,2pi]",
        "s_r_210": s_r[(2, 1, 0)],
        "s_r_100": s_r[(1, 0, 0)],
        "s_r_210_minus_ln_pi": float(s_r[(2, 1, 0)] - np.log(np.pi)),
        "s_r_100_minus_ln_pi": float(s_r[(1, 0, 0)] - np.log(np.pi)),
        "s_p_210": s_p[(2, 1, 0)],
        "s_p_100": s_p[(1, 0, 0)],
        "delta_s": float(delta),
        "photon_s_q": s_q,
        "photon_s_r": s_rq,
        "photon_bound": float(s_q + s_rq + delta),
        "delta_e_ev": LYMAN_ALPHA_EV,
        "wavelength_nm": LYMAN_ALPHA_NM,
        "resolution": {"n_radial": 2 * n_radial, "n_polar": 2 * n_polar},
    }


def photon_angular_entropy(variant: str | None = STANDARD) -> tuple[float, float, float | None]:
    """Photon momentum and position entropies from a uniform azimuth.

    Returns ``(s_q, s_r, bound)`` with ``s_q = s_r = ln(2 pi)`` and
    ``bound = s_q + s_r + delta_s`` for the electron budget of ``variant``
    (``None`` skips the bound).
    """
    s = float(np.log(2 * np.pi))
    if variant is None:
        return s, s, None
    return s, s, 2 * s + hydrogen_entropy_budget(variant)["delta_s"]

"""Dirac matrices and the discrete C, P, T and combined CPT maps on sampled
4-spinor fields.

Matrices are in the standard (Dirac-Pauli) representation with metric
``diag(+1, -1, -1, -1)``. All operator phases are fixed to 1.

* parity:            ``Psi(r) -> gamma0 Psi(-r)``
* charge conjugation: ``Psi -> i gamma2 Psi*`` (equals ``C gamma0^T Psi*`` with
  ``C = i gamma2 gamma0``)
* time reversal:      ``Psi -> T Psi*`` with ``T = i gamma1 gamma3``, time negated
* CPT:                ``Psi(r) -> gamma5 Psi*(-r)``
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .entropy import EntropyValue, amplitude_entropy
from .grid import GridSpec, SampledAmplitude, normalize, reflect_values

SIGMA = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
METRIC = np.diag([1.0, -1.0, -1.0, -1.0])


@dataclass(frozen=True)
class GammaSet:
    gamma: tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]
    gamma5: np.ndarray
    C: np.ndarray
    T: np.ndarray
    P: np.ndarray


def gamma_matrices() -> GammaSet:
    """Standard-representation Dirac matrices and the C, T, P matrices."""
    eye2, zero2 = np.eye(2, dtype=complex), np.zeros((2, 2), dtype=complex)
    g0 = np.block([[eye2, zero2], [zero2, -eye2]])
    gs = [np.block([[zero2, s], [-s, zero2]]) for s in SIGMA]
    g1, g2, g3 = gs
    g5 = 1j * g0 @ g1 @ g2 @ g3
    return GammaSet((g0, g1, g2, g3), g5, 1j * g2 @ g0, 1j * g1 @ g3, g0.copy())


def time_reversal_without_sign(gs: GammaSet | None = None) -> float:
    """Residual of ``T gamma^mu* T^-1 = gamma^mu`` for all four matrices.

    This sign-free form does not hold for ``T = i gamma1 gamma3``: the spatial
    matrices pick up a minus sign, so the residual is 2.
    """
    gs = gs or gamma_matrices()
    tinv = np.linalg.inv(gs.T)
    return float(max(np.max(np.abs(gs.T @ m.conj() @ tinv - m)) for m in gs.gamma))


def gamma_identities(gs: GammaSet | None = None) -> dict[str, float]:
    """Largest residual of each algebraic identity (all should vanish)."""
    gs = gs or gamma_matrices()
    g = gs.gamma
    eye = np.eye(4)
    cinv = np.linalg.inv(gs.C)
    tinv = np.linalg.inv(gs.T)
    res = {
        "anticommutator": max(
            np.max(np.abs(g[m] @ g[n] + g[n] @ g[m] - 2 * METRIC[m, n] * eye))
            for m in range(4) for n in range(4)
        ),
        "charge_conjugation": max(np.max(np.abs(gs.C @ g[m] @ cinv + g[m].T)) for m in range(4)),
        # T gamma^mu* T^-1 = gamma_mu (index lowered by the metric)
        "time_reversal": max(
            np.max(np.abs(gs.T @ g[m].conj() @ tinv - METRIC[m, m] * g[m])) for m in range(4)
        ),
        "kramers": float(np.max(np.abs(gs.T @ gs.T.conj() + eye))),
        "gamma5_definition": float(np.max(np.abs(gs.gamma5 - 1j * g[0] @ g[1] @ g[2] @ g[3]))),
        "gamma5_square": float(np.max(np.abs(gs.gamma5 @ gs.gamma5 - eye))),
        "parity_square": float(np.max(np.abs(gs.P @ gs.P - eye))),
    }
    return {k: float(v) for k, v in res.items()}


_GS = gamma_matrices()


class SpinorField(SampledAmplitude):
    """Four-component amplitude; ``values`` has shape ``(4, *grid.shape)``."""

    def __post_init__(self):
        super().__post_init__()
        if self.lead_shape != (4,):
            raise ValueError(f"spinor field needs 4 leading components, got {self.lead_shape}")


def _act(m: np.ndarray, values: np.ndarray) -> np.ndarray:
    return np.tensordot(m, values, axes=(1, 0))


def _position(f: SpinorField) -> None:
    if f.representation != "position":
        raise ValueError("discrete maps act on position-space fields")


def conjugate(f: SpinorField) -> SpinorField:
    return f.replace(values=np.conj(f.values))


def apply_parity(f: SpinorField) -> SpinorField:
    """``gamma0 Psi(-r)``; requires an even (symmetric) grid."""
    _position(f)
    return f.replace(values=_act(_GS.P, reflect_values(f.values, f.grid)))


def apply_charge_conjugation(f: SpinorField) -> SpinorField:
    """``i gamma2 Psi*``."""
    _position(f)
    return f.replace(values=_act(1j * _GS.gamma[2], np.conj(f.values)))


def apply_time_reversal(f: SpinorField) -> SpinorField:
    """``T Psi*`` with the time stamp negated."""
    _position(f)
    return f.replace(values=_act(_GS.T, np.conj(f.values)), time=-f.time)


def apply_cpt(f: SpinorField) -> SpinorField:
    """``gamma5 Psi*(-r)``; an exact involution."""
    _position(f)
    return f.replace(values=_act(_GS.gamma5, np.conj(reflect_values(f.values, f.grid))))


OPERATIONS = {
    "conjugate": conjugate,
    "parity": apply_parity,
    "charge_conjugation": apply_charge_conjugation,
    "time_reversal": apply_time_reversal,
    "cpt": apply_cpt,
}


def random_spinor_field(grid: GridSpec, rng: np.random.Generator, packets: int = 3) -> SpinorField:
    """Normalized smooth random field: Gaussian packets with random spinors.

    Packet centres stay within the middle half of the box so the tails are
    negligible at the boundary.
    """
    nodes = grid.nodes()
    half = 0.25 * grid.extent_per_axis
    values = np.zeros((4,) + grid.shape, dtype=complex)
    kmax = 0.25 * np.pi / grid.spacing
    for _ in range(packets):
        c = rng.uniform(-half, half, grid.dim)
        k = rng.uniform(-kmax, kmax, grid.dim) * 0.5
        width = rng.uniform(0.04, 0.1) * grid.extent_per_axis
        env = np.exp(-np.sum((nodes - c) ** 2, axis=-1) / (2 * width**2) + 1j * nodes @ k)
        spin = rng.normal(size=4) + 1j * rng.normal(size=4)
        values += spin.reshape((4,) + (1,) * grid.dim) * env
    return normalize(SpinorField(grid, values))


def entropy_invariance(f: SpinorField) -> dict[str, dict]:
    """Entropy of ``f`` and of each transformed field, with the deviations."""
    base = amplitude_entropy(f)
    out = {"original": base.as_dict()}
    for name, op in OPERATIONS.items():
        e: EntropyValue = amplitude_entropy(op(f))
        out[name] = {**e.as_dict(), "delta_s_r": abs(e.s_r - base.s_r), "delta_s_k": abs(e.s_k - base.s_k)}
    return out

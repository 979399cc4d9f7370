"""Uniform sampling grids, unitary Fourier transforms and Born densities.

Position nodes on each axis are ``x_j = -L/2 + j * dx`` for ``j = 0..N-1``.
Frequency nodes are ``k_m = (m - N//2) * dk`` with ``dk = 2*pi/L``. For even
``N`` both grids are symmetric about the origin on the periodic torus.

The transform is the unitary convention

    phi(k) = (2 pi)^(-d/2) * integral psi(r) exp(-i k.r) d^d r

discretized as a Riemann sum, so the discrete map is exactly unitary.

Amplitude arrays have shape ``(*lead, *grid.shape)``; leading axes hold
internal components (spinor indices) and are summed over by the Born rule.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

POSITION = "position"
FREQUENCY = "frequency"
REPRESENTATIONS = (POSITION, FREQUENCY)

# FFT round-off leaves tiny negatives in |phi|^2 after subtraction-heavy
# constructions; anything below this is an error rather than noise.
NEGATIVE_CLAMP = 1e-12


class DegenerateAmplitudeError(ValueError):
    """Raised when an amplitude has zero (or non-finite) norm."""


@dataclass(frozen=True)
class GridSpec:
    """Uniform centred grid, identical along every axis.

    Parameters
    ----------
    dim : int
        Number of axes. 1 and 3 are single-particle grids; 2 is used for the
        product grid of two 1D particles.
    points_per_axis : int
        Nodes per axis, at least 8. Powers of two are fastest.
    extent_per_axis : float
        Box length ``L``; the domain is ``[-L/2, L/2)`` per axis.
    """

    dim: int
    points_per_axis: int
    extent_per_axis: float

    def __post_init__(self):
        if self.dim not in (1, 2, 3):
            raise ValueError(f"dim must be 1, 2 or 3, got {self.dim}")
        if int(self.points_per_axis) != self.points_per_axis or self.points_per_axis < 8:
            raise ValueError("points_per_axis must be an integer >= 8")
        if not (self.extent_per_axis > 0 and np.isfinite(self.extent_per_axis)):
            raise ValueError("extent_per_axis must be positive and finite")

    @property
    def spacing(self) -> float:
        return self.extent_per_axis / self.points_per_axis

    @property
    def freq_spacing(self) -> float:
        return 2.0 * np.pi / self.extent_per_axis

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.points_per_axis,) * self.dim

    @property
    def cell_volume(self) -> float:
        return self.spacing**self.dim

    @property
    def freq_cell_volume(self) -> float:
        return self.freq_spacing**self.dim

    @property
    def is_symmetric(self) -> bool:
        """True when ``x -> -x`` maps nodes onto nodes (even N, periodic)."""
        return self.points_per_axis % 2 == 0

    def axis(self) -> np.ndarray:
        n = self.points_per_axis
        return -0.5 * self.extent_per_axis + self.spacing * np.arange(n)

    def freq_axis(self) -> np.ndarray:
        n = self.points_per_axis
        return self.freq_spacing * (np.arange(n) - n // 2)

    def mesh(self) -> tuple[np.ndarray, ...]:
        return np.meshgrid(*([self.axis()] * self.dim), indexing="ij")

    def freq_mesh(self) -> tuple[np.ndarray, ...]:
        return np.meshgrid(*([self.freq_axis()] * self.dim), indexing="ij")

    def nodes(self, representation: str = POSITION) -> np.ndarray:
        """Node coordinates stacked on the last axis, shape ``(*shape, dim)``."""
        m = self.mesh() if representation == POSITION else self.freq_mesh()
        return np.stack(m, axis=-1)

    def volume(self, representation: str) -> float:
        _check_representation(representation)
        return self.cell_volume if representation == POSITION else self.freq_cell_volume

    def refined(self, factor: int = 2) -> "GridSpec":
        """Same box, ``factor`` times more points per axis."""
        return GridSpec(self.dim, self.points_per_axis * factor, self.extent_per_axis)

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "points_per_axis": int(self.points_per_axis),
            "extent_per_axis": float(self.extent_per_axis),
            "spacing": self.spacing,
        }


def _check_representation(representation: str) -> None:
    if representation not in REPRESENTATIONS:
        raise ValueError(f"unknown representation {representation!r}")


@dataclass(frozen=True)
class SampledAmplitude:
    """Complex amplitude samples on a grid, in one representation."""

    grid: GridSpec
    values: np.ndarray
    representation: str = POSITION
    time: float = 0.0

    def __post_init__(self):
        _check_representation(self.representation)
        values = np.array(self.values, dtype=complex)
        if values.shape[values.ndim - self.grid.dim:] != self.grid.shape:
            raise ValueError(
                f"values shape {values.shape} does not end with grid shape {self.grid.shape}"
            )
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def lead_shape(self) -> tuple[int, ...]:
        return self.values.shape[: self.values.ndim - self.grid.dim]

    @property
    def volume(self) -> float:
        return self.grid.volume(self.representation)

    def norm2(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2) * self.volume)

    def replace(self, **changes) -> "SampledAmplitude":
        kw = dict(grid=self.grid, values=self.values,
                  representation=self.representation, time=self.time)
        kw.update(changes)
        return type(self)(**kw)

    @cached_property
    def coordinates(self) -> np.ndarray:
        return self.grid.nodes(self.representation)


@dataclass(frozen=True)
class Density:
    """Nonnegative probability samples on a grid."""

    grid: GridSpec
    values: np.ndarray
    representation: str = POSITION
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        _check_representation(self.representation)
        values = np.array(self.values, dtype=float)
        if values.shape != self.grid.shape:
            raise ValueError(f"density shape {values.shape} != grid shape {self.grid.shape}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def volume(self) -> float:
        return self.grid.volume(self.representation)

    def total(self) -> float:
        return float(np.sum(self.values) * self.volume)

    def mean(self) -> np.ndarray:
        coords = self.grid.nodes(self.representation)
        w = self.values[..., None] * self.volume
        return np.sum(coords * w, axis=tuple(range(self.grid.dim)))

    def variance(self) -> np.ndarray:
        """Per-axis variance."""
        coords = self.grid.nodes(self.representation)
        mu = self.mean()
        w = self.values[..., None] * self.volume
        return np.sum((coords - mu) ** 2 * w, axis=tuple(range(self.grid.dim)))


def _axes(grid: GridSpec) -> tuple[int, ...]:
    return tuple(range(-grid.dim, 0))


def _edge_phase(grid: GridSpec) -> np.ndarray:
    # exp(-i k . x0) with x0 = (-L/2, ..., -L/2): separable per axis.
    k = grid.freq_axis()
    ph1 = np.exp(0.5j * k * grid.extent_per_axis)
    out = ph1
    for _ in range(grid.dim - 1):
        out = np.multiply.outer(out, ph1)
    return out


def _check_finite(values: np.ndarray) -> None:
    if not np.all(np.isfinite(values)):
        raise ValueError("amplitude contains NaN or infinite values")


def fourier_transform(a: SampledAmplitude) -> SampledAmplitude:
    """Position samples to frequency samples (unitary)."""
    if a.representation != POSITION:
        raise ValueError("fourier_transform expects a position-space amplitude")
    _check_finite(a.values)
    g = a.grid
    axes = _axes(g)
    spec = np.fft.fftshift(np.fft.fftn(a.values, axes=axes), axes=axes)
    scale = (g.spacing / np.sqrt(2.0 * np.pi)) ** g.dim
    return a.replace(values=spec * _edge_phase(g) * scale, representation=FREQUENCY)


def inverse_fourier_transform(a: SampledAmplitude) -> SampledAmplitude:
    """Frequency samples back to position samples (unitary)."""
    if a.representation != FREQUENCY:
        raise ValueError("inverse_fourier_transform expects a frequency-space amplitude")
    _check_finite(a.values)
    g = a.grid
    axes = _axes(g)
    n = g.points_per_axis
    unshifted = np.fft.ifftshift(a.values * np.conj(_edge_phase(g)), axes=axes)
    scale = (g.freq_spacing * n / np.sqrt(2.0 * np.pi)) ** g.dim
    return a.replace(values=np.fft.ifftn(unshifted, axes=axes) * scale,
                     representation=POSITION)


def to_position(a: SampledAmplitude) -> SampledAmplitude:
    return a if a.representation == POSITION else inverse_fourier_transform(a)


def to_frequency(a: SampledAmplitude) -> SampledAmplitude:
    return a if a.representation == FREQUENCY else fourier_transform(a)


def normalize(a: SampledAmplitude) -> SampledAmplitude:
    n2 = a.norm2()
    if not np.isfinite(n2) or n2 <= 0.0:
        raise DegenerateAmplitudeError("degenerate amplitude: zero norm")
    return a.replace(values=a.values / np.sqrt(n2))


def born_density(a: SampledAmplitude, check: bool = True, tol: float = 1e-9) -> Density:
    """``|values|^2`` summed over any leading component axes."""
    rho = np.abs(a.values) ** 2
    if rho.ndim > a.grid.dim:
        rho = rho.reshape((-1,) + a.grid.shape).sum(axis=0)
    d = Density(a.grid, rho, a.representation)
    if check and abs(d.total() - 1.0) > tol:
        raise ValueError(f"amplitude not normalized: norm^2 = {d.total():.12g}")
    return d


def densities(a: SampledAmplitude) -> tuple[Density, Density]:
    """Position and frequency densities of one amplitude."""
    return born_density(to_position(a)), born_density(to_frequency(a))


def reflect_values(values: np.ndarray, grid: GridSpec) -> np.ndarray:
    """Samples of ``f(-r)`` on the same (even, periodic) grid."""
    if not grid.is_symmetric:
        raise ValueError("grid is not symmetric about the origin (odd points_per_axis)")
    out = values
    for ax in _axes(grid):
        out = np.roll(np.flip(out, axis=ax), 1, axis=ax)
    return out


def shift_values(values: np.ndarray, grid: GridSpec, steps) -> np.ndarray:
    """Periodic translation by an integer number of nodes per axis."""
    steps = np.broadcast_to(np.asarray(steps, dtype=int), (grid.dim,))
    return np.roll(values, tuple(int(s) for s in steps), axis=_axes(grid))

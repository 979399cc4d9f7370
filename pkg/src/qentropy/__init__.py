"""Phase-space entropy of sampled quantum amplitudes.

The total entropy of a pure state is the sum of the differential entropies
of its position and frequency densities. It is bounded below by
``dim (1 + ln pi)``, reached by coherent states.
"""

from .entropy import EntropyValue, amplitude_entropy, min_entropy_bound, total_entropy
from .grid import Density, GridSpec, SampledAmplitude, fourier_transform, normalize
from .qcurve import EntropySeries, Label, classify

__version__ = "0.1.0"

__all__ = [
    "Density",
    "EntropySeries",
    "EntropyValue",
    "GridSpec",
    "Label",
    "SampledAmplitude",
    "amplitude_entropy",
    "classify",
    "fourier_transform",
    "min_entropy_bound",
    "normalize",
    "total_entropy",
]

"""Entropy time series and their partition into constant, decreasing,
increasing and oscillating classes.

A series is labelled by its forward differences with a tolerance band
``epsilon``:

* ``C`` when the whole range fits inside the band,
* ``I`` when no step drops by more than ``epsilon``,
* ``D`` when no step rises by more than ``epsilon``,
* ``O`` otherwise.

The tests are applied in that order so every series gets exactly one label.
A drift whose every step lies inside the band passes both the ``I`` and ``D``
tests; it is labelled by the sign of its net change (``O`` when zero), which
keeps reflection an exact bijection on labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np


class Label(str, Enum):
    C = "C"
    D = "D"
    I = "I"  # noqa: E741
    O = "O"  # noqa: E741


_REFLECTED = {Label.C: Label.C, Label.D: Label.I, Label.I: Label.D, Label.O: Label.O}


@dataclass(frozen=True)
class EntropySeries:
    """Time-stamped entropy values.

    Parameters
    ----------
    times : array_like
        Strictly increasing sample times.
    values : array_like
        Entropy at each time, finite.
    meta : dict, optional
        Free-form provenance (generator name, parameters, side columns).
    """

    times: np.ndarray
    values: np.ndarray
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        t = np.array(self.times, dtype=float)
        v = np.array(self.values, dtype=float)
        if t.ndim != 1 or t.shape != v.shape:
            raise ValueError("times and values must be 1D arrays of equal length")
        if t.size > 1 and not np.all(np.diff(t) > 0):
            raise ValueError("times must be strictly increasing")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(v))):
            raise ValueError("series contains non-finite entries")
        t.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return self.values.size


@dataclass(frozen=True)
class QCurveClass:
    label: Label
    epsilon: float
    extrema: tuple[int, ...] = ()


def default_epsilon(values) -> float:
    """Relative band ``1e-4 * range`` with a small absolute floor.

    The floor (``1e-9`` of the magnitude) keeps round-off in flat series from
    being read as oscillation.
    """
    v = np.asarray(values, dtype=float)
    spread = float(v.max() - v.min())
    return max(1e-4 * (spread + 1e-30), 1e-9 * max(1.0, float(np.max(np.abs(v)))))


def _turning_points(diffs: np.ndarray, eps: float) -> tuple[int, ...]:
    # sample indices where the direction of significant steps flips
    idx = np.flatnonzero(np.abs(diffs) > eps)
    if idx.size < 2:
        return ()
    signs = np.sign(diffs[idx])
    flips = np.flatnonzero(signs[1:] != signs[:-1])
    return tuple(int(idx[f + 1]) for f in flips)


def classify(s: EntropySeries, epsilon: float | None = None) -> QCurveClass:
    """Partition label of an entropy series.

    Parameters
    ----------
    s : EntropySeries
        At least three samples.
    epsilon : float, optional
        Tolerance band; ``default_epsilon(s.values)`` when omitted.

    Returns
    -------
    QCurveClass
    """
    if len(s) < 3:
        raise ValueError("series too short to classify (need >= 3 samples)")
    v = s.values
    eps = default_epsilon(v) if epsilon is None else float(epsilon)
    if eps < 0:
        raise ValueError("epsilon must be nonnegative")
    d = np.diff(v)
    if v.max() - v.min() <= eps:
        label = Label.C
    else:
        up, down = np.all(d >= -eps), np.all(d <= eps)
        if up and down:
            # slow drift with every step inside the band: use net direction
            net = v[-1] - v[0]
            label = Label.I if net > 0 else Label.D if net < 0 else Label.O
        elif up:
            label = Label.I
        elif down:
            label = Label.D
        else:
            label = Label.O
    return QCurveClass(label, eps, _turning_points(d, eps))


def reflect(s: EntropySeries) -> EntropySeries:
    """Entropy trace run backwards over the same time stamps."""
    meta = dict(s.meta)
    meta["reflected"] = not meta.get("reflected", False)
    return EntropySeries(s.times, s.values[::-1], meta)


def class_of_reflection(c: QCurveClass) -> QCurveClass:
    """Class of the reflected series: C and O are fixed, I and D swap."""
    return QCurveClass(_REFLECTED[Label(c.label)], c.epsilon, ())


def detect_critical_time(s: EntropySeries, epsilon: float | None = None) -> float | None:
    """Time at which the entropy first starts to fall.

    Returns the last time stamp of the longest leading stretch with no drop
    beyond ``epsilon``, or ``None`` when the series is not oscillating.
    """
    c = classify(s, epsilon)
    if c.label != Label.O:
        return None
    drops = np.flatnonzero(np.diff(s.values) < -c.epsilon)
    return float(s.times[drops[0]])

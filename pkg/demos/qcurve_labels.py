"""Labelling entropy traces and the effect of running them backwards."""
import numpy as np

from qentropy import EntropySeries, classify
from qentropy.qcurve import class_of_reflection, detect_critical_time, reflect

t = np.linspace(0, 10, 50)
traces = {
    "flat": np.full_like(t, 2.0),
    "spreading": 2.0 + np.log1p(t**2),
    "focusing": 2.0 + np.log1p((10 - t) ** 2),
    "collision": 2.0 + t - 0.2 * t**2,
}
for name, v in traces.items():
    s = EntropySeries(t, v)
    c = classify(s)
    back = classify(reflect(s))
    assert back.label == class_of_reflection(c).label
    print(f"{name:10s} {c.label.value} -> reflected {back.label.value}, t_c = {detect_critical_time(s)}")

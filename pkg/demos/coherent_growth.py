"""A coherent state starts on the entropy minimum and spreads.

Run with ``python demos/coherent_growth.py``.
"""
import numpy as np

from qentropy import GridSpec, classify, min_entropy_bound
from qentropy.dispersion import (CoherentState, DispersionModel, coherent_entropy_series)

grid = GridSpec(1, 4096, 80.0)
state = CoherentState(center_r=0.0, center_k=0.0, sigma2=1.0)

print(f"lower bound in 1D: {min_entropy_bound(1):.6f}")

for kind in ("schroedinger", "dirac"):
    s = coherent_entropy_series(grid, state, DispersionModel(kind, 1.0), np.linspace(0, 10, 11))
    print(f"\n{kind}: label {classify(s).label.value}")
    print("   t     numeric   closed form")
    for t, v, c in zip(s.times, s.values, s.meta["s_closed_form"]):
        print(f"{t:5.1f}  {v:9.5f}  {c:9.5f}")

# the closed form is exact for the quadratic dispersion; for the relativistic
# one it keeps only the quadratic part of omega(k) around the carrier

"""Entropy oscillation of a particle driven between two oscillator levels."""
import numpy as np

from qentropy import classify
from qentropy.twolevel import (TwoLevelSystem, density_period, harmonic_oscillator_basis,
                               oscillation_entropy_series, recurrence_report)

system = TwoLevelSystem(omega1=1.0, omega2=2.0, w11i=0.1, w22i=-0.2, w12i=0.4)
period = density_period(system)
print(f"density period 2 pi/|D| = {period:.4f}")

basis = harmonic_oscillator_basis(levels=(0, 1))
s = oscillation_entropy_series(basis, system, np.linspace(0, period, 25))
print(f"label over one period: {classify(s).label.value}")
for t, p2, v in zip(s.times[::4], s.meta["p2"][::4], s.values[::4]):
    print(f"t={t:6.3f}  P(level 2)={p2:.4f}  S={v:.5f}")

# half a period is not enough, even for a basis with no interference fields
for levels in [(0, 1), (0, 2)]:
    rep = recurrence_report(harmonic_oscillator_basis(levels=levels), system)
    print(f"levels {levels}: full-period mismatch {rep['full_period_mismatch']:.1e}, "
          f"half-period mismatch {rep['half_period_mismatch']:.3f}")

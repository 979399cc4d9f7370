"""C, P, T and CPT leave the entropy of a spinor field unchanged."""
import numpy as np

from qentropy import GridSpec
from qentropy.symmetry import entropy_invariance, gamma_identities, random_spinor_field, \
    time_reversal_without_sign

for name, res in gamma_identities().items():
    print(f"{name:20s} residual {res:.1e}")
print(f"T relation without the metric sign: residual {time_reversal_without_sign():g}")

field = random_spinor_field(GridSpec(1, 256, 30.0), np.random.default_rng(1))
for name, row in entropy_invariance(field).items():
    print(f"{name:20s} S = {row['s_total']:.12f}")

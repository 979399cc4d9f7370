"""Two identical particles collide; interference lowers the joint entropy.

Takes a few seconds per run on the 1000 x 1000 joint grid.
"""
import warnings

from qentropy import classify
from qentropy.twoparticle import CollisionSetup, collision_entropy_series, collision_onset

warnings.simplefilter("ignore")

for p1, hbar_over_m in [(1.0, 1.0), (1.0, 0.5), (2.0, 0.5)]:
    setup = CollisionSetup(p1=p1, hbar_over_m=hbar_over_m)
    s = collision_entropy_series(setup)
    print(f"p1={p1:g} hbar/m={hbar_over_m:g}: speed {setup.speed():.3f}, "
          f"meeting at t={setup.meeting_time():.1f}, label {classify(s).label.value}, "
          f"entropy turns down at t={collision_onset(s):.1f}")

s = collision_entropy_series(CollisionSetup(statistics="boson"))
print(f"boson run, peak overlap {s.meta['overlap'].max():.3g}")

"""Electron entropy change in the 2p -> 1s Lyman-alpha decay."""
from qentropy.hydrogen import ALT, STANDARD, hydrogen_entropy_budget

for variant in (STANDARD, ALT):
    r = hydrogen_entropy_budget(variant)
    print(f"\n{variant} ({r['measure']})")
    for key in ("s_r_210_minus_ln_pi", "s_r_100_minus_ln_pi", "s_p_210", "s_p_100", "delta_s", "photon_bound"):
        print(f"  {key:22s} {r[key]: .5f}")

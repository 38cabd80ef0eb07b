"""The affine 27-space of Papadakis mapped onto the cone over F22.

The cone coordinate enters only through its square root r, so the
transformed equations are Laurent polynomials in r.

Run: python3 demos/05_papadakis_transform.py
"""

from ftskey.varieties.papadakis import degeneration_check, involution_report, papadakis_system

sys_ = papadakis_system()
for label, f in sys_.items():
    lo, hi = f.r_exponent_range()
    print(f"{label:5s} r^{lo}..r^{hi}  {len(f.poly)} terms")

print("skew part zero and r = 1 recovers F22:", degeneration_check().status)

rep = involution_report()
for tag, info in rep.items():
    print(f"{tag}: closed up to sign = {info['closed_up_to_sign']}")
    print("  ", info["images"])

"""S8: the tangential scroll discriminant and the fibers over the base.

Run: python3 demos/03_s8_geometry.py
"""

from ftskey.varieties import checks as vc

r = vc.tangential_scroll_check()
print("Dbeta / tangential quartic =", r.details["dbeta_over_quartic"])

# The fiber over a point d of the base depends on how d sits relative to the twisted cubic.
for d in [(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (1, 0, 0, 1)]:
    fib, cls, check = vc.s8_fiber(d)
    status = check.status if check else "n/a"
    print(f"d = {d}: {cls:8s} {len(fib)} equations, template check {status}")

for a in vc.s8_action_checks():
    print(f"{a.check:20s} {a.status}")

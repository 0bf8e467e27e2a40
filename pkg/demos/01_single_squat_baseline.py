"""How much energy can one squat store in a fixed spring?
=========================================================

A person of weight ``m*g`` squats against a parallel spring.  At standing
the legs carry everything; at the bottom the spring carries whatever the
legs give up.  The interesting quantities all follow in closed form from
the bottom leg force.
"""

import numpy as np

from springleg import BodyParams, LegGeometry, baseline_result, e1_max

body = BodyParams(mass=70.0, gravity=9.80665)
geom = LegGeometry(segment_length=0.45, standing_length=0.85, max_deformation=0.40)

print(f"weight: {body.weight:.1f} N, squat depth: {geom.max_deformation} m")
print()

# Sweep the leg force retained at the bottom of the squat.  Keeping zero
# force in the legs puts the most into the spring; carrying the full weight
# leaves the spring empty.
print(f"{'bottom force [N]':>18} {'stiffness [N/m]':>16} {'avg force [N]':>14} {'energy [J]':>11}")
for bottom in np.linspace(0.0, body.weight, 6):
    res = baseline_result(float(bottom), body, geom)
    print(
        f"{res.bottom_force:18.1f} {res.stiffness:16.1f} "
        f"{res.average_force:14.1f} {res.stored_energy:11.2f}"
    )

print()
bound = e1_max(body, geom)
print(f"single-squat energy bound (half of weight x depth): {bound:.2f} J")
print("This bound is what every multi-squat result is normalized against;")
print("no choice of spring can beat it in one squat, because the only force")
print("available to compress the spring is the weight itself.")

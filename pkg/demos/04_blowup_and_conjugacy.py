"""Blowing up a point and then k points on its exceptional curve."""

from kummer_verify.blowup import (
    TangentAction,
    canonical_class,
    default_chain,
    exceptional_self_intersections,
    induced_scalar_on_ep,
    scalar_stabilizer,
    validate_q_points,
)
from kummer_verify.conjugacy import DEFAULT_INSTANCE, SeparationInstance, admissible_offsets, class_count_lower_bound

for k in (0, 2, 4, 10):
    chain = default_chain(k)
    nums = exceptional_self_intersections(chain)
    print(f"k={k:2}  K = {canonical_class(chain)}")
    print(f"      K^2 = {nums.k_squared}  E_P'^2 = {nums.e_p}")

# symmetric choices of Q points
for pts in ([1, -1], [2, -2, 3, -3], [1, 2], [1, -1, 3]):
    report = validate_q_points(pts)
    print(pts, "ok" if report else report.failures)

# an automorphism fixing P acts on E_P by z -> (alpha2/alpha1) z
print(induced_scalar_on_ep(TangentAction(-1, 1)))
print("scalars preserving {2,-2,3,-3}:", sorted(scalar_stabilizer([2, -2, 3, -3])))

# if the finite images are {1,-1}, no two iota_n in 0..N share a class
print(admissible_offsets(DEFAULT_INSTANCE))
for n in (10, 100, 256):
    print(n, class_count_lower_bound(DEFAULT_INSTANCE, n))

# bigger K-sets merge indices
inst = SeparationInstance({1}, {8}, 2)
print(admissible_offsets(inst), class_count_lower_bound(inst, 10))

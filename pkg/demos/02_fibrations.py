"""Fibre types, Euler numbers and the genus of a trisection."""

from kummer_verify.curves import build_standard_configuration
from kummer_verify.fibration import (
    FiberError,
    check_fiber_candidate,
    classify_kodaira,
    euler_constraint_solutions,
    hurwitz_genus,
    sigma0_profiles,
    template_euler_table,
)
from kummer_verify.lattice import D1, D2, D2_PRIME, DivisorClass, adjunction_genus, riemann_roch_lower_bound

cfg = build_standard_configuration()

# D1 is a cycle of eight curves, D2 and D2' are stars with centre of multiplicity 3
for d, section in ((D1, "C31"), (D2, "C21"), (D2_PRIME, "C31")):
    check_fiber_candidate(cfg, d, section)
    k = classify_kodaira(cfg, d)
    print(f"{d.label:4} type {k.type_tag:4} euler {k.euler}  h0 >= {riemann_roch_lower_bound(cfg, d)}")

# a single curve is not a fibre: its square is -2
try:
    check_fiber_candidate(cfg, DivisorClass.curve("E1"), "C11")
except FiberError as exc:
    print("E1:", exc.tag, "-", exc)

print(template_euler_table())

# the fibration of D2 has two IV* fibres (Euler 8 each) and the rest sums to 8
solutions = euler_constraint_solutions([8, 8], total=24)
print("(nodal, cuspidal):", solutions)

# the trisection over P^1 has genus 4 however the remaining fibres split
for a, b in solutions:
    print((a, b), "genus", hurwitz_genus(3, 0, sigma0_profiles(a, b)))
print("adjunction with square 6:", adjunction_genus(6))

"""Translations on C = E1 and a subgroup of Q that is not finitely generated."""

from fractions import Fraction

from kummer_verify.elliptic import E_CURVE, add, point, quotient_branch_points, two_torsion
from kummer_verify.translations import (
    F1,
    F2,
    DyadicFamilySpec,
    certify_not_finitely_generated,
    conjugate_chain,
    finite_generation_of_rational_subgroup,
)

# E: y^2 = x(x-1)(x-2); the quotient by -1 is branched over the x-values of 2-torsion
print(sorted(map(str, two_torsion(E_CURVE))))
print(sorted(map(str, quotient_branch_points(E_CURVE))))
print("(0,0) + (1,0) =", add(E_CURVE, point(0, 0), point(1, 0)))

# f1 scales, f2 shifts
print("f1:", F1, " f2:", F2)

# conjugating the shift by powers of the scaling halves it each time
for n in range(1, 6):
    print(n, conjugate_chain(n))

# finitely many of them always generate a cyclic group ...
gens = [conjugate_chain(n).b for n in range(1, 6)]
print("generated by", [str(g) for g in gens], "->", finite_generation_of_rational_subgroup(gens))

# ... which misses the next one, so the whole family needs infinitely many generators
cert = certify_not_finitely_generated(DyadicFamilySpec(), depth=12)
for check in cert.prefix_checks[:4]:
    print(f"first {check.size}: <{check.generator}> excludes {check.excluded}: {check.excludes_next}")
print("certificate valid:", cert.valid, "denominators", cert.denominators)
print(Fraction(1, 2**12) in cert.witness)

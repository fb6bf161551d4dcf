"""Separating the involutions iota_n = f1^-n o iota o f1^n up to conjugacy.

If iota_n and iota_m are conjugate by h, the tangent eigenvalue of h along C
lies in ratio^(n-m) * K1 and in K2, with K1, K2 finite sets of nonzero
rationals.  An empty intersection therefore proves non-conjugacy.  Merging
all pairs that are not separated gives a partition whose number of blocks is
a lower bound for the number of conjugacy classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from networkx.utils import UnionFind


@dataclass(frozen=True)
class SeparationInstance:
    k1: frozenset[Fraction]
    k2: frozenset[Fraction]
    ratio: Fraction = Fraction(2)

    def __init__(self, k1: Iterable, k2: Iterable, ratio=2):
        k1 = frozenset(Fraction(v) for v in k1)
        k2 = frozenset(Fraction(v) for v in k2)
        ratio = Fraction(ratio)
        if not k1 or not k2:
            raise ValueError("K1 and K2 must be nonempty")
        if 0 in k1 or 0 in k2:
            raise ValueError("K1 and K2 must exclude 0")
        if ratio in (0, 1, -1):
            raise ValueError(f"ratio {ratio} must have absolute value other than 0 and 1")
        object.__setattr__(self, "k1", k1)
        object.__setattr__(self, "k2", k2)
        object.__setattr__(self, "ratio", ratio)


# the illustrative instance: both finite images equal to {+1, -1}
DEFAULT_INSTANCE = SeparationInstance({1, -1}, {1, -1}, 2)


def possibly_conjugate(inst: SeparationInstance, n: int, m: int) -> bool:
    """False proves iota_n, iota_m are not conjugate; True is only a non-obstruction."""
    scale = inst.ratio ** (n - m)
    return any(scale * a in inst.k2 for a in inst.k1)


def exact_log(q: Fraction, ratio: Fraction) -> int | None:
    """The integer d with ratio**d == q, or None; no floating point."""
    if q == 1:
        return 0
    for step, r in ((1, ratio), (-1, 1 / ratio)):
        d = 0
        power = Fraction(1)
        # |numerator| and denominator of r**d never decrease and at least one grows
        while abs(power.numerator) <= abs(q.numerator) and power.denominator <= q.denominator:
            if power == q:
                return d * step
            power *= r
            d += 1
    return None


def admissible_offsets(inst: SeparationInstance) -> frozenset[int]:
    out = set()
    for a in inst.k1:
        for b in inst.k2:
            d = exact_log(b / a, inst.ratio)
            if d is not None:
                out.add(d)
    return frozenset(out)


def conjugacy_partition(inst: SeparationInstance, range_end: int) -> list[set[int]]:
    """Blocks of {0..N} under the transitive closure of ``possibly_conjugate``."""
    if range_end < 0:
        raise ValueError("range end must be >= 0")
    indices = range(range_end + 1)
    uf = UnionFind(indices)
    for d in admissible_offsets(inst):
        for n in indices:
            if 0 <= n - d <= range_end:
                uf.union(n, n - d)
    return [set(block) for block in uf.to_sets()]


def class_count_lower_bound(inst: SeparationInstance, range_end: int) -> int:
    return len(conjugacy_partition(inst, range_end))

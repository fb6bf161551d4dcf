"""Two-stage blow-up S2 -> S1 -> S of a K3 surface.

S1 blows up a point P; S2 blows up k further points Q_i on the exceptional
curve E_P.  On E_P the coordinate is z = z2/z1 with the two tangent
directions P' at z = 0 and P'' at z = infinity, and the involution fixing
both is z -> -z.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .elliptic import INFINITY, format_rational


@dataclass(frozen=True)
class BlowupChain:
    q_points: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        if any(q is INFINITY for q in self.q_points):
            raise ValueError("Q points must avoid P'' (z = infinity)")
        pts = tuple(Fraction(q) for q in self.q_points)
        if any(q == 0 for q in pts):
            raise ValueError("Q points must avoid P' (z = 0)")
        if len(set(pts)) != len(pts):
            raise ValueError("Q points must be pairwise distinct")
        object.__setattr__(self, "q_points", pts)

    @property
    def k(self) -> int:
        return len(self.q_points)


def default_chain(k: int) -> BlowupChain:
    """Chain with Q points 1, -1, 2, -2, ... (symmetric whenever k is even)."""
    pts = []
    n = 1
    while len(pts) < k:
        pts.append(Fraction(n))
        if len(pts) < k:
            pts.append(Fraction(-n))
        n += 1
    return BlowupChain(tuple(pts))


@dataclass(frozen=True)
class CanonicalClass:
    terms: tuple[tuple[str, int], ...]

    def multiplicities(self) -> tuple[int, ...]:
        return tuple(m for _, m in self.terms)

    @property
    def degree(self) -> int:
        return sum(self.multiplicities())

    def __str__(self) -> str:
        return " + ".join(label if m == 1 else f"{m}*{label}" for label, m in self.terms)


@dataclass
class _Surface:
    """Exceptional curves on a blown-up K3: canonical coefficients and self-intersections."""

    canonical: dict[str, int] = field(default_factory=dict)
    selfint: dict[str, int] = field(default_factory=dict)
    k_squared: int = 0
    labels: dict[str, str] = field(default_factory=dict)

    def blow_up(self, new: str, through: Sequence[str]) -> None:
        # K' = pi^*K + E_new; pi^*D = D' + mult_pt(D) E_new for each curve D through the centre
        coeff = 1 + sum(self.canonical.get(c, 0) for c in through)
        for c in through:
            self.selfint[c] -= 1
            self.labels[c] = self.labels[c] if self.labels[c].endswith("'") else self.labels[c] + "'"
        self.canonical[new] = coeff
        self.selfint[new] = -1
        self.labels[new] = new
        self.k_squared -= 1


def _simulate(chain: BlowupChain) -> _Surface:
    s = _Surface()
    s.blow_up("E_P", through=())
    for i in range(1, chain.k + 1):
        s.blow_up(f"E_Q{i}", through=("E_P",))
    return s


def canonical_class(chain: BlowupChain) -> CanonicalClass:
    s = _simulate(chain)
    return CanonicalClass(tuple((s.labels[c], m) for c, m in s.canonical.items()))


@dataclass(frozen=True)
class ExceptionalNumbers:
    e_p: int
    e_q: tuple[int, ...]
    k_squared: int

    def as_dict(self) -> dict[str, int]:
        out = {"E_P'" if self.e_q else "E_P": self.e_p}
        out.update({f"E_Q{i}": v for i, v in enumerate(self.e_q, 1)})
        out["K^2"] = self.k_squared
        return out


def exceptional_self_intersections(chain: BlowupChain) -> ExceptionalNumbers:
    s = _simulate(chain)
    return ExceptionalNumbers(
        s.selfint["E_P"],
        tuple(s.selfint[f"E_Q{i}"] for i in range(1, chain.k + 1)),
        s.k_squared,
    )


def canonical_components_rigid(chain: BlowupChain) -> bool:
    """Every component of K_S2 has negative self-intersection."""
    return all(v < 0 for v in _simulate(chain).selfint.values())


@dataclass(frozen=True)
class QPointReport:
    points: tuple
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok


def validate_q_points(points: Iterable) -> QPointReport:
    """Check a Q-point set for the symmetric real choice on E_P.

    Every failing condition is listed: a point at 0 or infinity, a duplicate,
    odd k, k < 2, and a set not closed under z -> -z.
    """
    pts = tuple(points)
    failures = []
    finite = [Fraction(q) for q in pts if q is not INFINITY]
    if len(finite) != len(pts):
        failures.append("point at infinity")
    if any(q == 0 for q in finite):
        failures.append("point at zero")
    if len(set(finite)) != len(finite):
        failures.append("duplicate point")
    if len(pts) % 2:
        failures.append("odd k")
    if len(pts) < 2:
        failures.append("k < 2")
    if sorted(finite) != sorted(-q for q in finite):
        failures.append("not closed under z -> -z")
    return QPointReport(pts, tuple(failures))


@dataclass(frozen=True)
class TangentAction:
    """Eigenvalues of df_P: alpha1 along C, alpha2 transverse to C."""

    alpha1: Fraction
    alpha2: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha1", Fraction(self.alpha1))
        object.__setattr__(self, "alpha2", Fraction(self.alpha2))
        if self.alpha1 == 0 or self.alpha2 == 0:
            raise ValueError("tangent eigenvalues must be nonzero")

    @property
    def omega_scale(self) -> Fraction:
        return self.alpha1 * self.alpha2


def induced_scalar_on_ep(t: TangentAction) -> Fraction:
    """The map z -> (alpha2/alpha1) z induced on E_P."""
    return t.alpha2 / t.alpha1


def scalar_stabilizer(points: Sequence) -> frozenset[Fraction]:
    """Nonzero rationals c with c * points == points as multisets."""
    pts = sorted(Fraction(q) for q in points)
    if not pts:
        raise ValueError("empty point list")
    if any(q == 0 for q in pts):
        raise ValueError("points must be nonzero")
    return frozenset(
        c for c in {q / pts[0] for q in pts} if sorted(c * q for q in pts) == pts
    )


ASSUMED_FINITE = "ASSUMED-FINITE"


def index_bound_factors(points: Sequence) -> dict[str, int | str]:
    """k! (permutations of the Q points), the scalar stabilizer size, and the
    image of the canonical representation, which is not computed here."""
    return {
        "k_factorial": math.factorial(len(points)),
        "stabilizer": len(scalar_stabilizer(points)),
        "canonical_image": ASSUMED_FINITE,
    }


def format_points(points: Iterable) -> str:
    return ",".join(format_rational(q) for q in points)

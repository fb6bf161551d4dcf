"""Affine maps of the section coordinate on C and subgroups of (Q, +).

Mordell-Weil translations act on C = E1 through its coordinate x: by a
scaling when the fibre through C is multiplicative and by a shift when it is
additive.  With f1 (scaling by 2) and f2 (shift by 1), the conjugates
f1^-n f2 f1^n are the shifts by 1/2^n, which generate a subgroup of Q with
unbounded denominators.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Literal

from .elliptic import INFINITY, format_rational, parse_rational


@dataclass(frozen=True)
class AffineMap:
    """x -> a*x + b with a != 0."""

    a: Fraction
    b: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.a == 0:
            raise ValueError("linear part of an affine map must be nonzero")

    def __call__(self, x):
        return self.a * x + self.b

    def __matmul__(self, other: "AffineMap") -> "AffineMap":
        return compose(self, other)

    def __pow__(self, n: int) -> "AffineMap":
        return power(self, n)

    def __str__(self) -> str:
        return format_affine(self)


IDENTITY = AffineMap(Fraction(1), Fraction(0))


def compose(f: AffineMap, g: AffineMap) -> AffineMap:
    """f o g."""
    return AffineMap(f.a * g.a, f.a * g.b + f.b)


def inverse(f: AffineMap) -> AffineMap:
    return AffineMap(1 / f.a, -f.b / f.a)


def conjugate(h: AffineMap, f: AffineMap) -> AffineMap:
    """h^-1 o f o h."""
    return compose(inverse(h), compose(f, h))


def power(f: AffineMap, n: int) -> AffineMap:
    base = f if n >= 0 else inverse(f)
    out = IDENTITY
    for _ in range(abs(n)):
        out = compose(out, base)
    return out


def format_affine(f: AffineMap) -> str:
    if f.a == 1:
        lin = "x"
    elif f.a == -1:
        lin = "-x"
    else:
        lin = f"{format_rational(f.a)}*x"
    if f.b == 0:
        return f"x -> {lin}"
    sign = "+" if f.b > 0 else "-"
    return f"x -> {lin} {sign} {format_rational(abs(f.b))}"


_LIN = re.compile(r"^([+-]?)(?:([0-9/]+)\*?)?x(?:/([0-9]+))?$")


def parse_affine(text: str) -> AffineMap:
    """Parse ``x -> a*x + b`` (the ``x ->`` prefix is optional)."""
    body = text.split("->", 1)[1] if "->" in text else text
    body = body.replace(" ", "")
    if not body:
        raise ValueError(f"malformed affine map {text!r}")
    terms = re.findall(r"[+-]?[^+-]+", body)
    if "".join(terms) != body:
        raise ValueError(f"malformed affine map {text!r}")
    a = Fraction(0)
    b = Fraction(0)
    for term in terms:
        if "x" in term:
            m = _LIN.match(term)
            if not m:
                raise ValueError(f"malformed term {term!r} in {text!r}")
            coef = Fraction(m.group(2)) if m.group(2) else Fraction(1)
            if m.group(3):
                coef /= int(m.group(3))
            a += -coef if m.group(1) == "-" else coef
        else:
            value = parse_rational(term)
            if value is INFINITY:
                raise ValueError(f"malformed term {term!r} in {text!r}")
            b += value
    return AffineMap(a, b)


FiberKind = Literal["additive", "multiplicative"]


def induced_section_map(fiber_kind: FiberKind, section_coordinate) -> AffineMap:
    """Action on C of translation by the section meeting C at ``section_coordinate``.

    Coordinates are normalised so that the zero section meets C at 0 (additive
    fibre, singular point at infinity) or at 1 (multiplicative fibre, singular
    points at 0 and infinity).
    """
    u = Fraction(section_coordinate)
    if fiber_kind == "additive":
        return AffineMap(Fraction(1), u)
    if fiber_kind == "multiplicative":
        if u == 0:
            raise ValueError("a section of a multiplicative fibre cannot meet C at 0")
        return AffineMap(u, Fraction(0))
    raise ValueError(f"unknown fibre kind {fiber_kind!r}")


# where the sections C_i1 meet C = E1 in the coordinate x
SECTION_COORDINATES = {"C11": INFINITY, "C21": Fraction(0), "C31": Fraction(1), "C41": Fraction(2)}

# f1: C41 in MW of the I8 fibration (zero section C31); f2: C31 in MW of the IV* fibration (zero section C21)
F1 = induced_section_map("multiplicative", SECTION_COORDINATES["C41"] / SECTION_COORDINATES["C31"])
F2 = induced_section_map("additive", SECTION_COORDINATES["C31"] - SECTION_COORDINATES["C21"])


def conjugate_chain(n: int, f1: AffineMap = F1, f2: AffineMap = F2) -> AffineMap:
    """f1^-n o f2 o f1^n by explicit step-by-step composition."""
    out = f2
    for _ in range(n):
        out = compose(inverse(f1), compose(out, f1))
    return out


def conjugate_family(n: int) -> AffineMap:
    if n < 1:
        raise ValueError("the conjugate family is indexed by n >= 1")
    closed = AffineMap(Fraction(1), Fraction(1, 2**n))
    chain = conjugate_chain(n)
    if chain != closed:
        raise AssertionError(f"conjugate family mismatch at n={n}: {chain} != {closed}")
    return closed


def finite_generation_of_rational_subgroup(generators: Iterable) -> Fraction:
    """Positive generator of the (cyclic) subgroup of Q spanned by ``generators``."""
    gens = [Fraction(g) for g in generators]
    if not gens:
        raise ValueError("need at least one generator")
    nonzero = [abs(g) for g in gens if g != 0]
    if not nonzero:
        return Fraction(0)
    num = math.gcd(*(g.numerator for g in nonzero))
    den = math.lcm(*(g.denominator for g in nonzero))
    return Fraction(num, den)


def in_cyclic_subgroup(x, generator: Fraction) -> bool:
    x = Fraction(x)
    if generator == 0:
        return x == 0
    return (x / generator).denominator == 1


@dataclass(frozen=True)
class DyadicFamilySpec:
    """The generators numerator/base^n, n >= 1."""

    numerator: Fraction = Fraction(1)
    base: int = 2

    def __post_init__(self) -> None:
        object.__setattr__(self, "numerator", Fraction(self.numerator))
        if self.numerator == 0:
            raise ValueError("numerator must be nonzero")
        if self.base < 2:
            raise ValueError(f"base {self.base} < 2 gives a cyclic family")

    def member(self, n: int) -> Fraction:
        return self.numerator / self.base**n


@dataclass(frozen=True)
class PrefixCheck:
    size: int
    generator: Fraction
    contains_prefix: bool
    excluded: Fraction
    excludes_next: bool

    @property
    def ok(self) -> bool:
        return self.contains_prefix and self.excludes_next


@dataclass(frozen=True)
class NonFiniteGenerationCertificate:
    family: DyadicFamilySpec
    depth: int
    witness: tuple[Fraction, ...]
    prefix_checks: tuple[PrefixCheck, ...] = field(repr=False)

    @property
    def denominators(self) -> list[int]:
        return [w.denominator for w in self.witness]

    @property
    def valid(self) -> bool:
        dens = self.denominators
        increasing = all(a < b for a, b in zip(dens, dens[1:]))
        return increasing and all(c.ok for c in self.prefix_checks)


def certify_not_finitely_generated(family: DyadicFamilySpec, depth: int = 32) -> NonFiniteGenerationCertificate:
    """Certificate that the group generated by ``family`` is not finitely generated.

    The witness lists ``depth`` members with strictly growing denominators.
    For each prefix {m_1..m_k}, k < depth, the cyclic group it generates
    contains the prefix but not m_{k+1}.  Any finitely generated subgroup of
    Q is cyclic, so no finite set of members generates the whole family.
    """
    if depth < 1:
        raise ValueError("depth must be positive")
    witness: list[Fraction] = []
    best = 0
    n = 0
    while len(witness) < depth:
        n += 1
        m = family.member(n)
        if m.denominator > best:
            witness.append(m)
            best = m.denominator
    checks = []
    members = [family.member(k) for k in range(1, n + 1)]
    for k in range(1, len(members)):
        prefix = members[:k]
        g = finite_generation_of_rational_subgroup(prefix)
        checks.append(
            PrefixCheck(
                size=k,
                generator=g,
                contains_prefix=all(in_cyclic_subgroup(x, g) for x in prefix),
                excluded=members[k],
                excludes_next=not in_cyclic_subgroup(members[k], g),
            )
        )
    return NonFiniteGenerationCertificate(family, depth, tuple(witness), tuple(checks))

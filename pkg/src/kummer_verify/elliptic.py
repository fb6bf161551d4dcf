"""Exact arithmetic on y^2 = (x - e1)(x - e2)(x - e3) over Q."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]


class _Infinity:
    """The point at infinity, which is also the group identity."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()


@dataclass(frozen=True)
class AffinePoint:
    x: Fraction
    y: Fraction

    def __repr__(self) -> str:
        return f"({format_rational(self.x)},{format_rational(self.y)})"


CurvePoint = Union[AffinePoint, _Infinity]


class OffCurveError(ValueError):
    pass


def point(x: Rational, y: Rational) -> AffinePoint:
    return AffinePoint(Fraction(x), Fraction(y))


@dataclass(frozen=True)
class WeierstrassCurve:
    roots: tuple[Fraction, Fraction, Fraction]

    def __init__(self, e1: Rational, e2: Rational, e3: Rational):
        roots = (Fraction(e1), Fraction(e2), Fraction(e3))
        if len(set(roots)) != 3:
            raise ValueError(f"roots {roots} are not distinct: curve is singular")
        object.__setattr__(self, "roots", roots)

    @property
    def a2(self) -> Fraction:
        e1, e2, e3 = self.roots
        return -(e1 + e2 + e3)

    @property
    def a4(self) -> Fraction:
        e1, e2, e3 = self.roots
        return e1 * e2 + e1 * e3 + e2 * e3

    def rhs(self, x: Fraction) -> Fraction:
        e1, e2, e3 = self.roots
        return (x - e1) * (x - e2) * (x - e3)

    def contains(self, p: CurvePoint) -> bool:
        return p is INFINITY or p.y * p.y == self.rhs(p.x)

    def __repr__(self) -> str:
        e = ", ".join(format_rational(r) for r in self.roots)
        return f"WeierstrassCurve({e})"


def legendre_curve(lam: Rational) -> WeierstrassCurve:
    """y'^2 = x'(x' - 1)(x' - lam)."""
    return WeierstrassCurve(0, 1, lam)


E_CURVE = WeierstrassCurve(0, 1, 2)


def _check(curve: WeierstrassCurve, p: CurvePoint) -> None:
    if not curve.contains(p):
        raise OffCurveError(f"{p!r} is not on {curve!r}")


def negate(curve: WeierstrassCurve, p: CurvePoint) -> CurvePoint:
    _check(curve, p)
    return p if p is INFINITY else AffinePoint(p.x, -p.y)


def add(curve: WeierstrassCurve, p: CurvePoint, q: CurvePoint) -> CurvePoint:
    """Chord-tangent addition with the point at infinity as identity."""
    _check(curve, p)
    _check(curve, q)
    if p is INFINITY:
        return q
    if q is INFINITY:
        return p
    if p.x == q.x:
        if p.y != q.y or p.y == 0:
            return INFINITY
        slope = (3 * p.x * p.x + 2 * curve.a2 * p.x + curve.a4) / (2 * p.y)
    else:
        slope = (q.y - p.y) / (q.x - p.x)
    x3 = slope * slope - curve.a2 - p.x - q.x
    y3 = -(p.y + slope * (x3 - p.x))
    return AffinePoint(x3, y3)


def multiply(curve: WeierstrassCurve, n: int, p: CurvePoint) -> CurvePoint:
    if n < 0:
        return multiply(curve, -n, negate(curve, p))
    result: CurvePoint = INFINITY
    addend = p
    while n:
        if n & 1:
            result = add(curve, result, addend)
        addend = add(curve, addend, addend)
        n >>= 1
    return result


def two_torsion(curve: WeierstrassCurve) -> frozenset:
    return frozenset([INFINITY] + [AffinePoint(e, Fraction(0)) for e in curve.roots])


def quotient_branch_points(curve: WeierstrassCurve) -> frozenset:
    """Branch points of the x-coordinate map E -> P^1 (the x-image of the 2-torsion)."""
    return frozenset(INFINITY if p is INFINITY else p.x for p in two_torsion(curve))


def branch_points_are_real(curve: WeierstrassCurve) -> bool:
    # roots are Fractions by construction; a rational root is a real point
    return all(isinstance(e, Fraction) for e in curve.roots)


def format_rational(q: Rational | _Infinity) -> str:
    if q is INFINITY:
        return "inf"
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction | _Infinity:
    """Parse ``p/q``, an integer, or ``inf``."""
    text = text.strip()
    if text in ("inf", "∞"):
        return INFINITY
    if not text or any(ch not in "0123456789-+/" for ch in text):
        raise ValueError(f"malformed rational {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed rational {text!r}") from exc

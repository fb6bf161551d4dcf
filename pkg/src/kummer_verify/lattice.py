"""Integral divisor classes on a curve configuration and their intersection arithmetic."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .curves import CurveConfiguration, CurveId, parse_curve


class DivisorClass:
    """Finite integer combination of configuration curves.

    Zero coefficients are dropped, so two classes compare equal iff their
    supports and coefficients agree.  The optional label is carried along for
    reporting and ignored by equality.
    """

    __slots__ = ("_coeffs", "label")

    def __init__(self, coeffs: Mapping[CurveId, int] | None = None, label: str | None = None):
        clean = {}
        for curve, k in (coeffs or {}).items():
            if int(k) != k:
                raise ValueError(f"non-integral coefficient {k} on {curve}")
            if k:
                clean[curve] = int(k)
        self._coeffs = clean
        self.label = label

    @classmethod
    def curve(cls, name: CurveId) -> "DivisorClass":
        return cls({name: 1}, label=name)

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, CurveId]], label: str | None = None) -> "DivisorClass":
        coeffs: dict[CurveId, int] = {}
        for k, curve in terms:
            coeffs[curve] = coeffs.get(curve, 0) + k
        return cls(coeffs, label)

    @property
    def coeffs(self) -> dict[CurveId, int]:
        return dict(self._coeffs)

    @property
    def support(self) -> list[CurveId]:
        return list(self._coeffs)

    def __getitem__(self, curve: CurveId) -> int:
        return self._coeffs.get(curve, 0)

    def __iter__(self):
        return iter(self._coeffs.items())

    def __len__(self) -> int:
        return len(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_effective(self) -> bool:
        return all(k >= 0 for k in self._coeffs.values())

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        out = dict(self._coeffs)
        for c, k in other._coeffs.items():
            out[c] = out.get(c, 0) + k
        return DivisorClass(out)

    def __neg__(self) -> "DivisorClass":
        return DivisorClass({c: -k for c, k in self._coeffs.items()})

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + (-other)

    def __mul__(self, n: int) -> "DivisorClass":
        return DivisorClass({c: n * k for c, k in self._coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DivisorClass):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def __repr__(self) -> str:
        name = f"{self.label} = " if self.label else ""
        return f"DivisorClass({name}{format_terms(self)})"


def format_terms(d: DivisorClass) -> str:
    if d.is_zero():
        return "0"
    parts = []
    for curve, k in d:
        term = curve if abs(k) == 1 else f"{abs(k)}*{curve}"
        if not parts:
            parts.append(term if k > 0 else f"-{term}")
        else:
            parts.append(("+ " if k > 0 else "- ") + term)
    return " ".join(parts)


_TERM = re.compile(r"^(?:(\d+)\s*\*\s*)?([A-Za-z][A-Za-z0-9]*)$")


def parse_divisor_terms(text: str, resolve=parse_curve) -> DivisorClass:
    """Parse ``k1*CURVE1 + k2*CURVE2 + ...`` (positive coefficients, ``1*`` optional)."""
    terms = []
    for raw in text.split("+"):
        raw = raw.strip()
        m = _TERM.match(raw)
        if not m:
            raise ValueError(f"malformed divisor term {raw!r}")
        k = int(m.group(1)) if m.group(1) else 1
        if k <= 0:
            raise ValueError(f"coefficient must be positive in {raw!r}")
        terms.append((k, resolve(m.group(2))))
    return DivisorClass.from_terms(terms)


def pair(cfg: CurveConfiguration, d: DivisorClass | CurveId, e: DivisorClass | CurveId) -> int:
    d, e = _as_divisor_in(cfg, d), _as_divisor_in(cfg, e)
    total = 0
    for a, ka in d:
        ia = cfg.index(a)
        for b, kb in e:
            total += ka * kb * int(cfg.gram[ia, cfg.index(b)])
    return total


def self_intersection(cfg: CurveConfiguration, d: DivisorClass | CurveId) -> int:
    return pair(cfg, d, d)


@dataclass(frozen=True)
class NefCheck:
    nef: bool
    witness: tuple[CurveId, int] | None = None

    def __bool__(self) -> bool:
        return self.nef


def is_nef_on_configuration(cfg: CurveConfiguration, d: DivisorClass) -> NefCheck:
    """Nefness relative to the configuration: ``(D.R) >= 0`` for every listed curve R.

    Returns the first violating curve and its pairing as the witness.
    """
    d = _as_divisor_in(cfg, d)
    if not d.is_effective():
        raise ValueError("nef check requires an effective divisor")
    for r in cfg.curves:
        v = pair(cfg, d, DivisorClass.curve(r))
        if v < 0:
            return NefCheck(False, (r, v))
    return NefCheck(True)


def adjunction_genus(self_int: int, k_dot_d: int = 0) -> Fraction:
    """Arithmetic genus ``1 + (D^2 + K.D)/2``.

    A non-integral result means the input numbers cannot come from a curve
    class; see :func:`is_curve_genus`.
    """
    return 1 + Fraction(self_int + k_dot_d, 2)


def is_curve_genus(g: Fraction) -> bool:
    return g.denominator == 1


def self_intersection_from_genus(genus: int, k_dot_d: int = 0) -> int:
    """Inverse of :func:`adjunction_genus`: ``D^2 = 2g - 2 - K.D``."""
    return 2 * genus - 2 - k_dot_d


def riemann_roch_lower_bound(cfg: CurveConfiguration, d: DivisorClass) -> int:
    """``h^0(D) >= chi(D) = 2 + D^2/2`` for a nef divisor on a K3 surface."""
    d = _as_divisor_in(cfg, d)
    if d.is_zero():
        raise ValueError("Riemann-Roch bound requested for the zero class")
    check = is_nef_on_configuration(cfg, d)
    if not check:
        curve, value = check.witness
        raise ValueError(f"divisor is not nef: ({curve}) pairs to {value}")
    return 2 + self_intersection(cfg, d) // 2


def bareiss_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free Gaussian elimination."""
    m = [[int(v) for v in row] for row in rows]
    n_rows = len(m)
    if n_rows == 0:
        return 0
    n_cols = len(m[0])
    rank = 0
    prev = 1
    for col in range(n_cols):
        if rank == n_rows:
            break
        pivot = next((r for r in range(rank, n_rows) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        top = m[rank]
        for r in range(rank + 1, n_rows):
            row = m[r]
            f = row[col]
            for c in range(col + 1, n_cols):
                # exact: every entry is a minor of the original matrix
                row[c] = (row[c] * p - f * top[c]) // prev
            row[col] = 0
        prev = p
        rank += 1
    return rank


def pairing_matrix(cfg: CurveConfiguration, classes: Sequence[DivisorClass | CurveId]) -> list[list[int]]:
    """Rows are the given classes, columns their pairings with every configuration curve."""
    return [
        [pair(cfg, d, DivisorClass.curve(r)) for r in cfg.curves]
        for d in classes
    ]


def lattice_rank(cfg: CurveConfiguration, classes: Sequence[DivisorClass | CurveId]) -> int:
    """Rank of the span of ``classes`` in NS(S) tensor Q.

    Computed from the pairing against all configuration curves, which is
    faithful because the form is nondegenerate on the span of the curves.
    """
    if not classes:
        raise ValueError("lattice_rank needs at least one class")
    return bareiss_rank(pairing_matrix(cfg, classes))


def _as_divisor_in(cfg: CurveConfiguration, x: DivisorClass | CurveId) -> DivisorClass:
    if isinstance(x, DivisorClass):
        for c, _ in x:
            cfg.resolve(c)
        return x
    return DivisorClass.curve(cfg.resolve(x))


def _named(label: str, text: str) -> DivisorClass:
    d = parse_divisor_terms(text)
    d.label = label
    return d


# I_8 cycle through C = E1
D1 = _named("D1", "E1 + C11 + F1 + C12 + E2 + C22 + F2 + C21")
# IV* star centred at F1
D2 = _named("D2", "E1 + 2*C11 + E2 + 2*C12 + E3 + 2*C13 + 3*F1")
# IV* star centred at E4, linearly equivalent to D2
D2_PRIME = _named("D2'", "F2 + 2*C24 + F3 + 2*C34 + F4 + 2*C44 + 3*E4")

NAMED_DIVISORS = {"D1": D1, "D2": D2, "D2'": D2_PRIME}

"""The 24 smooth rational curves on Km(E x F) and their intersection matrix.

Curves are identified by ASCII tokens: ``E1``..``E4`` (images of E x {a_j}),
``F1``..``F4`` (images of {b_i} x F) and ``C11``..``C44`` (exceptional curves
over the 16 nodes).  ``C_ij`` meets ``F_i`` and ``E_j`` once and nothing else.
The distinguished curve ``C`` is an alias for ``E1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

CurveId = str

E_CURVES: tuple[CurveId, ...] = tuple(f"E{j}" for j in range(1, 5))
F_CURVES: tuple[CurveId, ...] = tuple(f"F{i}" for i in range(1, 5))
C_CURVES: tuple[CurveId, ...] = tuple(
    f"C{i}{j}" for i in range(1, 5) for j in range(1, 5)
)
STANDARD_CURVES: tuple[CurveId, ...] = E_CURVES + F_CURVES + C_CURVES

ALIASES = {"C": "E1"}

_TOKEN = re.compile(r"^(?:[EF][1-4]|C[1-4][1-4])$")


class UnknownCurveError(KeyError, ValueError):
    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self) -> str:
        return f"unknown curve {self.name!r}"


def parse_curve(token: str) -> CurveId:
    """Normalise a curve token, resolving the ``C`` alias to ``E1``."""
    token = token.strip()
    token = ALIASES.get(token, token)
    if not _TOKEN.match(token):
        raise UnknownCurveError(token)
    return token


@dataclass(frozen=True)
class CurveConfiguration:
    """A finite set of curves with a symmetric integer intersection matrix."""

    curves: tuple[CurveId, ...]
    gram: np.ndarray = field(repr=False, compare=False)

    def __post_init__(self) -> None:
        gram = np.array(self.gram, dtype=np.int64)
        n = len(self.curves)
        if gram.shape != (n, n):
            raise ValueError(f"gram must be {n}x{n}, got {gram.shape}")
        if not np.array_equal(gram, gram.T):
            raise ValueError("gram matrix is not symmetric")
        if len(set(self.curves)) != n:
            raise ValueError("duplicate curve names")
        gram.setflags(write=False)
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "_index", {c: k for k, c in enumerate(self.curves)})

    @classmethod
    def from_graph(
        cls,
        curves: Sequence[CurveId],
        edges: Iterable[tuple[CurveId, CurveId] | tuple[CurveId, CurveId, int]],
        self_intersection: int = -2,
    ) -> "CurveConfiguration":
        """Build a configuration from an edge list.

        Each edge is ``(a, b)`` or ``(a, b, weight)``; every curve gets the
        same self-intersection.
        """
        curves = tuple(curves)
        index = {c: k for k, c in enumerate(curves)}
        gram = np.zeros((len(curves), len(curves)), dtype=np.int64)
        np.fill_diagonal(gram, self_intersection)
        for edge in edges:
            a, b = edge[0], edge[1]
            w = edge[2] if len(edge) == 3 else 1
            if a == b:
                raise ValueError(f"self-loop on {a}")
            gram[index[a], index[b]] += w
            gram[index[b], index[a]] += w
        return cls(curves, gram)

    def __contains__(self, curve: object) -> bool:
        return curve in self._index

    def __len__(self) -> int:
        return len(self.curves)

    def resolve(self, name: CurveId) -> CurveId:
        if name not in self._index:
            name = ALIASES.get(name, name)
        if name not in self._index:
            raise UnknownCurveError(name)
        return name

    def index(self, curve: CurveId) -> int:
        return self._index[self.resolve(curve)]

    def adjacency(self, a: CurveId, b: CurveId) -> int:
        return int(self.gram[self.index(a), self.index(b)])

    def neighbours(self, curve: CurveId) -> list[CurveId]:
        row = self.gram[self.index(curve)]
        return [c for c, v in zip(self.curves, row) if v != 0 and c != curve]

    def format_gram(self) -> str:
        width = max(len(c) for c in self.curves) + 1
        lines = [" " * width + "".join(c.rjust(width) for c in self.curves)]
        for c, row in zip(self.curves, self.gram):
            lines.append(c.ljust(width) + "".join(str(int(v)).rjust(width) for v in row))
        return "\n".join(lines)


def _standard_edges() -> list[tuple[CurveId, CurveId]]:
    edges = []
    for i in range(1, 5):
        for j in range(1, 5):
            edges.append((f"C{i}{j}", f"E{j}"))
            edges.append((f"C{i}{j}", f"F{i}"))
    return edges


_STANDARD = CurveConfiguration.from_graph(STANDARD_CURVES, _standard_edges())


def build_standard_configuration() -> CurveConfiguration:
    return _STANDARD


def adjacency(cfg: CurveConfiguration, a: CurveId, b: CurveId) -> int:
    return cfg.adjacency(a, b)

"""Elliptic fibre classes on a configuration of (-2)-curves.

A nef, connected, effective class of square zero with a curve meeting it once
is the fibre of an elliptic fibration with that curve as a section.  Its
weighted dual graph is then an affine Dynkin diagram and determines the
Kodaira type.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from .curves import CurveConfiguration, CurveId
from .lattice import (
    DivisorClass,
    is_nef_on_configuration,
    pair,
    self_intersection,
)

K3_EULER_NUMBER = 24


class FiberError(ValueError):
    tag = "fiber"


class NotEffectiveError(FiberError):
    tag = "not-effective"


class NotNefError(FiberError):
    tag = "not-nef"

    def __init__(self, curve: CurveId, value: int):
        super().__init__(f"not nef: pairing with {curve} is {value}")
        self.witness = (curve, value)


class NonzeroSquareError(FiberError):
    tag = "nonzero-square"


class DisconnectedSupportError(FiberError):
    tag = "disconnected"


class SectionPairingError(FiberError):
    tag = "section-pairing"


class UnsupportedFiberError(FiberError):
    tag = "unsupported"


@dataclass(frozen=True)
class FiberCandidate:
    divisor: DivisorClass
    section: CurveId


@dataclass(frozen=True)
class KodairaFiber:
    type_tag: str
    components: tuple[tuple[CurveId, int], ...]
    euler: int
    graph: nx.Graph = field(compare=False, repr=False)


_TAG = re.compile(r"^(I(\d+)(\*)?|II|III|IV|II\*|III\*|IV\*)$")

_EULER_FIXED = {"II": 2, "III": 3, "IV": 4, "IV*": 8, "III*": 9, "II*": 10}


def euler_of_type(tag: str) -> int:
    """Euler number read off the Kodaira table."""
    m = _TAG.match(tag)
    if not m:
        raise ValueError(f"unknown Kodaira type {tag!r}")
    if tag in _EULER_FIXED:
        return _EULER_FIXED[tag]
    n = int(m.group(2))
    if m.group(3):
        return n + 6
    if n < 1:
        raise ValueError("I_n needs n >= 1")
    return n


def _support_graph(cfg: CurveConfiguration, d: DivisorClass) -> nx.Graph:
    g = nx.Graph()
    for curve, k in d:
        g.add_node(curve, mult=k)
    support = d.support
    for i, a in enumerate(support):
        for b in support[i + 1:]:
            w = cfg.adjacency(a, b)
            if w:
                g.add_edge(a, b, weight=w)
    return g


def check_fiber_class(cfg: CurveConfiguration, d: DivisorClass) -> None:
    """Raise a :class:`FiberError` subclass unless ``d`` looks like a fibre."""
    if d.is_zero():
        raise NotEffectiveError("zero class")
    if not d.is_effective():
        raise NotEffectiveError("negative coefficient in " + repr(d))
    sq = self_intersection(cfg, d)
    if sq != 0:
        raise NonzeroSquareError(f"self-intersection is {sq}, not 0")
    nef = is_nef_on_configuration(cfg, d)
    if not nef:
        raise NotNefError(*nef.witness)
    if not nx.is_connected(_support_graph(cfg, d)):
        raise DisconnectedSupportError("support is not connected")


def check_fiber_candidate(cfg: CurveConfiguration, d: DivisorClass, section: CurveId) -> FiberCandidate:
    check_fiber_class(cfg, d)
    section = cfg.resolve(section)
    v = pair(cfg, d, section)
    if v != 1:
        raise SectionPairingError(f"pairing with {section} is {v}, not 1")
    return FiberCandidate(d, section)


# weighted templates -------------------------------------------------------

def _path(g: nx.Graph, start, mults: Sequence[int], prefix: str):
    prev = start
    for k, m in enumerate(mults):
        node = f"{prefix}{k}"
        g.add_node(node, mult=m)
        g.add_edge(prev, node, weight=1)
        prev = node


def _star(center_mult: int, arms: Sequence[Sequence[int]]) -> nx.Graph:
    g = nx.Graph()
    g.add_node("c", mult=center_mult)
    for a, arm in enumerate(arms):
        _path(g, "c", arm, f"a{a}_")
    return g


def cycle_template(n: int) -> nx.Graph:
    g = nx.cycle_graph(n)
    nx.set_node_attributes(g, 1, "mult")
    nx.set_edge_attributes(g, 1, "weight")
    return g


def d_tilde_template(n: int) -> nx.Graph:
    """Affine D_{n+4}: fibre type I*_n."""
    if n == 0:
        return _star(2, [[1], [1], [1], [1]])
    g = nx.path_graph(n + 1)
    nx.set_node_attributes(g, 2, "mult")
    nx.set_edge_attributes(g, 1, "weight")
    for end, tag in ((0, "l"), (n, "r")):
        for leaf in range(2):
            node = f"{tag}{leaf}"
            g.add_node(node, mult=1)
            g.add_edge(end, node, weight=1)
    return g


def e6_template() -> nx.Graph:
    return _star(3, [[2, 1], [2, 1], [2, 1]])


def e7_template() -> nx.Graph:
    return _star(4, [[2], [3, 2, 1], [3, 2, 1]])


def e8_template() -> nx.Graph:
    return _star(6, [[3], [4, 2], [5, 4, 3, 2, 1]])


def _templates_for(n_nodes: int, n_edges: int) -> Iterable[tuple[str, nx.Graph]]:
    if n_edges == n_nodes and n_nodes >= 3:
        yield f"I{n_nodes}", cycle_template(n_nodes)
    if n_edges == n_nodes - 1:
        if n_nodes >= 5:
            yield f"I{n_nodes - 5}*", d_tilde_template(n_nodes - 5)
        if n_nodes == 7:
            yield "IV*", e6_template()
        if n_nodes == 8:
            yield "III*", e7_template()
        if n_nodes == 9:
            yield "II*", e8_template()


def _weighted_match(g: nx.Graph, template: nx.Graph) -> bool:
    matcher = GraphMatcher(
        g,
        template,
        node_match=lambda a, b: a["mult"] == b["mult"],
        edge_match=lambda a, b: a["weight"] == b["weight"],
    )
    return matcher.is_isomorphic()


def match_kodaira_graph(g: nx.Graph) -> str:
    """Kodaira tag of a weighted dual graph, or raise UnsupportedFiberError."""
    if any(w != 1 for _, _, w in g.edges(data="weight")):
        raise UnsupportedFiberError("tangential or multiple intersections are not simple normal crossing")
    for tag, template in _templates_for(g.number_of_nodes(), g.number_of_edges()):
        if _weighted_match(g, template):
            return tag
    raise UnsupportedFiberError("unsupported in simple-normal-crossing configuration")


def classify_kodaira(cfg: CurveConfiguration, d: DivisorClass) -> KodairaFiber:
    check_fiber_class(cfg, d)
    g = _support_graph(cfg, d)
    tag = match_kodaira_graph(g)
    return KodairaFiber(tag, tuple(sorted(d)), euler_of_type(tag), g)


def euler_number_from_graph(components, multiplicities=None, adjacency=None) -> int:
    """Topological Euler number of a connected SNC tree/cycle of rational curves.

    Accepts either a networkx graph or (components, multiplicities,
    adjacency), where ``adjacency(a, b)`` returns the number of intersection
    points.  Multiplicities do not affect the topology.
    """
    if isinstance(components, nx.Graph):
        g = components
        return 2 * g.number_of_nodes() - sum(w for _, _, w in g.edges(data="weight", default=1))
    comps = list(components)
    points = sum(
        adjacency(a, b) for i, a in enumerate(comps) for b in comps[i + 1:]
    )
    return 2 * len(comps) - points


def euler_constraint_solutions(
    known_fibers: Sequence[int],
    total: int = K3_EULER_NUMBER,
    unknown_types: tuple[int, int] = (1, 2),
) -> list[tuple[int, int]]:
    """All (a, b) >= 0 with ``a*e_node + b*e_cusp = total - sum(known)``, by increasing b."""
    residual = total - sum(known_fibers)
    if residual < 0:
        raise ValueError(f"known fibres already exceed the total Euler number ({residual})")
    e_node, e_cusp = unknown_types
    out = []
    for b in range(residual // e_cusp + 1):
        rest = residual - b * e_cusp
        if rest % e_node == 0:
            out.append((rest // e_node, b))
    return out


def hurwitz_genus(degree: int, base_genus: int, ramification: Iterable[Sequence[int]]) -> Fraction:
    """Genus of a degree-``degree`` cover from its ramification profiles.

    Each profile is the list of local degrees over one branch point and must
    sum to the degree.
    """
    defect = 0
    for profile in ramification:
        if sum(profile) != degree or any(e < 1 for e in profile):
            raise ValueError(f"profile {list(profile)} is not a partition of {degree}")
        defect += sum(e - 1 for e in profile)
    chi = degree * (2 - 2 * base_genus) - defect
    return 1 - Fraction(chi, 2)


def sigma0_profiles(a: int, b: int) -> list[list[int]]:
    """Branching of the trisection over P^1: total over both IV*, cusps, nodes."""
    return [[3], [3]] + [[3]] * b + [[2, 1]] * a


@lru_cache(maxsize=None)
def template_euler_table() -> dict[str, int]:
    """Graph Euler numbers of the built-in templates, for cross-checking the table."""
    table = {f"I{n}": euler_number_from_graph(cycle_template(n)) for n in range(3, 12)}
    table.update({f"I{n}*": euler_number_from_graph(d_tilde_template(n)) for n in range(0, 8)})
    table["IV*"] = euler_number_from_graph(e6_template())
    table["III*"] = euler_number_from_graph(e7_template())
    table["II*"] = euler_number_from_graph(e8_template())
    return table

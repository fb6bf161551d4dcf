from fractions import Fraction
from itertools import product
import random

import networkx as nx
import pytest

from kummer_verify.curves import CurveConfiguration
from kummer_verify.fibration import (
    DisconnectedSupportError,
    NonzeroSquareError,
    NotEffectiveError,
    NotNefError,
    SectionPairingError,
    UnsupportedFiberError,
    check_fiber_candidate,
    classify_kodaira,
    cycle_template,
    d_tilde_template,
    e6_template,
    e7_template,
    e8_template,
    euler_constraint_solutions,
    euler_number_from_graph,
    euler_of_type,
    hurwitz_genus,
    sigma0_profiles,
    template_euler_table,
)
from kummer_verify.lattice import D1, D2, D2_PRIME, DivisorClass, adjunction_genus, self_intersection


def support_cycle_length(cfg, d):
    """Oracle for I_n: walk the support; every node has exactly two neighbours in it."""
    support = set(d.support)
    for c in support:
        if len([x for x in cfg.neighbours(c) if x in support]) != 2:
            return None
    start = next(iter(support))
    prev, cur, n = None, start, 0
    while True:
        nxt = [x for x in cfg.neighbours(cur) if x in support and x != prev][0]
        prev, cur, n = cur, nxt, n + 1
        if cur == start:
            return n


def star_arms(cfg, d):
    """Oracle for the E6-tilde star: centre multiplicity and arm multiplicity sequences."""
    support = set(d.support)
    centre = max(support, key=lambda c: d[c])
    arms = []
    for first in (x for x in cfg.neighbours(centre) if x in support):
        arm, prev, cur = [], centre, first
        while True:
            arm.append(d[cur])
            nxt = [x for x in cfg.neighbours(cur) if x in support and x != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
        arms.append(tuple(arm))
    return centre, d[centre], sorted(arms)


def test_fiber_candidates(cfg):
    assert check_fiber_candidate(cfg, D1, "C31").section == "C31"
    assert check_fiber_candidate(cfg, D1, "C41").section == "C41"
    assert check_fiber_candidate(cfg, D2, "C21").section == "C21"
    assert check_fiber_candidate(cfg, D2, "C31").section == "C31"
    assert check_fiber_candidate(cfg, D2_PRIME, "C31").section == "C31"


@pytest.mark.parametrize(
    "d, section, error",
    [
        (DivisorClass.curve("E1"), "C11", NonzeroSquareError),
        (DivisorClass(), "C11", NotEffectiveError),
        (D1 - 2 * DivisorClass.curve("E1"), "C31", NotEffectiveError),
        (D1 + DivisorClass.curve("E3"), "C31", NonzeroSquareError),
        (D2 + DivisorClass.curve("C21"), "C31", NotNefError),
        (D2 + D2_PRIME, "C31", DisconnectedSupportError),
        (2 * D2, "C31", SectionPairingError),
        (D2, "C11", SectionPairingError),
        (D1, "C33", SectionPairingError),
    ],
)
def test_fiber_candidate_errors(cfg, d, section, error):
    with pytest.raises(error):
        check_fiber_candidate(cfg, d, section)


def test_not_effective_beats_other_tags(cfg):
    with pytest.raises(NotEffectiveError):
        check_fiber_candidate(cfg, -D2, "C21")


def test_nef_witness(cfg):
    with pytest.raises(NotNefError) as exc:
        check_fiber_candidate(cfg, D2 + DivisorClass.curve("C21"), "C31")
    assert exc.value.witness == ("C21", -1)


def test_disconnected_support():
    # two disjoint triangles, each an I3
    names = [f"a{i}" for i in range(3)] + [f"b{i}" for i in range(3)]
    edges = [(f"a{i}", f"a{(i + 1) % 3}") for i in range(3)] + [(f"b{i}", f"b{(i + 1) % 3}") for i in range(3)]
    cfg = CurveConfiguration.from_graph(names, edges)
    with pytest.raises(DisconnectedSupportError):
        classify_kodaira(cfg, DivisorClass({n: 1 for n in names}))


def test_d1_is_i8(cfg):
    f = classify_kodaira(cfg, D1)
    assert support_cycle_length(cfg, D1) == 8
    assert (f.type_tag, f.euler) == ("I8", 8)


@pytest.mark.parametrize("d, centre", [(D2, "F1"), (D2_PRIME, "E4")])
def test_d2_is_iv_star(cfg, d, centre):
    assert star_arms(cfg, d) == (centre, 3, [(2, 1), (2, 1), (2, 1)])
    f = classify_kodaira(cfg, d)
    assert (f.type_tag, f.euler) == ("IV*", 8)
    assert euler_number_from_graph(f.graph) == 2 * 7 - 6


def test_euler_from_graph_examples(cfg):
    f = classify_kodaira(cfg, D1)
    assert euler_number_from_graph(f.graph) == 2 * 8 - 8
    assert euler_number_from_graph(["E1"], [1], cfg.adjacency) == 2
    comps = [c for c, _ in f.components]
    assert euler_number_from_graph(comps, [1] * 8, cfg.adjacency) == 8


@pytest.mark.parametrize(
    "tag, euler",
    [("I1", 1), ("I8", 8), ("I0*", 6), ("I3*", 9), ("II", 2), ("III", 3), ("IV", 4), ("IV*", 8), ("III*", 9), ("II*", 10)],
)
def test_euler_table(tag, euler):
    assert euler_of_type(tag) == euler


def test_euler_table_agrees_with_templates():
    for tag, e in template_euler_table().items():
        assert euler_of_type(tag) == e


def _config_from_template(g):
    names = [f"n{v}" for v in g.nodes]
    edges = [(f"n{a}", f"n{b}") for a, b in g.edges]
    cfg = CurveConfiguration.from_graph(names, edges)
    d = DivisorClass({f"n{v}": m for v, m in g.nodes(data="mult")})
    return cfg, d


@pytest.mark.parametrize(
    "template, tag",
    [
        (cycle_template(3), "I3"),
        (cycle_template(5), "I5"),
        (d_tilde_template(0), "I0*"),
        (d_tilde_template(1), "I1*"),
        (d_tilde_template(4), "I4*"),
        (e6_template(), "IV*"),
        (e7_template(), "III*"),
        (e8_template(), "II*"),
    ],
)
def test_synthetic_templates_classify(template, tag):
    cfg, d = _config_from_template(template)
    assert self_intersection(cfg, d) == 0
    f = classify_kodaira(cfg, d)
    assert f.type_tag == tag
    assert euler_number_from_graph(f.graph) == euler_of_type(tag)


def test_unsupported_shapes():
    # two curves meeting in two points: I2 or III, not SNC here
    cfg = CurveConfiguration.from_graph(["a", "b"], [("a", "b", 2)])
    with pytest.raises(UnsupportedFiberError):
        classify_kodaira(cfg, DivisorClass({"a": 1, "b": 1}))
    # doubled IV*: square 0 and nef but not a primitive fibre
    cfg6, d6 = _config_from_template(e6_template())
    with pytest.raises(UnsupportedFiberError):
        classify_kodaira(cfg6, 2 * d6)


def test_classification_invariant_under_relabelling():
    rng = random.Random(7)
    for template in (e6_template(), e7_template(), d_tilde_template(2), cycle_template(6)):
        cfg, d = _config_from_template(template)
        base = classify_kodaira(cfg, d).type_tag
        for _ in range(5):
            nodes = list(template.nodes)
            perm = dict(zip(nodes, rng.sample(nodes, len(nodes))))
            relabelled = nx.relabel_nodes(template, perm)
            order = list(relabelled.nodes)
            rng.shuffle(order)
            names = [f"n{v}" for v in order]
            cfg2 = CurveConfiguration.from_graph(names, [(f"n{a}", f"n{b}") for a, b in relabelled.edges])
            d2 = DivisorClass({f"n{v}": m for v, m in relabelled.nodes(data="mult")})
            assert classify_kodaira(cfg2, d2).type_tag == base


def test_fibres_have_genus_one(cfg):
    for d in (D1, D2, D2_PRIME):
        classify_kodaira(cfg, d)
        assert adjunction_genus(self_intersection(cfg, d), 0) == 1


def _enumerate_solutions(residual):
    return sorted(
        ((a, b) for a, b in product(range(residual + 1), repeat=2) if a + 2 * b == residual),
        key=lambda ab: ab[1],
    )


def test_euler_constraint():
    assert euler_constraint_solutions([8, 8], 24) == [(8, 0), (6, 1), (4, 2), (2, 3), (0, 4)]
    assert euler_constraint_solutions([8, 8], 24) == _enumerate_solutions(8)
    assert euler_constraint_solutions([24], 24) == [(0, 0)]
    assert euler_constraint_solutions([8, 8, 8], 24) == _enumerate_solutions(0) == [(0, 0)]
    with pytest.raises(ValueError):
        euler_constraint_solutions([20, 8], 24)


def test_hurwitz_examples():
    assert hurwitz_genus(3, 0, sigma0_profiles(0, 4)) == 4
    # 2 - 2g = 6 - 2 - 2 - 8
    assert hurwitz_genus(3, 0, sigma0_profiles(8, 0)) == 1 - Fraction(6 - 2 - 2 - 8, 2) == 4
    assert hurwitz_genus(1, 0, []) == 0
    with pytest.raises(ValueError):
        hurwitz_genus(3, 0, [[2, 2]])


def test_hurwitz_genus_constant_on_all_solutions():
    for a, b in euler_constraint_solutions([8, 8], 24):
        assert hurwitz_genus(3, 0, sigma0_profiles(a, b)) == 4

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kummer_verify.blowup import (
    BlowupChain,
    TangentAction,
    canonical_class,
    canonical_components_rigid,
    default_chain,
    exceptional_self_intersections,
    index_bound_factors,
    induced_scalar_on_ep,
    scalar_stabilizer,
    validate_q_points,
)
from kummer_verify.elliptic import INFINITY


def test_canonical_class_examples():
    assert str(canonical_class(BlowupChain())) == "E_P"
    assert str(canonical_class(default_chain(2))) == "E_P' + 2*E_Q1 + 2*E_Q2"
    assert canonical_class(default_chain(4)).multiplicities() == (1, 2, 2, 2, 2)


@pytest.mark.parametrize("k", range(0, 13))
def test_canonical_matches_closed_form(k):
    # K_S1 = E_P; each Q_i lies on E_P only, so its exceptional curve enters with 1 + 1
    cls = canonical_class(default_chain(k))
    assert cls.multiplicities() == (1,) + (2,) * k
    assert cls.degree == 1 + 2 * k


@pytest.mark.parametrize("k", [0, 2, 4, 7])
def test_self_intersections(k):
    nums = exceptional_self_intersections(default_chain(k))
    assert nums.e_p == -1 - k
    assert nums.e_q == (-1,) * k
    assert nums.k_squared == -1 - k
    # K^2 recomputed from the canonical class and the intersection form
    mults = canonical_class(default_chain(k)).multiplicities()
    ksq = mults[0] ** 2 * nums.e_p + sum(m * m * e for m, e in zip(mults[1:], nums.e_q)) + 2 * sum(
        mults[0] * m for m in mults[1:]
    )
    assert ksq == nums.k_squared
    assert canonical_components_rigid(default_chain(k))


def test_as_dict():
    assert exceptional_self_intersections(default_chain(2)).as_dict() == {
        "E_P'": -3,
        "E_Q1": -1,
        "E_Q2": -1,
        "K^2": -3,
    }


def test_chain_validation():
    for bad in [(0,), (INFINITY,), (1, 1)]:
        with pytest.raises(ValueError):
            BlowupChain(bad)


@pytest.mark.parametrize(
    "points, failures",
    [
        ([1, -1], ()),
        ([1, -1, 3, -3], ()),
        ([Fraction(1, 2), Fraction(-1, 2)], ()),
        ([1, 2], ("not closed under z -> -z",)),
        ([1], ("odd k", "k < 2", "not closed under z -> -z")),
        ([0, 1, -1], ("point at zero", "odd k")),
        ([1, 1, -1, -1], ("duplicate point",)),
        ([INFINITY, 1], ("point at infinity", "not closed under z -> -z")),
        ([], ("k < 2",)),
    ],
)
def test_validate_q_points(points, failures):
    report = validate_q_points(points)
    assert report.failures == failures
    assert bool(report) == (not failures)


def _stabilizer_oracle(points, bound=6):
    """Brute force over c = p/q with small p, q."""
    target = sorted(Fraction(x) for x in points)
    found = set()
    for p, q in product(range(-bound * 4, bound * 4 + 1), range(1, bound + 1)):
        c = Fraction(p, q)
        if c != 0 and sorted(c * x for x in target) == target:
            found.add(c)
    return found


@pytest.mark.parametrize(
    "points, expected",
    [
        ([1, -1], {1, -1}),
        ([2, -2, 3, -3], {1, -1}),
        ([1], {1}),
        ([1, 2], {1}),
        ([1, 2, 4, Fraction(1, 2)], {1}),
    ],
)
def test_scalar_stabilizer(points, expected):
    assert scalar_stabilizer(points) == expected == _stabilizer_oracle(points)


def test_scalar_stabilizer_errors():
    with pytest.raises(ValueError):
        scalar_stabilizer([])
    with pytest.raises(ValueError):
        scalar_stabilizer([0, 1])


nonzero = st.fractions(min_value=-8, max_value=8, max_denominator=6).filter(lambda q: q != 0)


@given(st.lists(nonzero, min_size=1, max_size=6, unique=True))
@settings(max_examples=300)
def test_stabilizer_is_finite_group(points):
    stab = scalar_stabilizer(points)
    assert 1 in stab
    for a in stab:
        assert 1 / a in stab
        for b in stab:
            assert a * b in stab
    # a finite subgroup of Q^* is {1} or {1, -1}
    assert stab <= {1, -1}


def test_induced_scalar_examples():
    assert induced_scalar_on_ep(TangentAction(1, 1)) == 1
    assert induced_scalar_on_ep(TangentAction(-1, 1)) == -1
    t = TangentAction(2, Fraction(1, 2))
    assert t.omega_scale == 1
    assert induced_scalar_on_ep(t) == Fraction(1, 4)
    with pytest.raises(ValueError):
        TangentAction(0, 1)


@given(nonzero, nonzero)
def test_induced_scalar_identity(a1, a2):
    t = TangentAction(a1, a2)
    assert induced_scalar_on_ep(t) == a2 * a2 / t.omega_scale


def test_index_bound_factors():
    assert index_bound_factors([1, -1, 2, -2]) == {
        "k_factorial": 24,
        "stabilizer": 2,
        "canonical_image": "ASSUMED-FINITE",
    }

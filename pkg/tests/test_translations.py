from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kummer_verify.translations import (
    F1,
    F2,
    IDENTITY,
    SECTION_COORDINATES,
    AffineMap,
    DyadicFamilySpec,
    certify_not_finitely_generated,
    compose,
    conjugate,
    conjugate_family,
    finite_generation_of_rational_subgroup,
    format_affine,
    in_cyclic_subgroup,
    induced_section_map,
    inverse,
    parse_affine,
    power,
)

nonzero = st.fractions(max_denominator=50).filter(lambda q: q != 0)
maps = st.builds(AffineMap, nonzero, st.fractions(max_denominator=50))


def test_compose_inverse_conjugate_examples():
    assert compose(AffineMap(2, 0), AffineMap(1, 1)) == AffineMap(2, 2)
    assert inverse(AffineMap(2, 0)) == AffineMap(Fraction(1, 2), 0)
    assert conjugate(power(AffineMap(2, 0), 3), AffineMap(1, 1)) == AffineMap(1, Fraction(1, 8))


def test_f1_f2_from_section_coordinates():
    assert SECTION_COORDINATES["C21"] == 0 and SECTION_COORDINATES["C31"] == 1
    assert F1 == AffineMap(2, 0)
    assert F2 == AffineMap(1, 1)


def test_induced_section_map():
    assert induced_section_map("multiplicative", 2) == AffineMap(2, 0)
    assert induced_section_map("additive", 1) == AffineMap(1, 1)
    assert induced_section_map("additive", 0) == IDENTITY
    with pytest.raises(ValueError):
        induced_section_map("multiplicative", 0)
    with pytest.raises(ValueError):
        induced_section_map("toric", 1)


def _pointwise_chain(n, x):
    """Oracle: apply x -> 2^n x, then x + 1, then divide by 2 n times."""
    y = x
    for _ in range(n):
        y = 2 * y
    y = y + 1
    for _ in range(n):
        y = y / 2
    return y


def test_conjugate_family_examples():
    assert conjugate_family(1) == AffineMap(1, Fraction(1, 2))
    assert conjugate_family(10) == AffineMap(1, Fraction(1, 1024))
    with pytest.raises(ValueError):
        conjugate_family(0)


@pytest.mark.parametrize("n", range(1, 65))
def test_conjugate_family_matches_pointwise_oracle(n):
    f = conjugate_family(n)
    for x in (Fraction(0), Fraction(3, 7), Fraction(-11)):
        assert f(x) == _pointwise_chain(n, x)
    assert conjugate(power(F1, n), F2) == f


def test_conjugate_family_translations_distinct():
    parts = [conjugate_family(n).b for n in range(1, 65)]
    assert len(set(parts)) == 64


@given(maps, maps, maps)
@settings(max_examples=1000)
def test_affine_group_laws(f, g, h):
    assert compose(f, inverse(f)) == IDENTITY == compose(inverse(f), f)
    assert compose(compose(f, g), h) == compose(f, compose(g, h))
    assert compose(IDENTITY, f) == f == compose(f, IDENTITY)
    assert conjugate(h, compose(f, g)) == compose(conjugate(h, f), conjugate(h, g))
    assert parse_affine(format_affine(f)) == f


def test_affine_rejects_zero_slope():
    with pytest.raises(ValueError):
        AffineMap(0, 1)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("x -> 2*x + 2", AffineMap(2, 2)),
        ("x+1/8", AffineMap(1, Fraction(1, 8))),
        ("x -> x/2", AffineMap(Fraction(1, 2), 0)),
        ("-x - 3", AffineMap(-1, -3)),
        ("2*x", AffineMap(2, 0)),
    ],
)
def test_parse_affine(text, expected):
    assert parse_affine(text) == expected


@pytest.mark.parametrize("bad", ["", "x ->", "y + 1", "x + inf", "0*x + 1"])
def test_parse_affine_errors(bad):
    with pytest.raises(ValueError):
        parse_affine(bad)


def _smallest_positive_combination(gens, bound=12):
    """Oracle: least positive integer combination with small coefficients."""
    best = None
    for coeffs in product(range(-bound, bound + 1), repeat=len(gens)):
        v = sum(c * g for c, g in zip(coeffs, gens))
        if v > 0 and (best is None or v < best):
            best = v
    return best


@pytest.mark.parametrize(
    "gens, expected",
    [
        ([Fraction(1, 2), Fraction(1, 3)], Fraction(1, 6)),
        ([Fraction(1)], Fraction(1)),
        ([Fraction(1, 2), Fraction(1, 4), Fraction(1, 8)], Fraction(1, 8)),
        ([Fraction(4, 3), Fraction(6, 5)], Fraction(2, 15)),
    ],
)
def test_finite_generation(gens, expected):
    g = finite_generation_of_rational_subgroup(gens)
    assert g == expected == _smallest_positive_combination(gens)
    assert all(in_cyclic_subgroup(x, g) for x in gens)


def test_finite_generation_zero():
    assert finite_generation_of_rational_subgroup([0, 0]) == 0
    with pytest.raises(ValueError):
        finite_generation_of_rational_subgroup([])


def test_certificate_dyadic_depth5():
    cert = certify_not_finitely_generated(DyadicFamilySpec(1, 2), depth=5)
    assert cert.witness == tuple(Fraction(1, 2**n) for n in range(1, 6))
    last = cert.prefix_checks[-1]
    assert last.size == 4 and last.generator == Fraction(1, 16)
    assert last.excluded == Fraction(1, 32) and last.excludes_next
    assert cert.valid


def test_certificate_numerator_three():
    cert = certify_not_finitely_generated(DyadicFamilySpec(3, 2), depth=3)
    assert cert.witness == (Fraction(3, 2), Fraction(3, 4), Fraction(3, 8))
    check = cert.prefix_checks[1]
    assert check.generator == Fraction(3, 4)
    assert not in_cyclic_subgroup(Fraction(3, 8), check.generator)
    assert cert.valid


def test_certificate_numerator_with_base_factors():
    cert = certify_not_finitely_generated(DyadicFamilySpec(4, 2), depth=4)
    assert cert.denominators == [1, 2, 4, 8]
    assert cert.valid


def test_certificate_rejects_degenerate_family():
    with pytest.raises(ValueError):
        DyadicFamilySpec(1, 1)
    with pytest.raises(ValueError):
        DyadicFamilySpec(0, 2)


@given(st.integers(1, 40), st.integers(2, 7), nonzero)
@settings(max_examples=60)
def test_prefix_exclusion_property(depth, base, num):
    cert = certify_not_finitely_generated(DyadicFamilySpec(num, base), depth=depth)
    assert len(cert.witness) == depth
    for check in cert.prefix_checks:
        prefix = [DyadicFamilySpec(num, base).member(k) for k in range(1, check.size + 1)]
        assert all((x / check.generator).denominator == 1 for x in prefix)
        assert (check.excluded / check.generator).denominator != 1
    assert cert.valid

"""Orbit machinery: single application, random access, truncation."""
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cantorperm import (
    apply_map,
    apply_truncated,
    encode,
    make_base,
    make_expansion,
    make_orbit,
    modulus_of_continuity_check,
    orbit_point,
    orbit_prefix,
    parse_permutations,
    shift_vector,
)
from cantorperm.errors import DepthMismatch, OutOfRange


def _shift_setup():
    b = make_base((2, 3, 5))
    pv = shift_vector(b)
    return b, pv


def test_apply_map_shifts_zero():
    b, pv = _shift_setup()
    x = make_expansion((0, 0, 0), b)
    y = apply_map(pv, x)
    assert y.digits == (1, 1, 1)
    assert y.value == Fraction(7, 10)


def test_apply_map_wraps():
    b, pv = _shift_setup()
    x = make_expansion((1, 2, 4), b)
    assert apply_map(pv, x).digits == (0, 0, 0)


def test_apply_map_partial_depth():
    # an expansion shorter than the vector is fine: only its levels act
    b, pv = _shift_setup()
    short = make_expansion((0, 0), b)
    assert apply_map(pv, short).digits == (1, 1)


def test_apply_map_depth_mismatch():
    b2 = make_base((2, 3))
    pv2 = shift_vector(b2)
    b3 = make_base((2, 3, 5))
    long = make_expansion((0, 0, 0), b3)
    with pytest.raises(DepthMismatch):
        apply_map(pv2, long)


def test_orbit_first_values():
    b, pv = _shift_setup()
    spec = make_orbit(encode(Fraction(0), b, 3), pv)
    values = [p.value for p in orbit_prefix(spec, 4)]
    assert values == [
        Fraction(0),
        Fraction(7, 10),
        Fraction(2, 5),
        Fraction(3, 5),
    ]


def test_orbit_period_is_full_product():
    b, pv = _shift_setup()
    spec = make_orbit(encode(Fraction(0), b, 3), pv)
    assert orbit_point(spec, 30).value == Fraction(0)
    seen = {orbit_point(spec, n).digits for n in range(30)}
    assert len(seen) == 30


def test_orbit_random_access_matches_iteration():
    b = make_base((2, 3, 5, 7))
    pv = parse_permutations(
        "2: 1,0\n3: 2,0,1\n5: 3,0,4,2,1\n7: 5,3,0,6,2,1,4", b
    )
    spec = make_orbit(encode(Fraction(29, 30), b, 4), pv)
    x = spec.alpha_digits
    for n in range(60):
        assert orbit_point(spec, n).digits == x
        x = apply_map(pv, x)


def test_orbit_semigroup():
    # the n-th point of the orbit started at the m-th point is point n+m
    b, pv = _shift_setup()
    spec = make_orbit(encode(Fraction(29, 30), b, 3), pv)
    for m in (0, 7, 19):
        restart = make_orbit(orbit_point(spec, m).digits, pv)
        for n in (0, 5, 28):
            assert orbit_point(restart, n).digits == orbit_point(spec, n + m).digits


def test_orbit_huge_index():
    b, pv = _shift_setup()
    spec = make_orbit(encode(Fraction(0), b, 3), pv)
    n = 10**12
    want = tuple(n % m for m in (2, 3, 5))
    assert orbit_point(spec, n).digits.digits == want


def test_apply_truncated_on_grid_equals_map():
    b, pv = _shift_setup()
    for j in range(30):
        x = Fraction(j, 30)
        direct = apply_map(pv, encode(x, b, 3)).value
        assert apply_truncated(pv, x, 3) == direct


def test_apply_truncated_keeps_tail():
    b, pv = _shift_setup()
    # 1/7 = digits (0,0,4) + tail; image prefix (1,1,0) carries the same tail
    x = Fraction(1, 7)
    y = apply_truncated(pv, x, 3)
    prefix = encode(x, b, 3)
    image_prefix = apply_map(pv, prefix).value
    assert y - image_prefix == x - prefix.value
    assert 0 <= y < 1


def test_apply_truncated_bijective_on_sample():
    b, pv = _shift_setup()
    points = [Fraction(k, 97) for k in range(97)]
    images = [apply_truncated(pv, x, 3) for x in points]
    assert len(set(images)) == len(points)


def test_apply_truncated_rejects_outside():
    b, pv = _shift_setup()
    with pytest.raises(OutOfRange):
        apply_truncated(pv, Fraction(3, 2), 3)


def test_modulus_of_continuity():
    b, pv = _shift_setup()
    assert modulus_of_continuity_check(pv, 0) == 1
    assert modulus_of_continuity_check(pv, 2) == Fraction(1, 6)
    assert modulus_of_continuity_check(pv, 3) == Fraction(1, 30)


def test_truncation_error_bound():
    b, pv = _shift_setup()
    x = Fraction(355, 452)
    for depth in (1, 2, 3):
        shallow = apply_truncated(pv, x, depth)
        deep = apply_truncated(pv, x, 3)
        # both keep the level-depth prefix image, so they sit in one interval
        assert abs(shallow - deep) < Fraction(1, b.products[depth])


@given(st.integers(min_value=0, max_value=10**12), st.integers(min_value=0, max_value=10**6))
@settings(max_examples=100)
def test_orbit_additivity_property(n, m):
    b, pv = _shift_setup()
    spec = make_orbit(encode(Fraction(7, 30), b, 3), pv)
    a = orbit_point(spec, n).digits
    b2 = make_orbit(a, pv)
    assert orbit_point(b2, m).digits == orbit_point(spec, n + m).digits


@given(
    st.integers(min_value=0, max_value=97 - 1),
)
def test_truncated_translation_on_interval(k):
    # on one grid interval the truncated map is a translation
    b, pv = _shift_setup()
    x = Fraction(k, 97)
    lower = apply_truncated(pv, Fraction(0), 3)
    inside = apply_truncated(pv, x % Fraction(1, 30), 3)
    assert inside - lower == x % Fraction(1, 30)

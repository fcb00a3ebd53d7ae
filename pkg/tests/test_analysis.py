"""Non-monotonicity witnesses and difference-quotient probes."""
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cantorperm import (
    apply_map,
    derivative_probe,
    difference_quotient,
    encode,
    find_monotonicity_witness,
    find_witness_descending,
    make_base,
    make_expansion,
    parse_permutations,
    shift_vector,
)
from cantorperm.errors import (
    DegenerateDigit,
    IndexOutOfRange,
    LevelExceeded,
    NoWitnessAtLevel,
)
from cantorperm.perms import identity_vector


def test_witness_shift_mod3():
    # shift on Z_3 rises 0->1 and falls 1->2, giving digits (0,1,1,2)
    b = make_base((2, 3, 5))
    pv = shift_vector(b)
    w = find_monotonicity_witness(pv, 1, 0)
    assert w.increasing_digits == (0, 1)
    assert w.decreasing_digits == (1, 2)
    assert w.points[0] < w.points[1] and w.images[0] < w.images[1]
    assert w.points[2] < w.points[3] and w.images[2] > w.images[3]


def test_witness_points_inside_interval():
    b = make_base((2, 3, 5, 7))
    pv = shift_vector(b)
    for level in range(3):
        for j in range(b.period(level)):
            w = find_witness_descending(pv, level, j)
            lower = Fraction(j, b.period(level))
            upper = Fraction(j + 1, b.period(level))
            for p in w.points:
                assert lower <= p < upper


def test_witness_swap_needs_descent():
    # on Z_2 the only non-identity permutation has no increasing pair
    b = make_base((2, 3, 5))
    pv = shift_vector(b)
    with pytest.raises(NoWitnessAtLevel):
        find_monotonicity_witness(pv, 0, 0)
    w = find_witness_descending(pv, 0, 0)
    assert w.level == 1
    assert all(p < Fraction(1, 2) for p in w.points)


def test_witness_identity_never_found():
    b = make_base((2, 3, 5))
    pv = identity_vector(b)
    with pytest.raises(NoWitnessAtLevel):
        find_witness_descending(pv, 0, 0)


def test_witness_level_bounds():
    b = make_base((2, 3, 5))
    pv = shift_vector(b)
    with pytest.raises(LevelExceeded):
        find_monotonicity_witness(pv, 3, 0)
    with pytest.raises(IndexOutOfRange):
        find_monotonicity_witness(pv, 1, 2)


def test_witness_images_match_map():
    b = make_base((2, 3, 5))
    pv = shift_vector(b)
    w = find_monotonicity_witness(pv, 2, 3)
    for p, im in zip(w.points, w.images):
        digits = encode(p, b, 3)
        assert apply_map(pv, digits).value == im


def test_quotient_shift_known():
    # shift on Z_5: digit 4 maps to 0, digit 0 maps to 1
    b = make_base((2, 3, 5))
    pv = shift_vector(b)
    alpha = encode(Fraction(29, 30), b, 3)
    s = difference_quotient(pv, alpha, 2, 0)
    assert s.quotient == Fraction(-1, 4)
    assert (s.digit_level, s.original_digit, s.perturbed_digit) == (2, 4, 0)


def test_quotient_adjacent_slope_one():
    # moduli >= 3 keep the adjacent step wrap-free, so the slope is exactly 1
    b = make_base((3, 5, 7))
    pv = shift_vector(b)
    alpha = encode(Fraction(0), b, 3)
    for s_level in range(3):
        got = difference_quotient(pv, alpha, s_level, 1)
        assert got.quotient == 1


def test_quotient_swap_only_slope():
    # on Z_2 both digits trade places: the single quotient is -1, never 1
    b = make_base((2, 3, 5))
    pv = shift_vector(b)
    alpha = encode(Fraction(0), b, 3)
    got = difference_quotient(pv, alpha, 0, 1)
    assert got.quotient == -1


def test_quotient_wraparound_negative():
    b = make_base((2, 3, 5))
    pv = shift_vector(b)
    alpha = make_expansion((0, 2, 0), b)
    # level 1: digit 2 maps to 0, digit 0 maps to 1: (0-1)/(2-0)
    got = difference_quotient(pv, alpha, 1, 0)
    assert got.quotient == Fraction(-1, 2)


def test_quotient_rejects_same_digit():
    b = make_base((2, 3, 5))
    pv = shift_vector(b)
    alpha = encode(Fraction(0), b, 3)
    with pytest.raises(DegenerateDigit):
        difference_quotient(pv, alpha, 0, 0)


def test_quotient_closed_equals_direct_spot():
    b = make_base((2, 3, 5, 7, 11))
    pv = parse_permutations(
        "2: 1,0\n3: 2,0,1\n5: 3,0,4,2,1\n7: 5,3,0,6,2,1,4\n"
        "11: 3,4,5,6,7,8,9,10,0,1,2",
        b,
    )
    alpha = make_expansion((1, 0, 3, 2, 6), b)
    for level in range(5):
        for ell in range(b.moduli[level]):
            if ell == alpha.digits[level]:
                continue
            got = difference_quotient(pv, alpha, level, ell)
            perturbed = alpha.replace_digit(level, ell)
            direct = Fraction(
                apply_map(pv, alpha).value - apply_map(pv, perturbed).value,
                alpha.value - perturbed.value,
            )
            assert got.quotient == direct


def test_derivative_probe_shift():
    b = make_base((3, 5, 7))
    pv = shift_vector(b)
    alpha = encode(Fraction(0), b, 3)
    report = derivative_probe(pv, alpha, 3)
    assert len(report.levels) == 3
    # every level has the adjacent pair achieving slope exactly 1
    assert report.one_at_every_level
    for lq in report.levels:
        assert Fraction(1) in lq.quotients
    assert report.candidates_stable
    assert report.candidates[0] == 1


def test_derivative_probe_modulus_two_level():
    # the Z_2 level blocks slope 1, so the all-level flag honestly drops
    b = make_base((2, 3, 5))
    pv = shift_vector(b)
    alpha = encode(Fraction(0), b, 3)
    report = derivative_probe(pv, alpha, 3)
    assert report.levels[0].quotients == (Fraction(-1),)
    assert not report.levels[0].achieves_one
    assert report.levels[1].achieves_one and report.levels[2].achieves_one
    assert not report.one_at_every_level
    assert report.candidates == (-1, 1, 1)
    assert not report.candidates_stable


def test_derivative_probe_identity():
    b = make_base((2, 3, 5))
    pv = identity_vector(b)
    alpha = encode(Fraction(0), b, 3)
    report = derivative_probe(pv, alpha, 3)
    # identity has every quotient equal to 1
    for lq in report.levels:
        assert lq.quotients == (Fraction(1),)
    assert report.one_at_every_level and report.candidates_stable


def test_derivative_probe_quotient_sets():
    b = make_base((2, 3, 5))
    pv = shift_vector(b)
    alpha = encode(Fraction(29, 30), b, 3)
    report = derivative_probe(pv, alpha, 3)
    top = report.levels[2]
    # digit 4 against 0..3: quotients (0-1)/4, (0-2)/3, (0-3)/2, (0-4)/1
    assert set(top.quotients) == {
        Fraction(-1, 4),
        Fraction(-2, 3),
        Fraction(-3, 2),
        Fraction(-4),
    }
    assert not top.achieves_one


@given(st.data())
@settings(max_examples=100)
def test_quotient_identity_property(data):
    # closed form always matches the direct two-point computation
    b = make_base((2, 3, 5, 7))
    pv = shift_vector(b)
    digits = tuple(
        data.draw(st.integers(min_value=0, max_value=m - 1)) for m in b.moduli
    )
    alpha = make_expansion(digits, b)
    level = data.draw(st.integers(min_value=0, max_value=3))
    choices = [x for x in range(b.moduli[level]) if x != digits[level]]
    ell = data.draw(st.sampled_from(choices))
    got = difference_quotient(pv, alpha, level, ell)
    perturbed = alpha.replace_digit(level, ell)
    direct = Fraction(
        apply_map(pv, alpha).value - apply_map(pv, perturbed).value,
        alpha.value - perturbed.value,
    )
    assert got.quotient == direct

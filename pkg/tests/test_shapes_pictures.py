import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rootgame.pictures import (count_pictures, enumerate_pictures, first_picture,
                               grassmann_intersection, grassmann_product, is_picture,
                               lr_coefficient, lr_tableaux, schur_product_expand)
from rootgame.shapes import (ShapeError, SkewShape, all_strings, complement_in_box, contains,
                             is_partition, shape_of_string, shift_shape, string_of_shape)


@pytest.mark.parametrize("word, shape", [
    ("0001111", (0, 0, 0)),
    ("1110000", (3, 3, 3, 3)),
    ("1010101", (1, 2, 3)),
    ("1001011", (1, 1, 2)),
])
def test_shape_of_string(word, shape):
    assert shape_of_string(word) == shape


def test_shift_and_complement():
    assert shift_shape((1, 1, 2), 3) == (4, 4, 5)
    assert shift_shape((0, 0, 0), 3) == (3, 3, 3)
    assert shift_shape((1, 2), 0) == (1, 2)
    with pytest.raises(ShapeError):
        shift_shape((1,), -1)
    # complement of lambda(0100111) in a 3 x 7 rectangle
    assert complement_in_box(shape_of_string("0100111"), 3, 7) == (6, 6, 7)


def test_containment_is_bottom_aligned():
    assert contains((6, 6, 7), (4, 4, 5))
    assert not contains((1, 2), (2, 2))
    assert contains((1, 2), (2,))


def test_bad_strings():
    for bad in ("", "012", "abc"):
        with pytest.raises(ShapeError):
            shape_of_string(bad)


@given(st.integers(1, 7).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))))
def test_string_shape_round_trip(nl):
    n, l = nl
    for word in all_strings(n, l):
        shape = shape_of_string(word)
        assert is_partition(shape) and len(shape) == n - l
        assert string_of_shape(shape, l) == word


def test_known_lr_coefficients():
    assert lr_coefficient((1,), (1,), (2,)) == 1
    assert lr_coefficient((1,), (1,), (1, 1)) == 1
    assert lr_coefficient((2, 1), (2, 1), (3, 2, 1)) == 2
    assert lr_coefficient((1, 2, 3), (4, 4, 5), (6, 6, 7)) == 1
    assert lr_coefficient((1,), (1,), (3,)) == 0


def test_lr_tableaux_are_semistandard():
    for t in lr_tableaux((2, 1), (2, 1), (3, 2, 1)):
        for (r, c), v in t.items():
            if (r, c + 1) in t:
                assert t[(r, c + 1)] >= v
            if (r + 1, c) in t:
                assert t[(r + 1, c)] > v


def test_worked_example_picture():
    pics = enumerate_pictures((1, 2, 3), SkewShape((6, 6, 7), (4, 4, 5)))
    assert len(pics) == 1
    assert is_picture(pics[0].mapping())
    assert sorted(pics[0].images) == sorted(SkewShape((6, 6, 7), (4, 4, 5)).boxes())


def test_is_picture_rejects_bad_bijections():
    # two boxes in a row must map to lexicographically ordered targets
    good = {(1, 1): (1, 2), (1, 2): (1, 1)}
    bad = {(1, 1): (1, 1), (1, 2): (1, 2)}
    assert is_picture(good)
    assert not is_picture(bad)
    assert not is_picture({(1, 1): (1, 1), (1, 2): (1, 1)})


def test_pictures_count_equals_lr_small():
    for lam in [(1,), (1, 1), (2,), (1, 2)]:
        for outer in [(2, 2), (1, 3), (3, 3), (2, 3)]:
            for inner in [(0, 0), (0, 1), (1, 1), (1, 2)]:
                if any(b > a for a, b in zip(outer, inner)):
                    continue
                assert count_pictures(lam, SkewShape(outer, inner)) == \
                    lr_coefficient(lam, inner, outer)


def test_first_picture_missing():
    assert first_picture((2,), SkewShape((1, 1), (0, 0))) is None


def test_schur_products():
    exp = schur_product_expand([(1,), (1,)])
    assert dict(exp) == {(2,): 1, (1, 1): 1}
    boxed = schur_product_expand([(1,), (1,)], (1, 2))
    assert dict(boxed) == {(2,): 1}


def test_grassmann_numbers():
    # two lines through a point in P^2 ... point class squared on P^1 is zero
    assert grassmann_intersection(["10"], "10", "01") == 0
    assert grassmann_intersection(["10"], "01", "01") == 1
    # four lines meeting four general lines: 2
    assert grassmann_intersection(["0101", "0101", "0101"], "0101", "0011") == 2
    assert grassmann_intersection(["1010101"], "1001011", "0100111") == 1
    assert bool(grassmann_product(["0101", "0101"]))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(all_strings(5, 2)), st.sampled_from(all_strings(5, 2)),
       st.sampled_from(all_strings(5, 2)))
def test_grassmann_number_is_symmetric(a, b, c):
    assert grassmann_intersection([a], b, c) == grassmann_intersection([b], c, a) \
        == grassmann_intersection([c], a, b)
    assert grassmann_intersection([a], b, c) >= 0

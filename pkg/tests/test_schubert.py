import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rootgame.game import perm_length
from rootgame.schubert import (OracleError, compose, divided_difference, expand_in_schubert_basis,
                               flag_intersection, flag_intersection_monk, flag_product_nonzero,
                               lehmer_code, monk_product, perm_from_code, poly_mul,
                               schubert_coefficient, schubert_polynomial,
                               schubert_polynomial_transition)


def test_small_schubert_polynomials():
    assert schubert_polynomial((2, 1, 3)) == {(1,): 1}
    assert schubert_polynomial((3, 2, 1)) == {(2, 1): 1}
    assert schubert_polynomial((1, 3, 2)) == {(1,): 1, (0, 1): 1}
    assert schubert_polynomial((1, 2, 3)) == {(): 1}


def test_x1_squared_is_a_single_schubert_polynomial():
    assert expand_in_schubert_basis({(2,): 1}) == {(3, 1, 2): 1}


def test_divided_difference_kills_symmetric():
    assert divided_difference({(1, 1): 1}, 1) == {}
    assert divided_difference({(1,): 1}, 1) == {(): 1}


@pytest.mark.parametrize("n", [3, 4, 5])
def test_two_polynomial_routes_agree(n):
    for w in itertools.permutations(range(1, n + 1)):
        assert schubert_polynomial(w) == schubert_polynomial_transition(w)


def test_lehmer_round_trip():
    for w in itertools.permutations(range(1, 6)):
        code = lehmer_code(w)
        back = perm_from_code(code)
        assert back + tuple(range(len(back) + 1, 6)) == tuple(w)


@pytest.mark.parametrize("n", [3, 4])
def test_monk_matches_polynomial_products(n):
    perms = list(itertools.permutations(range(1, n + 1)))
    for u, v in itertools.combinations_with_replacement(perms, 2):
        poly = poly_mul(schubert_polynomial_transition(u), schubert_polynomial_transition(v))
        assert expand_in_schubert_basis(poly) == monk_product([u, v])


def test_flag_intersection_examples():
    assert flag_intersection([(2, 1, 3), (2, 3, 1)]) == 1
    assert flag_intersection([(2, 1, 3), (2, 1, 3), (1, 3, 2)]) == 1
    assert flag_intersection_monk([(2, 1, 3), (2, 1, 3), (1, 3, 2)]) == 1
    assert flag_intersection([(2, 1), (1, 2)]) == 1
    assert flag_intersection([(2, 1, 3), (2, 1, 3), (2, 1, 3)]) == 0
    with pytest.raises(OracleError):
        flag_intersection([(1, 2, 3), (1, 2)])


def test_product_nonzero():
    assert flag_product_nonzero([(2, 1, 3)], 3)
    assert not flag_product_nonzero([(2, 1), (2, 1)], 2)


@settings(max_examples=25, deadline=None)
@given(st.permutations([1, 2, 3, 4]), st.permutations([1, 2, 3, 4]))
def test_coefficient_extraction_matches_expansion(u, v):
    poly = poly_mul(schubert_polynomial_transition(tuple(u)), schubert_polynomial_transition(tuple(v)))
    expansion = expand_in_schubert_basis(poly)
    for w, c in expansion.items():
        assert schubert_coefficient(poly, w) == c
        assert perm_length(w) == perm_length(u) + perm_length(v)


def test_duality_with_longest_element():
    w0 = (4, 3, 2, 1)
    for w in itertools.permutations(range(1, 5)):
        assert flag_intersection([tuple(w), compose(w0, tuple(w))]) == 1

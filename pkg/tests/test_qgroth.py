import itertools

import pytest
from hypothesis import given, settings, strategies as st

from qaffine.qgroth import (KtElement, bar, canonical_class, coef_str, evaluate_t1, leading_coefficient, product,
                            simple_character, standard_class, standard_in_canonical, star, twist_exponent)

g = KtElement.gen
T = lambda n: {2 * n: 1}  # t^n, keys are half-exponents

coefs = st.dictionaries(st.integers(-4, 4), st.integers(-3, 3), max_size=2)
words = st.lists(st.sampled_from([-2, 0, 2, 4]), max_size=3)
elements = st.lists(st.tuples(words, coefs), max_size=3).map(KtElement)


def test_deux_relations():
    assert star(g(0), g(2)) == star(g(2), g(0)).scale(T(-2)) + KtElement.scalar({0: 1, -4: -1})
    assert star(g(2), g(0)) == KtElement.word([0, 2], T(2)) + KtElement.scalar({0: 1, 4: -1})
    assert star(g(0), g(4)) == star(g(4), g(0)).scale(T(2))
    # odd gaps and gap 0 commute
    assert star(g(0), g(1)) == star(g(1), g(0))
    assert star(g(3), g(3)) == KtElement.word([3, 3])


def test_twist_exponent():
    assert [twist_exponent(d) for d in range(7)] == [0, 0, -2, 0, 2, 0, -2]


@settings(max_examples=100)
@given(elements, elements, elements)
def test_associativity(x, y, z):
    assert (x * y) * z == x * (y * z)


@settings(max_examples=100)
@given(elements, elements)
def test_bar_involution(x, y):
    assert bar(bar(x)) == x
    assert bar(x * y) == bar(y) * bar(x)
    assert bar(x + y) == bar(x) + bar(y)


def test_bar_generators():
    for r in range(-4, 5):
        assert bar(g(r)) == g(r)


def test_canonical_examples():
    assert canonical_class([0]) == g(0)
    assert canonical_class([0, 2]) == KtElement.word([0, 2], T(1)) - KtElement.scalar(T(1))
    assert canonical_class([0, 4]) == KtElement.word([0, 4], T(-1))
    assert canonical_class([]) == KtElement.scalar(1)


def multisets(size):
    return itertools.combinations_with_replacement(range(-6, 7, 2), size)


@pytest.mark.parametrize("size", [1, 2, 3])
def test_canonical_at_t1_is_simple(size):
    for S in multisets(size):
        L = canonical_class(S)
        assert bar(L) == L
        assert evaluate_t1(L) == simple_character(S)


@pytest.mark.parametrize("size", [2, 3])
def test_kl_positivity(size):
    for S in multisets(size):
        for sub, c in standard_in_canonical(S).items():
            assert len(sub) < size
            assert all(k < 0 and v > 0 for k, v in c.items())


def test_standard_leading_term():
    for S in multisets(3):
        (k, v), = leading_coefficient(S).items()
        assert v == 1
        M = standard_class(S)
        assert max(M.words(), key=len) == tuple(sorted(S))


def test_simple_dims():
    dims = {(0,): 2, (0, 2): 3, (0, 4): 4, (0, 0): 4, (0, 2, 4): 4}
    for S, d in dims.items():
        assert sum(c for _, c in simple_character(S).terms()) == d


def test_product_and_formatting():
    assert product([2, 0]) == star(g(2), g(0))
    assert coef_str({0: 1, -4: -1}) == "1 - t^{-2}"
    assert coef_str({1: 3}) == "3t^{1/2}"
    assert str(canonical_class([0, 2])) == "(-t) + (t) g0*g2"
    assert KtElement().is_zero()

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matchdial.words import (
    ORIENT_OUTER1_INNER2,
    ORIENT_OUTER2_INNER1,
    FreeMDA,
    Word,
    all_nested_words,
    concat_words,
    evaluate_hom,
    find_minimal_hom_violation,
    flatten_nested,
    free_product,
    graded_dimension,
    nested,
    nested_product,
    split_word,
    word,
)

from corpus import eps_algebra


def test_word_validation_and_printing():
    w = word([0, 1, 0], [1, 2])
    assert str(w) == "x1 *1 x2 *2 x1"
    with pytest.raises(ValueError):
        word([0, 1], [])  # missing label
    with pytest.raises(ValueError):
        word([], [])


def test_free_product_examples():
    free = FreeMDA(3, k=2)
    x, y, z = free.gen(0), free.gen(1), free.gen(2)
    xy = free_product(1, x, y)
    assert list(xy.terms) == [word([0, 1], [1])]
    w = free_product(2, xy, z)
    assert list(w.terms) == [word([0, 1, 2], [1, 2])]
    # both bracketings concatenate to the same basis word
    alt = free_product(1, x, free_product(2, y, z))
    assert w == alt


def test_free_product_rejects_mismatched_algebras():
    a, b = FreeMDA(2, 2), FreeMDA(2, 3)
    with pytest.raises(ValueError):
        free_product(1, a.gen(0), b.gen(0))
    with pytest.raises(ValueError):
        free_product(3, a.gen(0), a.gen(1))


def test_element_arithmetic_and_printing():
    free = FreeMDA(2)
    x, y = free.gen(0), free.gen(1)
    e = free_product(1, x, y) - free_product(2, y, x)
    assert str(e) == "1 · x1 *1 x2 + -1 · x2 *2 x1"
    assert (e - e).is_zero()
    assert str(free.zero()) == "0"
    assert 2 * x == free.element({word([0]): 2})


def test_products_satisfy_dialgebra_identities_on_words():
    # associativity and both mixed identities hold as identities of basis
    # words for all words up to length 6 over two letters
    free = FreeMDA(2)
    rng = random.Random(11)
    words = [w for n in range(1, 4) for w in free.words(n)]
    for _ in range(300):
        wu, wv, ww = (rng.choice(words) for _ in range(3))
        u = free.element({wu: 1})
        v = free.element({wv: 1})
        w_ = free.element({ww: 1})
        for a in (1, 2):
            for b in (1, 2):
                lhs = free_product(b, free_product(a, u, v), w_)
                rhs = free_product(a, u, free_product(b, v, w_))
                assert lhs == rhs


def test_graded_dimension_formula_matches_enumeration():
    assert graded_dimension(1, 1, 2) == 1
    assert graded_dimension(2, 3, 2) == 32
    assert graded_dimension(1, 4, 2) == 8
    for m, k in [(1, 2), (2, 2), (2, 3)]:
        free = FreeMDA(m, k)
        for n in range(1, 5):
            assert len(list(free.words(n))) == graded_dimension(m, n, k)


def test_flatten_examples():
    n = nested([[0], [1, 2]], ORIENT_OUTER1_INNER2)
    assert flatten_nested(n) == word([0, 1, 2], [1, 2])
    assert flatten_nested(nested([[0]], ORIENT_OUTER1_INNER2)) == word([0])
    n = nested([[0, 1], [2]], ORIENT_OUTER2_INNER1)
    assert flatten_nested(n) == word([0, 1, 2], [1, 2])


def test_split_examples():
    w = word([0, 1, 2], [2, 1])
    n = split_word(w, ORIENT_OUTER1_INNER2)
    assert n.blocks == ((0, 1), (2,))
    assert split_word(word([0]), ORIENT_OUTER1_INNER2).blocks == ((0,),)


def test_flatten_split_inverse_up_to_six_letters():
    free = FreeMDA(2)
    for orientation in (ORIENT_OUTER1_INNER2, ORIENT_OUTER2_INNER1):
        for n in range(1, 7):
            for w in free.words(n):
                assert flatten_nested(split_word(w, orientation)) == w
            for nw in all_nested_words(2, n, orientation):
                assert split_word(flatten_nested(nw), orientation) == nw


@settings(max_examples=60, deadline=None)
@given(st.randoms(use_true_random=False))
def test_flatten_is_product_preserving(rng):
    free = FreeMDA(2)
    for orientation in (ORIENT_OUTER1_INNER2, ORIENT_OUTER2_INNER1):
        words_pool = [w for n in range(1, 5) for w in free.words(n)]
        wu, wv = rng.choice(words_pool), rng.choice(words_pool)
        nu, nv = split_word(wu, orientation), split_word(wv, orientation)
        for label in (1, 2):
            lhs = flatten_nested(nested_product(label, nu, nv))
            rhs = concat_words(label, wu, wv)
            assert lhs == rhs


def test_evaluate_hom_examples():
    free = FreeMDA(1)
    target = eps_algebra()
    x = free.gen(0)
    one = (Fraction(1), Fraction(0))
    assert evaluate_hom({0: one}, target, x) == one
    # x *1 x evaluates to e1 *1 e1 = t (second basis vector)
    e = free_product(1, x, x)
    assert evaluate_hom({0: one}, target, e) == (Fraction(0), Fraction(1))


def test_evaluate_hom_is_multiplicative_randomized():
    rng = random.Random(5)
    free = FreeMDA(2)
    target = eps_algebra()
    products = target.product_list()
    assign = {0: (Fraction(1), Fraction(0)), 1: (Fraction(1), Fraction(2))}
    words_pool = [w for n in range(1, 4) for w in free.words(n)]
    for _ in range(100):
        wu, wv = rng.choice(words_pool), rng.choice(words_pool)
        u = free.element({wu: rng.randint(-2, 2) or 1})
        v = free.element({wv: rng.randint(-2, 2) or 1})
        label = rng.randint(1, 2)
        lhs = evaluate_hom(assign, target, free_product(label, u, v))
        rhs = products[label - 1].apply(
            evaluate_hom(assign, target, u), evaluate_hom(assign, target, v)
        )
        assert lhs == rhs


def test_evaluate_hom_rejects_non_dialgebra_target():
    from matchdial.algebras import BilinearProduct, FiniteAlgebra

    free = FreeMDA(1)
    p1 = BilinearProduct.from_table(2, {(0, 0): {1: 1}})
    bad = BilinearProduct.from_table(2, {(0, 1): {0: 1}})  # not associative
    target = FiniteAlgebra(2, [("p1", p1), ("p2", bad)])
    with pytest.raises(ValueError, match="dialgebra axioms"):
        evaluate_hom({0: (1, 0)}, target, free.gen(0))


def test_extension_uniqueness_minimal_counterexample():
    free = FreeMDA(2)
    target = eps_algebra()
    products = target.product_list()
    assign = {0: (Fraction(1), Fraction(0)), 1: (Fraction(0), Fraction(1))}

    def canonical(w):
        return evaluate_hom(assign, target, free.element({w: 1}))

    assert find_minimal_hom_violation(canonical, products, free, 4) is None

    # tamper with the canonical extension on one length-3 word: the finder
    # must report a violation no later than that word's length
    bad_word = word([0, 1, 0], [1, 2])

    def tampered(w):
        v = canonical(w)
        if w == bad_word:
            return tuple(x + 1 for x in v)
        return v

    hit = find_minimal_hom_violation(tampered, products, free, 4)
    assert hit is not None
    assert len(hit) <= len(bad_word)

import random
from fractions import Fraction

import pytest

from matchdial.algebras import BilinearProduct, FiniteAlgebra, is_matching_dialgebra
from matchdial.homology import (
    ChainComplexData,
    KoszulBasisElement,
    build_complex_finite,
    build_complex_free,
    differential,
    free_homology_report,
    homology_ranks,
    verify_d_squared,
)
from matchdial.operad import CombSequence
from matchdial.words import FreeMDA, word

import corpus
from corpus import brute_first_failed_axiom, eps_algebra


def kbe(labels, args):
    return KoszulBasisElement(CombSequence(len(labels) + 1, tuple(labels)), tuple(args))


def test_differential_single_contraction():
    alg = eps_algebra()
    # d((1) (x) (e0, e0)) = e0 *1 e0 = e1, one summand with sign +1
    out = differential(kbe([1], [0, 0]), alg)
    assert out == {kbe([], [1]): Fraction(1)}


def test_differential_two_summands_and_square_zero():
    alg = eps_algebra()
    el = kbe([1, 2], [0, 0, 0])
    out = differential(el, alg)
    # delete label 1: (2) (x) (e0 *1 e0, e0) = (2) (x) (e1, e0), sign +
    # delete label 2: (1) (x) (e0, e0 *2 e0) = (1) (x) (e0, e0), sign -
    assert out == {kbe([2], [1, 0]): Fraction(1), kbe([1], [0, 0]): Fraction(-1)}
    # applying d again cancels through the mixed associativity axiom
    total = {}
    for mid, c in out.items():
        for low, c2 in differential(mid, alg).items():
            total[low] = total.get(low, Fraction(0)) + c * c2
    assert all(v == 0 for v in total.values())


def test_differential_rejects_non_dialgebra():
    p1 = BilinearProduct.from_table(2, {(0, 0): {1: 1}})
    bad = BilinearProduct.from_table(2, {(0, 1): {0: 1}})
    alg = FiniteAlgebra(2, [("p1", p1), ("p2", bad)])
    with pytest.raises(ValueError, match="matching dialgebra"):
        differential(kbe([1], [0, 0]), alg)
    assert differential(kbe([1], [0, 0]), alg, unchecked=True) is not None


def test_build_complex_finite_dimensions():
    one = BilinearProduct.from_table(1, {(0, 0): {0: 1}})
    alg = FiniteAlgebra(1, [("p1", one), ("p2", one)])
    assert build_complex_finite(alg, 3).dims() == [1, 2, 4, 8]
    c = build_complex_finite(eps_algebra(), 2)
    assert c.dims() == [2, 8, 32]
    assert c.certified and verify_d_squared(c).ok


def test_build_complex_finite_rejects_non_mda():
    p1 = BilinearProduct.from_table(2, {(0, 0): {1: 1}})
    bad = BilinearProduct.from_table(2, {(0, 1): {0: 1}})
    alg = FiniteAlgebra(2, [("p1", p1), ("p2", bad)])
    with pytest.raises(ValueError, match="matching dialgebra"):
        build_complex_finite(alg, 2)


def test_unchecked_mode_exposes_failed_axiom():
    rng = random.Random(42)
    found = 0
    while found < 10:
        p1, p2 = corpus.random_two_product(rng, 2)
        if is_matching_dialgebra(p1, p2).ok:
            continue
        found += 1
        alg = FiniteAlgebra(2, [("p1", p1), ("p2", p2)])
        cplx = build_complex_finite(alg, 2, unchecked=True)
        res = verify_d_squared(cplx)
        assert not res.ok and res.degree == 2
        # the witness matches the first failed axiom found by independent
        # brute-force expansion of (x *a y) *b z - x *a (y *b z)
        (a, b), triple, residual = brute_first_failed_axiom(p1.c, p2.c)
        assert res.element.comb.labels == (a, b)
        assert res.element.args == triple
        got = {e.args[0]: v for e, v in res.residual}
        expected = {l: v for l, v in enumerate(residual) if v}
        assert got == expected


def test_homology_ranks_requires_square_zero():
    rng = random.Random(3)
    while True:
        p1, p2 = corpus.random_two_product(rng, 2)
        if not is_matching_dialgebra(p1, p2).ok:
            break
    alg = FiniteAlgebra(2, [("p1", p1), ("p2", p2)])
    cplx = build_complex_finite(alg, 2, unchecked=True)
    with pytest.raises(ValueError, match="square"):
        homology_ranks(cplx)


def test_free_complex_small_examples():
    c = build_complex_free(1, 1)
    assert c.dims() == [1]
    assert homology_ranks(c) == [1]

    c = build_complex_free(1, 2)
    assert c.dims() == [2, 2]
    # C0 = {x *1 x, x *2 x}, C1 = {(1) (x) (x,x), (2) (x) (x,x)}, d bijective
    assert c.differentials[1].rank() == 2
    assert homology_ranks(c) == [0, 0]

    c = build_complex_free(1, 3)
    assert c.dims() == [4, 8, 4]
    assert sum((-1) ** n * d for n, d in enumerate(c.dims())) == 0
    assert homology_ranks(c) == [0, 0, 0]


def test_free_complex_differential_preserves_weight_and_degree():
    c = build_complex_free(2, 4)
    for n in range(1, c.top_degree + 1):
        m = c.differentials[n]
        assert m.rows == len(c.degrees[n - 1])
        assert m.cols == len(c.degrees[n])
        for j, col in enumerate(m.columns):
            w_col = sum(len(a) for a in c.degrees[n][j].args)
            for r, _ in col:
                assert sum(len(a) for a in c.degrees[n - 1][r].args) == w_col


def test_free_homology_acyclic_up_to_weight_five():
    for m in (1, 2):
        for w in range(1, 6):
            ranks = homology_ranks(build_complex_free(m, w))
            expected = [m] if w == 1 else [0] * w
            assert ranks == expected


def test_free_homology_report_records():
    recs = free_homology_report(2, 3)
    assert {(r["weight"], r["degree"]) for r in recs} == {
        (1, 0), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2)
    }
    first = [r for r in recs if r["weight"] == 1][0]
    assert first["homology"] == 2 and first["dim"] == 2


def test_label_swap_is_a_conjugation_not_a_break():
    # remapping the applied product by the label swap conjugates the
    # differential by the comb relabelling, so the squares stay zero and
    # the homology is unchanged; this probe documents that freedom.
    swap = {1: 2, 2: 1}.get
    for w in (2, 3):
        c = build_complex_free(1, w, product_for_label=swap)
        assert verify_d_squared(c).ok
        assert homology_ranks(c) == [0] * w


def test_constant_label_assignment_breaks_acyclicity():
    # collapsing both comb labels onto the first product still squares to
    # zero (it is a one-product bar-type differential) but the homology is
    # wrong already in weight 2: both degree-1 elements hit x *1 x, so the
    # second word survives in degree 0.  This pins down the delete-label
    # rule: the applied product must carry the deleted label.
    c = build_complex_free(1, 2, product_for_label=lambda label: 1)
    assert verify_d_squared(c).ok
    assert c.dims() == [2, 2]
    assert homology_ranks(c) != [0, 0]
    assert homology_ranks(c)[0] == 1


def test_random_mda_complexes_certify_through_degree_four():
    rng = random.Random(17)
    for _ in range(6):
        alg = corpus.random_mda(rng, rng.choice([2, 3]))
        c = build_complex_finite(alg, 4)
        assert c.certified
        dims = c.dims()
        assert dims == [2**n * alg.dim ** (n + 1) for n in range(5)]


def test_truncated_complex_reports_one_fewer_homology_degree():
    c = build_complex_finite(eps_algebra(), 3)
    ranks = homology_ranks(c)
    assert len(ranks) == 3  # degrees 0..2; degree 3 needs the next differential
    cf = build_complex_free(1, 3)
    assert len(homology_ranks(cf)) == 3  # complete: all stored degrees

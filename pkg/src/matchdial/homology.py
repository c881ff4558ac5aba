"""The Koszul chain complex of a two-product algebra, and its homology.

Degree n-1 is spanned by a comb sequence of arity n (the dual cooperad
basis) tensored with an n-tuple of algebra elements.  The differential
deletes one comb label at a time, with alternating signs, and contracts
the two adjacent tensor slots by the product carrying the deleted label:

    d(comb (l1..l_{n-1}) (x) (a1,...,an))
      = sum_i (-1)^(i+1) (comb minus l_i) (x) (a1,..., a_i *l_i a_{i+1}, ..., an)

Squaring to zero on all inputs is exactly the dialgebra axiom family
(x *a y) *b z = x *a (y *b z); a failed axiom shows up as a nonzero
composite entry at degree 2, which is what the unchecked mode exposes.
On the free algebra the differential preserves total letter count, so
each weight component is a finite complex whose exact homology ranks are
computable; weight 1 contributes the alphabet in degree 0 and everything
else vanishes, witnessing Koszulity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from math import gcd

from .algebras import FiniteAlgebra, is_matching_dialgebra
from .linalg import SparseMatrix
from .operad import CombSequence
from .words import FreeMDA, Word, concat_words


@dataclass(frozen=True)
class KoszulBasisElement:
    """comb (x) args: a cooperad basis element with an argument tuple.

    Arguments are basis indices for a finite algebra or words of the free
    algebra; their count equals the comb's arity.
    """

    comb: CombSequence
    args: tuple

    def __post_init__(self):
        if len(self.args) != self.comb.arity:
            raise ValueError("argument count must match the comb arity")

    def __str__(self):
        parts = []
        for a in self.args:
            parts.append(str(a) if isinstance(a, Word) else f"e{a + 1}")
        return f"{self.comb} (x) ({', '.join(parts)})"


@dataclass(frozen=True)
class ChainComplexData:
    """Graded bases plus differentials d_n: degree n -> degree n-1.

    differentials[0] is None; differentials[n] is a SparseMatrix whose
    columns follow degrees[n] and rows follow degrees[n-1].  ``complete``
    marks complexes that vanish beyond the stored top degree (the free
    weight components), so the top homology is meaningful; ``certified``
    records that the zero-composite property was checked at build time.
    """

    degrees: tuple
    differentials: tuple
    complete: bool
    certified: bool

    def dims(self):
        return [len(basis) for basis in self.degrees]

    @property
    def top_degree(self) -> int:
        return len(self.degrees) - 1


@dataclass(frozen=True)
class D2Result:
    ok: bool
    degree: int | None = None
    element: KoszulBasisElement | None = None
    residual: tuple | None = None  # ((KoszulBasisElement, Fraction), ...)

    def __bool__(self):
        return self.ok


def _lcm(a, b):
    return a // gcd(a, b) * b


def _int_columns(sm: SparseMatrix):
    """Columns scaled by the common denominator; zero-composite invariant."""
    scale = 1
    for col in sm.columns:
        for _, x in col:
            scale = _lcm(scale, Fraction(x).denominator)
    cols = []
    for col in sm.columns:
        cols.append(
            tuple((r, x.numerator * (scale // x.denominator)) for r, x in col)
        )
    return cols


def _first_nonzero_composite(lower: SparseMatrix, upper: SparseMatrix):
    """First column j with (lower @ upper) column j nonzero, using exact
    integer arithmetic after clearing denominators."""
    low = _int_columns(lower)
    up = _int_columns(upper)
    for j, col in enumerate(up):
        acc = {}
        for r, x in col:
            for rr, y in low[r]:
                acc[rr] = acc.get(rr, 0) + y * x
        if any(acc.values()):
            return j
    return None


def verify_d_squared(cplx: ChainComplexData) -> D2Result:
    """Exact check that consecutive differentials compose to zero.

    On failure the witness element and the nonzero composite chain are
    returned with true (unscaled) rational coefficients.
    """
    for n in range(2, cplx.top_degree + 1):
        lower, upper = cplx.differentials[n - 1], cplx.differentials[n]
        j = _first_nonzero_composite(lower, upper)
        if j is None:
            continue
        acc = {}
        for r, x in upper.columns[j]:
            for rr, y in lower.columns[r]:
                acc[rr] = acc.get(rr, Fraction(0)) + Fraction(y) * Fraction(x)
        residual = tuple(
            (cplx.degrees[n - 2][rr], v) for rr, v in sorted(acc.items()) if v
        )
        return D2Result(False, n, cplx.degrees[n][j], residual)
    return D2Result(True)


def homology_ranks(cplx: ChainComplexData):
    """H_n = dim ker d_n - rank d_{n+1}, exactly, per computable degree.

    For complete complexes every degree is computable (the differential
    from above the top is zero); truncated complexes stop one short.
    """
    chk = verify_d_squared(cplx)
    if not chk.ok:
        raise ValueError(
            f"differentials do not square to zero (degree {chk.degree}, "
            f"element {chk.element})"
        )
    dims = cplx.dims()
    ranks = [0] + [cplx.differentials[n].rank() for n in range(1, len(dims))]
    top = len(dims) - 1
    out = []
    upto = top if cplx.complete else top - 1
    for n in range(0, upto + 1):
        rank_next = ranks[n + 1] if n + 1 <= top else 0
        out.append(dims[n] - ranks[n] - rank_next)
    return out


# ---- the differential on single basis elements ----


def _expansions(algebra: FiniteAlgebra):
    """exp[label][a][b] = nonzero terms of e_a *label e_b."""
    p1, p2 = algebra.product(0), algebra.product(1)
    d = algebra.dim
    exp = {}
    for label, p in ((1, p1), (2, p2)):
        exp[label] = [
            [
                tuple((l, c) for l, c in enumerate(p.c[a][b]) if c)
                for b in range(d)
            ]
            for a in range(d)
        ]
    return exp


def differential(el: KoszulBasisElement, algebra, unchecked: bool = False):
    """The boundary of one basis element, as {KoszulBasisElement: coeff}.

    ``algebra`` is a two-product FiniteAlgebra (validated against the
    dialgebra axioms unless unchecked) with integer basis indices as
    arguments, or a FreeMDA with words as arguments.
    """
    labels, args = el.comb.labels, el.args
    out = {}
    if isinstance(algebra, FreeMDA):
        for i, label in enumerate(labels):
            sign = 1 if i % 2 == 0 else -1
            merged = concat_words(label, args[i], args[i + 1])
            key = KoszulBasisElement(
                CombSequence(el.comb.arity - 1, labels[:i] + labels[i + 1 :]),
                args[:i] + (merged,) + args[i + 2 :],
            )
            out[key] = out.get(key, Fraction(0)) + sign
    else:
        if not unchecked:
            rep = is_matching_dialgebra(algebra.product(0), algebra.product(1))
            if not rep.ok:
                raise ValueError(f"not a matching dialgebra: {rep.failed()[0].line()}")
        exp = _expansions(algebra)
        for i, label in enumerate(labels):
            sign = 1 if i % 2 == 0 else -1
            for l, coeff in exp[label][args[i]][args[i + 1]]:
                key = KoszulBasisElement(
                    CombSequence(el.comb.arity - 1, labels[:i] + labels[i + 1 :]),
                    args[:i] + (l,) + args[i + 2 :],
                )
                out[key] = out.get(key, Fraction(0)) + sign * coeff
    return {k: v for k, v in out.items() if v}


# ---- complex builders ----


def _assemble(degree_keys, column_maker):
    """Shared assembly: keys per degree -> bases, index maps, differentials."""
    indexes = []
    for keys in degree_keys:
        indexes.append({key: i for i, key in enumerate(keys)})
    diffs = [None]
    for n in range(1, len(degree_keys)):
        rows = len(degree_keys[n - 1])
        cols = []
        lower_index = indexes[n - 1]
        for key in degree_keys[n]:
            acc = {}
            for row_key, coeff in column_maker(n, key):
                row = lower_index[row_key]
                acc[row] = acc.get(row, 0) + coeff
            cols.append(tuple(sorted((r, c) for r, c in acc.items() if c)))
        diffs.append(SparseMatrix(rows, len(degree_keys[n]), cols))
    return diffs


def build_complex_finite(
    algebra: FiniteAlgebra, max_degree: int, unchecked: bool = False
) -> ChainComplexData:
    """Degrees 0..max_degree of the complex of a finite two-product algebra.

    Degree n has dimension 2^n * dim^(n+1).  The dialgebra axioms are a
    precondition and the zero-composite property is certified, unless
    ``unchecked`` is set, which deliberately skips both so that a failed
    axiom can be observed as a nonzero composite.
    """
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    if len(algebra.products) < 2:
        raise ValueError("need two products")
    if not unchecked:
        rep = is_matching_dialgebra(algebra.product(0), algebra.product(1))
        if not rep.ok:
            raise ValueError(f"not a matching dialgebra: {rep.failed()[0].line()}")
    d = algebra.dim
    exp = _expansions(algebra)

    degree_keys = []
    for n in range(max_degree + 1):
        keys = [
            (labels, args)
            for labels in iproduct((1, 2), repeat=n)
            for args in iproduct(range(d), repeat=n + 1)
        ]
        degree_keys.append(keys)

    def column_maker(n, key):
        labels, args = key
        for i, label in enumerate(labels):
            sign = 1 if i % 2 == 0 else -1
            for l, coeff in exp[label][args[i]][args[i + 1]]:
                yield (labels[:i] + labels[i + 1 :], args[:i] + (l,) + args[i + 2 :]), sign * coeff

    diffs = _assemble(degree_keys, column_maker)
    degrees = tuple(
        tuple(
            KoszulBasisElement(CombSequence(len(labels) + 1, labels), args)
            for labels, args in keys
        )
        for keys in degree_keys
    )
    cplx = ChainComplexData(degrees, tuple(diffs), complete=False, certified=False)
    if unchecked:
        return cplx
    chk = verify_d_squared(cplx)
    if not chk.ok:
        raise AssertionError(
            f"internal consistency failure: d^2 != 0 at degree {chk.degree} "
            f"on {chk.element} despite the axioms holding"
        )
    return ChainComplexData(degrees, tuple(diffs), complete=False, certified=True)


def build_complex_free(
    alphabet_size: int, weight: int, product_for_label=None
) -> ChainComplexData:
    """The weight component of the free-algebra complex, all degrees.

    Degree n-1 is spanned by arity-n combs tensored with n-tuples of words
    whose letter counts sum to the weight; the differential preserves that
    count, so the component is finite and complete.  ``product_for_label``
    optionally remaps which concatenation label the deleted comb label
    applies (identity by default); it exists to let tests probe wrong
    decompositions.
    """
    if alphabet_size < 1 or weight < 1:
        raise ValueError("alphabet size and weight must be >= 1")
    free = FreeMDA(alphabet_size, 2)
    act = product_for_label or (lambda label: label)

    words_by_length = {
        length: list(free.words(length)) for length in range(1, weight + 1)
    }

    def compositions(total, parts):
        if parts == 1:
            yield (total,)
            return
        for first in range(1, total - parts + 2):
            for rest in compositions(total - first, parts - 1):
                yield (first,) + rest

    degree_keys = []
    for n in range(1, weight + 1):
        keys = []
        for labels in iproduct((1, 2), repeat=n - 1):
            for comp in compositions(weight, n):
                for ws in iproduct(*(words_by_length[c] for c in comp)):
                    keys.append((labels, ws))
        degree_keys.append(keys)

    def column_maker(n, key):
        labels, args = key
        for i, label in enumerate(labels):
            sign = 1 if i % 2 == 0 else -1
            merged = concat_words(act(label), args[i], args[i + 1])
            yield (labels[:i] + labels[i + 1 :], args[:i] + (merged,) + args[i + 2 :]), sign

    diffs = _assemble(degree_keys, column_maker)
    degrees = tuple(
        tuple(
            KoszulBasisElement(CombSequence(len(labels) + 1, labels), args)
            for labels, args in keys
        )
        for keys in degree_keys
    )
    cplx = ChainComplexData(degrees, tuple(diffs), complete=True, certified=False)
    chk = verify_d_squared(cplx)
    certified = chk.ok
    return ChainComplexData(degrees, tuple(diffs), complete=True, certified=certified)


def free_homology_report(alphabet_size: int, max_weight: int):
    """One record per (weight, degree): dims, differential ranks, homology."""
    records = []
    for w in range(1, max_weight + 1):
        cplx = build_complex_free(alphabet_size, w)
        ranks = homology_ranks(cplx)
        dims = cplx.dims()
        d_ranks = [0] + [cplx.differentials[n].rank() for n in range(1, len(dims))]
        for n, h in enumerate(ranks):
            records.append(
                {
                    "weight": w,
                    "degree": n,
                    "dim": dims[n],
                    "rank_d": d_ranks[n],
                    "rank_d_next": d_ranks[n + 1] if n + 1 < len(d_ranks) else 0,
                    "homology": h,
                }
            )
    return records

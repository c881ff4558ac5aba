"""Free matching dialgebras on a finite alphabet.

Basis words are alternating letter/label sequences x1 *i1 x2 *i2 ... xn;
the two (in general k) products concatenate words and splice the product's
label between them, so every product identity of the free object holds on
basis words, not just on linear combinations.  The nested-word model
realizes the same object as words of words (tensor algebra of a tensor
algebra), related by an explicit flatten/split bijection.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from .algebras import FiniteAlgebra, is_matching_family
from .linalg import rat_str


@dataclass(frozen=True)
class Word:
    """A basis word: letter indices plus the labels between them."""

    letters: tuple
    ops: tuple

    def __post_init__(self):
        if len(self.letters) == 0:
            raise ValueError("words are nonempty")
        if len(self.ops) != len(self.letters) - 1:
            raise ValueError("need exactly one label between consecutive letters")

    def __len__(self):
        return len(self.letters)

    def key(self):
        """Canonical comparison key: (length, letters, labels)."""
        return (len(self.letters), self.letters, self.ops)

    def __str__(self):
        parts = [f"x{self.letters[0] + 1}"]
        for op, letter in zip(self.ops, self.letters[1:]):
            parts.append(f"*{op}")
            parts.append(f"x{letter + 1}")
        return " ".join(parts)


def word(letters, ops=()) -> Word:
    return Word(tuple(letters), tuple(ops))


def concat_words(label: int, u: Word, v: Word) -> Word:
    return Word(u.letters + v.letters, u.ops + (label,) + v.ops)


class FreeMDA:
    """The free object on an alphabet of the given size, with k products."""

    def __init__(self, alphabet_size: int, k: int = 2):
        if alphabet_size < 1:
            raise ValueError("alphabet must be nonempty")
        if k < 1:
            raise ValueError("need at least one product label")
        self.alphabet_size = alphabet_size
        self.k = k

    def __eq__(self, other):
        return (
            isinstance(other, FreeMDA)
            and self.alphabet_size == other.alphabet_size
            and self.k == other.k
        )

    def __hash__(self):
        return hash((self.alphabet_size, self.k))

    def __repr__(self):
        return f"FreeMDA(alphabet_size={self.alphabet_size}, k={self.k})"

    def check_word(self, w: Word) -> Word:
        if any(not (0 <= x < self.alphabet_size) for x in w.letters):
            raise ValueError(f"letter out of alphabet in {w}")
        if any(not (1 <= op <= self.k) for op in w.ops):
            raise ValueError(f"label out of range in {w}")
        return w

    def gen(self, i: int) -> "FreeElement":
        return self.element({word([i]): 1})

    def element(self, terms) -> "FreeElement":
        clean = {}
        for w, coeff in terms.items():
            self.check_word(w)
            coeff = Fraction(coeff)
            if coeff:
                clean[w] = clean.get(w, Fraction(0)) + coeff
        clean = {w: c for w, c in clean.items() if c}
        return FreeElement(self, clean)

    def zero(self) -> "FreeElement":
        return FreeElement(self, {})

    def product(self, label: int, u: "FreeElement", v: "FreeElement") -> "FreeElement":
        """Bilinear extension of labelled concatenation of basis words."""
        if not (1 <= label <= self.k):
            raise ValueError(f"label {label} out of range 1..{self.k}")
        if u.algebra != self or v.algebra != self:
            raise ValueError("elements live in different free algebras")
        terms = {}
        for wu, cu in u.terms.items():
            for wv, cv in v.terms.items():
                w = concat_words(label, wu, wv)
                acc = terms.get(w, Fraction(0)) + cu * cv
                if acc:
                    terms[w] = acc
                else:
                    terms.pop(w, None)
        return FreeElement(self, terms)

    def words(self, length: int):
        """All basis words of the given length, in canonical order."""
        for letters in iproduct(range(self.alphabet_size), repeat=length):
            for ops in iproduct(range(1, self.k + 1), repeat=length - 1):
                yield Word(letters, ops)

    def graded_dimension(self, length: int) -> int:
        return graded_dimension(self.alphabet_size, length, self.k)


class FreeElement:
    """A finite linear combination of basis words (no zero coefficients)."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: FreeMDA, terms: dict):
        self.algebra = algebra
        self.terms = dict(terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].key())

    def __eq__(self, other):
        return (
            isinstance(other, FreeElement)
            and self.algebra == other.algebra
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.algebra, tuple(self.sorted_terms())))

    def __add__(self, other):
        if self.algebra != other.algebra:
            raise ValueError("elements live in different free algebras")
        terms = dict(self.terms)
        for w, c in other.terms.items():
            acc = terms.get(w, Fraction(0)) + c
            if acc:
                terms[w] = acc
            else:
                terms.pop(w, None)
        return FreeElement(self.algebra, terms)

    def __neg__(self):
        return FreeElement(self.algebra, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, scalar):
        scalar = Fraction(scalar)
        if not scalar:
            return FreeElement(self.algebra, {})
        return FreeElement(self.algebra, {w: scalar * c for w, c in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{rat_str(c)} · {w}" for w, c in self.sorted_terms())

    def __repr__(self):
        return f"FreeElement({self})"


def free_product(label: int, u: FreeElement, v: FreeElement) -> FreeElement:
    return u.algebra.product(label, u, v)


def graded_dimension(alphabet_size: int, length: int, k: int = 2) -> int:
    """Number of basis words: alphabet^length * k^(length - 1)."""
    if alphabet_size < 1 or length < 1:
        raise ValueError("alphabet size and length must be >= 1")
    return alphabet_size**length * k ** (length - 1)


# ---- the nested (tensor-algebra) model ----

ORIENT_OUTER1_INNER2 = "outer-1-inner-2"
ORIENT_OUTER2_INNER1 = "outer-2-inner-1"
_ORIENTATIONS = (ORIENT_OUTER1_INNER2, ORIENT_OUTER2_INNER1)


@dataclass(frozen=True)
class NestedWord:
    """A word of words: nonempty blocks of letters plus an orientation.

    Orientation fixes which label sits between blocks (outer) and which
    sits inside blocks (inner); both choices model the same free object.
    """

    blocks: tuple
    orientation: str

    def __post_init__(self):
        if not self.blocks or any(len(b) == 0 for b in self.blocks):
            raise ValueError("blocks must be nonempty")
        if self.orientation not in _ORIENTATIONS:
            raise ValueError(f"unknown orientation {self.orientation!r}")

    @property
    def outer_label(self) -> int:
        return 1 if self.orientation == ORIENT_OUTER1_INNER2 else 2

    @property
    def inner_label(self) -> int:
        return 3 - self.outer_label

    def letter_count(self) -> int:
        return sum(len(b) for b in self.blocks)


def nested(blocks, orientation=ORIENT_OUTER1_INNER2) -> NestedWord:
    return NestedWord(tuple(tuple(b) for b in blocks), orientation)


def flatten_nested(n: NestedWord) -> Word:
    """Concatenate blocks into one word: inner label inside blocks, outer
    label at block boundaries."""
    letters = []
    ops = []
    for idx, block in enumerate(n.blocks):
        if idx:
            ops.append(n.outer_label)
        letters.extend(block)
        ops.extend([n.inner_label] * (len(block) - 1))
    return Word(tuple(letters), tuple(ops))


def split_word(w: Word, orientation: str) -> NestedWord:
    """Cut a word at every outer label into maximal inner-label blocks."""
    outer = 1 if orientation == ORIENT_OUTER1_INNER2 else 2
    blocks = []
    current = [w.letters[0]]
    for op, letter in zip(w.ops, w.letters[1:]):
        if op == outer:
            blocks.append(tuple(current))
            current = [letter]
        else:
            current.append(letter)
    blocks.append(tuple(current))
    return NestedWord(tuple(blocks), orientation)


def nested_product(label: int, u: NestedWord, v: NestedWord) -> NestedWord:
    """The two products of the nested model.

    The outer label concatenates block lists; the inner label merges the
    boundary blocks (last of u with first of v).
    """
    if u.orientation != v.orientation:
        raise ValueError("orientation mismatch")
    if label == u.outer_label:
        return NestedWord(u.blocks + v.blocks, u.orientation)
    if label == u.inner_label:
        merged = u.blocks[-1] + v.blocks[0]
        return NestedWord(u.blocks[:-1] + (merged,) + v.blocks[1:], u.orientation)
    raise ValueError(f"label {label} not valid for a two-product nested model")


def all_nested_words(alphabet_size: int, letter_count: int, orientation: str):
    """All nested words with the given total number of letters."""
    free = FreeMDA(alphabet_size, 2)
    for w in free.words(letter_count):
        yield split_word(w, orientation)


# ---- evaluation into a finite-dimensional target ----


def evaluate_hom(assignment: dict, target: FiniteAlgebra, element: FreeElement):
    """The unique product-preserving extension of a letter assignment.

    ``assignment`` sends letter indices to coefficient vectors of the
    target; the target's first k products must satisfy the matching
    family identities (associativity plus all mixed associativity), which
    is exactly what makes the word evaluation independent of bracketing.
    """
    k = element.algebra.k
    if len(target.products) < k:
        raise ValueError(f"target must carry {k} products")
    products = target.product_list()[:k]
    family = is_matching_family(products)
    if not family.ok:
        bad = family.failed()[0]
        raise ValueError(f"target fails the dialgebra axioms: {bad.line()}")
    out = tuple(Fraction(0) for _ in range(target.dim))
    for w, coeff in element.terms.items():
        val = _assigned(assignment, w.letters[0], target.dim)
        for op, letter in zip(w.ops, w.letters[1:]):
            val = products[op - 1].apply(val, _assigned(assignment, letter, target.dim))
        out = tuple(o + coeff * v for o, v in zip(out, val))
    return out


def _assigned(assignment, letter, dim):
    try:
        vec = assignment[letter]
    except KeyError:
        raise ValueError(f"no assignment for letter x{letter + 1}") from None
    vec = tuple(Fraction(x) for x in vec)
    if len(vec) != dim:
        raise ValueError("assigned vector has wrong dimension")
    return vec


def find_minimal_hom_violation(ext, products, free: FreeMDA, max_length: int):
    """First word (in canonical order) where ``ext`` is not multiplicative.

    ``ext`` maps Word -> coefficient vector and ``products`` are the
    target's bilinear products.  A product-preserving extension is pinned
    down by its values on single letters, so any map agreeing with the
    canonical extension on letters but differing somewhere must fail
    ``ext(u *op x) == ext(u) *op ext(x)`` at its minimal differing word;
    the scan below reports exactly that word (or None).
    """
    for length in range(2, max_length + 1):
        for w in sorted(free.words(length), key=Word.key):
            u = Word(w.letters[:-1], w.ops[:-1])
            x = Word(w.letters[-1:], ())
            op = w.ops[-1]
            expected = products[op - 1].apply(tuple(ext(u)), tuple(ext(x)))
            if tuple(ext(w)) != tuple(expected):
                return w
    return None

"""Nonsymmetric operads on two to k binary generators, by rewriting.

Tree monomials are planar binary trees with labelled internal vertices;
``t = mu_i o1 mu_j`` grafts mu_j into the first input of mu_i, so the
left-nested tree computes (x *j y) *i z and the right-nested tree computes
x *i (y *j z).  A presentation orients each quadratic relation lhs -> rhs;
certifying termination (a path-lexicographic tree order) plus confluence
of every critical monomial yields unique normal forms, a PBW basis of
right combs, and a Koszulity certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct

from .linalg import Matrix


@dataclass(frozen=True)
class _Leaf:
    def __repr__(self):
        return "leaf"


LEAF = _Leaf()


@dataclass(frozen=True)
class Node:
    """Internal vertex: generator label plus two subtrees."""

    label: int
    left: object
    right: object


def is_leaf(t) -> bool:
    return isinstance(t, _Leaf)


def arity(t) -> int:
    if is_leaf(t):
        return 1
    return arity(t.left) + arity(t.right)


def weight(t) -> int:
    """Number of internal vertices."""
    if is_leaf(t):
        return 0
    return 1 + weight(t.left) + weight(t.right)


def left_nested(outer: int, inner: int) -> Node:
    """The tree of (x *inner y) *outer z."""
    return Node(outer, Node(inner, LEAF, LEAF), LEAF)


def right_nested(outer: int, inner: int) -> Node:
    """The tree of x *outer (y *inner z)."""
    return Node(outer, LEAF, Node(inner, LEAF, LEAF))


def right_comb(labels) -> object:
    """Right comb with the given labels from the root down."""
    labels = tuple(labels)
    if not labels:
        return LEAF
    return Node(labels[0], LEAF, right_comb(labels[1:]))


def left_comb(labels) -> object:
    """Left comb with the given labels from the root down."""
    labels = tuple(labels)
    if not labels:
        return LEAF
    return Node(labels[0], left_comb(labels[1:]), LEAF)


def all_trees(n: int, k: int):
    """All tree monomials of the given arity with labels in 1..k."""
    if n == 1:
        yield LEAF
        return
    for i in range(1, n):
        for l in range(1, k + 1):
            for lt in all_trees(i, k):
                for rt in all_trees(n - i, k):
                    yield Node(l, lt, rt)


def random_tree(rng, n: int, k: int):
    if n == 1:
        return LEAF
    i = rng.randint(1, n - 1)
    return Node(rng.randint(1, k), random_tree(rng, i, k), random_tree(rng, n - i, k))


def tree_str(t) -> str:
    """Prefix syntax with leaves named a, b, c, ... left to right."""
    names = iter("abcdefghijklmnopqrstuvwxyz")

    def render(node):
        if is_leaf(node):
            return next(names)
        return f"mu{node.label}({render(node.left)},{render(node.right)})"

    return render(t)


def parse_tree(text: str):
    """Parse the tree_str syntax; leaves must read a, b, c, ... in order."""
    text = text.replace(" ", "")
    pos = 0
    leaf_count = 0

    def parse():
        nonlocal pos, leaf_count
        if pos < len(text) and text[pos : pos + 2] == "mu":
            pos += 2
            start = pos
            while pos < len(text) and text[pos].isdigit():
                pos += 1
            if start == pos:
                raise ValueError(f"expected generator index at column {start + 1}")
            label = int(text[start:pos])
            if pos >= len(text) or text[pos] != "(":
                raise ValueError(f"expected '(' at column {pos + 1}")
            pos += 1
            left = parse()
            if pos >= len(text) or text[pos] != ",":
                raise ValueError(f"expected ',' at column {pos + 1}")
            pos += 1
            right = parse()
            if pos >= len(text) or text[pos] != ")":
                raise ValueError(f"expected ')' at column {pos + 1}")
            pos += 1
            return Node(label, left, right)
        if pos < len(text) and text[pos].isalpha():
            expected = "abcdefghijklmnopqrstuvwxyz"[leaf_count]
            if text[pos] != expected:
                raise ValueError(
                    f"leaf {text[pos]!r} at column {pos + 1}: leaves must read"
                    f" a, b, c, ... left to right (expected {expected!r})"
                )
            leaf_count += 1
            pos += 1
            return LEAF
        raise ValueError(f"unexpected character at column {pos + 1}")

    t = parse()
    if pos != len(text):
        raise ValueError(f"trailing input at column {pos + 1}")
    return t


# ---- positions and rewriting ----


def subtree_at(t, pos):
    for d in pos:
        t = t.left if d == 1 else t.right
    return t


def replace_at(t, pos, sub):
    if not pos:
        return sub
    if pos[0] == 1:
        return Node(t.label, replace_at(t.left, pos[1:], sub), t.right)
    return Node(t.label, t.left, replace_at(t.right, pos[1:], sub))


def positions(t, prefix=()):
    """Preorder positions of internal vertices."""
    if is_leaf(t):
        return
    yield prefix
    yield from positions(t.left, prefix + (1,))
    yield from positions(t.right, prefix + (2,))


def _pattern_shape(two_vertex):
    """Return ("L"|"R", outer label, inner label) of a weight-2 tree."""
    if is_leaf(two_vertex) or weight(two_vertex) != 2:
        raise ValueError("relation sides must have exactly two internal vertices")
    if not is_leaf(two_vertex.left):
        if not is_leaf(two_vertex.right):
            raise ValueError("relation sides must be quadratic monomials")
        return "L", two_vertex.label, two_vertex.left.label
    return "R", two_vertex.label, two_vertex.right.label


def _match(pattern_shape, s):
    """Match a two-vertex pattern at the root of s; return (A, B, C) or None.

    The three hanging subtrees are taken positionally, left to right.
    """
    shape, outer, inner = pattern_shape
    if is_leaf(s) or s.label != outer:
        return None
    if shape == "L":
        if is_leaf(s.left) or s.left.label != inner:
            return None
        return s.left.left, s.left.right, s.right
    if is_leaf(s.right) or s.right.label != inner:
        return None
    return s.left, s.right.left, s.right.right


def _instantiate(pattern_shape, subs):
    shape, outer, inner = pattern_shape
    a, b, c = subs
    if shape == "L":
        return Node(outer, Node(inner, a, b), c)
    return Node(outer, a, Node(inner, b, c))


@dataclass(frozen=True)
class CombSequence:
    """Arity plus the label list of a right comb (the PBW basis)."""

    arity: int
    labels: tuple

    def __post_init__(self):
        if self.arity < 1 or len(self.labels) != self.arity - 1:
            raise ValueError("need arity - 1 labels")

    def to_tree(self):
        return right_comb(self.labels)

    def __str__(self):
        return "(" + ",".join(map(str, self.labels)) + ")"


def comb_of(t) -> CombSequence | None:
    """The comb sequence of a right comb, or None for other shapes."""
    labels = []
    while not is_leaf(t):
        if not is_leaf(t.left):
            return None
        labels.append(t.label)
        t = t.right
    return CombSequence(len(labels) + 1, tuple(labels))


def compose(s: CombSequence, i: int, t: CombSequence) -> CombSequence:
    """Operadic composition on the comb basis: insert t's labels at slot i."""
    if not (1 <= i <= s.arity):
        raise ValueError(f"slot {i} out of range 1..{s.arity}")
    labels = s.labels[: i - 1] + t.labels + s.labels[i - 1 :]
    return CombSequence(s.arity + t.arity - 1, labels)


@dataclass(frozen=True)
class Presentation:
    """Oriented quadratic binomial relations on k binary generators."""

    k: int
    relations: tuple
    name: str = ""

    def __post_init__(self):
        seen = set()
        for lhs, rhs in self.relations:
            for side in (lhs, rhs):
                if weight(side) != 2 or arity(side) != 3:
                    raise ValueError("relations must be quadratic (arity 3)")
                for p in positions(side):
                    node = subtree_at(side, p)
                    if not (1 <= node.label <= self.k):
                        raise ValueError("generator label out of range")
            if lhs == rhs:
                raise ValueError("trivial relation")
            if lhs in seen:
                raise ValueError("leading monomials must be pairwise distinct")
            seen.add(lhs)

    def rules(self):
        return [(_pattern_shape(lhs), _pattern_shape(rhs)) for lhs, rhs in self.relations]


def paper_presentation(k: int = 2) -> Presentation:
    """Uniform-label orientation: mu_i o1 mu_j -> mu_i o2 mu_j."""
    rels = tuple(
        (left_nested(i, j), right_nested(i, j))
        for i in range(1, k + 1)
        for j in range(1, k + 1)
    )
    return Presentation(k, rels, "paper")


def mda_presentation(k: int = 2) -> Presentation:
    """Axiom orientation: mu_i o1 mu_j -> mu_j o2 mu_i.

    These are the relations the matching-dialgebra axioms transcribe to:
    (x *j y) *i z = x *j (y *i z) for all labels i, j.
    """
    rels = tuple(
        (left_nested(i, j), right_nested(j, i))
        for i in range(1, k + 1)
        for j in range(1, k + 1)
    )
    return Presentation(k, rels, "mda")


def builtin_presentation(name: str, k: int = 2) -> Presentation:
    if name == "paper":
        return paper_presentation(k)
    if name == "mda":
        return mda_presentation(k)
    raise ValueError(f"unknown presentation {name!r} (expected 'paper' or 'mda')")


# ---- tree order (termination) ----


def order_key(t):
    """Path-lexicographic key; greater key = greater monomial.

    Shape is compared first via leaf direction paths (first-input steps
    beat second-input steps, deeper beats shallower), then labels along the
    same paths with mu_1 > mu_2 > ...; any first-input nesting therefore
    exceeds its second-input counterpart, left combs are maximal and right
    combs minimal, and both comparisons are stable under grafting.
    """
    dirs, labels = [], []

    def walk(node, dpath, lpath):
        if is_leaf(node):
            dirs.append(tuple(dpath))
            labels.append(tuple(lpath))
            return
        walk(node.left, dpath + [1], lpath + [-node.label])
        walk(node.right, dpath + [0], lpath + [-node.label])

    walk(t, [], [])
    return tuple(dirs), tuple(labels)


# ---- rewriting ----


def redexes(t, pres: Presentation):
    """All (position, rule index) pairs where a rule's lhs matches."""
    shapes = [_pattern_shape(lhs) for lhs, _ in pres.relations]
    out = []
    for pos in positions(t):
        s = subtree_at(t, pos)
        for ri, shape in enumerate(shapes):
            if _match(shape, s) is not None:
                out.append((pos, ri))
    return out


def rewrite_at(t, pos, rule_index: int, pres: Presentation):
    lhs, rhs = pres.relations[rule_index]
    s = subtree_at(t, pos)
    subs = _match(_pattern_shape(lhs), s)
    if subs is None:
        raise ValueError("rule does not match at position")
    return replace_at(t, pos, _instantiate(_pattern_shape(rhs), subs))


def _first_redex(t, pres):
    shapes = [_pattern_shape(lhs) for lhs, _ in pres.relations]
    for pos in positions(t):
        s = subtree_at(t, pos)
        for ri, shape in enumerate(shapes):
            if _match(shape, s) is not None:
                return pos, ri
    return None


def reduce_trace(t, pres: Presentation, max_steps: int = 10000):
    """Deterministic reduction (first redex in preorder) with full trace."""
    trace = [t]
    for _ in range(max_steps):
        hit = _first_redex(t, pres)
        if hit is None:
            return trace
        t = rewrite_at(t, *hit, pres)
        trace.append(t)
    raise RuntimeError("reduction did not terminate within the step bound")


class NotCertifiedError(RuntimeError):
    """normalize was called before check_confluence certified the system."""


_CERTIFIED: dict = {}


def normalize(t, pres: Presentation):
    """Unique normal form under a certified presentation.

    Right-comb normal forms are returned as a CombSequence, anything else
    as a tree monomial.  Raises NotCertifiedError unless check_confluence
    has certified the presentation as terminating and confluent.
    """
    if not _CERTIFIED.get(pres, False):
        raise NotCertifiedError(
            "presentation is not certified; run check_confluence first"
        )
    nf = reduce_trace(t, pres)[-1]
    comb = comb_of(nf)
    return comb if comb is not None else nf


# ---- critical monomials and confluence ----


def critical_monomials(pres: Presentation):
    """Arity-4 monomials where two (position, rule) redexes overlap.

    With quadratic rules any two redex patterns inside three internal
    vertices share a vertex, so this is exactly the monomials admitting
    two distinct one-step rewrites.
    """
    out = []
    for t in all_trees(4, pres.k):
        if len(redexes(t, pres)) >= 2:
            out.append(t)
    return out


@dataclass(frozen=True)
class CriticalReport:
    monomial: object
    branches: tuple  # one reduction trace per redex of the monomial
    normal_forms: tuple
    confluent: bool

    def lines(self):
        out = [f"critical monomial {tree_str(self.monomial)}:"]
        for trace in self.branches:
            out.append("  " + " -> ".join(tree_str(x) for x in trace))
        status = "confluent" if self.confluent else "NOT confluent"
        nfs = ", ".join(tree_str(x) for x in self.normal_forms)
        out.append(f"  {status}; normal forms: {nfs}")
        return out


@dataclass(frozen=True)
class ConfluenceReport:
    presentation: Presentation
    terminating: bool
    rule_decreases: tuple
    criticals: tuple
    confluent: bool

    @property
    def certified(self) -> bool:
        return self.terminating and self.confluent

    def lines(self):
        out = []
        total = len(self.criticals)
        good = sum(1 for c in self.criticals if c.confluent)
        out.append(f"rules strictly decrease the tree order: {self.terminating}")
        out.append(f"critical monomials confluent: {good}/{total}")
        for c in self.criticals:
            out.extend(c.lines())
        if self.certified:
            out.append("Koszul certificate obtained")
        else:
            out.append("no certificate: system is not convergent")
        return out


def _all_normal_forms(t, pres, cap: int = 100000):
    """Every irreducible monomial reachable from t (exhaustive search)."""
    seen = {t}
    frontier = [t]
    nfs = set()
    while frontier:
        cur = frontier.pop()
        hits = redexes(cur, pres)
        if not hits:
            nfs.add(cur)
            continue
        for pos, ri in hits:
            nxt = rewrite_at(cur, pos, ri, pres)
            if nxt not in seen:
                if len(seen) > cap:
                    raise RuntimeError("search space blew up")
                seen.add(nxt)
                frontier.append(nxt)
    return nfs


def check_confluence(pres: Presentation) -> ConfluenceReport:
    """Certify termination and critical-monomial confluence.

    Termination: every rule strictly decreases the path-lexicographic
    order (stable under grafting, so rewriting decreases globally).
    Confluence: for each critical monomial, reduce along every available
    redex and compare the complete set of reachable normal forms.  A
    certified report unlocks normalize for this presentation.
    """
    decreases = tuple(order_key(lhs) > order_key(rhs) for lhs, rhs in pres.relations)
    terminating = all(decreases)
    crits = []
    for t in critical_monomials(pres):
        branches = []
        for pos, ri in sorted(redexes(t, pres)):
            first = rewrite_at(t, pos, ri, pres)
            trace = [t] + reduce_trace(first, pres)
            branches.append(tuple(trace))
        nfs = sorted(_all_normal_forms(t, pres), key=order_key)
        crits.append(
            CriticalReport(t, tuple(branches), tuple(nfs), len(nfs) == 1)
        )
    confluent = all(c.confluent for c in crits)
    report = ConfluenceReport(pres, terminating, decreases, tuple(crits), confluent)
    _CERTIFIED[pres] = report.certified
    return report


def operad_dimension(k: int, n: int) -> int:
    """k^(n-1): the size of the right-comb basis in arity n."""
    if n < 1:
        raise ValueError("arity must be >= 1")
    return k ** (n - 1)


# ---- evaluation of tree monomials ----


def evaluate_tree(t, args, algebra):
    """Evaluate a tree monomial, vertex label i applying product i.

    ``algebra`` is a FreeMDA (args are free elements) or a FiniteAlgebra
    (args are coefficient vectors); anything with a ``product(label, u, v)``
    method works like the former.
    """
    args = list(args)
    if len(args) != arity(t):
        raise ValueError(f"expected {arity(t)} arguments, got {len(args)}")

    if hasattr(algebra, "product") and not hasattr(algebra, "products"):
        apply_label = algebra.product  # FreeMDA-style
    else:
        products = algebra.product_list()

        def apply_label(label, u, v):
            return products[label - 1].apply(u, v)

    def run(node, offset):
        if is_leaf(node):
            return args[offset], offset + 1
        lv, offset = run(node.left, offset)
        rv, offset = run(node.right, offset)
        return apply_label(node.label, lv, rv), offset

    value, final = run(t, 0)
    assert final == len(args)
    return value


# ---- quadratic duality ----


def weight2_basis(k: int):
    """Ordered basis of the weight-2 component: all left-nested monomials
    mu_a o1 mu_b, then all right-nested mu_a o2 mu_b."""
    basis = [left_nested(a, b) for a in range(1, k + 1) for b in range(1, k + 1)]
    basis += [right_nested(a, b) for a in range(1, k + 1) for b in range(1, k + 1)]
    return basis


def _monomial_index(t, k: int) -> int:
    shape, outer, inner = _pattern_shape(t)
    base = 0 if shape == "L" else k * k
    return base + (outer - 1) * k + (inner - 1)


@dataclass(frozen=True)
class DualReport:
    k: int
    dual_basis: tuple  # kernel vectors in the starred weight-2 basis
    self_dual: bool

    @property
    def dual_dimension(self) -> int:
        return len(self.dual_basis)

    def lines(self):
        out = [f"dual relation space dimension: {self.dual_dimension}"]
        for v in self.dual_basis:
            out.append("  " + render_weight2_vector(v, self.k, starred=True))
        out.append(f"self-dual: {self.self_dual}")
        return out


def render_weight2_vector(vec, k: int, starred: bool = False) -> str:
    star = "*" if starred else ""
    names = [
        f"mu{star}{a} o1 mu{star}{b}" for a in range(1, k + 1) for b in range(1, k + 1)
    ] + [
        f"mu{star}{a} o2 mu{star}{b}" for a in range(1, k + 1) for b in range(1, k + 1)
    ]
    terms = []
    for x, name in zip(vec, names):
        if x == 0:
            continue
        if x == 1:
            terms.append(f"+ {name}")
        elif x == -1:
            terms.append(f"- {name}")
        else:
            terms.append(f"+ ({x}) {name}")
    text = " ".join(terms)
    return text[2:] if text.startswith("+ ") else text


def relation_matrix(pres: Presentation) -> Matrix:
    """One row per relation (lhs - rhs) in the weight-2 basis."""
    n = 2 * pres.k * pres.k
    rows = []
    for lhs, rhs in pres.relations:
        row = [Fraction(0)] * n
        row[_monomial_index(lhs, pres.k)] += 1
        row[_monomial_index(rhs, pres.k)] -= 1
        rows.append(row)
    return Matrix.from_rows(rows)


def koszul_dual_relations(pres: Presentation) -> DualReport:
    """Annihilator of the relation span under the signed pairing.

    The pairing is +1 between matching first-input nestings, -1 between
    matching second-input nestings, zero otherwise; the annihilator is the
    relation space of the dual operad on the starred generators.  The
    presentation is self-dual when that annihilator equals the image of
    the original relations under starring, compared by canonical
    row-reduced bases.
    """
    k = pres.k
    n = 2 * k * k
    rel = relation_matrix(pres)
    # pair each relation against an unknown dual vector: flip the sign on
    # the second-input block, then take a kernel
    signed_rows = []
    for i in range(rel.rows):
        row = list(rel.row(i))
        for j in range(k * k, n):
            row[j] = -row[j]
        signed_rows.append(row)
    kernel = Matrix.from_rows(signed_rows).kernel_basis()
    dual = Matrix.from_rows(kernel) if kernel else Matrix.zero(0, n)
    self_dual = dual.row_space_basis() == rel.row_space_basis()
    return DualReport(k, tuple(tuple(v) for v in kernel), self_dual)

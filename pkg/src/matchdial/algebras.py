"""Finite-dimensional algebras by structure constants, and their checkers.

Everything here works over a fixed basis: a bilinear product is a 3-tensor
c[i][j][l] (coefficient of e_l in e_i * e_j), an operator is a square
matrix, and every identity is verified on basis tuples only -- bilinearity
makes that equivalent to the universally quantified statement.  Checkers
return reports carrying the lexicographically first witness, so output is
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from .linalg import Matrix, rat_str


def _vec_str(v):
    return "(" + ", ".join(rat_str(x) for x in v) + ")"


@dataclass(frozen=True)
class AxiomCheck:
    """Outcome of one identity checked over all basis tuples."""

    name: str
    ok: bool
    witness: tuple | None = None
    residual: tuple | None = None

    def __bool__(self):
        return self.ok

    def line(self) -> str:
        if self.ok:
            return f"{self.name}: ok"
        return f"{self.name}: FAIL at {self.witness} residual {_vec_str(self.residual)}"


@dataclass(frozen=True)
class CheckReport:
    """A bundle of axiom checks; truthy iff all hold."""

    checks: tuple

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def __bool__(self):
        return self.ok

    def failed(self):
        return [c for c in self.checks if not c.ok]

    def lines(self):
        return [c.line() for c in self.checks]

    def __getitem__(self, name: str) -> AxiomCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


class BilinearProduct:
    """A bilinear product on a dim-dimensional space, as a 3-tensor."""

    __slots__ = ("dim", "c")

    def __init__(self, dim: int, c):
        c = tuple(
            tuple(tuple(Fraction(x) for x in row) for row in plane) for plane in c
        )
        if len(c) != dim or any(
            len(p) != dim or any(len(r) != dim for r in p) for p in c
        ):
            raise ValueError("structure tensor must be dim x dim x dim")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "c", c)

    def __setattr__(self, name, value):
        raise AttributeError("BilinearProduct is immutable")

    @classmethod
    def zero(cls, dim: int) -> "BilinearProduct":
        z = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
        return cls(dim, z)

    @classmethod
    def from_entries(cls, dim: int, flat) -> "BilinearProduct":
        flat = list(flat)
        if len(flat) != dim**3:
            raise ValueError(f"expected {dim ** 3} entries, got {len(flat)}")
        it = iter(flat)
        return cls(dim, [[[next(it) for _ in range(dim)] for _ in range(dim)] for _ in range(dim)])

    @classmethod
    def from_table(cls, dim: int, table) -> "BilinearProduct":
        """Build from a {(i, j): {l: coeff}} table of nonzero products."""
        c = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), terms in table.items():
            for l, x in terms.items():
                c[i][j][l] = Fraction(x)
        return cls(dim, c)

    def flat(self):
        return tuple(x for p in self.c for r in p for x in r)

    def basis_product(self, i: int, j: int):
        """Coefficient vector of e_i * e_j."""
        return self.c[i][j]

    def apply(self, x, y):
        """Bilinear extension to coefficient vectors."""
        d = self.dim
        out = [Fraction(0)] * d
        for i in range(d):
            xi = x[i]
            if xi:
                ci = self.c[i]
                for j in range(d):
                    yj = y[j]
                    if yj:
                        f = xi * yj
                        for l, cl in enumerate(ci[j]):
                            if cl:
                                out[l] += f * cl
        return tuple(out)

    def opposite(self) -> "BilinearProduct":
        d = self.dim
        return BilinearProduct(d, [[self.c[j][i] for j in range(d)] for i in range(d)])

    def perturbed(self, i: int, j: int, l: int, delta=1) -> "BilinearProduct":
        """Copy with c[i][j][l] shifted by delta (mutation testing hook)."""
        c = [[list(r) for r in p] for p in self.c]
        c[i][j][l] += Fraction(delta)
        return BilinearProduct(self.dim, c)

    def is_commutative(self) -> bool:
        return self.c == self.opposite().c

    def left_multiplication(self, i: int) -> Matrix:
        """Matrix of x -> e_i * x."""
        d = self.dim
        return Matrix(d, d, [self.c[i][j][l] for l in range(d) for j in range(d)])

    def right_multiplication(self, i: int) -> Matrix:
        """Matrix of x -> x * e_i."""
        d = self.dim
        return Matrix(d, d, [self.c[j][i][l] for l in range(d) for j in range(d)])

    def __eq__(self, other):
        return isinstance(other, BilinearProduct) and self.dim == other.dim and self.c == other.c

    def __hash__(self):
        return hash((self.dim, self.c))

    def __repr__(self):
        return f"BilinearProduct(dim={self.dim})"


class FiniteAlgebra:
    """A space with one or more named bilinear products sharing a basis."""

    __slots__ = ("dim", "products")

    def __init__(self, dim: int, products):
        products = tuple((str(name), p) for name, p in products)
        if not products:
            raise ValueError("need at least one product")
        for _, p in products:
            if p.dim != dim:
                raise ValueError("product dimension mismatch")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "products", products)

    def __setattr__(self, name, value):
        raise AttributeError("FiniteAlgebra is immutable")

    @property
    def names(self):
        return tuple(name for name, _ in self.products)

    def product(self, key) -> BilinearProduct:
        """Look up a product by 0-based index or by name."""
        if isinstance(key, int):
            return self.products[key][1]
        for name, p in self.products:
            if name == key:
                return p
        raise KeyError(key)

    def product_list(self):
        return [p for _, p in self.products]

    def basis_vector(self, i: int):
        return tuple(Fraction(1) if j == i else Fraction(0) for j in range(self.dim))

    def __repr__(self):
        return f"FiniteAlgebra(dim={self.dim}, products={list(self.names)})"


class LinearOperator:
    """A linear self-map, stored as its matrix on the chosen basis."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: Matrix):
        if matrix.rows != matrix.cols:
            raise ValueError("operator matrix must be square")
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, name, value):
        raise AttributeError("LinearOperator is immutable")

    @property
    def dim(self) -> int:
        return self.matrix.rows

    @classmethod
    def from_entries(cls, dim: int, flat) -> "LinearOperator":
        return cls(Matrix(dim, dim, flat))

    @classmethod
    def zero(cls, dim: int) -> "LinearOperator":
        return cls(Matrix.zero(dim, dim))

    @classmethod
    def identity(cls, dim: int) -> "LinearOperator":
        return cls(Matrix.identity(dim))

    def apply(self, v):
        return self.matrix.apply(v)

    def compose(self, other: "LinearOperator") -> "LinearOperator":
        return LinearOperator(self.matrix @ other.matrix)

    def __eq__(self, other):
        return isinstance(other, LinearOperator) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"LinearOperator(dim={self.dim})"


def _family(ops):
    return tuple(ops)


@dataclass(frozen=True)
class MatchedPairData:
    """Two algebras acting on each other by basis-indexed operator families.

    lA[i] is the action of A's i-th basis vector on B, rA likewise; lB and
    rB act on A and are indexed by B's basis.  Storing one matrix per basis
    vector makes linearity in the acting element structural.
    """

    A: FiniteAlgebra
    B: FiniteAlgebra
    lA: tuple
    rA: tuple
    lB: tuple
    rB: tuple

    def __post_init__(self):
        nA, nB = self.A.dim, self.B.dim
        if len(self.lA) != nA or len(self.rA) != nA:
            raise ValueError("lA/rA must have one operator per basis vector of A")
        if len(self.lB) != nB or len(self.rB) != nB:
            raise ValueError("lB/rB must have one operator per basis vector of B")
        for op in list(self.lA) + list(self.rA):
            if op.dim != nB:
                raise ValueError("lA/rA operators must act on B")
        for op in list(self.lB) + list(self.rB):
            if op.dim != nA:
                raise ValueError("lB/rB operators must act on A")


class BimoduleError(ValueError):
    """A matched-pair bimodule hypothesis failed; .which names it."""

    def __init__(self, which: str, check: AxiomCheck):
        self.which = which
        self.check = check
        super().__init__(f"bimodule hypothesis {which} fails: {check.line()}")


def _act(family, coeffs, v):
    """Apply the linearly extended family at an element with given coeffs."""
    out = [Fraction(0)] * family[0].dim
    for i, x in enumerate(coeffs):
        if x:
            w = family[i].apply(v)
            for l in range(len(out)):
                out[l] += x * w[l]
    return tuple(out)


def is_associative(p: BilinearProduct) -> AxiomCheck:
    """Associativity on all basis triples; first counterexample reported."""
    d = p.dim
    for i, j, k in iproduct(range(d), repeat=3):
        lhs = p.apply(p.basis_product(i, j), _unit(d, k))
        rhs = p.apply(_unit(d, i), p.basis_product(j, k))
        if lhs != rhs:
            res = tuple(a - b for a, b in zip(lhs, rhs))
            return AxiomCheck("associative", False, (i, j, k), res)
    return AxiomCheck("associative", True)


def _unit(d, i):
    return tuple(Fraction(1) if j == i else Fraction(0) for j in range(d))


def _mixed_check(name, p_out, p_in, d):
    """(x p_in y) p_out z == x p_in (y p_out z) on all basis triples."""
    for i, j, k in iproduct(range(d), repeat=3):
        lhs = p_out.apply(p_in.basis_product(i, j), _unit(d, k))
        rhs = p_in.apply(_unit(d, i), p_out.basis_product(j, k))
        if lhs != rhs:
            res = tuple(a - b for a, b in zip(lhs, rhs))
            return AxiomCheck(name, False, (i, j, k), res)
    return AxiomCheck(name, True)


def is_matching_dialgebra(p1: BilinearProduct, p2: BilinearProduct) -> CheckReport:
    """Both products associative plus the two mixed associativity axioms:

        (x *1 y) *2 z = x *1 (y *2 z)   and   (x *2 y) *1 z = x *2 (y *1 z).
    """
    if p1.dim != p2.dim:
        raise ValueError("products must share a dimension")
    d = p1.dim
    a1 = is_associative(p1)
    a2 = is_associative(p2)
    checks = (
        AxiomCheck("assoc-1", a1.ok, a1.witness, a1.residual),
        AxiomCheck("assoc-2", a2.ok, a2.witness, a2.residual),
        _mixed_check("mixed-12", p2, p1, d),
        _mixed_check("mixed-21", p1, p2, d),
    )
    return CheckReport(checks)


def is_matching_family(products) -> CheckReport:
    """(x *a y) *b z = x *a (y *b z) for every ordered pair of products.

    For two products this is exactly is_matching_dialgebra; it is the
    k-product generalization used by the free-object evaluation.
    """
    products = list(products)
    d = products[0].dim
    checks = []
    for a, pa in enumerate(products):
        for b, pb in enumerate(products):
            checks.append(_mixed_check(f"mixed-{a + 1}{b + 1}", pb, pa, d))
    return CheckReport(tuple(checks))


def _semi_hom_check(name, p, f, side):
    d = p.dim
    for i, j in iproduct(range(d), repeat=2):
        fxy = f.apply(p.basis_product(i, j))
        if side == "left":
            other = p.apply(_unit(d, i), f.apply(_unit(d, j)))  # x f(y)
        else:
            other = p.apply(f.apply(_unit(d, i)), _unit(d, j))  # f(x) y
        if fxy != other:
            res = tuple(a - b for a, b in zip(fxy, other))
            return AxiomCheck(name, False, (i, j), res)
    return AxiomCheck(name, True)


def semi_hom_kind(algebra, f: LinearOperator) -> str:
    """Classify f against f(xy) = x f(y) (left) and f(xy) = f(x) y (right).

    Returns one of "left", "right", "both", "none".
    """
    p = algebra.product(0) if isinstance(algebra, FiniteAlgebra) else algebra
    if f.dim != p.dim:
        raise ValueError("operator dimension mismatch")
    left = _semi_hom_check("left-semi-hom", p, f, "left").ok
    right = _semi_hom_check("right-semi-hom", p, f, "right").ok
    if left and right:
        return "both"
    if left:
        return "left"
    if right:
        return "right"
    return "none"


def mda_from_semi_hom(algebra, f: LinearOperator, side: str) -> FiniteAlgebra:
    """Twist an associative product by a one-sided semi-homomorphism.

    side "left" (f(xy) = x f(y)) gives x *2 y = f(x) y; side "right"
    (f(xy) = f(x) y) gives x *2 y = x f(y).  The first product is kept.
    The result always passes is_matching_dialgebra.
    """
    p = algebra.product(0) if isinstance(algebra, FiniteAlgebra) else algebra
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    assoc = is_associative(p)
    if not assoc.ok:
        raise ValueError(f"base product not associative: {assoc.line()}")
    hom = _semi_hom_check(f"{side}-semi-hom", p, f, side)
    if not hom.ok:
        raise ValueError(f"operator is not a {side} semi-homomorphism: {hom.line()}")
    d = p.dim
    if side == "left":
        c2 = [[p.apply(f.apply(_unit(d, i)), _unit(d, j)) for j in range(d)] for i in range(d)]
    else:
        c2 = [[p.apply(_unit(d, i), f.apply(_unit(d, j))) for j in range(d)] for i in range(d)]
    return FiniteAlgebra(d, [("p1", p), ("p2", BilinearProduct(d, c2))])


def mda_from_two_semi_homs(algebra, f: LinearOperator, g: LinearOperator) -> FiniteAlgebra:
    """x *1 y = f(x) y and x *2 y = g(x) y for two-sided semi-homs f, g.

    Also verifies f(xy) = f(x)y = xf(y) (and likewise for g), which is the
    two-sidedness being assumed.
    """
    p = algebra.product(0) if isinstance(algebra, FiniteAlgebra) else algebra
    assoc = is_associative(p)
    if not assoc.ok:
        raise ValueError(f"base product not associative: {assoc.line()}")
    for label, op in (("f", f), ("g", g)):
        kind = semi_hom_kind(p, op)
        if kind != "both":
            raise ValueError(f"{label} is not a two-sided semi-homomorphism (kind: {kind})")
    d = p.dim
    c1 = [[p.apply(f.apply(_unit(d, i)), _unit(d, j)) for j in range(d)] for i in range(d)]
    c2 = [[p.apply(g.apply(_unit(d, i)), _unit(d, j)) for j in range(d)] for i in range(d)]
    return FiniteAlgebra(d, [("p1", BilinearProduct(d, c1)), ("p2", BilinearProduct(d, c2))])


def is_bimodule(algebra, l, r, module_dim: int | None = None) -> CheckReport:
    """Bimodule axioms for operator families l, r on a module:

        l(xy) = l(x) l(y),  r(xy) = r(y) r(x),  l(x) r(y) = r(y) l(x).
    """
    p = algebra.product(0) if isinstance(algebra, FiniteAlgebra) else algebra
    l, r = _family(l), _family(r)
    d = p.dim
    if len(l) != d or len(r) != d:
        raise ValueError("need one operator per basis vector")
    m = module_dim if module_dim is not None else l[0].dim
    checks = []

    def op_at(family, coeffs):
        acc = Matrix.zero(m, m)
        for i, x in enumerate(coeffs):
            if x:
                acc = acc + family[i].matrix.scale(x)
        return acc

    name = "left-action"
    ok = AxiomCheck(name, True)
    for i, j in iproduct(range(d), repeat=2):
        lhs = op_at(l, p.basis_product(i, j))
        rhs = l[i].matrix @ l[j].matrix
        if lhs != rhs:
            ok = AxiomCheck(name, False, (i, j), tuple((lhs - rhs).entries))
            break
    checks.append(ok)

    name = "right-action"
    ok = AxiomCheck(name, True)
    for i, j in iproduct(range(d), repeat=2):
        lhs = op_at(r, p.basis_product(i, j))
        rhs = r[j].matrix @ r[i].matrix
        if lhs != rhs:
            ok = AxiomCheck(name, False, (i, j), tuple((lhs - rhs).entries))
            break
    checks.append(ok)

    name = "actions-commute"
    ok = AxiomCheck(name, True)
    for i, j in iproduct(range(d), repeat=2):
        lhs = l[i].matrix @ r[j].matrix
        rhs = r[j].matrix @ l[i].matrix
        if lhs != rhs:
            ok = AxiomCheck(name, False, (i, j), tuple((lhs - rhs).entries))
            break
    checks.append(ok)
    return CheckReport(tuple(checks))


def is_matched_pair(mp: MatchedPairData, strict: bool = True) -> CheckReport:
    """The six matched-pair compatibility equations, over all basis tuples.

    The two bimodule hypotheses are checked first; with strict=True a
    failing hypothesis raises BimoduleError naming which one, otherwise
    everything is evaluated into one report.
    """
    pa = mp.A.product(0)
    pb = mp.B.product(0)
    nA, nB = mp.A.dim, mp.B.dim

    bim_a = is_bimodule(pa, mp.lA, mp.rA, nB)
    bim_b = is_bimodule(pb, mp.lB, mp.rB, nA)
    checks = [
        AxiomCheck("bimodule-A-on-B", bim_a.ok, *(() if bim_a.ok else (bim_a.failed()[0].witness, bim_a.failed()[0].residual))),
        AxiomCheck("bimodule-B-on-A", bim_b.ok, *(() if bim_b.ok else (bim_b.failed()[0].witness, bim_b.failed()[0].residual))),
    ]
    if strict:
        if not bim_a.ok:
            raise BimoduleError("A-on-B", bim_a.failed()[0])
        if not bim_b.ok:
            raise BimoduleError("B-on-A", bim_b.failed()[0])

    eA = lambda i: _unit(nA, i)
    eB = lambda a: _unit(nB, a)
    lA = lambda xc, v: _act(mp.lA, xc, v)
    rA = lambda xc, v: _act(mp.rA, xc, v)
    lB = lambda ac, v: _act(mp.lB, ac, v)
    rB = lambda ac, v: _act(mp.rB, ac, v)

    def scan(name, fn, ranges):
        for idx in iproduct(*ranges):
            lhs, rhs = fn(*idx)
            if lhs != rhs:
                res = tuple(u - v for u, v in zip(lhs, rhs))
                return AxiomCheck(name, False, idx, res)
        return AxiomCheck(name, True)

    rA_range, rB_range = range(nA), range(nB)

    # l_A(x)(a o b) = l_A(r_B(a) x) b + (l_A(x) a) o b
    checks.append(scan(
        "pair-1",
        lambda x, a, b: (
            lA(eA(x), pb.basis_product(a, b)),
            tuple(
                u + v
                for u, v in zip(
                    lA(rB(eB(a), eA(x)), eB(b)),
                    pb.apply(lA(eA(x), eB(a)), eB(b)),
                )
            ),
        ),
        (rA_range, rB_range, rB_range),
    ))
    # r_A(x)(a o b) = r_A(l_B(b) x) a + a o (r_A(x) b)
    checks.append(scan(
        "pair-2",
        lambda x, a, b: (
            rA(eA(x), pb.basis_product(a, b)),
            tuple(
                u + v
                for u, v in zip(
                    rA(lB(eB(b), eA(x)), eB(a)),
                    pb.apply(eB(a), rA(eA(x), eB(b))),
                )
            ),
        ),
        (rA_range, rB_range, rB_range),
    ))
    # l_B(a)(x y) = l_B(r_A(x) a) y + (l_B(a) x) y
    checks.append(scan(
        "pair-3",
        lambda a, x, y: (
            lB(eB(a), pa.basis_product(x, y)),
            tuple(
                u + v
                for u, v in zip(
                    lB(rA(eA(x), eB(a)), eA(y)),
                    pa.apply(lB(eB(a), eA(x)), eA(y)),
                )
            ),
        ),
        (rB_range, rA_range, rA_range),
    ))
    # r_B(a)(x y) = r_B(l_A(y) a) x + x (r_B(a) y)
    checks.append(scan(
        "pair-4",
        lambda a, x, y: (
            rB(eB(a), pa.basis_product(x, y)),
            tuple(
                u + v
                for u, v in zip(
                    rB(lA(eA(y), eB(a)), eA(x)),
                    pa.apply(eA(x), rB(eB(a), eA(y))),
                )
            ),
        ),
        (rB_range, rA_range, rA_range),
    ))
    # l_A(l_B(a) x) b + (r_A(x) a) o b - r_A(r_B(b) x) a - a o (l_A(x) b) = 0
    zero_b = tuple(Fraction(0) for _ in range(nB))
    checks.append(scan(
        "pair-5",
        lambda x, a, b: (
            tuple(
                t1 + t2 - t3 - t4
                for t1, t2, t3, t4 in zip(
                    lA(lB(eB(a), eA(x)), eB(b)),
                    pb.apply(rA(eA(x), eB(a)), eB(b)),
                    rA(rB(eB(b), eA(x)), eB(a)),
                    pb.apply(eB(a), lA(eA(x), eB(b))),
                )
            ),
            zero_b,
        ),
        (rA_range, rB_range, rB_range),
    ))
    # l_B(l_A(x) a) y + (r_B(a) x) y - r_B(r_A(y) a) x - x (l_B(a) y) = 0
    zero_a = tuple(Fraction(0) for _ in range(nA))
    checks.append(scan(
        "pair-6",
        lambda a, x, y: (
            tuple(
                t1 + t2 - t3 - t4
                for t1, t2, t3, t4 in zip(
                    lB(lA(eA(x), eB(a)), eA(y)),
                    pa.apply(rB(eB(a), eA(x)), eA(y)),
                    rB(rA(eA(y), eB(a)), eA(x)),
                    pa.apply(eA(x), lB(eB(a), eA(y))),
                )
            ),
            zero_a,
        ),
        (rB_range, rA_range, rA_range),
    ))
    return CheckReport(tuple(checks))


def matched_pair_shape(p1: BilinearProduct, p2: BilinearProduct, variant: str) -> MatchedPairData:
    """The matched-pair data induced by a two-product algebra, unchecked.

    Variant "L": actions (L1, 0) and (L2, 0) by left multiplications.
    Variant "R": actions (0, R1) and (0, R2) by right multiplications.
    No axioms are verified; see matched_pair_from_mda for the checked form.
    """
    if variant not in ("L", "R"):
        raise ValueError("variant must be 'L' or 'R'")
    d = p1.dim
    A = FiniteAlgebra(d, [("p1", p1)])
    B = FiniteAlgebra(d, [("p2", p2)])
    zero = tuple(LinearOperator.zero(d) for _ in range(d))
    if variant == "L":
        lA = tuple(LinearOperator(p1.left_multiplication(i)) for i in range(d))
        lB = tuple(LinearOperator(p2.left_multiplication(i)) for i in range(d))
        return MatchedPairData(A, B, lA, zero, lB, zero)
    rA = tuple(LinearOperator(p1.right_multiplication(i)) for i in range(d))
    rB = tuple(LinearOperator(p2.right_multiplication(i)) for i in range(d))
    return MatchedPairData(A, B, zero, rA, zero, rB)


def matched_pair_from_mda(algebra: FiniteAlgebra, variant: str) -> MatchedPairData:
    """Matched pair carried by a matching dialgebra (variants L and R).

    Raises ValueError when the two products fail the dialgebra axioms; the
    returned data always passes is_matched_pair.
    """
    p1, p2 = algebra.product(0), algebra.product(1)
    rep = is_matching_dialgebra(p1, p2)
    if not rep.ok:
        raise ValueError(f"not a matching dialgebra: {rep.failed()[0].line()}")
    return matched_pair_shape(p1, p2, variant)


def double_product(mp: MatchedPairData) -> FiniteAlgebra:
    """The associative product on A + B induced by a matched pair:

        (x,a)*(y,b) = (x y + l_B(a) y + r_B(b) x,  a o b + l_A(x) b + r_A(y) a)
    """
    rep = is_matched_pair(mp, strict=True)
    if not rep.ok:
        raise ValueError(f"not a matched pair: {rep.failed()[0].line()}")
    pa, pb = mp.A.product(0), mp.B.product(0)
    nA, nB = mp.A.dim, mp.B.dim
    n = nA + nB
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]

    def put(i, j, a_part, b_part):
        c[i][j] = list(a_part) + list(b_part)

    zA = tuple(Fraction(0) for _ in range(nA))
    zB = tuple(Fraction(0) for _ in range(nB))
    for i in range(n):
        for j in range(n):
            x = _unit(nA, i) if i < nA else zA
            a = _unit(nB, i - nA) if i >= nA else zB
            y = _unit(nA, j) if j < nA else zA
            b = _unit(nB, j - nA) if j >= nA else zB
            a_part = [
                t1 + t2 + t3
                for t1, t2, t3 in zip(
                    pa.apply(x, y), _act(mp.lB, a, y), _act(mp.rB, b, x)
                )
            ]
            b_part = [
                t1 + t2 + t3
                for t1, t2, t3 in zip(
                    pb.apply(a, b), _act(mp.lA, x, b), _act(mp.rA, y, a)
                )
            ]
            put(i, j, a_part, b_part)
    return FiniteAlgebra(n, [("double", BilinearProduct(n, c))])


def sum_products(p1: BilinearProduct, p2: BilinearProduct):
    """The two doubled products on A + A built from a two-product space:

        (a,b) . (c,d) = (a *1 c + a *2 d,  b *2 d + b *1 c)
        (a,b) o (c,d) = (a *1 c + b *2 c,  b *2 d + a *1 d)

    No precondition: each is associative precisely when (p1, p2) is a
    matching dialgebra, which is what these are used to test.
    """
    if p1.dim != p2.dim:
        raise ValueError("products must share a dimension")
    d = p1.dim
    n = 2 * d
    z = tuple(Fraction(0) for _ in range(d))

    def split(i):
        if i < d:
            return _unit(d, i), z
        return z, _unit(d, i - d)

    c_dot = [[None] * n for _ in range(n)]
    c_circ = [[None] * n for _ in range(n)]
    for i in range(n):
        a, b = split(i)
        for j in range(n):
            cc, dd = split(j)
            first = [u + v for u, v in zip(p1.apply(a, cc), p2.apply(a, dd))]
            second = [u + v for u, v in zip(p2.apply(b, dd), p1.apply(b, cc))]
            c_dot[i][j] = first + second
            first = [u + v for u, v in zip(p1.apply(a, cc), p2.apply(b, cc))]
            second = [u + v for u, v in zip(p2.apply(b, dd), p1.apply(a, dd))]
            c_circ[i][j] = first + second
    return BilinearProduct(n, c_dot), BilinearProduct(n, c_circ)

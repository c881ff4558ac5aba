"""Brackets derived from two-product algebras, and Lie-type checkers.

Commutators of either product, the two mixed brackets [x,y] = x *a y -
y *b x, compatibility of pairs (every linear combination is again a
structure of the same type, reduced to the polarized identity over an
infinite field), pre-Lie / assosymmetric / left PostLie axioms, and the
residual identity satisfied by the mixed brackets of a matching dialgebra.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct

from .algebras import (
    AxiomCheck,
    BilinearProduct,
    CheckReport,
    is_associative,
    is_matching_dialgebra,
    _unit,
)


class Bracket(BilinearProduct):
    """A bilinear product regarded as a bracket candidate.

    Antisymmetry is a checked property, not an invariant: the mixed
    brackets of a two-product algebra need not be antisymmetric.
    """


def commutator_bracket(p: BilinearProduct) -> Bracket:
    """[x, y] = p(x, y) - p(y, x)."""
    d = p.dim
    c = [
        [
            tuple(a - b for a, b in zip(p.c[i][j], p.c[j][i]))
            for j in range(d)
        ]
        for i in range(d)
    ]
    return Bracket(d, c)


def mixed_bracket(p1: BilinearProduct, p2: BilinearProduct, order: str) -> Bracket:
    """Order "12": [x,y] = p1(x,y) - p2(y,x); order "21": p2(x,y) - p1(y,x)."""
    if p1.dim != p2.dim:
        raise ValueError("products must share a dimension")
    if order not in ("12", "21"):
        raise ValueError("order must be '12' or '21'")
    a, b = (p1, p2) if order == "12" else (p2, p1)
    d = p1.dim
    c = [
        [tuple(u - v for u, v in zip(a.c[i][j], b.c[j][i])) for j in range(d)]
        for i in range(d)
    ]
    return Bracket(d, c)


def is_lie(b: BilinearProduct) -> CheckReport:
    """Antisymmetry ([x,x] = 0 and [x,y] = -[y,x]) plus the Jacobi identity."""
    d = b.dim
    anti = AxiomCheck("antisymmetry", True)
    for i in range(d):
        if any(b.c[i][i]):
            anti = AxiomCheck("antisymmetry", False, (i, i), tuple(b.c[i][i]))
            break
    if anti.ok:
        for i, j in iproduct(range(d), repeat=2):
            res = tuple(u + v for u, v in zip(b.c[i][j], b.c[j][i]))
            if any(res):
                anti = AxiomCheck("antisymmetry", False, (i, j), res)
                break
    jac = AxiomCheck("jacobi", True)
    for i, j, k in iproduct(range(d), repeat=3):
        res = _jacobi_sum(b, b, i, j, k)
        if any(res):
            jac = AxiomCheck("jacobi", False, (i, j, k), res)
            break
    return CheckReport((anti, jac))


def _jacobi_sum(b1, b2, i, j, k):
    """b2(b1(x,y), z) + b2(b1(z,x), y) + b2(b1(y,z), x) on basis vectors."""
    d = b1.dim
    total = [Fraction(0)] * d
    for (a, bb, cc) in ((i, j, k), (k, i, j), (j, k, i)):
        inner = b1.basis_product(a, bb)
        outer = b2.apply(inner, _unit(d, cc))
        for l in range(d):
            total[l] += outer[l]
    return tuple(total)


def are_compatible(p1: BilinearProduct, p2: BilinearProduct, kind: str) -> CheckReport:
    """Every combination a*p1 + b*p2 is again associative (resp. Lie).

    Over the rationals this is equivalent to the polarized cross identity,
    which is what gets checked; the individual structures are
    preconditions and raise when violated.
    """
    if p1.dim != p2.dim:
        raise ValueError("products must share a dimension")
    d = p1.dim
    if kind == "associative":
        for tag, p in (("first", p1), ("second", p2)):
            chk = is_associative(p)
            if not chk.ok:
                raise ValueError(f"{tag} product is not associative: {chk.line()}")
        name = "compatible-associative"
        for i, j, k in iproduct(range(d), repeat=3):
            x, z = _unit(d, i), _unit(d, k)
            res = [
                t1 + t2 - t3 - t4
                for t1, t2, t3, t4 in zip(
                    p2.apply(p1.basis_product(i, j), z),
                    p1.apply(p2.basis_product(i, j), z),
                    p1.apply(x, p2.basis_product(j, k)),
                    p2.apply(x, p1.basis_product(j, k)),
                )
            ]
            if any(res):
                return CheckReport((AxiomCheck(name, False, (i, j, k), tuple(res)),))
        return CheckReport((AxiomCheck(name, True),))
    if kind == "lie":
        for tag, p in (("first", p1), ("second", p2)):
            chk = is_lie(p)
            if not chk.ok:
                raise ValueError(f"{tag} bracket is not Lie: {chk.failed()[0].line()}")
        name = "compatible-lie"
        for i, j, k in iproduct(range(d), repeat=3):
            res = tuple(
                u + v
                for u, v in zip(
                    _jacobi_sum(p1, p2, i, j, k), _jacobi_sum(p2, p1, i, j, k)
                )
            )
            if any(res):
                return CheckReport((AxiomCheck(name, False, (i, j, k), res),))
        return CheckReport((AxiomCheck(name, True),))
    raise ValueError("kind must be 'associative' or 'lie'")


def _associator(p, i, j, k):
    d = p.dim
    lhs = p.apply(p.basis_product(i, j), _unit(d, k))
    rhs = p.apply(_unit(d, i), p.basis_product(j, k))
    return tuple(u - v for u, v in zip(lhs, rhs))


def is_pre_lie(p: BilinearProduct) -> AxiomCheck:
    """Left symmetry of the associator: A(x,y,z) = A(y,x,z)."""
    d = p.dim
    for i, j, k in iproduct(range(d), repeat=3):
        res = tuple(u - v for u, v in zip(_associator(p, i, j, k), _associator(p, j, i, k)))
        if any(res):
            return AxiomCheck("left-symmetric-associator", False, (i, j, k), res)
    return AxiomCheck("left-symmetric-associator", True)


def is_assosymmetric(p: BilinearProduct) -> CheckReport:
    """Left and right symmetry of the associator."""
    left = is_pre_lie(p)
    right = AxiomCheck("right-symmetric-associator", True)
    d = p.dim
    for i, j, k in iproduct(range(d), repeat=3):
        res = tuple(u - v for u, v in zip(_associator(p, i, j, k), _associator(p, i, k, j)))
        if any(res):
            right = AxiomCheck("right-symmetric-associator", False, (i, j, k), res)
            break
    return CheckReport((left, right))


def is_post_lie(circ: BilinearProduct, b: BilinearProduct) -> CheckReport:
    """Left PostLie axioms for a product and a bracket:

      (i)  the bracket is a Lie bracket,
      (ii) (x o y) o z - x o (y o z) - (y o x) o z + y o (x o z) - [x,y] o z = 0,
      (iii) z o [x,y] - [z o x, y] - [x, z o y] = 0.
    """
    if circ.dim != b.dim:
        raise ValueError("product and bracket must share a dimension")
    d = circ.dim
    lie = is_lie(b)
    lie_check = AxiomCheck(
        "bracket-is-lie",
        lie.ok,
        None if lie.ok else lie.failed()[0].witness,
        None if lie.ok else lie.failed()[0].residual,
    )

    second = AxiomCheck("twisted-left-symmetry", True)
    for i, j, k in iproduct(range(d), repeat=3):
        z = _unit(d, k)
        res = [
            a1 - a2 - a3 + a4 - a5
            for a1, a2, a3, a4, a5 in zip(
                circ.apply(circ.basis_product(i, j), z),
                circ.apply(_unit(d, i), circ.basis_product(j, k)),
                circ.apply(circ.basis_product(j, i), z),
                circ.apply(_unit(d, j), circ.basis_product(i, k)),
                circ.apply(b.basis_product(i, j), z),
            )
        ]
        if any(res):
            second = AxiomCheck("twisted-left-symmetry", False, (i, j, k), tuple(res))
            break

    third = AxiomCheck("derivation-of-bracket", True)
    for i, j, k in iproduct(range(d), repeat=3):
        res = [
            a1 - a2 - a3
            for a1, a2, a3 in zip(
                circ.apply(_unit(d, k), b.basis_product(i, j)),
                b.apply(circ.basis_product(k, i), _unit(d, j)),
                b.apply(_unit(d, i), circ.basis_product(k, j)),
            )
        ]
        if any(res):
            third = AxiomCheck("derivation-of-bracket", False, (i, j, k), tuple(res))
            break
    return CheckReport((lie_check, second, third))


def mixed_bracket_residual(p1: BilinearProduct, p2: BilinearProduct, which: str):
    """LHS - RHS of the mixed-bracket identity, on every basis triple.

    For order "12" (bracket [x,y] = x *1 y - y *2 x, written o below):

        [[x,y],z] - [x,[y,z]] - ([[y,x],z] - [y,[x,z]])
            = (x o y - y o x under *2) *1 z - z *2 (x *1 y - y *1 x)

    and for order "21" with the roles of the labels exchanged.  The
    residual vanishes identically on matching dialgebras, which is a
    precondition here; the per-triple residuals are returned so callers
    can see the exact defect when experimenting.
    """
    rep = is_matching_dialgebra(p1, p2)
    if not rep.ok:
        raise ValueError(f"not a matching dialgebra: {rep.failed()[0].line()}")
    if which not in ("12", "21"):
        raise ValueError("which must be '12' or '21'")
    br = mixed_bracket(p1, p2, which)
    outer, inner = (p1, p2) if which == "12" else (p2, p1)
    c1 = commutator_bracket(p1)
    c2 = commutator_bracket(p2)
    first_comm, second_comm = (c2, c1) if which == "12" else (c1, c2)
    d = p1.dim
    residuals = []
    ok = True
    for i, j, k in iproduct(range(d), repeat=3):
        z = _unit(d, k)
        lhs = [
            a1 - a2 - a3 + a4
            for a1, a2, a3, a4 in zip(
                br.apply(br.basis_product(i, j), z),
                br.apply(_unit(d, i), br.basis_product(j, k)),
                br.apply(br.basis_product(j, i), z),
                br.apply(_unit(d, j), br.basis_product(i, k)),
            )
        ]
        rhs = [
            a1 - a2
            for a1, a2 in zip(
                outer.apply(first_comm.basis_product(i, j), z),
                inner.apply(z, second_comm.basis_product(i, j)),
            )
        ]
        res = tuple(u - v for u, v in zip(lhs, rhs))
        residuals.append(((i, j, k), res))
        if any(res):
            ok = False
    return ok, residuals

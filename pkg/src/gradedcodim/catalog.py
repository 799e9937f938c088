"""Small named algebras used by the self-test, the test-suite and the shipped JSON specs."""

from __future__ import annotations

from fractions import Fraction

from .algebra import GradedAlgebraSpec, GroupTable


def ground_field() -> GradedAlgebraSpec:
    """F itself, trivially graded."""
    return GradedAlgebraSpec(GroupTable.trivial(), ("1",), {(0, 0): (1,)}, (0,), unit=(1,), name="F")


def group_algebra(group: GroupTable, name: str = "") -> GradedAlgebraSpec:
    """F[G] with its canonical G-grading (basis element g in degree g)."""
    s = group.order
    products = {(i, j): tuple(Fraction(int(m == group.mul(i, j))) for m in range(s))
                for i in range(s) for j in range(s)}
    unit = tuple(Fraction(int(m == group.identity_index)) for m in range(s))
    basis = tuple("1" if i == group.identity_index else str(g) for i, g in enumerate(group.elements))
    return GradedAlgebraSpec(group, basis, products, tuple(range(s)), unit=unit,
                             name=name or f"F[{'x'.join(map(str, group.elements))}]")


def group_algebra_z2() -> GradedAlgebraSpec:
    """F Z_2 = span{1, u}, u^2 = 1, graded 1 -> e, u -> g."""
    g = GroupTable.cyclic(2)
    products = {(0, 0): (1, 0), (0, 1): (0, 1), (1, 0): (0, 1), (1, 1): (1, 0)}
    return GradedAlgebraSpec(g, ("1", "u"), products, (0, 1), unit=(1, 0), name="FZ2")


def matrix_algebra(n: int, group: GroupTable | None = None, degrees=None, unital: bool = True,
                   name: str = "") -> GradedAlgebraSpec:
    """M_n(F) with an elementary grading: e_ij has degree degrees[i]^-1 degrees[j].

    With ``degrees=None`` the grading is trivial.
    """
    group = group or GroupTable.trivial()
    degrees = degrees or [group.identity_index] * n
    inverse = {a: next(b for b in range(group.order) if group.mul(a, b) == group.identity_index)
               for a in range(group.order)}
    units = [(i, j) for i in range(n) for j in range(n)]
    index = {u: m for m, u in enumerate(units)}
    k = len(units)
    products = {}
    for (a, b), (c, d) in ((u, v) for u in units for v in units):
        if b == c:
            products[(index[(a, b)], index[(c, d)])] = tuple(Fraction(int(m == index[(a, d)])) for m in range(k))
    grading = tuple(group.mul(inverse[degrees[i]], degrees[j]) for i, j in units)
    unit = tuple(Fraction(int(i == j)) for i, j in units) if unital else None
    basis = tuple(f"e{i + 1}{j + 1}" for i, j in units)
    return GradedAlgebraSpec(group, basis, products, grading, unit=unit, name=name or f"M{n}")


def upper_triangular_z2() -> GradedAlgebraSpec:
    """UT_2 = span{e11, e22, e12} with the Z_2 grading e12 -> g, diagonal -> e."""
    g = GroupTable.cyclic(2)
    # basis order e11, e22, e12
    products = {(0, 0): (1, 0, 0), (1, 1): (0, 1, 0), (0, 2): (0, 0, 1), (2, 1): (0, 0, 1)}
    return GradedAlgebraSpec(g, ("e11", "e22", "e12"), products, (0, 0, 1), unit=(1, 1, 0), name="UT2-Z2")


def idempotent_with_radical() -> GradedAlgebraSpec:
    """span{e11, e12} inside UT_2: non-unital, not nilpotent, trivially graded."""
    products = {(0, 0): (1, 0), (0, 1): (0, 1)}
    return GradedAlgebraSpec(GroupTable.trivial(), ("e11", "e12"), products, (0, 0), name="e11+e12")


def nilpotent_index3() -> GradedAlgebraSpec:
    """span{b1, b2, b3} with b1 b2 = b3 and every other product zero (A^3 = 0)."""
    return GradedAlgebraSpec(GroupTable.trivial(), ("b1", "b2", "b3"), {(0, 1): (0, 0, 1)}, (0, 0, 0),
                             name="nil3")


def nilpotent_square() -> GradedAlgebraSpec:
    """span{b1, b2} with b1 b1 = b2 (A^3 = 0 but A^2 != 0)."""
    return GradedAlgebraSpec(GroupTable.trivial(), ("b1", "b2"), {(0, 0): (0, 1)}, (0, 0), name="nil-square")


CATALOG = {
    "F": ground_field,
    "FZ2": group_algebra_z2,
    "UT2-Z2": upper_triangular_z2,
    "M2": lambda: matrix_algebra(2),
    "M2-Z2": lambda: matrix_algebra(2, GroupTable.cyclic(2), [0, 1], name="M2-Z2"),
    "e11+e12": idempotent_with_radical,
    "nil3": nilpotent_index3,
    "nil-square": nilpotent_square,
}

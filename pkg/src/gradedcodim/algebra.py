"""Finite groups given by tables and G-graded algebras given by structure constants.

All scalars are exact rationals; ranks are therefore computed over Q, which
is enough for every dimension this package reports even though the theory is
usually stated over an algebraically closed field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import Any, Mapping, Sequence

from .errors import (AssociativityError, DimensionError, GradingError, GroupError, SchemaError,
                     UnitError, UnknownGroupElement)
from .linalg import echelon_exact


@dataclass(frozen=True)
class GroupTable:
    elements: tuple
    table: tuple  # table[i][j] = index of elements[i] * elements[j]
    identity_index: int

    def __post_init__(self):
        s = len(self.elements)
        if s == 0:
            raise GroupError("group has no elements")
        if len(set(self.elements)) != s:
            raise GroupError("duplicate group element labels")
        if len(self.table) != s or any(len(row) != s for row in self.table):
            raise GroupError(f"table must be {s}x{s}")
        e = self.identity_index
        for i in range(s):
            if self.table[e][i] != i or self.table[i][e] != i:
                raise GroupError(f"identity law fails at {self.elements[i]!r}")
        for i, row in enumerate(self.table):
            if sorted(row) != list(range(s)):
                raise GroupError(f"row {self.elements[i]!r} is not a permutation (not a Latin square)")
        for j in range(s):
            if sorted(self.table[i][j] for i in range(s)) != list(range(s)):
                raise GroupError(f"column {self.elements[j]!r} is not a permutation (not a Latin square)")
        for a, b, c in product(range(s), repeat=3):
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                w = (self.elements[a], self.elements[b], self.elements[c])
                raise GroupError(f"associativity fails on {w}")

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self):
        return self.elements[self.identity_index]

    def index(self, label) -> int:
        try:
            return self.elements.index(label)
        except ValueError:
            raise UnknownGroupElement(f"{label!r} is not an element of the group") from None

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def ordered_indices(self) -> list[int]:
        """Element indices with the identity moved last (g_1, ..., g_s = e)."""
        e = self.identity_index
        return [i for i in range(self.order) if i != e] + [e]

    @classmethod
    def cyclic(cls, n: int) -> "GroupTable":
        labels = tuple(["e"] + ["g" if k == 1 else f"g{k}" for k in range(1, n)])
        return cls(labels, tuple(tuple((i + j) % n for j in range(n)) for i in range(n)), 0)

    @classmethod
    def trivial(cls) -> "GroupTable":
        return cls.cyclic(1)


def _parse_rational(value) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise SchemaError(f"rationals must be 'p/q' strings, got {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise SchemaError(f"bad rational {value!r}") from None


def _fmt(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def _scalar(value: Fraction):
    return value.numerator if value.denominator == 1 else value


@dataclass(frozen=True)
class GradedAlgebraSpec:
    """A finite-dimensional G-graded algebra, validated on construction.

    ``products[(i, j)]`` is the coordinate vector of ``b_i * b_j``; missing
    pairs multiply to zero.  ``grading[i]`` is the group index of ``b_i``.
    """

    group: GroupTable
    basis: tuple
    products: Mapping
    grading: tuple
    unit: tuple | None = None
    name: str = ""
    _sparse: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        k = self.dim
        if k == 0:
            raise SchemaError("algebra needs at least one basis element")
        if len(set(self.basis)) != k:
            raise SchemaError("duplicate basis labels")
        if len(self.grading) != k:
            raise SchemaError("grading must assign one group element per basis element")
        for g in self.grading:
            if not 0 <= g < self.group.order:
                raise SchemaError(f"grading index {g} out of range")
        prods = {}
        for (i, j), vec in self.products.items():
            if not (0 <= i < k and 0 <= j < k) or len(vec) != k:
                raise SchemaError(f"product ({i}, {j}) has wrong shape")
            vec = tuple(Fraction(v) for v in vec)
            if any(vec):
                prods[(i, j)] = vec
        object.__setattr__(self, "products", prods)
        if self.unit is not None:
            if len(self.unit) != k:
                raise SchemaError("unit has wrong length")
            object.__setattr__(self, "unit", tuple(Fraction(v) for v in self.unit))
        # row-sparse table: sparse[i][j] = ((m, c), ...) with b_i b_j = sum c b_m
        sparse = tuple(
            tuple(tuple((m, _scalar(c)) for m, c in enumerate(prods.get((i, j), ())) if c) for j in range(k))
            for i in range(k))
        object.__setattr__(self, "_sparse", sparse)
        self._check_grading()
        self._check_associative()
        if self.unit is not None:
            self._check_unit()

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_unital(self) -> bool:
        return self.unit is not None

    def basis_product(self, i: int, j: int):
        """Nonzero ``(m, c)`` pairs of ``b_i * b_j``."""
        return self._sparse[i][j]

    def times_basis(self, v: Mapping[int, Any], j: int) -> dict:
        """Sparse vector ``v * b_j``."""
        out: dict = {}
        for i, c in v.items():
            for m, s in self._sparse[i][j]:
                out[m] = out.get(m, 0) + c * s
        return {m: c for m, c in out.items() if c}

    def multiply(self, x: Sequence, y: Sequence) -> tuple:
        k = self.dim
        if len(x) != k or len(y) != k:
            raise DimensionError(f"vectors must have length {k}")
        out = [Fraction(0)] * k
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                for m, c in self._sparse[i][j]:
                    out[m] += Fraction(xi) * Fraction(yj) * c
        return tuple(out)

    def basis_vector(self, i: int) -> tuple:
        return tuple(Fraction(int(m == i)) for m in range(self.dim))

    def homogeneous_basis(self, g) -> list[int]:
        """Indices of basis elements of degree ``g`` (a label or a group index)."""
        gi = g if isinstance(g, int) and not isinstance(g, bool) and 0 <= g < self.group.order \
            else self.group.index(g)
        return [i for i, h in enumerate(self.grading) if h == gi]

    def component_dims(self) -> list[int]:
        return [len(self.homogeneous_basis(g)) for g in range(self.group.order)]

    def nilpotency_index(self) -> int | None:
        """Least t with A^t = 0, or None if the algebra is not nilpotent."""
        k = self.dim
        current = [{i: Fraction(1)} for i in range(k)]
        t = 1
        while current:
            nxt = [self.times_basis(v, j) for v in current for j in range(k)]
            basis = list(echelon_exact(r for r in nxt if r).values())
            t += 1
            if len(basis) == len(current):
                return None
            current = basis
        return t

    def _check_grading(self):
        for (i, j), vec in self.products.items():
            want = self.group.mul(self.grading[i], self.grading[j])
            for m, c in enumerate(vec):
                if c and self.grading[m] != want:
                    raise GradingError(
                        f"{self.basis[i]}*{self.basis[j]} has a {self.basis[m]} coordinate, but "
                        f"{self.basis[m]} has degree {self.group.elements[self.grading[m]]!r}, expected "
                        f"{self.group.elements[want]!r}", witness=(self.basis[i], self.basis[j], self.basis[m]))

    def _check_associative(self):
        k = self.dim
        for i, j, l in product(range(k), repeat=3):
            left = self.times_basis(dict(self._sparse[i][j]), l)
            right: dict = {}
            for m, c in self._sparse[j][l]:
                for q, s in self._sparse[i][m]:
                    right[q] = right.get(q, 0) + c * s
            right = {q: c for q, c in right.items() if c}
            if left != right:
                w = (self.basis[i], self.basis[j], self.basis[l])
                raise AssociativityError(f"(b_i b_j) b_l != b_i (b_j b_l) for {w}", witness=w)

    def _check_unit(self):
        e = self.group.identity_index
        for i, c in enumerate(self.unit):
            if c and self.grading[i] != e:
                raise UnitError(f"unit has a component on {self.basis[i]}, which is not in the identity component")
        for i in range(self.dim):
            b = self.basis_vector(i)
            if self.multiply(self.unit, b) != b or self.multiply(b, self.unit) != b:
                raise UnitError(f"claimed unit does not act as identity on {self.basis[i]}")

    def describe(self) -> str:
        kind = "unital" if self.is_unital else "non-unital"
        return f"valid, {kind}, |G|={self.group.order}, dim={self.dim}"

    def to_document(self) -> dict:
        doc: dict = {}
        if self.name:
            doc["name"] = self.name
        doc["group"] = {"elements": list(self.group.elements),
                        "table": [[self.group.elements[x] for x in row] for row in self.group.table],
                        "identity": self.group.identity}
        doc["basis"] = list(self.basis)
        doc["grading"] = {b: self.group.elements[g] for b, g in zip(self.basis, self.grading)}
        doc["products"] = [
            {"left": self.basis[i], "right": self.basis[j],
             "result": [[self.basis[m], _fmt(c)] for m, c in enumerate(vec) if c]}
            for (i, j), vec in sorted(self.products.items())]
        if self.unit is not None:
            doc["unit"] = [[self.basis[m], _fmt(c)] for m, c in enumerate(self.unit) if c]
        return doc


def _group_from_document(doc) -> GroupTable:
    if not isinstance(doc, dict):
        raise SchemaError("'group' must be an object")
    if "cyclic" in doc:
        n = doc["cyclic"]
        if not isinstance(n, int) or n < 1:
            raise SchemaError("'cyclic' must be a positive integer")
        return GroupTable.cyclic(n)
    try:
        elements = tuple(doc["elements"])
        table = doc["table"]
        identity = doc["identity"]
    except (KeyError, TypeError):
        raise SchemaError("group needs 'elements', 'table' and 'identity'") from None
    if identity not in elements:
        raise GroupError(f"identity {identity!r} is not among the elements")
    if not isinstance(table, list) or len(table) != len(elements):
        raise GroupError(f"table must have one row per element ({len(elements)} rows)")
    index = {g: i for i, g in enumerate(elements)}
    rows = []
    for r, row in enumerate(table):
        if not isinstance(row, list) or len(row) != len(elements):
            raise GroupError(f"table row {r} must have {len(elements)} entries")
        try:
            rows.append(tuple(index[x] for x in row))
        except (KeyError, TypeError):
            raise GroupError(f"table row {r} names an unknown element") from None
    return GroupTable(elements, tuple(rows), index[identity])


def _vector(entries, index: Mapping[str, int], k: int, what: str) -> tuple:
    if not isinstance(entries, list):
        raise SchemaError(f"{what} must be a list of [basis, rational] pairs")
    vec = [Fraction(0)] * k
    for entry in entries:
        if not (isinstance(entry, list) and len(entry) == 2):
            raise SchemaError(f"{what}: bad entry {entry!r}")
        label, value = entry
        if label not in index:
            raise SchemaError(f"{what}: unknown basis element {label!r}")
        vec[index[label]] += _parse_rational(value)
    return tuple(vec)


def load_spec(document) -> GradedAlgebraSpec:
    """Build and validate a spec from a JSON string, a parsed dict, or a path."""
    if isinstance(document, Path):
        document = document.read_text()
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not valid JSON: {exc}") from None
    if not isinstance(document, dict):
        raise SchemaError("spec document must be a JSON object")
    for key in ("group", "basis", "grading"):
        if key not in document:
            raise SchemaError(f"missing required key {key!r}")
    group = _group_from_document(document["group"])
    basis = document["basis"]
    if not isinstance(basis, list) or not all(isinstance(b, str) for b in basis):
        raise SchemaError("'basis' must be a list of labels")
    index = {b: i for i, b in enumerate(basis)}
    grading_doc = document["grading"]
    if not isinstance(grading_doc, dict) or set(grading_doc) != set(basis):
        raise SchemaError("'grading' must map every basis label to a group element")
    grading = tuple(group.index(grading_doc[b]) for b in basis)
    products: dict = {}
    for entry in document.get("products", []):
        if not isinstance(entry, dict) or not {"left", "right", "result"} <= set(entry):
            raise SchemaError(f"bad product entry {entry!r}")
        if entry["left"] not in index or entry["right"] not in index:
            raise SchemaError(f"product names unknown basis element: {entry!r}")
        key = (index[entry["left"]], index[entry["right"]])
        if key in products:
            raise SchemaError(f"product {entry['left']}*{entry['right']} given twice")
        products[key] = _vector(entry["result"], index, len(basis), "product result")
    unit = None
    if document.get("unit") is not None:
        unit = _vector(document["unit"], index, len(basis), "unit")
    return GradedAlgebraSpec(group, tuple(basis), products, grading, unit, name=document.get("name", ""))


def load_spec_file(path) -> GradedAlgebraSpec:
    return load_spec(Path(path))


def homogeneous_basis(spec: GradedAlgebraSpec, g) -> list[int]:
    return spec.homogeneous_basis(g)


def multiply(spec: GradedAlgebraSpec, x: Sequence, y: Sequence) -> tuple:
    return spec.multiply(x, y)

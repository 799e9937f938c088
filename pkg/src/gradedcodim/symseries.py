"""Truncated symmetric power series and their Schur expansions.

A :class:`SymSeries` in k variables is stored in the monomial symmetric
basis: the coefficient of every monomial ``t^gamma`` is kept once, under the
sorted exponent vector of ``gamma`` (a partition of height <= k).  Products
are truncated at total degree ``trunc_degree``.

Schur expansions are obtained by a unitriangular solve against Kostka
numbers, walking partitions in lexicographically decreasing order (a linear
extension of dominance order).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Iterator, Mapping, Sequence

from .partitions import EMPTY, Partition, kostka, lower_strip_set, partitions_of, partitions_up_to


def _clean(coeffs: Mapping, k: int, n: int) -> dict[Partition, Fraction]:
    out = {}
    for key, value in coeffs.items():
        lam = Partition(key)
        if lam.height > k:
            raise ValueError(f"{lam} has height > {k} variables")
        if lam.size > n:
            continue
        value = Fraction(value)
        if value:
            out[lam] = out.get(lam, Fraction(0)) + value
    return {lam: v for lam, v in out.items() if v}


def _fmt(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class SymSeries:
    num_vars: int
    trunc_degree: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.num_vars < 1 or self.trunc_degree < 0:
            raise ValueError("need num_vars >= 1 and trunc_degree >= 0")
        object.__setattr__(self, "coeffs", _clean(self.coeffs, self.num_vars, self.trunc_degree))

    def coefficient(self, exponent: Sequence[int]) -> Fraction:
        """Coefficient of the monomial with the given (unsorted) exponent vector."""
        if len(exponent) > self.num_vars:
            if any(exponent[self.num_vars:]):
                return Fraction(0)
            exponent = exponent[: self.num_vars]
        return self.coeffs.get(Partition(sorted(exponent, reverse=True)), Fraction(0))

    def monomials(self) -> Iterator[tuple[tuple[int, ...], Fraction]]:
        """Every monomial with nonzero coefficient, as full exponent vectors."""
        for lam in sorted(self.coeffs, reverse=True):
            padded = tuple(lam) + (0,) * (self.num_vars - len(lam))
            for gamma in sorted(set(permutations(padded)), reverse=True):
                yield gamma, self.coeffs[lam]

    def homogeneous_part(self, d: int) -> "SymSeries":
        return SymSeries(self.num_vars, self.trunc_degree,
                         {lam: c for lam, c in self.coeffs.items() if lam.size == d})

    def truncate(self, n: int) -> "SymSeries":
        return SymSeries(self.num_vars, min(n, self.trunc_degree), self.coeffs)

    def _check(self, other: "SymSeries") -> None:
        if self.num_vars != other.num_vars:
            raise ValueError("series in different numbers of variables")

    def __add__(self, other: "SymSeries") -> "SymSeries":
        self._check(other)
        out = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            out[lam] = out.get(lam, 0) + c
        return SymSeries(self.num_vars, min(self.trunc_degree, other.trunc_degree), out)

    def __neg__(self) -> "SymSeries":
        return SymSeries(self.num_vars, self.trunc_degree, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other: "SymSeries") -> "SymSeries":
        return self + (-other)

    def scale(self, c) -> "SymSeries":
        c = Fraction(c)
        return SymSeries(self.num_vars, self.trunc_degree, {k: c * v for k, v in self.coeffs.items()})

    def __mul__(self, other: "SymSeries") -> "SymSeries":
        self._check(other)
        k = self.num_vars
        n = min(self.trunc_degree, other.trunc_degree)
        # expand the sparser factor into full exponent vectors, keep the other sorted
        small, big = (self, other) if len(self.coeffs) <= len(other.coeffs) else (other, self)
        orbit = [(gamma, c) for gamma, c in small.monomials() if sum(gamma) <= n]
        out = {}
        for target in partitions_up_to(n, max_height=k):
            padded = tuple(target) + (0,) * (k - len(target))
            total = Fraction(0)
            for gamma, c in orbit:
                rest = [t - g for t, g in zip(padded, gamma)]
                if min(rest) < 0:
                    continue
                v = big.coeffs.get(Partition(sorted(rest, reverse=True)))
                if v:
                    total += c * v
            if total:
                out[target] = total
        return SymSeries(k, n, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymSeries):
            return NotImplemented
        return (self.num_vars == other.num_vars and self.trunc_degree == other.trunc_degree
                and self.coeffs == other.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def rows(self) -> list[tuple[str, str]]:
        """CSV rows ``sorted_exponent,coefficient``."""
        return [(str(lam), _fmt(self.coeffs[lam])) for lam in sorted(self.coeffs, key=_order)]


def _order(lam: Partition):
    # by degree, then lexicographically decreasing inside each degree
    return (lam.size, tuple(-p for p in lam) + (0,))


@dataclass(frozen=True)
class SchurExpansion:
    """``sum c_lambda s_lambda(t_1..t_k)`` truncated at total degree ``trunc_degree``."""

    num_vars: int
    trunc_degree: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _clean(self.coeffs, self.num_vars, self.trunc_degree))

    def __getitem__(self, lam) -> Fraction:
        return self.coeffs.get(Partition(lam), Fraction(0))

    def degree_part(self, d: int) -> dict[Partition, Fraction]:
        return {lam: c for lam, c in self.coeffs.items() if lam.size == d}

    def truncate(self, n: int) -> "SchurExpansion":
        return SchurExpansion(self.num_vars, min(n, self.trunc_degree), self.coeffs)

    def to_series(self) -> SymSeries:
        acc: dict = {}
        for lam, c in self.coeffs.items():
            for mu, v in schur_poly(lam, self.num_vars, self.trunc_degree).coeffs.items():
                acc[mu] = acc.get(mu, 0) + c * v
        return SymSeries(self.num_vars, self.trunc_degree, acc)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, SchurExpansion):
            return NotImplemented
        return (self.num_vars == other.num_vars and self.trunc_degree == other.trunc_degree
                and self.coeffs == other.coeffs)

    def rows(self) -> list[tuple[str, str]]:
        """CSV rows ``partition,coefficient``."""
        return [(str(lam), _fmt(self.coeffs[lam])) for lam in sorted(self.coeffs, key=_order)]


def schur_poly(lam: Sequence[int], k: int, n: int | None = None) -> SymSeries:
    """s_lambda(t_1..t_k); the coefficient at content mu is the Kostka number K_{lambda,mu}.

    ``n`` defaults to ``|lambda|``; the result is zero when ``h(lambda) > k`` or
    when ``|lambda| > n``.
    """
    lam = Partition(lam)
    n = lam.size if n is None else n
    if lam.height > k or lam.size > n:
        return SymSeries(k, n)
    coeffs = {mu: kostka(lam, mu) for mu in partitions_of(lam.size, max_height=k) if lam.dominates(mu)}
    return SymSeries(k, n, coeffs)


def free_poly_series(k: int, n: int) -> SymSeries:
    """prod (1 - t_i)^-1 truncated at degree n: every monomial has coefficient 1."""
    return SymSeries(k, n, {lam: 1 for lam in partitions_up_to(n, max_height=k)})


def one_minus_product(k: int, n: int) -> SymSeries:
    """prod_{i<=k} (1 - t_i) = sum_j (-1)^j e_j, truncated at degree n."""
    return SymSeries(k, n, {Partition((1,) * j): (-1) ** j for j in range(min(k, n) + 1)})


def expand_in_schur(f: SymSeries) -> SchurExpansion:
    """Unique coefficients c with f = sum c_lambda s_lambda up to the truncation degree."""
    k = f.num_vars
    out: dict[Partition, Fraction] = {}
    for d in range(f.trunc_degree + 1):
        found: list[tuple[Partition, Fraction]] = []
        for lam in partitions_of(d, max_height=k):
            c = f.coeffs.get(lam, Fraction(0))
            for nu, cn in found:
                if nu.dominates(lam):
                    c -= cn * kostka(nu, lam)
            if c:
                found.append((lam, c))
        out.update(found)
    return SchurExpansion(k, f.trunc_degree, out)


def m_from_a(a: SchurExpansion) -> SchurExpansion:
    """m_lambda = sum of a_mu over mu in L_lambda (Schur coefficients of a * prod (1-t_i)^-1)."""
    k, n = a.num_vars, a.trunc_degree
    out = {}
    for lam in partitions_up_to(n, max_height=k):
        total = sum((a.coeffs.get(mu, 0) for mu in lower_strip_set(lam)), Fraction(0))
        if total:
            out[lam] = total
    return SchurExpansion(k, n, out)


def a_from_m(m: SchurExpansion) -> SchurExpansion:
    """Inverse of :func:`m_from_a`: re-expand prod (1 - t_i) * series(m) in Schur functions.

    Multiplying by a polynomial never reads coefficients above the target
    degree, so the result is exact through ``m.trunc_degree``.
    """
    series = m.to_series() * one_minus_product(m.num_vars, m.trunc_degree)
    return expand_in_schur(series)


def expansion_from_degrees(rows: Mapping[int, Mapping], k: int, n: int) -> SchurExpansion:
    """Assemble per-degree coefficient tables ``{d: {lambda: c}}`` into one expansion."""
    coeffs = {}
    for d, row in rows.items():
        for lam, c in row.items():
            lam = Partition(lam)
            if lam.size != d:
                raise ValueError(f"{lam} filed under degree {d}")
            if lam.height <= k and d <= n:
                coeffs[lam] = c
    return SchurExpansion(k, n, coeffs)


__all__ = [
    "EMPTY",
    "SchurExpansion",
    "SymSeries",
    "a_from_m",
    "expand_in_schur",
    "expansion_from_degrees",
    "free_poly_series",
    "m_from_a",
    "one_minus_product",
    "schur_poly",
]

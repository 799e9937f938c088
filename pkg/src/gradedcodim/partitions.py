"""Partitions, Young diagrams and the tableau counts built on them.

Every list of partitions returned here is in lexicographically decreasing
order, so ``(4), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)`` for n = 4.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from math import factorial
from typing import Iterable, Sequence


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    Trailing zeros are stripped on construction, so ``Partition((2, 1, 0))``
    equals ``Partition((2, 1))``; this lets padded exponent vectors be passed
    in directly.
    """

    def __new__(cls, parts: Iterable[int] = ()):
        parts = [int(p) for p in parts]
        while parts and parts[-1] == 0:
            parts.pop()
        for i, p in enumerate(parts):
            if p <= 0:
                raise ValueError(f"partition parts must be positive: {parts}")
            if i and parts[i - 1] < p:
                raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Inverse of ``str``: ``"[4,3,1]"`` -> ``Partition((4, 3, 1))``."""
        text = text.strip()
        if not (text.startswith("[") and text.endswith("]")):
            raise ValueError(f"not a bracketed partition: {text!r}")
        body = text[1:-1].strip()
        if not body:
            return cls()
        return cls(int(p) for p in body.split(","))

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def height(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """0-based row length, zero past the last row."""
        return self[i] if i < len(self) else 0

    def conjugate(self) -> "Partition":
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def contains(self, other: Sequence[int]) -> bool:
        return len(other) <= len(self) and all(o <= s for o, s in zip(other, self))

    def dominates(self, other: Sequence[int]) -> bool:
        """Dominance order on partitions of the same size."""
        a = b = 0
        for i in range(max(len(self), len(other))):
            a += self.part(i)
            b += other[i] if i < len(other) else 0
            if a < b:
                return False
        return a == b

    def __str__(self) -> str:
        return "[" + ",".join(str(p) for p in self) + "]"

    def __repr__(self) -> str:
        return f"Partition({tuple(self)!r})"


EMPTY = Partition()


def partitions_of(n: int, max_height: int | None = None, max_part: int | None = None) -> list[Partition]:
    """All partitions of ``n``, optionally of bounded height and largest part."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return [Partition(p) for p in _partitions(n, n if max_part is None else max_part,
                                              n if max_height is None else max_height)]


@lru_cache(maxsize=None)
def _partitions(n: int, max_part: int, max_height: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    if max_height == 0:
        return ()
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - first, first, max_height - 1):
            out.append((first,) + rest)
    return tuple(out)


def partitions_up_to(n: int, max_height: int | None = None) -> list[Partition]:
    """Partitions of every size 0..n, grouped by size then lex decreasing."""
    return [lam for m in range(n + 1) for lam in partitions_of(m, max_height)]


def hook_lengths(lam: Partition) -> list[list[int]]:
    conj = lam.conjugate()
    return [[lam[i] - j + conj[j] - i - 1 for j in range(lam[i])] for i in range(len(lam))]


def dim_irrep(lam: Sequence[int]) -> int:
    """Dimension of the irreducible S_n module D_lambda (hook-length formula)."""
    lam = Partition(lam)
    denom = 1
    for row in hook_lengths(lam):
        for h in row:
            denom *= h
    return factorial(lam.size) // denom


def pieri_expand(mu: Sequence[int], k: int) -> list[Partition]:
    """Shapes obtained from ``mu`` by adding a horizontal strip of ``k`` boxes."""
    if k < 0:
        raise ValueError("k must be non-negative")
    mu = Partition(mu)
    rows = len(mu) + 1
    out: list[Partition] = []

    def grow(i: int, left: int, acc: list[int]) -> None:
        if i == rows:
            if left == 0:
                out.append(Partition(acc))
            return
        base = mu.part(i)
        cap = base + left if i == 0 else min(mu[i - 1], base + left)
        for v in range(base, cap + 1):
            acc.append(v)
            grow(i + 1, left - (v - base), acc)
            acc.pop()

    grow(0, k, [])
    return sorted(set(out), reverse=True)


def lower_strip_set(lam: Sequence[int]) -> list[Partition]:
    """All mu with lam_{i+1} <= mu_i <= lam_i for every row i (mu padded by zeros).

    Equivalently, the mu for which lam / mu is a horizontal strip.
    """
    lam = Partition(lam)
    ranges = [range(lam.part(i + 1), lam[i] + 1) for i in range(len(lam))]
    return sorted({Partition(mu) for mu in product(*ranges)}, reverse=True)


def is_horizontal_strip(lam: Sequence[int], mu: Sequence[int]) -> bool:
    lam, mu = Partition(lam), Partition(mu)
    if len(mu) > len(lam):
        return False
    return all(lam.part(i + 1) <= mu.part(i) <= lam[i] for i in range(len(lam)))


def kostka(lam: Sequence[int], content: Sequence[int]) -> int:
    """Number of semistandard fillings of shape ``lam`` with ``content[i]`` copies of i+1.

    Zero entries in the content are allowed; the count does not depend on the
    order of the content.
    """
    lam = Partition(lam)
    content = tuple(int(a) for a in content)
    if any(a < 0 for a in content):
        raise ValueError(f"content must be non-negative: {content}")
    if sum(content) != lam.size:
        raise ValueError(f"content {content} does not have size |lam| = {lam.size}")
    return _kostka(lam, content)


@lru_cache(maxsize=None)
def _kostka(lam: Partition, content: tuple[int, ...]) -> int:
    # peel off the boxes holding the largest letter: they form a horizontal strip
    if not content:
        return 1 if not lam else 0
    *rest, last = content
    if len(lam) > len(content):
        return 0
    target = lam.size - last
    return sum(_kostka(mu, tuple(rest)) for mu in lower_strip_set(lam) if mu.size == target)

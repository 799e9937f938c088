from itertools import permutations, product
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gradedcodim.partitions import (EMPTY, Partition, dim_irrep, is_horizontal_strip, kostka, lower_strip_set,
                                    partitions_of, pieri_expand)


# independent oracles

def brute_partitions(n):
    """Every weakly decreasing positive sequence summing to n, by filtering compositions."""
    found = set()

    def rec(left, acc):
        if left == 0:
            found.add(tuple(sorted(acc, reverse=True)))
            return
        for p in range(1, left + 1):
            rec(left - p, acc + [p])

    rec(n, [])
    return found


def count_syt(shape):
    """Standard tableaux by removing the cell holding the largest entry (a corner)."""
    shape = list(shape)
    if sum(shape) == 0:
        return 1
    total = 0
    for i, row in enumerate(shape):
        nxt = shape[i + 1] if i + 1 < len(shape) else 0
        if row > nxt:
            smaller = shape[:i] + [row - 1] + shape[i + 1:]
            total += count_syt([r for r in smaller if r])
    return total


def count_ssyt(shape, content):
    """Fill the diagram cell by cell with every admissible value and count."""
    cells = [(r, c) for r, length in enumerate(shape) for c in range(length)]
    letters = len(content)
    count = 0
    for values in product(range(letters), repeat=len(cells)):
        if any(values.count(v) != content[v] for v in range(letters)):
            continue
        t = dict(zip(cells, values))
        if all(t[(r, c)] <= t[(r, c + 1)] for (r, c) in cells if (r, c + 1) in t) and \
                all(t[(r, c)] < t[(r + 1, c)] for (r, c) in cells if (r + 1, c) in t):
            count += 1
    return count


def contained_below(lam):
    return [Partition(mu) for mu in product(*(range(p + 1) for p in lam))
            if all(a >= b for a, b in zip(mu, mu[1:]))]


def test_partition_normalizes_and_validates():
    assert Partition((2, 1, 0, 0)) == Partition((2, 1))
    assert Partition() == EMPTY and EMPTY.size == 0 and EMPTY.height == 0
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, -1))


@pytest.mark.parametrize("lam", [(), (1,), (4, 3, 1), (2, 2, 2)])
def test_partition_text_roundtrip(lam):
    p = Partition(lam)
    assert Partition.parse(str(p)) == p
    assert str(Partition((4, 3, 1))) == "[4,3,1]" and str(EMPTY) == "[]"


def test_partitions_of_examples():
    assert partitions_of(0) == [EMPTY]
    assert partitions_of(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert partitions_of(4, max_height=2) == [(4,), (3, 1), (2, 2)]


@pytest.mark.parametrize("n", range(0, 11))
def test_partitions_of_matches_brute_force(n):
    got = partitions_of(n)
    assert len(got) == len(set(got))
    assert set(got) == brute_partitions(n)
    assert got == sorted(got, reverse=True)          # lexicographically decreasing
    for h in range(1, n + 1):
        assert partitions_of(n, max_height=h) == [p for p in got if len(p) <= h]


def test_dim_irrep_examples():
    assert all(dim_irrep((n,)) == 1 for n in range(1, 9))
    assert dim_irrep((1, 1, 1)) == 1
    assert dim_irrep((2, 1)) == 2
    assert dim_irrep(EMPTY) == 1


@pytest.mark.parametrize("n", range(0, 9))
def test_dim_irrep_matches_tableau_count(n):
    for lam in partitions_of(n):
        assert dim_irrep(lam) == count_syt(lam)


@pytest.mark.parametrize("n", range(0, 11))
def test_sum_of_squared_dimensions(n):
    assert sum(dim_irrep(lam) ** 2 for lam in partitions_of(n)) == factorial(n)


@pytest.mark.parametrize("n", range(1, 6))
def test_kostka_matches_tableau_enumeration(n):
    for lam in partitions_of(n):
        for mu in partitions_of(n):
            assert kostka(lam, mu) == count_ssyt(lam, mu), (lam, mu)


def test_kostka_values():
    assert kostka((2, 1), (1, 2)) == 1
    assert kostka((3, 2, 1), (1,) * 6) == dim_irrep((3, 2, 1)) == 16
    assert kostka((2, 2), (3, 1)) == 0            # content not dominated by the shape
    assert kostka((3,), (1, 0, 2)) == 1           # zero entries in the content are allowed


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 7).flatmap(lambda n: st.tuples(st.sampled_from(partitions_of(n)),
                                                     st.lists(st.integers(0, 3), min_size=1, max_size=4))))
def test_kostka_symmetric_in_content(case):
    lam, raw = case
    # scale raw into a content of |lam|
    total = sum(raw)
    if total == 0:
        return
    content = [0] * len(raw)
    left = lam.size
    for i, r in enumerate(raw):
        take = min(left, r * lam.size // total) if i < len(raw) - 1 else left
        content[i] = take
        left -= take
    value = kostka(lam, content)
    for perm in set(permutations(content)):
        assert kostka(lam, perm) == value
    if not lam.dominates(sorted(content, reverse=True)):
        assert value == 0


def test_pieri_examples():
    assert pieri_expand((2, 1), 2) == [(4, 1), (3, 2), (3, 1, 1), (2, 2, 1)]
    assert pieri_expand(EMPTY, 3) == [(3,)]
    assert pieri_expand((1, 1), 0) == [(1, 1)]


@pytest.mark.parametrize("size", range(0, 6))
def test_pieri_properties(size):
    for mu in partitions_of(size):
        for k in range(0, 5):
            out = pieri_expand(mu, k)
            assert len(out) == len(set(out))
            for nu in out:
                assert nu.size == size + k and nu.contains(mu)
                assert all(nu.part(i + 1) <= mu.part(i) for i in range(nu.height))


def test_lower_strip_set_example():
    assert set(lower_strip_set((2, 1))) == {(1,), (2,), (1, 1), (2, 1)}
    assert lower_strip_set(EMPTY) == [EMPTY]
    assert set(lower_strip_set((3,))) == {EMPTY, (1,), (2,), (3,)}


@pytest.mark.parametrize("size", range(0, 9))
def test_lower_strip_set_dual_to_pieri(size):
    for lam in partitions_of(size):
        strips = set(lower_strip_set(lam))
        assert lam in strips
        for mu in contained_below(lam):
            assert (mu in strips) == (lam in pieri_expand(mu, size - mu.size))
            assert (mu in strips) == is_horizontal_strip(lam, mu)
        assert all(mu.size <= lam.size and lam.contains(mu) for mu in strips)


def test_literal_reading_would_admit_empty_partition():
    # the empty partition is not a lower strip of (2,1): its complement has two cells in column 1
    assert EMPTY not in lower_strip_set((2, 1))
    assert (2, 1) not in pieri_expand(EMPTY, 3)

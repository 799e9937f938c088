"""Graded codimensions, weight-space dimensions and cocharacter multiplicities.

Everything is computed by brute-force evaluation.  A homogeneous block of
the relatively free algebra is fixed by its letter content: how many times
each graded variable ``x_{i,g}`` occurs.  Its dimension is the rank of the
matrix whose rows are the distinct words with that content and whose columns
are ``(multiset of (letter, basis element) choices, output coordinate)``.
Substituting a generic element ``sum_b xi_{i,g,b} b`` for every variable,
a column is exactly one coefficient of the resulting polynomial in the
``xi``; for multilinear words it is a plain basis assignment.  Assignments
whose product vanishes never produce a column.

Blocks with different contents use disjoint columns, so a weight space is
the direct sum of its blocks, and renaming variables does not change a
block's rank; blocks are cached under a variable-order-free key.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from math import factorial
from typing import Iterable, Sequence

from .algebra import GradedAlgebraSpec
from .asymptotics import binomial_invert, binomial_lift
from .errors import (BudgetExceeded, InsufficientTruncation, InvariantViolation, NegativeDelta,
                     NegativeMultiplicity, NotUnital)
from .linalg import matrix_rank
from .partitions import EMPTY, Partition, dim_irrep, lower_strip_set, partitions_of
from .symseries import SymSeries, a_from_m, expand_in_schur, expansion_from_degrees

THREADS_ENV = "GRADEDCODIM_THREADS"


@dataclass(frozen=True)
class Budgets:
    max_n: int = 7                   # longest multilinear word
    max_weight_degree: int = 10      # largest |alpha| for weight spaces
    max_entries: int = 5_000_000     # nonzero evaluations per block
    max_rank_ops: int = 20_000_000   # row updates per elimination

    def __post_init__(self):
        if min(self.max_n, self.max_weight_degree, self.max_entries, self.max_rank_ops) < 1:
            raise ValueError("budgets must be positive")


@dataclass(frozen=True)
class CompositionBlock:
    composition: tuple   # (n_1, ..., n_s) in the engine's group order, identity last
    value: int
    multinomial: int


@dataclass
class CodimRow:
    n: int
    value: int
    blocks: list


@dataclass
class CodimTable:
    group_order: tuple           # element labels g_1, ..., g_s = e
    unital: bool
    rows: dict = field(default_factory=dict)
    truncated_at: int | None = None
    truncation_reason: str = ""

    def values(self) -> dict:
        return {n: row.value for n, row in sorted(self.rows.items())}

    def sequence(self) -> list[int]:
        """c_0, c_1, ..., c_N with the convention c_0 = 1 (the empty word)."""
        out = [1]
        for n in range(1, max(self.rows, default=0) + 1):
            out.append(self.rows[n].value)
        return out


@dataclass
class CocharacterRow:
    n: int
    multiplicities: dict

    def support(self) -> list[Partition]:
        return sorted((lam for lam, m in self.multiplicities.items() if m), reverse=True)

    def dimension(self) -> int:
        return sum(m * dim_irrep(lam) for lam, m in self.multiplicities.items())


def multinomial(n: int, parts: Sequence[int]) -> int:
    out = factorial(n)
    for p in parts:
        out //= factorial(p)
    return out


def multinomial_step_holds(parts: Sequence[int]) -> bool:
    """Check (n+1; n_1..n_s+1) = (n; n_1..n_s) + sum_{i<s} (n; .., n_i - 1, .., n_s + 1).

    This is the step that makes c_n <= c_{n+1} once every block is monotone.
    """
    parts = tuple(parts)
    n, last = sum(parts), parts[-1]
    rhs = multinomial(n, parts)
    for i, p in enumerate(parts[:-1]):
        if p:
            rhs += multinomial(n, parts[:i] + (p - 1,) + parts[i + 1:-1] + (last + 1,))
    return multinomial(n + 1, parts[:-1] + (last + 1,)) == rhs


def compositions(n: int, s: int) -> list[tuple[int, ...]]:
    """Compositions of n into s non-negative parts, colexicographic (last part slowest)."""
    if s == 1:
        return [(n,)]
    out = [head + (last,) for last in range(n + 1) for head in compositions(n - last, s - 1)]
    return out


def _canonical(content: Iterable[Sequence[int]]) -> tuple:
    """Order-free key of a letter content: one count vector (over group indices) per variable."""
    return tuple(sorted(tuple(row) for row in content if any(row)))


def _block_matrix(spec: GradedAlgebraSpec, letters: Sequence[tuple], counts: Sequence[int],
                  limit: int | None = None) -> list[dict]:
    """Rows: distinct words with the given letter counts.  Columns: (multiset of basis choices, coordinate).

    Products are built prefix by prefix and zero prefixes are dropped, so
    ``limit`` bounds the nonzero evaluations actually performed.
    """
    comps = [spec.homogeneous_basis(g) for _, g in letters]
    spent = [0]
    total = sum(counts)
    remaining = list(counts)
    rows: dict = {}
    cols: dict = {}
    word: list = []
    choice: list = []

    def walk(vec):
        if len(word) == total:
            key = tuple(sorted(choice))
            row = rows.setdefault(tuple(word), {})
            for m, c in vec.items():
                col = cols.setdefault((key, m), len(cols))
                row[col] = row.get(col, 0) + c
            return
        for li, comp in enumerate(comps):
            if not remaining[li]:
                continue
            remaining[li] -= 1
            word.append(li)
            for b in comp:
                nxt = {b: 1} if vec is None else spec.times_basis(vec, b)
                if nxt:
                    spent[0] += 1
                    if limit is not None and spent[0] > limit:
                        raise BudgetExceeded(f"block with {multinomial(total, counts)} words needs more than "
                                             f"{limit} nonzero evaluations")
                    choice.append((li, b))
                    walk(nxt)
                    choice.pop()
            word.pop()
            remaining[li] += 1

    walk(None)
    return list(rows.values())


def _content_rank(spec: GradedAlgebraSpec, canon: tuple, budgets: Budgets, mode: str,
                  audit: list | None = None) -> int:
    letters, counts = [], []
    for var, row in enumerate(canon):
        for g, c in enumerate(row):
            if c:
                letters.append((var, g))
                counts.append(c)
    total = sum(counts)
    if total == 0:
        return 1
    dims = [len(spec.homogeneous_basis(g)) for _, g in letters]
    if 0 in dims:
        return 0
    rows = _block_matrix(spec, letters, counts, budgets.max_entries)
    return matrix_rank(rows, mode=mode, audit=audit, max_ops=budgets.max_rank_ops)


def _block_task(args):
    spec, canon, budgets, mode = args
    audit: list = []
    rank = _content_rank(spec, canon, budgets, mode, audit)
    return rank, audit


def _threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


class CodimEngine:
    """Brute-force evaluator bound to one spec, with a cache of block ranks.

    ``rank_mode`` is passed to :func:`gradedcodim.linalg.matrix_rank`; every
    rank computation is appended to ``audit`` when one is supplied.
    """

    def __init__(self, spec: GradedAlgebraSpec, budgets: Budgets | None = None, rank_mode: str = "modular",
                 audit: list | None = None, workers: int | None = None):
        self.spec = spec
        self.budgets = budgets or Budgets()
        self.rank_mode = rank_mode
        self.audit = audit
        self.workers = _threads() if workers is None else workers
        self._cache: dict = {}
        self._codim: dict = {}
        self._cochar: dict = {}
        group = spec.group
        self.order = group.ordered_indices()          # g_1, ..., g_s = e
        self.labels = tuple(group.elements[g] for g in self.order)

    # block ranks

    def _rank(self, canon: tuple) -> int:
        if canon not in self._cache:
            self._cache[canon] = _content_rank(self.spec, canon, self.budgets, self.rank_mode, self.audit)
        return self._cache[canon]

    def _prefetch(self, canons: Iterable[tuple]) -> None:
        todo = sorted({c for c in canons if c not in self._cache})
        if self.workers <= 1 or len(todo) <= 1:
            for c in todo:
                self._rank(c)
            return
        tasks = [(self.spec, c, self.budgets, self.rank_mode) for c in todo]
        with ProcessPoolExecutor(max_workers=self.workers) as pool:
            results = list(pool.map(_block_task, tasks))
        for c, (rank, audit) in zip(todo, results):
            self._cache[c] = rank
            if self.audit is not None:
                self.audit.extend(audit)

    def _group_index(self, g) -> int:
        if isinstance(g, int) and not isinstance(g, bool) and 0 <= g < self.spec.group.order:
            return g
        return self.spec.group.index(g)

    def _check_n(self, n: int) -> None:
        if n > self.budgets.max_n:
            raise BudgetExceeded(f"n = {n} exceeds the factorial budget max_n = {self.budgets.max_n}")

    # multilinear part

    def multilinear_codim(self, h: Sequence) -> int:
        """dim C_h for the grading vector h (labels or group indices); no caching."""
        n = len(h)
        if n < 1:
            raise ValueError("need at least one variable")
        self._check_n(n)
        s = self.spec.group.order
        content = [tuple(int(self._group_index(g) == j) for j in range(s)) for g in h]
        letters = [(i, row.index(1)) for i, row in enumerate(content)]
        dims = [len(self.spec.homogeneous_basis(g)) for _, g in letters]
        if 0 in dims:
            return 0
        rows = _block_matrix(self.spec, letters, [1] * n, self.budgets.max_entries)
        return matrix_rank(rows, mode=self.rank_mode, audit=self.audit,
                           max_ops=self.budgets.max_rank_ops)

    def composition_canon(self, comp: Sequence[int]) -> tuple:
        s = self.spec.group.order
        rows = []
        for pos, count in zip(self.order, comp):
            rows.extend([tuple(int(j == pos) for j in range(s))] * count)
        return _canonical(rows)

    def graded_codim(self, n: int) -> CodimRow:
        """c_n^G as the multinomial-weighted sum of one block per composition of n."""
        if n in self._codim:
            return self._codim[n]
        self._check_n(n)
        comps = compositions(n, self.spec.group.order)
        canons = [self.composition_canon(c) for c in comps]
        self._prefetch(canons)
        blocks = [CompositionBlock(c, self._rank(k), multinomial(n, c)) for c, k in zip(comps, canons)]
        row = CodimRow(n, sum(b.value * b.multinomial for b in blocks), blocks)
        self._codim[n] = row
        return row

    def codim_table(self, max_n: int) -> CodimTable:
        """Rows n = 1..max_n; stops at the first n that exceeds a budget."""
        table = CodimTable(self.labels, self.spec.is_unital)
        for n in range(1, max_n + 1):
            try:
                table.rows[n] = self.graded_codim(n)
            except BudgetExceeded as exc:
                table.truncated_at = n
                table.truncation_reason = str(exc)
                break
        return table

    # weight spaces and cocharacters

    def weight_space_dim(self, alpha: Sequence[int]) -> int:
        """dim of the weight space R^alpha: words with alpha_i occurrences of variable i."""
        alpha = [int(a) for a in alpha if a]
        if any(a < 0 for a in alpha):
            raise ValueError("weights must be non-negative")
        total = sum(alpha)
        if total == 0:
            return 1 if self.spec.is_unital else 0
        if total > self.budgets.max_weight_degree:
            raise BudgetExceeded(f"|alpha| = {total} exceeds max_weight_degree = "
                                 f"{self.budgets.max_weight_degree}")
        s = self.spec.group.order
        per_var = [compositions(a, s) for a in alpha]
        tally: dict = {}
        for content in product(*per_var):
            canon = _canonical(content)
            tally[canon] = tally.get(canon, 0) + 1
        self._prefetch(tally)
        return sum(mult * self._rank(canon) for canon, mult in tally.items())

    def cocharacter(self, n: int) -> CocharacterRow:
        """m_lambda for lambda |- n from weight-space dimensions and a Kostka solve."""
        if n in self._cochar:
            return self._cochar[n]
        if n == 0:
            row = CocharacterRow(0, {EMPTY: 1} if self.spec.is_unital else {})
            self._cochar[0] = row
            return row
        self._check_n(n)
        weights = {mu: self.weight_space_dim(mu) for mu in partitions_of(n)}
        expansion = expand_in_schur(SymSeries(n, n, weights))
        mult = {}
        for lam in partitions_of(n):
            m = expansion[lam]
            if m.denominator != 1:
                raise InvariantViolation(f"non-integral multiplicity m_{lam} = {m}")
            if m < 0:
                raise NegativeMultiplicity(f"m_{lam} = {m} < 0")
            mult[lam] = int(m)
        row = CocharacterRow(n, mult)
        c_n = self.graded_codim(n).value
        if row.dimension() != c_n:
            raise InvariantViolation(f"sum m_lambda d_lambda = {row.dimension()} but c_{n} = {c_n}")
        self._cochar[n] = row
        return row

    def a_table(self, max_n: int, m_rows: dict | None = None) -> dict:
        """a_lambda for all |lambda| <= max_n, from the m rows through prod (1 - t_i).

        ``m_rows`` maps each degree 0..max_n to ``{lambda: m_lambda}``; missing
        degrees are computed unless rows were supplied, in which case a gap
        raises InsufficientTruncation.
        """
        if not self.spec.is_unital:
            raise NotUnital("a_lambda needs a unital spec")
        if m_rows is None:
            m_rows = {d: self.cocharacter(d).multiplicities for d in range(max_n + 1)}
        missing = [d for d in range(max_n + 1) if d not in m_rows]
        if missing:
            raise InsufficientTruncation(f"cocharacter rows missing for degrees {missing}")
        k = max(1, max_n)
        a = a_from_m(expansion_from_degrees({d: m_rows[d] for d in range(max_n + 1)}, k, max_n))
        out = {d: {} for d in range(max_n + 1)}
        for lam, c in a.coeffs.items():
            if c.denominator != 1:
                raise InvariantViolation(f"non-integral a_{lam} = {c}")
            if c < 0:
                raise NegativeMultiplicity(f"a_{lam} = {c} < 0")
            out[lam.size][lam] = int(c)
        return out

    def a_multiplicities(self, n: int) -> dict:
        return self.a_table(n)[n]


# module-level forms of the engine operations

def multilinear_codim(spec, h, **kwargs) -> int:
    return CodimEngine(spec, **kwargs).multilinear_codim(h)


def graded_codim(spec, n, **kwargs) -> CodimRow:
    return CodimEngine(spec, **kwargs).graded_codim(n)


def weight_space_dim(spec, alpha, **kwargs) -> int:
    return CodimEngine(spec, **kwargs).weight_space_dim(alpha)


def cocharacter_multiplicities(spec, n, **kwargs) -> CocharacterRow:
    return CodimEngine(spec, **kwargs).cocharacter(n)


def a_multiplicities(spec, n, **kwargs) -> dict:
    return CodimEngine(spec, **kwargs).a_multiplicities(n)


def proper_deltas(c, unital: bool | None = None) -> list[int]:
    """delta_0..delta_N with c_n = sum binom(n, s) delta_s.

    ``c`` is a CodimTable (c_0 = 1 is implied) or a sequence starting at c_0.
    """
    if isinstance(c, CodimTable):
        unital = c.unital if unital is None else unital
        seq = c.sequence()
    else:
        seq = [int(x) for x in c]
        unital = True if unital is None else unital
    if not unital:
        raise NotUnital("the binomial decomposition of c_n needs a unital spec")
    deltas = binomial_invert(seq)
    bad = [(s, d) for s, d in enumerate(deltas) if d < 0]
    if bad:
        raise NegativeDelta(f"negative proper coefficients {bad}")
    return deltas


# identities checked on computed data

def strip_sum_violations(a_rows: dict, m_rows: dict) -> list:
    """Partitions where m_lambda != sum_{mu in L_lambda} a_mu."""
    flat_a = {lam: c for row in a_rows.values() for lam, c in row.items()}
    bad = []
    for d, row in sorted(m_rows.items()):
        for lam in partitions_of(d):
            want = row.get(lam, 0)
            got = sum(flat_a.get(mu, 0) for mu in lower_strip_set(lam))
            if want != got:
                bad.append((lam, want, got))
    return bad


def delta_from_a(a_rows: dict) -> list[int]:
    """sum_{lambda |- s} a_lambda d_lambda for s = 0..max degree."""
    return [sum(c * dim_irrep(lam) for lam, c in a_rows[s].items()) for s in range(max(a_rows) + 1)]


def lift_matches(c: Sequence[int], deltas: Sequence[int]) -> bool:
    return list(binomial_lift(deltas)) == [int(x) for x in c]


def monotonicity(table: CodimTable, spec: GradedAlgebraSpec) -> tuple[bool, int, str]:
    """Check c_n <= c_{n+1} from the guaranteed threshold on.

    The threshold is 1 for unital specs, the nilpotency index t for nilpotent
    specs (c_n = 0 from n = t on), and dim A otherwise (the radical then has
    dimension below dim A, so its dim-A-th power vanishes).
    """
    values = table.values()
    if spec.is_unital:
        start = 1
    else:
        t = spec.nilpotency_index()
        start = t if t is not None else spec.dim
    pairs = [(n, values[n], values[n + 1]) for n in sorted(values) if n >= start and n + 1 in values]
    drops = [(n, a, b) for n, a, b in pairs if a > b]
    if drops:
        n, a, b = drops[0]
        return False, start, f"decreases at n={n}: {a} > {b}"
    tail = [v for n, v in values.items() if n >= start]
    if tail and not any(tail):
        return True, start, f"non-decreasing from n={start} (all zero)"
    return True, start, f"non-decreasing from n={start}"


def height_report(rows: Iterable[CocharacterRow], bound: int) -> tuple[int, bool]:
    """Largest height in the computed support and whether it respects ``bound``."""
    heights = [lam.height for row in rows for lam in row.support()]
    top = max(heights, default=0)
    return top, top <= bound


def strip_profile(rows: Iterable[CocharacterRow], r: int) -> int:
    """max lambda_{r+1} over the computed support (descriptive only)."""
    return max((lam.part(r) for row in rows for lam in row.support()), default=0)


__all__ = [
    "Budgets", "CocharacterRow", "CodimEngine", "CodimRow", "CodimTable", "CompositionBlock",
    "a_multiplicities", "cocharacter_multiplicities", "compositions", "delta_from_a", "graded_codim",
    "height_report", "lift_matches", "monotonicity", "multilinear_codim", "multinomial", "multinomial_step_holds",
    "proper_deltas",
    "strip_profile", "strip_sum_violations", "weight_space_dim",
]

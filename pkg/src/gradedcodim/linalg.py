"""Sparse rank computation over F_p and over the rationals.

Matrices are lists of rows, each row a ``{column: value}`` dict with
integer column ids and int or Fraction values.  Ranks over F_p can only
under-report the rational rank (when p divides some minor), so modular
results are cross-checked against other primes or the exact path depending
on ``mode``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import BudgetExceeded, RankDisagreement

# the three largest primes below 2**62
PRIMES = (4611686018427387847, 4611686018427387817, 4611686018427387787)
EXACT_THRESHOLD = 2000
RANK_MODES = ("modular", "exact", "both")


def _to_mod(value, p: int) -> int:
    if isinstance(value, Fraction):
        den = value.denominator % p
        if den == 0:
            raise ZeroDivisionError(f"denominator {value.denominator} vanishes mod {p}")
        return value.numerator * pow(den, -1, p) % p
    return int(value) % p


class _OpCounter:
    def __init__(self, limit: int | None):
        self.limit = limit
        self.spent = 0

    def charge(self, k: int) -> None:
        self.spent += k
        if self.limit is not None and self.spent > self.limit:
            raise BudgetExceeded(f"elimination needs more than {self.limit} row updates")


def compress_columns(rows: Sequence[dict]) -> list[dict]:
    """Drop columns proportional to an earlier one and relabel the rest.

    Neither step changes the rank over Q or over any F_p.  The survivors are
    numbered sparsest first, so the min-column pivot rule touches short
    columns early, and rows come out shortest first; both cut fill-in.
    """
    cols: dict = {}
    for r, row in enumerate(rows):
        for c, v in row.items():
            if v:
                cols.setdefault(c, []).append((r, v))
    unique: dict = {}
    for col in cols.values():
        lead = col[0][1]
        if lead == 1:
            key = tuple(col)
        else:
            lead = Fraction(lead)
            key = tuple((r, v / lead) for r, v in col)
        unique.setdefault(key, col)
    out: list[dict] = [{} for _ in rows]
    for j, col in enumerate(sorted(unique.values(), key=len)):
        for r, v in col:
            out[r][j] = v
    return sorted((row for row in out if row), key=len)


def rank_mod_p(rows: Iterable[dict], p: int = PRIMES[0], max_ops: int | None = None) -> int:
    ops = _OpCounter(max_ops)
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        r = {}
        for c, v in row.items():
            v = _to_mod(v, p)
            if v:
                r[c] = v
        while r:
            c = min(r)
            piv = pivots.get(c)
            if piv is None:
                inv = pow(r[c], -1, p)
                pivots[c] = {k: v * inv % p for k, v in r.items()}
                break
            f = r[c]
            ops.charge(len(piv))
            for k, v in piv.items():
                nv = (r.get(k, 0) - f * v) % p
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
    return len(pivots)


def echelon_exact(rows: Iterable[dict], max_ops: int | None = None) -> dict[int, dict[int, Fraction]]:
    """Reduced pivot rows keyed by leading column, over the rationals."""
    ops = _OpCounter(max_ops)
    pivots: dict[int, dict[int, Fraction]] = {}
    for row in rows:
        r = {c: Fraction(v) for c, v in row.items() if v}
        while r:
            c = min(r)
            piv = pivots.get(c)
            if piv is None:
                lead = r[c]
                pivots[c] = {k: v / lead for k, v in r.items()}
                break
            f = r[c]
            ops.charge(len(piv))
            for k, v in piv.items():
                nv = r.get(k, 0) - f * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
    return pivots


def rank_exact(rows: Iterable[dict], max_ops: int | None = None) -> int:
    return len(echelon_exact(rows, max_ops))


def nnz(rows: Sequence[dict]) -> int:
    return sum(1 for row in rows for v in row.values() if v)


@dataclass
class RankRecord:
    rows: int
    entries: int
    ranks: dict = field(default_factory=dict)

    @property
    def agreed(self) -> bool:
        return len(set(self.ranks.values())) <= 1


def matrix_rank(rows: Sequence[dict], mode: str = "modular", audit: list | None = None,
                exact_threshold: int = EXACT_THRESHOLD, max_ops: int | None = None) -> int:
    """Rank of a sparse matrix.

    ``modular``: one 62-bit prime, plus the exact path when the matrix has at
    most ``exact_threshold`` nonzero entries.  ``exact``: rationals only.
    ``both``: all three primes and the exact path, whatever the size.
    Disagreement between any two computed ranks raises RankDisagreement.
    Each elimination raises BudgetExceeded after ``max_ops`` row updates.
    """
    if mode not in RANK_MODES:
        raise ValueError(f"rank mode must be one of {RANK_MODES}")
    rows = [row for row in rows if row]
    record = RankRecord(rows=len(rows), entries=nnz(rows))
    rows = compress_columns(rows)
    if mode in ("modular", "both"):
        for p in PRIMES if mode == "both" else PRIMES[:1]:
            record.ranks[f"mod{p}"] = rank_mod_p(rows, p, max_ops)
    if mode in ("exact", "both") or record.entries <= exact_threshold:
        record.ranks["exact"] = rank_exact(rows, max_ops)
    if audit is not None:
        audit.append(record)
    if not record.agreed:
        raise RankDisagreement(f"rank paths disagree: {record.ranks}")
    return next(iter(record.ranks.values()))

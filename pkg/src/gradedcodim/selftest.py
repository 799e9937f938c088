"""The invariant suite behind ``gradedcodim selftest``: every check on every built-in spec."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .asymptotics import (binomial_growth_check, filter_sum_check, filter_sum_check_exact, fit,
                          root_filter_sum)
from .catalog import CATALOG
from .codim import (CodimEngine, delta_from_a, height_report, lift_matches, monotonicity, multinomial_step_holds,
                    proper_deltas, strip_sum_violations)
from .errors import CodimError
from .linalg import EXACT_THRESHOLD

# (catalog name, largest n) pairs kept small enough to finish in seconds
DEFAULT_TARGETS = (("F", 6), ("FZ2", 5), ("UT2-Z2", 5), ("M2", 4), ("e11+e12", 5), ("nil3", 5),
                   ("nil-square", 5))


@dataclass
class CheckResult:
    subject: str
    check: str
    ok: bool | None          # None: not applicable
    detail: str = ""


def _spec_checks(name: str, max_n: int) -> list[CheckResult]:
    spec = CATALOG[name]()
    audit: list = []
    engine = CodimEngine(spec, rank_mode="modular", audit=audit)
    out = []

    def record(check, fn):
        try:
            ok, detail = fn()
        except CodimError as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(name, check, ok, detail))

    table = engine.codim_table(max_n)

    def binom_assembly():
        s = spec.group.order
        for n in range(1, min(max_n, 4) + 1):
            direct = sum(engine.multilinear_codim(h) for h in product(range(s), repeat=n))
            if direct != table.rows[n].value:
                return False, f"n={n}: blocks give {table.rows[n].value}, direct sum {direct}"
        return True, "block assembly equals the sum over all grading vectors"

    def cochar_sum():
        rows = [engine.cocharacter(n) for n in range(1, max_n + 1)]
        return True, f"sum m d = c_n for n <= {max_n}; heights <= {height_report(rows, spec.dim)[0]}"

    def height():
        rows = [engine.cocharacter(n) for n in range(1, max_n + 1)]
        top, ok = height_report(rows, spec.dim)
        return ok, f"max support height {top}, bound {spec.dim}"

    def mono():
        ok, start, msg = monotonicity(table, spec)
        return ok, msg

    def ranks():
        small = [r for r in audit if r.entries <= EXACT_THRESHOLD]
        ok = all(r.agreed and "exact" in r.ranks for r in small)
        return ok, f"{len(small)} of {len(audit)} matrices cross-checked against exact rank"

    record("block-assembly", binom_assembly)
    record("cocharacter-sum", cochar_sum)
    record("height-bound", height)
    record("monotonicity", mono)
    if spec.is_unital:
        def strip():
            a = engine.a_table(max_n)
            m = {n: engine.cocharacter(n).multiplicities for n in range(max_n + 1)}
            bad = strip_sum_violations(a, m)
            return not bad, "m = sum over strip set of a" if not bad else f"violations {bad[:3]}"

        def deltas():
            d = proper_deltas(table)
            got = delta_from_a(engine.a_table(max_n))
            return got == d, f"delta = {d}"

        def lift():
            d = proper_deltas(table)
            return lift_matches(table.sequence(), d), "binomial lift reproduces c"

        record("strip-sum", strip)
        record("delta-from-a", deltas)
        record("binomial-lift", lift)
    else:
        for check in ("strip-sum", "delta-from-a", "binomial-lift"):
            out.append(CheckResult(name, check, None, "not unital"))
    record("rank-paths", ranks)
    return out


def _analytic_checks() -> list[CheckResult]:
    out = []
    ok = all(root_filter_sum(d, s - m) == (d if (s - m) % d == 0 else 0)
             for d in range(1, 7) for s in range(3 * d) for m in range(3 * d))
    out.append(CheckResult("analytic", "filter-identity", ok, "exact in Q(zeta_d), d <= 6"))
    worst = 0.0
    for d, n, beta, x in product(range(1, 5), (5, 17, 30), (0, 1, Fraction(-1, 2)), (1, 2)):
        for m in range(d):
            direct, filtered = filter_sum_check(d, m, n, beta, x)
            if direct:
                worst = max(worst, abs(direct - filtered) / abs(direct))
    out.append(CheckResult("analytic", "filter-two-path", worst < 1e-9, f"max relative gap {worst:.2e}"))
    exact = all(e == f for e, f in (filter_sum_check_exact(d, m, 12, 1, 2) for d in range(1, 7) for m in range(d)))
    out.append(CheckResult("analytic", "filter-exact", exact, "integer beta in cyclotomic arithmetic"))
    r = binomial_growth_check(Fraction(-3, 2), 3.0, [1000, 2000])
    flat = abs(r[1] / r[0] - 1)
    exact_ok = binomial_growth_check(0, 2, [7]) == [1] and binomial_growth_check(1, 1, [9]) == [Fraction(1, 2)]
    ok = exact_ok and flat < 0.01
    out.append(CheckResult("analytic", "growth-law", ok, f"|r_2000/r_1000 - 1| = {flat:.2e}"))
    misses = 0
    for l, b2, alpha in product((2, 3, 5), (-2, 1, 3), (1.0, math.pi)):
        seq = {n: round(alpha * n ** (b2 / 2) * l ** n) for n in range(20, 61)}
        f = fit(seq, (20, 60), unital=True)
        misses += not (f.l == l and f.beta_twice == b2 and abs(f.alpha - alpha) / alpha < 0.02)
    out.append(CheckResult("analytic", "fit-recovery", misses == 0, f"{misses} misses on 18 synthetic profiles"))
    ok = all(multinomial_step_holds(c) for n in range(7) for c in product(range(n + 1), repeat=3) if sum(c) == n)
    out.append(CheckResult("analytic", "multinomial-recurrence", ok, "n <= 6, three parts"))
    return out


def run(targets=DEFAULT_TARGETS) -> list[CheckResult]:
    results = []
    for name, max_n in targets:
        results.extend(_spec_checks(name, max_n))
    results.extend(_analytic_checks())
    return results


def render(results: list[CheckResult]) -> str:
    """Pass/fail matrix with one row per spec and one column per check, then the analytic checks."""
    mark = {True: "PASS", False: "FAIL", None: "n/a"}
    per_spec = [r for r in results if r.subject != "analytic"]
    subjects = list(dict.fromkeys(r.subject for r in per_spec))
    checks = list(dict.fromkeys(r.check for r in per_spec))
    cell = {(r.subject, r.check): r for r in per_spec}
    width = max((len(s) for s in subjects), default=0)
    lines = []
    if subjects:
        lines.append(" ".join([" " * width] + checks))
        for s in subjects:
            row = [mark[cell[(s, c)].ok].ljust(len(c)) if (s, c) in cell else ".".ljust(len(c)) for c in checks]
            lines.append(" ".join([s.ljust(width)] + row).rstrip())
        lines.append("")
    for r in results:
        if r.subject == "analytic":
            lines.append(f"{mark[r.ok]:4} {r.check}: {r.detail}")
    failures = [r for r in per_spec if r.ok is False]
    for r in failures:
        lines.append(f"FAIL {r.subject} {r.check}: {r.detail}")
    total_fail = sum(r.ok is False for r in results)
    lines.append(f"{sum(r.ok is True for r in results)} passed, {total_fail} failed, "
                 f"{sum(r.ok is None for r in results)} not applicable")
    return "\n".join(lines)

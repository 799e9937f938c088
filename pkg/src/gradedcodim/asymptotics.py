"""Estimating the profile alpha * n**beta * l**n of a codimension-like sequence.

The only floating point in the package lives here.  Sequences are given as
a mapping ``n -> c_n`` or as a list read from index ``start`` (default 1);
windows are inclusive ``(n_min, n_max)`` pairs.

Estimators:

* ``l``: consecutive ratios satisfy ``log(c_{n+1}/c_n) = log l + beta*log((n+1)/n)``
  exactly for a pure profile, so the intercept of that regression is used
  and rounded to an integer (the plain mean ratio is kept as a diagnostic).
* ``beta``: least-squares slope of ``log(c_n / l**n)`` against ``log n``,
  rounded to the nearest half-integer.
* ``alpha``: mean of ``c_n / (n**beta * l**n)`` over the window.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from numbers import Rational
from typing import Mapping, Sequence

import numpy as np
from scipy import stats
from scipy.special import gammaln, logsumexp

from .errors import DegenerateWindow, WindowTooShort

CONVERGENCE_TOL = 0.05


# exact binomial transforms

def binomial_lift(delta: Sequence) -> list:
    """c_n = sum_s binom(n, s) delta_s for n = 0..len(delta)-1."""
    return [sum(comb(n, s) * delta[s] for s in range(n + 1)) for n in range(len(delta))]


def binomial_invert(c: Sequence) -> list:
    """delta_n = sum_s (-1)^(n-s) binom(n, s) c_s; inverse of :func:`binomial_lift`."""
    return [sum((-1) ** (n - s) * comb(n, s) * c[s] for s in range(n + 1)) for n in range(len(c))]


# sequence handling

def as_mapping(c, start: int = 1) -> dict:
    if isinstance(c, Mapping):
        return {int(n): v for n, v in c.items()}
    if hasattr(c, "values") and callable(c.values) and hasattr(c, "rows"):   # CodimTable
        return dict(c.values())
    return {start + i: v for i, v in enumerate(c)}


def _window(seq: dict, window) -> list[tuple[int, float]]:
    ns = sorted(seq)
    if not ns:
        raise WindowTooShort("empty sequence")
    lo, hi = window if window is not None else (ns[0], ns[-1])
    return [(n, seq[n]) for n in ns if lo <= n <= hi]


def _log(v) -> float:
    return math.log(v) if not isinstance(v, Fraction) else math.log(v.numerator) - math.log(v.denominator)


def _ols(x: np.ndarray, y: np.ndarray):
    """Intercept, slope, slope standard error and residual degrees of freedom."""
    xm, ym = x.mean(), y.mean()
    sxx = float(((x - xm) ** 2).sum())
    slope = float(((x - xm) * (y - ym)).sum()) / sxx
    intercept = ym - slope * xm
    resid = y - intercept - slope * x
    dof = len(x) - 2
    se = math.sqrt(float((resid ** 2).sum()) / dof / sxx) if dof > 0 else math.inf
    return intercept, slope, se, dof


@dataclass
class ExponentEstimate:
    l: int
    raw: float
    distance: float
    mean_ratio: float
    window: tuple
    flags: list = field(default_factory=list)


@dataclass
class BetaEstimate:
    beta_twice: int
    raw: float
    ci: tuple
    ambiguous: bool
    window: tuple

    @property
    def beta(self) -> Fraction:
        return Fraction(self.beta_twice, 2)


@dataclass
class AlphaEstimate:
    alpha: float
    std: float
    lo: float
    hi: float
    last_quartile_mean: float
    converged: bool
    window: tuple


def estimate_exponent(c, window=None, start: int = 1) -> ExponentEstimate:
    points = _window(as_mapping(c, start), window)
    if len(points) < 4:
        raise WindowTooShort(f"need at least 4 terms, window has {len(points)}")
    span = (points[0][0], points[-1][0])
    if all(v == 0 for _, v in points):
        return ExponentEstimate(0, 0.0, 0.0, 0.0, span, ["all-zero"])
    if points[-1][1] == 0:
        return ExponentEstimate(0, 0.0, 0.0, 0.0, span, ["eventually-zero"])
    if any(v < 0 for _, v in points):
        raise DegenerateWindow("sequence has negative terms")
    tail = []
    for n, v in reversed(points):
        if v <= 0 or n < 1:
            break
        tail.append((n, v))
    tail.reverse()
    if len(tail) < 4:
        raise WindowTooShort(f"only {len(tail)} trailing positive terms in the window")
    flags = [] if len(tail) == len(points) else ["leading-zeros-skipped"]
    ns = [n for n, _ in tail]
    if any(b - a != 1 for a, b in zip(ns, ns[1:])):
        raise DegenerateWindow("window has gaps")
    logs = [_log(v) for _, v in tail]
    y = np.array([b - a for a, b in zip(logs, logs[1:])])
    x = np.array([math.log((n + 1) / n) for n in ns[:-1]])
    intercept, _, _, _ = _ols(x, y)
    raw = math.exp(intercept)
    l = max(0, int(math.floor(raw + 0.5)))
    return ExponentEstimate(l, raw, abs(raw - l), float(np.exp(y).mean()), (ns[0], ns[-1]), flags)


def estimate_beta(c, l: int, window=None, start: int = 1, level: float = 0.95) -> BetaEstimate:
    if l < 1:
        raise DegenerateWindow("beta needs l >= 1")
    points = _window(as_mapping(c, start), window)
    if len(points) < 3:
        raise DegenerateWindow(f"need at least 3 terms, window has {len(points)}")
    if any(v <= 0 for _, v in points) or points[0][0] < 1:
        raise DegenerateWindow("c_n must be positive on a window of n >= 1")
    x = np.array([math.log(n) for n, _ in points])
    y = np.array([_log(v) - n * math.log(l) for n, v in points])
    _, slope, se, dof = _ols(x, y)
    half = stats.t.ppf(0.5 + level / 2, dof) * se if dof > 0 and math.isfinite(se) else math.inf
    lo, hi = slope - half, slope + half
    twice = int(math.floor(2 * slope + 0.5))
    ambiguous = not math.isfinite(half) or math.floor(2 * lo + 0.5) != math.floor(2 * hi + 0.5)
    return BetaEstimate(twice, slope, (lo, hi), ambiguous, (points[0][0], points[-1][0]))


def normalized_terms(c, l: int, beta, window=None, start: int = 1) -> list[tuple[int, float]]:
    """c_n / (n**beta * l**n), computed in log space."""
    points = _window(as_mapping(c, start), window)
    beta = float(beta)
    out = []
    for n, v in points:
        if v <= 0 or n < 1:
            raise DegenerateWindow("c_n must be positive on a window of n >= 1")
        out.append((n, math.exp(_log(v) - beta * math.log(n) - n * math.log(l))))
    return out


def estimate_alpha(c, l: int, beta, window=None, start: int = 1) -> AlphaEstimate:
    """Mean of c_n / (n^beta l^n) with a convergence flag.

    The sequence is flagged non-convergent when the last-quartile mean moves
    more than 5% away from the full-window mean, or when the normalized terms
    still spread by more than 5% inside the last quartile (which catches
    bounded oscillation the mean test cannot see).
    """
    if l < 1:
        raise DegenerateWindow("alpha needs l >= 1")
    terms = normalized_terms(c, l, beta, window, start)
    if len(terms) < 2:
        raise DegenerateWindow("need at least 2 terms")
    q = np.array([v for _, v in terms])
    mean = float(q.mean())
    std = float(q.std(ddof=1))
    last = q[-max(2, math.ceil(len(q) / 4)):]
    lq = float(last.mean())
    drift = abs(lq - mean) / mean
    spread = float(last.max() - last.min()) / lq
    converged = drift <= CONVERGENCE_TOL and spread <= CONVERGENCE_TOL
    return AlphaEstimate(mean, std, float(q.min()), float(q.max()), lq, converged,
                         (terms[0][0], terms[-1][0]))


@dataclass
class AsymptoticFit:
    l: int
    beta_twice: int
    alpha: float
    alpha_lo: float
    alpha_hi: float
    window: tuple
    form: str                     # "point" (single alpha) or "interval" ([alpha_1, alpha_2])
    residuals: dict = field(default_factory=dict)
    flags: list = field(default_factory=list)
    l_raw: float = 0.0
    beta_raw: float = 0.0
    beta_ci: tuple = (0.0, 0.0)
    mean_ratio: float = 0.0

    @property
    def beta(self) -> Fraction:
        return Fraction(self.beta_twice, 2)

    def to_json(self) -> dict:
        return {"l": self.l, "beta_num_over_2": self.beta_twice, "alpha": self.alpha,
                "alpha_lo": self.alpha_lo, "alpha_hi": self.alpha_hi, "window": list(self.window),
                "flags": list(self.flags)}

    def predict(self, n: int) -> float:
        return self.alpha * n ** float(self.beta) * self.l ** n


def fit(c, window=None, unital: bool | None = None, start: int = 1) -> AsymptoticFit:
    """Compose the three estimators.

    A single alpha is reported only when ``unital`` is not False and the
    normalized terms converge; otherwise alpha_lo/alpha_hi are the window
    min/max of c_n / (n^beta l^n), the two-constant form that holds without a
    unit.
    """
    seq = as_mapping(c, start)
    exp_est = estimate_exponent(seq, window)
    flags = list(exp_est.flags)
    if exp_est.l == 0:
        return AsymptoticFit(0, 0, 0.0, 0.0, 0.0, exp_est.window, "point", {}, flags, exp_est.raw)
    win = exp_est.window
    beta_est = estimate_beta(seq, exp_est.l, win)
    if beta_est.ambiguous:
        flags.append("beta-ambiguous")
    alpha_est = estimate_alpha(seq, exp_est.l, beta_est.beta, win)
    if not alpha_est.converged:
        flags.append("alpha-nonconvergent")
    if unital is False:
        flags.append("non-unital")
    if unital is False or not alpha_est.converged:
        form, lo, hi = "interval", alpha_est.lo, alpha_est.hi
    else:
        m = len(normalized_terms(seq, exp_est.l, beta_est.beta, win))
        half = stats.t.ppf(0.975, m - 1) * alpha_est.std / math.sqrt(m)
        form, lo, hi = "point", alpha_est.alpha - half, alpha_est.alpha + half
    residuals = {}
    for n, q in normalized_terms(seq, exp_est.l, beta_est.beta, win):
        residuals[n] = math.log(q / alpha_est.alpha)
    return AsymptoticFit(exp_est.l, beta_est.beta_twice, alpha_est.alpha, lo, hi, win, form, residuals,
                         flags, exp_est.raw, beta_est.raw, beta_est.ci, exp_est.mean_ratio)


def fit_rows(c, result: AsymptoticFit, start: int = 1) -> list[tuple]:
    """CSV rows ``n,c_n,ratio,log_resid`` over the fitted window."""
    seq = as_mapping(c, start)
    rows = []
    for n in sorted(seq):
        if not result.window[0] <= n <= result.window[1]:
            continue
        prev = seq.get(n - 1)
        ratio = f"{float(Fraction(seq[n]) / Fraction(prev)):.12g}" if prev else ""
        resid = result.residuals.get(n)
        rows.append((n, seq[n], ratio, "" if resid is None else f"{resid:.6e}"))
    return rows


def extend_with_fit(seq: Mapping[int, float], result: AsymptoticFit, upto: int) -> dict:
    """The sequence followed by the fitted profile alpha n^beta l^n up to ``upto``."""
    out = dict(seq)
    for n in range(max(seq) + 1, upto + 1):
        out[n] = result.predict(n) if result.l else 0.0
    return out


# root-of-unity filter

def cyclotomic_poly(d: int) -> list[int]:
    """Coefficients (constant term first) of the d-th cyclotomic polynomial."""
    num = [-1] + [0] * (d - 1) + [1]            # x^d - 1
    for e in range(1, d):
        if d % e == 0:
            num = _polydiv_exact(num, cyclotomic_poly(e))
    return num


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        q = num[i + len(den) - 1] // den[-1]
        out[i] = q
        for j, c in enumerate(den):
            num[i + j] -= q * c
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


class Cyclotomic:
    """Exact element of Q(zeta_d), stored as a polynomial in zeta of degree < phi(d)."""

    def __init__(self, d: int, coeffs=()):
        self.d = d
        self.modulus = cyclotomic_poly(d)
        self.coeffs = self._reduce([Fraction(c) for c in coeffs])

    def _reduce(self, c: list) -> tuple:
        deg = len(self.modulus) - 1
        c = list(c)
        for i in range(len(c) - 1, deg - 1, -1):
            q = c[i]
            if q:
                for j, m in enumerate(self.modulus):
                    c[i - deg + j] -= q * m
        c = (c + [Fraction(0)] * deg)[:deg]
        return tuple(c)

    @classmethod
    def zeta_power(cls, d: int, k: int) -> "Cyclotomic":
        k %= d
        return cls(d, [0] * k + [1])

    def __add__(self, other: "Cyclotomic") -> "Cyclotomic":
        return Cyclotomic(self.d, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other) -> "Cyclotomic":
        if not isinstance(other, Cyclotomic):
            return Cyclotomic(self.d, [a * Fraction(other) for a in self.coeffs])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Cyclotomic(self.d, out)

    __rmul__ = __mul__

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self.coeffs} is not rational")
        return self.coeffs[0]

    def __eq__(self, other) -> bool:
        if isinstance(other, Cyclotomic):
            return self.d == other.d and self.coeffs == other.coeffs
        return self.is_rational() and self.coeffs[0] == other

    def __repr__(self) -> str:
        return f"Cyclotomic({self.d}, {[str(c) for c in self.coeffs]})"


def root_filter_sum(d: int, j: int) -> Cyclotomic:
    """sum_{t=0}^{d-1} zeta_d^{j t}, computed in Q(zeta_d)."""
    total = Cyclotomic(d)
    for t in range(d):
        total = total + Cyclotomic.zeta_power(d, j * t)
    return total


def _power(s: int, beta) -> float:
    if s == 0:
        return 1.0 if beta == 0 else 0.0
    return float(s) ** float(beta)


def _is_nonneg_int(beta) -> bool:
    return Fraction(beta).denominator == 1 and beta >= 0


def filter_sum_check(d: int, m: int, n: int, beta, x) -> tuple:
    """sum over s = m (mod d) of binom(n, s) s^beta x^s, directly and through the root-of-unity filter.

    The filter path evaluates the full twisted sums S_t = sum_s binom(n,s) s^beta (w^t x)^s
    for every t and combines (1/d) sum_t w^(-m t) S_t.  Returns ``(direct, filtered)``,
    complex floats; ``0^beta`` is taken as 0 for beta != 0.
    """
    if d < 1 or not 0 <= m < d:
        raise ValueError("need d >= 1 and 0 <= m < d")
    x = float(x)
    weights = [comb(n, s) * _power(s, beta) * x ** s for s in range(n + 1)]
    direct = complex(sum(w for s, w in enumerate(weights) if s % d == m))
    omega = cmath.exp(2j * cmath.pi / d)
    filtered = 0j
    for t in range(d):
        twisted = sum(w * omega ** ((t * s) % d) for s, w in enumerate(weights))
        filtered += omega ** ((-m * t) % d) * twisted
    return direct, filtered / d


def filter_sum_check_exact(d: int, m: int, n: int, beta: int, x) -> tuple[Fraction, Cyclotomic]:
    """Exact version of :func:`filter_sum_check` in Q(zeta_d) (integer beta >= 0, rational x)."""
    if not _is_nonneg_int(beta):
        raise ValueError("exact filter needs a non-negative integer beta")
    if not isinstance(x, (int, Fraction, Rational)):
        raise ValueError("exact filter needs a rational x")
    beta, x = int(beta), Fraction(x)
    weights = [comb(n, s) * Fraction(s) ** beta * x ** s if (s or beta == 0) else Fraction(0)
               for s in range(n + 1)]
    direct = sum((w for s, w in enumerate(weights) if s % d == m), Fraction(0))
    filtered = Cyclotomic(d)
    for t in range(d):
        by_power = [Fraction(0)] * d
        for s, w in enumerate(weights):
            by_power[(t * s) % d] += w
        twisted = Cyclotomic(d)
        for k, w in enumerate(by_power):
            if w:
                twisted = twisted + Cyclotomic.zeta_power(d, k) * w
        filtered = filtered + Cyclotomic.zeta_power(d, -m * t) * twisted
    return direct, filtered * Fraction(1, d)


# binomial growth law

def binomial_growth_check(beta, x, n_list: Sequence[int]) -> list:
    """r_n = sum_s binom(n,s) s^beta x^s / (n^beta (x+1)^n) for each n in ``n_list``.

    Exact Fractions when beta is a non-negative integer and x is rational;
    otherwise computed in log space in double precision.
    """
    if x <= 0:
        raise ValueError("x must be positive")
    exact = _is_nonneg_int(beta) and isinstance(x, (int, Fraction)) and not isinstance(x, bool)
    out = []
    for n in n_list:
        if n < 1:
            raise ValueError("n must be positive")
        if exact:
            b, xf = int(beta), Fraction(x)
            num = sum(comb(n, s) * Fraction(s) ** b * xf ** s for s in range(0 if b == 0 else 1, n + 1))
            out.append(num / (Fraction(n) ** b * (xf + 1) ** n))
            continue
        s = np.arange(0 if beta == 0 else 1, n + 1, dtype=float)
        b = float(beta)
        logs = gammaln(n + 1) - gammaln(s + 1) - gammaln(n - s + 1) + b * np.log(np.maximum(s, 1)) \
            + s * math.log(float(x))
        out.append(math.exp(float(logsumexp(logs)) - b * math.log(n) - n * math.log1p(float(x))))
    return out


__all__ = [
    "AlphaEstimate", "AsymptoticFit", "BetaEstimate", "Cyclotomic", "ExponentEstimate", "binomial_growth_check",
    "binomial_invert", "binomial_lift", "cyclotomic_poly", "estimate_alpha", "estimate_beta", "estimate_exponent",
    "extend_with_fit", "filter_sum_check", "filter_sum_check_exact", "fit", "fit_rows", "root_filter_sum",
]

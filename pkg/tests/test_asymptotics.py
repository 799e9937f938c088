import math
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gradedcodim.asymptotics import (Cyclotomic, binomial_growth_check, binomial_invert, binomial_lift,
                                     cyclotomic_poly, estimate_alpha, estimate_beta, estimate_exponent,
                                     extend_with_fit, filter_sum_check, filter_sum_check_exact, fit, fit_rows,
                                     root_filter_sum)
from gradedcodim.catalog import CATALOG
from gradedcodim.codim import CodimEngine, proper_deltas
from gradedcodim.errors import DegenerateWindow, WindowTooShort


def synthetic(alpha, beta, l, lo, hi):
    return {n: round(alpha * n ** beta * l ** n) for n in range(lo, hi + 1)}


# exponent

def test_exponent_examples():
    assert estimate_exponent([1] * 10).l == 1
    assert estimate_exponent([2 ** n for n in range(1, 12)]).l == 2
    est = estimate_exponent(synthetic(3, 1.5, 5, 10, 30))
    assert est.l == 5 and est.distance < 0.05
    assert est.mean_ratio > 5                        # the plain ratio average is biased upwards


def test_exponent_zero_cases():
    assert estimate_exponent([0] * 6).l == 0
    assert estimate_exponent([1, 2, 3, 0, 0, 0]).l == 0
    with pytest.raises(WindowTooShort):
        estimate_exponent([1, 2, 4])
    with pytest.raises(WindowTooShort):
        estimate_exponent([0, 0, 0, 1, 2])


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(-4, 4), st.floats(0.1, 1000))
def test_exponent_scale_invariant(l, b2, scale):
    seq = {n: 7 * n ** (b2 / 2) * l ** n for n in range(20, 41)}
    scaled = {n: scale * v for n, v in seq.items()}
    a, b = estimate_exponent(seq), estimate_exponent(scaled)
    assert a.l == b.l == l
    assert estimate_beta(seq, l).beta_twice == estimate_beta(scaled, l).beta_twice == b2


# beta and alpha

def test_beta_examples():
    assert estimate_beta([3 ** n for n in range(1, 20)], 3).beta == 0
    assert estimate_beta(synthetic(7, 2, 3, 5, 40), 3).beta == 2
    classical = {n: 2 ** (n - 1) * (n - 2) + 2 for n in range(10, 41)}
    assert estimate_exponent(classical).l == 2
    assert estimate_beta(classical, 2).beta == 1


def test_beta_ambiguity_flag_on_short_noisy_window():
    seq = {1: 10, 2: 1, 3: 30, 4: 2}
    assert estimate_beta(seq, 1).ambiguous


def test_beta_errors():
    with pytest.raises(DegenerateWindow):
        estimate_beta([1, 2, 3], 0)
    with pytest.raises(DegenerateWindow):
        estimate_beta([1, 0, 3, 4], 1)
    with pytest.raises(DegenerateWindow):
        estimate_beta([1, 2], 1)


def test_alpha_examples():
    exact = {n: 4 * n * 2 ** n for n in range(1, 30)}
    est = estimate_alpha(exact, 2, 1)
    assert est.alpha == pytest.approx(4.0, abs=1e-12) and est.std == pytest.approx(0, abs=1e-12)
    est = estimate_alpha(synthetic(math.pi, 0.5, 3, 20, 60), 3, Fraction(1, 2), (20, 60))
    assert abs(est.alpha - math.pi) / math.pi < 0.01 and est.converged
    oscillating = {n: (3 + (-1) ** n) * 2 ** n for n in range(1, 40)}
    assert not estimate_alpha(oscillating, 2, 0).converged


# fit

def test_fit_examples():
    f = fit(CodimEngine(CATALOG["F"]()).codim_table(7), unital=True)
    assert (f.l, f.beta, f.alpha) == (1, 0, 1)
    f = fit({n: 2 ** n for n in range(1, 7)}, unital=True)
    assert (f.l, f.beta, f.alpha, f.form) == (2, 0, 1, "point")
    f = fit({n: (3 + (-1) ** n) * 2 ** n for n in range(5, 40)})
    assert f.l == 2 and f.beta == 0 and f.form == "interval"
    assert f.alpha_lo == pytest.approx(2) and f.alpha_hi == pytest.approx(4)


def test_non_unital_fit_reports_interval():
    table = CodimEngine(CATALOG["e11+e12"]()).codim_table(7)
    f = fit(table, unital=False)
    assert f.l == 1 and f.beta == 1 and f.form == "interval" and "non-unital" in f.flags


def test_fit_of_nilpotent_sequence():
    f = fit([1, 2, 0, 0, 0, 0])
    assert f.l == 0 and f.to_json()["l"] == 0


def test_fit_json_and_rows():
    seq = synthetic(2, 1.5, 4, 10, 30)
    f = fit(seq)
    doc = f.to_json()
    assert set(doc) == {"l", "beta_num_over_2", "alpha", "alpha_lo", "alpha_hi", "window", "flags"}
    assert doc["beta_num_over_2"] == 3 and doc["l"] == 4 and doc["window"] == [10, 30]
    rows = fit_rows(seq, f)
    assert rows[0][2] == "" and len(rows) == 21 and all(r[3] for r in rows)


@pytest.mark.parametrize("name", ["FZ2", "UT2-Z2"])
def test_lift_of_delta_fit_shifts_exponent(name):
    # fit the proper coefficients, extend them by their own profile, lift, refit: l goes up by one
    deltas = proper_deltas(CodimEngine(CATALOG[name]()).codim_table(6))
    delta_seq = {s: d for s, d in enumerate(deltas) if s >= 1}
    delta_fit = fit(delta_seq, unital=True)
    extended = extend_with_fit(delta_seq, delta_fit, 60)
    extended[0] = deltas[0]
    lifted = binomial_lift([extended[s] for s in range(61)])
    lifted_fit = fit({n: lifted[n] for n in range(20, 61)})
    assert lifted_fit.l == delta_fit.l + 1


# binomial transforms

def test_binomial_lift_examples():
    assert binomial_lift([1, 0, 0, 0, 0]) == [1] * 5
    assert binomial_lift([1] * 8) == [2 ** n for n in range(8)]


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 10 ** 9), min_size=1, max_size=25))
def test_binomial_transforms_invert(delta):
    assert binomial_invert(binomial_lift(delta)) == delta
    assert binomial_lift(binomial_invert(delta)) == delta


# root-of-unity filter

def test_cyclotomic_polynomials():
    assert cyclotomic_poly(1) == [-1, 1]
    assert cyclotomic_poly(4) == [1, 0, 1]
    assert cyclotomic_poly(6) == [1, -1, 1]
    z = Cyclotomic.zeta_power(5, 1)
    acc = Cyclotomic(5, [1])
    for _ in range(5):
        acc = acc * z
    assert acc == 1


def test_filter_identity_exact():
    for d in range(1, 7):
        for s in range(3 * d):
            for m in range(3 * d):
                assert root_filter_sum(d, s - m) == (d if (s - m) % d == 0 else 0)


def test_filter_examples():
    direct, filtered = filter_sum_check(1, 0, 9, 0, 1)
    assert direct == filtered == 2 ** 9
    direct, filtered = filter_sum_check(2, 0, 10, 0, 1)
    assert direct == 512 and abs(filtered - 512) < 1e-9
    direct, filtered = filter_sum_check(3, 1, 12, 1, 2)
    assert direct == sum(comb(12, s) * s * 2 ** s for s in range(1, 13, 3))
    assert abs(direct - filtered) <= 1e-9 * abs(direct)


@pytest.mark.parametrize("d", range(1, 7))
def test_filter_exact_agreement(d):
    for m in range(d):
        for beta in (0, 1, 2):
            direct, filtered = filter_sum_check_exact(d, m, 14, beta, Fraction(3, 2))
            assert filtered.is_rational() and filtered == direct


def test_filter_exact_rejects_fractional_beta():
    with pytest.raises(ValueError):
        filter_sum_check_exact(3, 0, 5, Fraction(1, 2), 1)
    with pytest.raises(ValueError):
        filter_sum_check(3, 3, 5, 0, 1)


# growth law

def test_growth_exact_values():
    assert binomial_growth_check(0, 2, [1, 5, 40]) == [1, 1, 1]
    assert binomial_growth_check(1, 1, [1, 5, 40]) == [Fraction(1, 2)] * 3
    # the floating path agrees with the exact one
    assert binomial_growth_check(1.0, 1.0, [40])[0] == pytest.approx(0.5, rel=1e-12)


def test_growth_flattens():
    r = binomial_growth_check(Fraction(-3, 2), 3.0, [250, 500, 1000, 2000])
    gaps = [abs(r[i + 1] / r[i] - 1) for i in range(3)]
    assert gaps == sorted(gaps, reverse=True) and gaps[-1] < 0.01
    assert r[-1] == pytest.approx((3 / 4) ** -1.5, rel=0.01)      # mass concentrates at s = 3n/4


def test_growth_rejects_bad_x():
    with pytest.raises(ValueError):
        binomial_growth_check(0, 0, [3])

import math

import pytest

import hpoly


def diff_squares():
    return hpoly.Polynomial(hpoly.ScalarField.Real, 2, 2, {(2, 0): 1.0, (0, 2): -1.0})


def test_enumeration_and_count():
    assert hpoly.enumerate_indices(2, 2) == [[2, 0], [1, 1], [0, 2]]
    assert hpoly.count(3, 5) == 35
    assert hpoly.count_decomposition(2, 4) == (6, 4)
    with pytest.raises(hpoly.DomainError):
        hpoly.count_decomposition(3, 3)
    with pytest.raises(hpoly.OverflowError):
        hpoly.count(40, 100)


def test_polynomial_evaluation_and_norms():
    p = diff_squares()
    assert (p.field, p.m, p.n, len(p)) == (hpoly.ScalarField.Real, 2, 2, 2)
    assert p([1.0, 0.0]) == 1.0
    assert hpoly.evaluate(hpoly.complexify(p), [1.0, 1j]) == 2.0
    assert hpoly.coeff_norm(p, 1.0) == 2.0
    assert hpoly.coeff_norm(p, math.inf) == 1.0
    with pytest.raises(hpoly.DomainError):
        hpoly.coeff_norm(p, 0.5)
    with pytest.raises(hpoly.DimensionMismatch):
        p([1.0])


def test_text_round_trip():
    p = hpoly.Polynomial(hpoly.ScalarField.Complex, 2, 2, {(1, 1): 0.1 - 0.3j, (0, 2): 1e-300})
    assert hpoly.Polynomial.from_text(p.to_text()) == p
    with pytest.raises(hpoly.ParseError):
        hpoly.Polynomial.from_text("field = real\nm = 2\nn = 2\n")


def test_supnorm_brackets():
    real = hpoly.supnorm(diff_squares())
    assert real.lower == pytest.approx(1.0, abs=1e-12)
    assert real.lower <= real.upper <= 1.0 + 1e-5
    cplx = hpoly.supnorm(hpoly.complexify(diff_squares()))
    assert cplx.lower == pytest.approx(2.0, abs=1e-12)
    assert abs(hpoly.evaluate(hpoly.complexify(diff_squares()), cplx.witness)) == pytest.approx(cplx.lower)
    assert hpoly.quadratic_shift_bound(diff_squares()) >= real.lower
    lhs, rhs, ok = hpoly.visser_check(diff_squares())
    assert ok and lhs == pytest.approx(2.0, abs=1e-3) and rhs == pytest.approx(2.0, abs=1e-3)


def test_budget_exceeded_and_gridless():
    p = hpoly.ksz_sample(2, 6, 1)
    with pytest.raises(hpoly.BudgetExceeded):
        hpoly.supnorm(p)
    budget = hpoly.SupNormBudget()
    budget.allow_gridless = True
    est = hpoly.supnorm(p, budget)
    assert est.grid_skipped and est.lower <= est.upper


def test_ksz_and_scaling():
    s = hpoly.ksz_sample(2, 4, 7, hpoly.ScalarField.Real)
    assert all(abs(c) == 1.0 for _, c in s.coefficients())
    assert hpoly.ksz_coeff_norm_closed_form(2, 4, 7, 1.0) == 10.0
    stat = hpoly.ksz_supnorm_statistic(1, 5, 4, 3, hpoly.ScalarField.Real)
    assert stat["median"] == 5.0
    assert hpoly.sharp_exponent(2, 1.0) == 0.5
    assert hpoly.sharp_exponent(2, hpoly.bh_exponent(2)) == 0.0
    records, fit = hpoly.run_scaling_experiment(1, 1.0, [2, 4, 8], 3, 11, hpoly.ScalarField.Real)
    assert len(records) == 9
    assert fit.slope == pytest.approx(0.0, abs=0.05)
    text = hpoly.format_records(records)
    assert hpoly.format_records(hpoly.parse_records(text)) == text
    again, _ = hpoly.run_scaling_experiment(1, 1.0, [2, 4, 8], 3, 11, hpoly.ScalarField.Real)
    assert hpoly.format_records(again) == text

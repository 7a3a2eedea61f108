import math

import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import quad

from abrsa import analytic
from abrsa.events import (
    EventIndex,
    GammaTermSpec,
    combined_term,
    event_sum_tail_bound,
    gamma_term,
    hyperbolic_resummation_check,
    prob_main_event,
    prob_ordering,
    rho_A_event_sum,
    simulate_event_frequency,
)
from abrsa.params import ModelParams

GRID_ALPHAS = [0.05 * i for i in range(1, 20)]
GRID_TS = [0.1 * i for i in range(1, 11)]
PARITIES = ("ee", "oe", "eo", "oo")


class TestProbOrdering:
    def test_single_site(self):
        assert prob_ordering(0, 0, 0.8) == 0.8

    def test_one_sided_pair(self):
        assert prob_ordering(1, 0, 1.0) == 0.5

    def test_symmetric_pair(self):
        assert abs(prob_ordering(1, 1, 1.0) - 1.0 / 3.0) <= 1e-16

    @given(j=st.integers(min_value=0, max_value=40), t=st.floats(min_value=0.0, max_value=1.0))
    def test_one_sided_chain_reduction(self, j, t):
        # with an empty second chain this is the single-chain ordering law
        expect = t ** (j + 1) / math.factorial(j + 1)
        assert math.isclose(prob_ordering(j, 0, t), expect, rel_tol=1e-12, abs_tol=1e-300)

    def test_large_indices_stay_finite(self):
        v = prob_ordering(150, 150, 1.0)
        assert 0.0 <= v < 1.0

    def test_rejects_over_cap(self):
        with pytest.raises(ValueError):
            prob_ordering(200, 101, 0.5)

    @given(
        j=st.integers(min_value=0, max_value=8),
        k=st.integers(min_value=0, max_value=8),
        t=st.floats(min_value=0.0, max_value=1.0),
    )
    def test_formula(self, j, k, t):
        expect = t ** (j + k + 1) / (math.factorial(j) * math.factorial(k) * (j + k + 1))
        assert math.isclose(prob_ordering(j, k, t), expect, rel_tol=1e-13, abs_tol=1e-300)


class TestGammaTerm:
    def test_lowest_order(self):
        assert abs(gamma_term(GammaTermSpec(j=0, k=0, m=0, n=0, x=0.5)) - 0.5) <= 1e-15

    def test_both_odd(self):
        expect = 0.5**3 / 3.0
        assert math.isclose(gamma_term(GammaTermSpec(j=0, k=0, m=1, n=1, x=0.5)), expect, rel_tol=1e-13)

    def test_mixed_indices(self):
        got = gamma_term(GammaTermSpec(j=1, k=0, m=0, n=1, x=0.3))
        assert math.isclose(got, 0.0010125, rel_tol=1e-13)

    @given(
        j=st.integers(min_value=0, max_value=6),
        k=st.integers(min_value=0, max_value=6),
        m=st.integers(min_value=0, max_value=1),
        n=st.integers(min_value=0, max_value=1),
        x=st.floats(min_value=1e-3, max_value=0.5),
    )
    def test_against_quadrature(self, j, k, m, n, x):
        # independent route: Gamma is the integral of the two power kernels
        fj = math.factorial(2 * j + m)
        fk = math.factorial(2 * k + n)
        val, _ = quad(lambda u: u ** (2 * j + m) / fj * u ** (2 * k + n) / fk, 0.0, x)
        got = gamma_term(GammaTermSpec(j=j, k=k, m=m, n=n, x=x))
        assert math.isclose(got, val, rel_tol=1e-9, abs_tol=1e-250)

    def test_zero_x(self):
        assert gamma_term(GammaTermSpec(j=3, k=2, m=1, n=0, x=0.0)) == 0.0

    def test_large_indices_finite(self):
        spec = GammaTermSpec(j=200, k=200, m=1, n=1, x=0.5)
        v = gamma_term(spec)
        assert v >= 0.0 and math.isfinite(v)

    def test_rejects_bad_spec(self):
        with pytest.raises(ValueError):
            GammaTermSpec(j=-1, k=0, m=0, n=0, x=0.1)
        with pytest.raises(ValueError):
            GammaTermSpec(j=0, k=0, m=2, n=0, x=0.1)
        with pytest.raises(ValueError):
            GammaTermSpec(j=0, k=0, m=0, n=0, x=0.6)


class TestMainEvents:
    def test_shortest_even_pair(self):
        got = prob_main_event(EventIndex(j=0, k=0, parity="ee"), ModelParams(alpha=0.5, t=1.0))
        assert math.isclose(got, 1.0 / 24.0, rel_tol=1e-13)

    def test_oo_leading_behavior(self):
        # alpha * t dominates the smallest odd-odd event as t -> 0
        got = prob_main_event(EventIndex(j=0, k=0, parity="oo"), ModelParams(alpha=0.5, t=1e-4))
        assert abs(got - 0.5e-4) <= 0.01 * 0.5e-4

    def test_vanishes_at_t_zero(self):
        for parity in PARITIES:
            got = prob_main_event(EventIndex(j=0, k=0, parity=parity), ModelParams(alpha=0.3, t=0.0))
            assert got == 0.0

    def test_rejects_endpoint_alpha(self):
        for alpha in (0.0, 1.0):
            with pytest.raises(ValueError):
                prob_main_event(EventIndex(j=0, k=0, parity="ee"), ModelParams(alpha=alpha, t=0.5))

    def test_rejects_bad_parity(self):
        with pytest.raises(ValueError):
            EventIndex(j=0, k=0, parity="xx")

    def test_nonnegative_on_grid(self):
        for a in GRID_ALPHAS:
            for t in (0.3, 1.0):
                p = ModelParams(alpha=a, t=t)
                for j in (0, 1, 2):
                    for k in (0, 1, 2):
                        for parity in PARITIES:
                            assert prob_main_event(EventIndex(j=j, k=k, parity=parity), p) >= 0.0


class TestCombinedTerm:
    def test_zero_at_t_zero(self):
        assert combined_term(0, 0, ModelParams(alpha=0.3, t=0.0)) == 0.0

    def test_lowest_order_value(self):
        # theta*G00 - G10 - G01 + G11/theta at x=0.5, theta=1:
        # 0.5 - 0.125 - 0.125 + (0.125/3) = 7/24
        got = combined_term(0, 0, ModelParams(alpha=0.5, t=1.0))
        assert math.isclose(got, 7.0 / 24.0, rel_tol=1e-13)

    def test_high_order_term_is_tiny(self):
        got = combined_term(3, 2, ModelParams(alpha=0.5, t=1.0))
        assert 0.0 < got < 1e-6

    @pytest.mark.parametrize("alpha", [0.1, 0.35, 0.5, 0.8, 0.95])
    @pytest.mark.parametrize("t", [0.2, 0.6, 1.0])
    def test_equals_sum_of_parities(self, alpha, t):
        p = ModelParams(alpha=alpha, t=t)
        for j in range(11):
            for k in range(11):
                parts = math.fsum(
                    prob_main_event(EventIndex(j=j, k=k, parity=q), p) for q in PARITIES
                )
                assert abs(parts - combined_term(j, k, p)) <= 1e-14


class TestEventSum:
    def test_zero_time(self):
        assert rho_A_event_sum(ModelParams(alpha=0.4, t=0.0), 1) == (0.0, 0.0)

    @pytest.mark.parametrize("alpha", [0.5, 0.9])
    def test_matches_closed_form(self, alpha):
        p = ModelParams(alpha=alpha, t=1.0)
        value, tail = rho_A_event_sum(p, 25)
        assert abs(value - analytic.closed_form_rho_A(p)) <= 1e-12
        assert tail <= 1e-12

    def test_grid_agreement_and_bracketing(self):
        for a in GRID_ALPHAS:
            for t in GRID_TS:
                p = ModelParams(alpha=a, t=t)
                value, tail = rho_A_event_sum(p, 25)
                exact = analytic.closed_form_rho_A(p)
                assert abs(value - exact) <= max(1e-12, tail)
                # truncated mass below the total, total below truncation + tail
                assert value <= exact + 1e-13
                assert exact <= value + tail + 1e-13

    def test_tail_bound_dominates_truncation_error(self):
        # at small cutoffs the bound must genuinely cover the omitted mass
        for m in (1, 2, 4, 8):
            for a in (0.2, 0.5, 0.8):
                p = ModelParams(alpha=a, t=1.0)
                value, tail = rho_A_event_sum(p, m)
                omitted = analytic.closed_form_rho_A(p) - value
                assert -1e-13 <= omitted <= tail + 1e-13

    def test_tail_decreases_with_cutoff(self):
        p = ModelParams(alpha=0.5, t=1.0)
        bounds = [event_sum_tail_bound(p, m) for m in range(1, 10)]
        assert all(b2 < b1 for b1, b2 in zip(bounds, bounds[1:]))


class TestResummation:
    def test_zero_x(self):
        assert set(hyperbolic_resummation_check(0.0, 5).values()) == {0.0}

    def test_tight_at_full_depth(self):
        residuals = hyperbolic_resummation_check(0.5, 25)
        assert max(residuals.values()) <= 1e-14

    def test_moderate_truncation(self):
        residuals = hyperbolic_resummation_check(0.25, 3)
        assert max(residuals.values()) <= 1e-8

    def test_grid(self):
        for i in range(1, 11):
            residuals = hyperbolic_resummation_check(0.05 * i, 30)
            assert max(residuals.values()) <= 1e-12

    def test_rejects_bad_args(self):
        with pytest.raises(ValueError):
            hyperbolic_resummation_check(0.7, 10)
        with pytest.raises(ValueError):
            hyperbolic_resummation_check(0.3, 0)


class TestEventFrequencies:
    # cheap smoke version; the 1e7-trial validation lives in the acceptance suite
    @pytest.mark.parametrize("parity", PARITIES)
    def test_smallest_events_match(self, parity):
        p = ModelParams(alpha=0.5, t=1.0)
        idx = EventIndex(j=0, k=0, parity=parity)
        expected = prob_main_event(idx, p)
        n = 400_000
        freq, _ = simulate_event_frequency(idx, p, n, seed=11)
        se = math.sqrt(expected * (1.0 - expected) / n)
        assert abs(freq - expected) <= 5.0 * se

    def test_time_dependence(self):
        p = ModelParams(alpha=0.3, t=0.6)
        idx = EventIndex(j=0, k=1, parity="eo")
        expected = prob_main_event(idx, p)
        n = 400_000
        freq, _ = simulate_event_frequency(idx, p, n, seed=12)
        se = math.sqrt(expected * (1.0 - expected) / n)
        assert abs(freq - expected) <= 5.0 * se

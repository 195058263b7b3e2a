import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, stats

from levyqs.levy_noise import (
    U0,
    U1,
    LevyParams,
    cdf,
    density,
    generate_sequence,
    labels_from_waits,
    make_rng,
    mix_seed,
    quantile,
    sample_waiting_steps,
    survival,
    waits_from_uniforms,
)

ALPHAS = [0.2, 0.5, 1.0, 1.5, 2.0]


def quad_cdf(x, params):
    """Independent CDF: adaptive quadrature of the density, split at T."""
    T = params.T
    f = lambda t: density(t, params)
    if x <= T:
        return integrate.quad(f, 0, x, epsabs=1e-14, epsrel=1e-13)[0]
    flat = integrate.quad(f, 0, T, epsabs=1e-14, epsrel=1e-13)[0]
    # integrate the tail in log t so that very long ranges stay accurate
    g = lambda u: density(math.exp(u), params) * math.exp(u)
    return flat + integrate.quad(g, 0.0, math.log(x / T), epsabs=1e-14, epsrel=1e-13, limit=200)[0]


class TestParams:
    @pytest.mark.parametrize("alpha", [0.0, -1.0, 2.0001, float("nan"), float("inf")])
    def test_rejects_alpha(self, alpha):
        with pytest.raises(ValueError):
            LevyParams(alpha)

    def test_rejects_T(self):
        with pytest.raises(ValueError):
            LevyParams(1.0, T=0.0)


class TestDensity:
    def test_flat_branch(self):
        assert density(0.5, LevyParams(1.0)) == 0.5

    def test_tail_branch(self):
        assert density(2.0, LevyParams(1.0)) == 0.125

    def test_rejects_negative_time(self):
        with pytest.raises(ValueError):
            density(-0.1, LevyParams(1.0))

    @pytest.mark.parametrize("alpha", [0.2, 1.0, 2.0])
    def test_normalised(self, alpha):
        params = LevyParams(alpha)
        X = 1e8
        body = quad_cdf(X, params)
        # analytic remainder: int_X^inf a/((1+a)T) (T/t)^(a+1) dt
        tail = (params.T / X) ** alpha / (1 + alpha)
        assert body + tail == pytest.approx(1.0, abs=1e-9)


class TestQuantile:
    @pytest.mark.parametrize("gamma, xi", [(0.25, 0.5), (0.5, 1.0), (0.75, 2.0)])
    def test_examples(self, gamma, xi):
        params = LevyParams(1.0)
        got = quantile(gamma, params)
        assert got == pytest.approx(xi, abs=1e-14)
        assert quad_cdf(got, params) == pytest.approx(gamma, abs=1e-12)

    @pytest.mark.parametrize("gamma", [-0.1, 1.0, 1.5, float("nan")])
    def test_rejects(self, gamma):
        with pytest.raises(ValueError):
            quantile(gamma, LevyParams(1.0))

    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_round_trip(self, alpha):
        params = LevyParams(alpha)
        g = np.random.default_rng(5).random(1000)
        assert np.max(np.abs(cdf(quantile(g, params), params) - g)) < 1e-12

    @pytest.mark.parametrize("alpha", [0.2, 1.0, 2.0])
    def test_closed_form_cdf_matches_quadrature(self, alpha):
        params = LevyParams(alpha)
        for x in [0.1, 0.9, 1.0, 1.5, 10.0, 1e3]:
            assert cdf(x, params) == pytest.approx(quad_cdf(x, params), abs=1e-11)
            assert cdf(x, params) + survival(x, params) == pytest.approx(1.0, abs=1e-15)

    @settings(max_examples=200, deadline=None)
    @given(st.floats(0.01, 2.0), st.floats(0.0, 0.999999))
    def test_monotone_and_inverse(self, alpha, gamma):
        params = LevyParams(alpha)
        xi = quantile(gamma, params)
        assert xi >= 0
        assert cdf(xi, params) == pytest.approx(gamma, abs=1e-12)
        assert quantile(min(gamma + 1e-4, 0.9999999), params) >= xi


class TestSampling:
    def test_forced_draws(self):
        params = LevyParams(1.0)
        assert waits_from_uniforms(0.25, params) == 0
        assert waits_from_uniforms(0.75, params) == 2

    def test_sample_advances_stream(self):
        rng = make_rng(3)
        draws = [sample_waiting_steps(rng, LevyParams(1.0)) for _ in range(50)]
        rng2 = make_rng(3)
        gammas = rng2.random(50)
        assert draws == list(waits_from_uniforms(gammas, LevyParams(1.0)))

    def test_zero_wait_frequency(self):
        # P(i=0) = P(xi < 1) = CDF(1) = 1/2 and P(i <= 1) = CDF(2) = 3/4
        params = LevyParams(1.0)
        waits = waits_from_uniforms(make_rng(11).random(10**6), params, cap=10**9)
        assert np.mean(waits == 0) == pytest.approx(quad_cdf(1.0, params), abs=0.002)
        assert np.mean(waits <= 1) == pytest.approx(quad_cdf(2.0, params), abs=0.002)

    def test_ks_against_cdf(self):
        params = LevyParams(1.0)
        xi = quantile(make_rng(2024).random(10**6), params)
        res = stats.kstest(xi, lambda x: cdf(x, params))
        assert res.pvalue > 0.01

    def test_tail_exponent(self):
        params = LevyParams(1.0)
        waits = waits_from_uniforms(make_rng(99).random(10**6), params, cap=10**9)
        k = np.unique(np.round(np.logspace(1, 3, 25)).astype(int))
        surv = np.array([np.mean(waits >= kk) for kk in k])
        slope = np.polyfit(np.log(k), np.log(surv), 1)[0]
        assert slope == pytest.approx(-1.0, abs=0.1)

    def test_small_alpha_favours_u0(self):
        f02 = generate_sequence(1, LevyParams(0.2), 10**5).labels.mean()
        f1 = generate_sequence(1, LevyParams(1.0), 10**5).labels.mean()
        assert f02 < f1


class TestSequence:
    def test_block_ordering(self):
        # waits 4 then 2: U0 U0 U0 U0 U1 U0 U0 U1 in time order
        labels = labels_from_waits([4, 2], 8)
        assert list(labels) == [U0, U0, U0, U0, U1, U0, U0, U1]

    def test_zero_waits(self):
        assert list(labels_from_waits([0, 0], 2)) == [U1, U1]

    def test_truncation_mid_block(self):
        assert list(labels_from_waits([1, 5], 4)) == [U0, U1, U0, U0]

    def test_runs_out(self):
        with pytest.raises(ValueError):
            labels_from_waits([1], 5)

    def test_deterministic(self):
        a = generate_sequence(123, LevyParams(0.7), 5000)
        b = generate_sequence(123, LevyParams(0.7), 5000)
        assert np.array_equal(a.labels, b.labels)
        assert len(a) == 5000
        assert not np.array_equal(a.labels, generate_sequence(124, LevyParams(0.7), 5000).labels)

    @pytest.mark.parametrize("alpha", [0.2, 1.0, 2.0])
    def test_matches_one_draw_at_a_time(self, alpha):
        params = LevyParams(alpha)
        n = 3000
        rng = make_rng(77)
        waits = (sample_waiting_steps(rng, params) for _ in iter(int, 1))
        expected = labels_from_waits(waits, n)
        assert np.array_equal(generate_sequence(77, params, n).labels, expected)

    def test_text_dump(self):
        seq = generate_sequence(5, LevyParams(1.0), 20)
        text = seq.to_text()
        assert len(text) == 20 and set(text) <= {"0", "1"}
        assert [int(c) for c in text] == list(seq.labels)

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            generate_sequence(1, LevyParams(1.0), 0)


def test_seed_mixing_injective():
    seeds = {mix_seed(42, i) for i in range(100_000)}
    assert len(seeds) == 100_000
    assert mix_seed(42, 0) != mix_seed(43, 0)
    assert all(0 <= s < 2**64 for s in list(seeds)[:100])

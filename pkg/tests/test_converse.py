import math

import numpy as np
import pytest

from secrelay.af import af_achievable_rate_at, af_secrecy_capacity
from secrelay.channel import ChannelRealization, DerivedParams, PowerBudget, derive_params
from secrelay.converse import (
    DegenerateDistributionError,
    NoiseCorrelation,
    PSDViolationError,
    bound_objective,
    conditional_noise_entropy,
    gain_ratio_identity_residual,
    genie_upper_bound,
    lmmse_error_variance,
    lmmse_error_variance_mc,
    select_phi,
)

LOG2_PI_E = math.log2(math.pi * math.e)

# h_r=1, h_d=2, h_e=1 with P_s=1: alpha=4, beta=1, mu=2.
CH = ChannelRealization(1.0, 2.0, 1.0)
PARAMS = DerivedParams(4.0, 1.0, 2.0)
PB = PowerBudget(1.0, 0.5)


def random_channel(rng, p_r=None):
    gains = rng.normal(size=(3, 2))
    ch = ChannelRealization(
        complex(*gains[0]), complex(*gains[1]), complex(*gains[2])
    )
    pb = PowerBudget(rng.uniform(0.1, 10.0), p_r if p_r is not None else rng.uniform(0.0, 20.0))
    return ch, derive_params(ch, pb), pb


def random_phi(rng, r_max=0.999):
    r = rng.uniform(0.0, r_max)
    t = rng.uniform(0.0, 2.0 * math.pi)
    return NoiseCorrelation(r * complex(math.cos(t), math.sin(t)))


class TestPSDGate:
    def test_correlation_above_one_rejected(self):
        with pytest.raises(PSDViolationError):
            NoiseCorrelation(1.0 + 1e-6)
        with pytest.raises(PSDViolationError):
            NoiseCorrelation(complex(0.8, 0.8))

    def test_ops_reject_raw_overcorrelated_phi(self):
        with pytest.raises(PSDViolationError):
            lmmse_error_variance(CH, PARAMS, 0.1, 1.5)
        with pytest.raises(PSDViolationError):
            conditional_noise_entropy(CH, PARAMS, 0.1, 1.5)
        with pytest.raises(PSDViolationError):
            bound_objective(CH, PARAMS, 0.1, 1.5)

    def test_unit_magnitude_admitted(self):
        NoiseCorrelation(complex(0.0, 1.0))


class TestLMMSEVariance:
    def test_no_relay_signal(self):
        phi = NoiseCorrelation(0.6)
        assert lmmse_error_variance(CH, PARAMS, 0.0, phi) == pytest.approx(1.0 - 0.36, abs=1e-15)

    def test_uncorrelated_noises(self):
        x = 0.3
        expected = (1.0 + 5.0 * PARAMS.mu * x) / (1.0 + PARAMS.mu * x)
        assert lmmse_error_variance(CH, PARAMS, x, 0.0) == pytest.approx(expected, rel=1e-15)

    def test_reference_point(self):
        # (1 + 2.5 - 0.25 - 1) / 1.5; cross-checked by the sampled covariance below.
        assert lmmse_error_variance(CH, PARAMS, 0.25, 0.5) == pytest.approx(1.5, abs=1e-14)

    def test_monte_carlo_covariance_agrees(self):
        pb = PowerBudget(1.0, 10.0)
        est, se = lmmse_error_variance_mc(
            CH, pb, 0.25, 0.5, n_samples=400_000, rng=np.random.default_rng(40)
        )
        assert abs(est - 1.5) <= 5.0 * se

    def test_nonnegative_for_admissible_phi(self):
        rng = np.random.default_rng(41)
        for _ in range(300):
            ch, params, _ = random_channel(rng)
            phi = random_phi(rng, r_max=1.0)
            assert lmmse_error_variance(ch, params, rng.uniform(0.0, 5.0), phi) >= 0.0

    def test_rejects_negative_gain(self):
        with pytest.raises(ValueError):
            lmmse_error_variance(CH, PARAMS, -0.1, 0.0)


class TestConditionalEntropy:
    def test_no_relay_signal(self):
        phi = NoiseCorrelation(0.5)
        expected = math.log2(math.pi * math.e * 0.75)
        assert conditional_noise_entropy(CH, PARAMS, 0.0, phi) == pytest.approx(expected, rel=1e-15)

    def test_independent_unit_noise(self):
        assert conditional_noise_entropy(CH, PARAMS, 0.0, 0.0) == pytest.approx(
            LOG2_PI_E, rel=1e-15
        )

    def test_reference_point_matches_determinant(self):
        # Oracle: determinant of the effective-noise covariance matrix.
        x, phi = 0.25, complex(0.5)
        k = np.array(
            [
                [x * 4.0 + 1.0, x * 2.0 * 1.0 + np.conj(phi)],
                [x * 2.0 * 1.0 + phi, x * 1.0 + 1.0],
            ]
        )
        det = float(np.linalg.det(k).real)
        expected = math.log2(math.pi * math.e * det / (1.0 + 1.0 * x))
        got = conditional_noise_entropy(CH, PARAMS, x, phi)
        assert got == pytest.approx(expected, rel=1e-12)
        assert got == pytest.approx(LOG2_PI_E + math.log2(1.2), rel=1e-12)

    def test_degenerate_covariance_rejected(self):
        with pytest.raises(DegenerateDistributionError):
            conditional_noise_entropy(CH, PARAMS, 0.0, complex(0.0, 1.0))

    def test_determinant_nonnegative_for_admissible_phi(self):
        rng = np.random.default_rng(42)
        for _ in range(300):
            ch, params, _ = random_channel(rng)
            phi = random_phi(rng, r_max=1.0)
            x = rng.uniform(0.0, 5.0)
            det = (
                1.0
                + (params.alpha + params.beta) * x
                - phi.abs2
                - 2.0 * x * (complex(ch.h_d) * complex(ch.h_e).conjugate() * phi.phi).real
            )
            assert det >= -1e-12


class TestSelectPhi:
    def test_weak_destination_choice(self):
        ch = ChannelRealization(1.0, 1.0, 2.0)
        params = DerivedParams(1.0, 4.0, 2.0)
        phi = select_phi(ch, params)
        assert phi.phi == pytest.approx(0.5)
        assert phi.abs2 == pytest.approx(params.alpha / params.beta, rel=1e-15)

    def test_strong_destination_choice(self):
        phi = select_phi(CH, PARAMS)
        assert phi.phi == pytest.approx(0.5)
        assert phi.abs2 == pytest.approx(PARAMS.beta / PARAMS.alpha, rel=1e-15)

    def test_zero_eavesdropper_gain(self):
        ch = ChannelRealization(1.0, 2.0, 0.0)
        assert select_phi(ch, DerivedParams(4.0, 0.0, 2.0)).phi == 0.0

    def test_all_zero_second_hop(self):
        ch = ChannelRealization(1.0, 0.0, 0.0)
        assert select_phi(ch, DerivedParams(0.0, 0.0, 2.0)).phi == 0.0

    def test_random_choices_always_admissible(self):
        rng = np.random.default_rng(43)
        for _ in range(300):
            ch, params, _ = random_channel(rng)
            assert select_phi(ch, params).abs2 <= 1.0 + 1e-12


class TestBoundObjective:
    def test_zero_gain_is_zero(self):
        for phi in (0.0, 0.3, complex(0.2, -0.4)):
            assert bound_objective(CH, PARAMS, 0.0, phi) == pytest.approx(0.0, abs=1e-15)

    def test_collapses_to_achievable_objective(self):
        phi = select_phi(CH, PARAMS)
        for x in np.linspace(0.0, 0.25, 26):
            rate = af_achievable_rate_at(PARAMS, PB, float(x))
            assert bound_objective(CH, PARAMS, float(x), phi) == pytest.approx(rate, abs=1e-12)

    def test_weak_destination_identically_zero(self):
        ch = ChannelRealization(1.0, 1.0, 2.0)
        pb = PowerBudget(1.0, 4.0)
        params = derive_params(ch, pb)
        phi = select_phi(ch, params)
        for x in np.linspace(0.0, pb.p_r / params.mu, 30):
            assert abs(bound_objective(ch, params, float(x), phi)) <= 1e-12

    def test_dominates_achievable_rate_for_any_phi(self):
        rng = np.random.default_rng(44)
        for _ in range(200):
            ch, params, pb = random_channel(rng)
            x_max = pb.p_r / params.mu
            x = rng.uniform(0.0, x_max) if x_max > 0 else 0.0
            phi = random_phi(rng)
            rate = af_achievable_rate_at(params, pb, x)
            assert bound_objective(ch, params, x, phi) >= rate - 1e-9

    def test_vectorized_evaluation(self):
        xs = np.linspace(0.0, 0.25, 5)
        vals = bound_objective(CH, PARAMS, xs, select_phi(CH, PARAMS))
        assert vals.shape == xs.shape


class TestGenieBound:
    def test_weak_destination_is_exactly_zero(self):
        ch = ChannelRealization(1.0, 1.0, 2.0)
        pb = PowerBudget(1.0, 4.0)
        params = derive_params(ch, pb)
        assert genie_upper_bound(ch, params, pb).bound_value == 0.0

    def test_tight_at_full_power_regime(self):
        bound = genie_upper_bound(CH, PARAMS, PB, n_points=200_001)
        assert bound.bound_value == pytest.approx(0.16096404744368117, abs=1e-10)

    def test_tight_at_saturated_regime(self):
        pb = PowerBudget(1.0, 10.0)
        bound = genie_upper_bound(CH, PARAMS, pb, n_points=200_001)
        assert bound.bound_value == pytest.approx(0.16519849227621203, abs=1e-10)

    def test_tightness_random(self):
        rng = np.random.default_rng(45)
        for _ in range(40):
            ch, params, pb = random_channel(rng)
            bound = genie_upper_bound(ch, params, pb, n_points=100_001)
            cap = af_secrecy_capacity(params, pb).capacity
            assert abs(bound.bound_value - cap) <= 1e-9


class TestGainRatioIdentity:
    def test_zero_at_origin(self):
        assert gain_ratio_identity_residual(PARAMS, 0.0) == 0.0

    def test_reference_point(self):
        assert gain_ratio_identity_residual(PARAMS, 0.7) <= 1e-12

    def test_mu_one(self):
        assert gain_ratio_identity_residual(DerivedParams(4.0, 1.0, 1.0), 3.0) <= 1e-15

    def test_random_draws(self):
        rng = np.random.default_rng(46)
        count = 0
        while count < 500:
            a, b = rng.exponential(1.0, 2)
            if a <= b or b == 0.0:
                continue
            params = DerivedParams(a, b, rng.uniform(1.0, 20.0))
            x = rng.uniform(0.0, 10.0)
            lhs = (1.0 + a * params.mu * x) / (1.0 + a * x)
            assert gain_ratio_identity_residual(params, x) <= 1e-12 * abs(lhs)
            count += 1

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            gain_ratio_identity_residual(DerivedParams(0.0, 0.0, 2.0), 1.0)
        with pytest.raises(ValueError):
            gain_ratio_identity_residual(DerivedParams(2.0, 2.0, 2.0), 1.0)

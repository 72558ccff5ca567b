import math

import numpy as np
import pytest

from secrelay.af import (
    af_achievable_rate_at,
    af_optimal_gain,
    af_secrecy_capacity,
    mutual_info_destination,
    mutual_info_destination_mc,
    mutual_info_eavesdropper,
    mutual_info_eavesdropper_mc,
)
from secrelay.channel import ChannelRealization, DerivedParams, PowerBudget, Strategy
from secrelay.fractional import RatioQuadraticProblem, grid_oracle, lambda_hat_closed_form

PARAMS = DerivedParams(4.0, 1.0, 2.0)
# h_r=1, h_d=2, h_e=1 with P_s=1 reproduces PARAMS.
CH = ChannelRealization(1.0, 2.0, 1.0)


def random_case(rng):
    return (
        DerivedParams(rng.exponential(), rng.exponential(), rng.uniform(1.0, 20.0)),
        PowerBudget(1.0, rng.uniform(0.0, 50.0)),
    )


class TestMutualInfo:
    def test_zero_gain_gives_zero(self):
        assert mutual_info_destination(PARAMS, 0.0) == 0.0
        assert mutual_info_eavesdropper(PARAMS, 0.0) == 0.0

    def test_mu_one_gives_zero(self):
        params = DerivedParams(4.0, 1.0, 1.0)
        for x in (0.0, 0.5, 3.0):
            assert mutual_info_destination(params, x) == 0.0

    def test_reference_values(self):
        assert mutual_info_destination(PARAMS, 0.25) == pytest.approx(math.log2(1.5), abs=1e-15)
        assert mutual_info_eavesdropper(PARAMS, 0.25) == pytest.approx(math.log2(1.2), abs=1e-15)

    def test_symmetric_links_coincide(self):
        params = DerivedParams(3.0, 3.0, 5.0)
        for x in (0.1, 1.0, 7.0):
            assert mutual_info_destination(params, x) == mutual_info_eavesdropper(params, x)

    def test_monte_carlo_agrees_destination(self):
        pb = PowerBudget(1.0, 10.0)
        est, se = mutual_info_destination_mc(CH, pb, 0.25, rng=np.random.default_rng(100))
        assert abs(est - math.log2(1.5)) <= 3.0 * se

    def test_monte_carlo_agrees_eavesdropper(self):
        pb = PowerBudget(1.0, 10.0)
        est, se = mutual_info_eavesdropper_mc(CH, pb, 0.25, rng=np.random.default_rng(101))
        assert abs(est - math.log2(1.2)) <= 3.0 * se


class TestOptimalGain:
    def test_weak_destination(self):
        assert af_optimal_gain(DerivedParams(1.0, 2.0, 5.0), PowerBudget(1.0, 3.0)) == 0.0

    def test_full_power_regime(self):
        # P_r = 0.5 <= sqrt(mu/(alpha*beta)) = sqrt(0.5).
        assert af_optimal_gain(PARAMS, PowerBudget(1.0, 0.5)) == 0.25

    def test_saturated_regime(self):
        assert af_optimal_gain(PARAMS, PowerBudget(1.0, 10.0)) == pytest.approx(
            1.0 / math.sqrt(8.0), abs=1e-15
        )

    def test_zero_eavesdropper_uses_full_power(self):
        assert af_optimal_gain(DerivedParams(4.0, 0.0, 2.0), PowerBudget(1.0, 10.0)) == 5.0


class TestSecrecyCapacity:
    def test_weak_destination_is_zero(self):
        res = af_secrecy_capacity(DerivedParams(1.0, 4.0, 2.0), PowerBudget(1.0, 7.0))
        assert (res.capacity, res.x_hat, res.consumed_power) == (0.0, 0.0, 0.0)
        assert res.strategy is Strategy.AF

    def test_full_power_value(self):
        # Frozen from the grid oracle: max f = 1.25 at x = 0.25.
        res = af_secrecy_capacity(PARAMS, PowerBudget(1.0, 0.5))
        assert res.capacity == pytest.approx(0.16096404744368117, abs=1e-15)
        assert res.x_hat == 0.25
        assert res.consumed_power == pytest.approx(0.5, abs=1e-15)

    def test_saturated_value_and_power_saving(self):
        # Frozen from the grid oracle: max f = 1.2573593128807148 at 1/sqrt(8).
        res = af_secrecy_capacity(PARAMS, PowerBudget(1.0, 10.0))
        assert res.capacity == pytest.approx(0.16519849227621203, abs=1e-12)
        assert res.x_hat == pytest.approx(1.0 / math.sqrt(8.0), abs=1e-15)
        assert res.consumed_power == pytest.approx(math.sqrt(0.5), abs=1e-14)
        assert res.consumed_power < 10.0

    def test_half_duplex_flag(self):
        full = af_secrecy_capacity(PARAMS, PowerBudget(1.0, 0.5), half_duplex=False)
        half = af_secrecy_capacity(PARAMS, PowerBudget(1.0, 0.5))
        assert full.capacity == pytest.approx(2.0 * half.capacity, rel=1e-15)

    def test_matches_parametric_solver(self):
        rng = np.random.default_rng(200)
        for _ in range(300):
            params, pb = random_case(rng)
            if params.alpha <= params.beta or params.mu <= 1.0 or pb.p_r == 0.0:
                continue
            prob = RatioQuadraticProblem(params.alpha, params.beta, params.mu, pb.p_r / params.mu)
            sol = lambda_hat_closed_form(prob)
            res = af_secrecy_capacity(params, pb)
            assert abs(res.capacity - 0.5 * math.log2(sol.lambda_hat)) <= 1e-9
            assert abs(res.x_hat - sol.x_hat) <= 1e-9 * max(1.0, prob.x_max)

    def test_monotone_in_budget(self):
        rng = np.random.default_rng(201)
        for _ in range(50):
            params, _ = random_case(rng)
            caps = [
                af_secrecy_capacity(params, PowerBudget(1.0, p)).capacity
                for p in np.linspace(0.0, 30.0, 40)
            ]
            assert all(b >= a - 1e-12 for a, b in zip(caps, caps[1:]))

    def test_saturation_plateau(self):
        rng = np.random.default_rng(202)
        for _ in range(100):
            params, _ = random_case(rng)
            if params.alpha <= params.beta or params.alpha * params.beta == 0.0:
                continue
            knee = math.sqrt(params.mu / (params.alpha * params.beta))
            base = af_secrecy_capacity(params, PowerBudget(1.0, knee)).capacity
            for scale in (1.5, 4.0, 50.0):
                cap = af_secrecy_capacity(params, PowerBudget(1.0, knee * scale)).capacity
                assert cap == pytest.approx(base, abs=1e-12)

    def test_zero_conditions(self):
        rng = np.random.default_rng(203)
        for _ in range(300):
            params, pb = random_case(rng)
            res = af_secrecy_capacity(params, pb)
            should_be_zero = params.alpha <= params.beta or params.mu == 1.0 or pb.p_r == 0.0
            assert (res.capacity == 0.0) == should_be_zero

    def test_consumed_within_budget(self):
        rng = np.random.default_rng(204)
        for _ in range(300):
            params, pb = random_case(rng)
            assert af_secrecy_capacity(params, pb).consumed_power <= pb.p_r + 1e-12


class TestAchievableRate:
    def test_zero_gain(self):
        assert af_achievable_rate_at(PARAMS, PowerBudget(1.0, 0.5), 0.0) == 0.0

    def test_optimum_attains_capacity(self):
        pb = PowerBudget(1.0, 0.5)
        res = af_secrecy_capacity(PARAMS, pb)
        assert af_achievable_rate_at(PARAMS, pb, res.x_hat) == pytest.approx(
            res.capacity, abs=1e-12
        )

    def test_negative_before_clamp(self):
        params = DerivedParams(1.0, 4.0, 2.0)
        rate = af_achievable_rate_at(params, PowerBudget(1.0, 1.0), 0.1)
        assert rate < 0.0

    def test_rejects_infeasible_gain(self):
        with pytest.raises(ValueError):
            af_achievable_rate_at(PARAMS, PowerBudget(1.0, 0.5), 0.26)
        with pytest.raises(ValueError):
            af_achievable_rate_at(PARAMS, PowerBudget(1.0, 0.5), -0.01)

    def test_optimum_dominates_feasible_grid(self):
        rng = np.random.default_rng(205)
        for _ in range(100):
            params, pb = random_case(rng)
            best = af_achievable_rate_at(params, pb, af_optimal_gain(params, pb))
            x_max = pb.p_r / params.mu
            for x in np.linspace(0.0, x_max, 25):
                assert best >= af_achievable_rate_at(params, pb, float(x)) - 1e-12

    def test_matches_oracle_value_shape(self):
        # Rate at x is half the log of the ratio the oracle maximizes.
        pb = PowerBudget(1.0, 0.5)
        x_star, f_star = grid_oracle(RatioQuadraticProblem(4.0, 1.0, 2.0, 0.25), 100_001)
        assert af_achievable_rate_at(PARAMS, pb, x_star) == pytest.approx(
            0.5 * math.log2(f_star), abs=1e-12
        )

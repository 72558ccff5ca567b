"""Achievable rate, optimal gain, and secrecy capacity for AF relaying.

The per-hop mutual informations reduce to log ratios in x = |omega|^2, and
the capacity has a three-branch closed form: zero when the eavesdropper link
dominates, the full-power value below a saturation budget, and a constant
above it (extra relay power would amplify noise more than signal).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import ChannelRealization, DerivedParams, PowerBudget, Strategy, gain_domain

__all__ = [
    "SecrecyResult",
    "mutual_info_destination",
    "mutual_info_eavesdropper",
    "af_optimal_gain",
    "af_secrecy_capacity",
    "af_achievable_rate_at",
    "mutual_info_destination_mc",
    "mutual_info_eavesdropper_mc",
]


@dataclass(frozen=True)
class SecrecyResult:
    """Capacity in bits per channel use, the optimal squared gain, and the
    relay transmit power actually consumed at that gain."""

    capacity: float
    x_hat: float
    consumed_power: float
    strategy: Strategy


def mutual_info_destination(params: DerivedParams, x: float) -> float:
    """log2((1 + alpha*mu*x) / (1 + alpha*x)), nonnegative for x >= 0."""
    a, m = params.alpha, params.mu
    return math.log2((1.0 + a * m * x) / (1.0 + a * x))


def mutual_info_eavesdropper(params: DerivedParams, x: float) -> float:
    """Same log ratio with beta in place of alpha."""
    b, m = params.beta, params.mu
    return math.log2((1.0 + b * m * x) / (1.0 + b * x))


def af_optimal_gain(params: DerivedParams, pb: PowerBudget) -> float:
    """Secrecy-optimal squared gain x_hat.

    Zero when no positive rate is possible; otherwise full power P_r/mu up to
    the saturation budget sqrt(mu/(alpha*beta)), and the interior peak
    1/sqrt(alpha*beta*mu) beyond it.
    """
    a, b, m = params.alpha, params.beta, params.mu
    if a <= b or m <= 1.0:
        return 0.0
    if b == 0.0:
        # Saturation budget is infinite; full power is always optimal.
        return pb.p_r / m
    if pb.p_r <= math.sqrt(m / (a * b)):
        return pb.p_r / m
    return 1.0 / math.sqrt(a * b * m)


def af_secrecy_capacity(params: DerivedParams, pb: PowerBudget,
                        half_duplex: bool = True) -> SecrecyResult:
    """Closed-form AF secrecy capacity with the optimal gain and consumed power.

    `half_duplex=False` drops the 1/2 two-slot factor; useful when comparing
    against the raw maximized log ratio.
    """
    a, b, m = params.alpha, params.beta, params.mu
    p = pb.p_r
    if a <= b:
        rate = 0.0
    elif b == 0.0 or p <= math.sqrt(m / (a * b)):
        num = a * b * p * p + (a * m + b) * p + m
        den = a * b * p * p + (a + b * m) * p + m
        rate = math.log2(num / den)
    else:
        root = 2.0 * math.sqrt(a * b * m)
        rate = math.log2((root + a * m + b) / (root + a + b * m))
    x_hat = af_optimal_gain(params, pb)
    capacity = 0.5 * rate if half_duplex else rate
    return SecrecyResult(capacity, x_hat, m * x_hat, Strategy.AF)


def af_achievable_rate_at(params: DerivedParams, pb: PowerBudget, x: float,
                          half_duplex: bool = True) -> float:
    """Secrecy rate at a fixed feasible gain, before the positive-part clamp.

    May be negative (alpha <= beta); raises for x outside [0, P_r/mu].
    """
    x_max = gain_domain(Strategy.AF, params, pb)
    if not 0.0 <= x <= x_max:
        raise ValueError(f"gain x={x!r} outside the feasible domain [0, {x_max!r}]")
    rate = mutual_info_destination(params, x) - mutual_info_eavesdropper(params, x)
    return 0.5 * rate if half_duplex else rate


def _mi_mc(signal_coeff: complex, noise_gain: complex, n_samples: int,
           n_batches: int, rng: np.random.Generator) -> tuple[float, float]:
    # Sample SNR per batch through the received-signal model, then the
    # Gaussian-channel formula; batching gives the standard error.
    m = max(n_samples // n_batches, 1)
    vals = np.empty(n_batches)
    for k in range(n_batches):
        x_s = _cn_samples(rng, m)
        z_r = _cn_samples(rng, m)
        z_0 = _cn_samples(rng, m)
        sig = signal_coeff * x_s
        noise = noise_gain * z_r + z_0
        snr = np.mean(np.abs(sig) ** 2) / np.mean(np.abs(noise) ** 2)
        vals[k] = math.log2(1.0 + snr)
    return float(np.mean(vals)), float(np.std(vals, ddof=1) / math.sqrt(n_batches))


def _cn_samples(rng: np.random.Generator, n: int) -> np.ndarray:
    """Unit-variance circularly symmetric complex Gaussian draws."""
    z = rng.standard_normal((n, 2))
    return (z[:, 0] + 1j * z[:, 1]) / math.sqrt(2.0)


def mutual_info_destination_mc(ch: ChannelRealization, pb: PowerBudget, x: float,
                               n_samples: int = 200_000, n_batches: int = 50,
                               rng: np.random.Generator | None = None) -> tuple[float, float]:
    """Monte Carlo estimate (value, stderr) of the destination mutual information.

    Independent of the closed form: draws the source symbol and both noise
    stages of the destination observation and converts the sample SNR.
    """
    if rng is None:
        rng = np.random.default_rng(0)
    omega = math.sqrt(x)
    coeff = math.sqrt(pb.p_s) * ch.h_d * omega * ch.h_r
    return _mi_mc(coeff, ch.h_d * omega, n_samples, n_batches, rng)


def mutual_info_eavesdropper_mc(ch: ChannelRealization, pb: PowerBudget, x: float,
                                n_samples: int = 200_000, n_batches: int = 50,
                                rng: np.random.Generator | None = None) -> tuple[float, float]:
    """Monte Carlo estimate (value, stderr) of the eavesdropper mutual information."""
    if rng is None:
        rng = np.random.default_rng(0)
    omega = math.sqrt(x)
    coeff = math.sqrt(pb.p_s) * ch.h_e * omega * ch.h_r
    return _mi_mc(coeff, ch.h_e * omega, n_samples, n_batches, rng)

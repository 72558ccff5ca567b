"""DF secrecy capacity via the cut-set decomposition.

The rate is half the minimum of the first-hop capacity log2(mu) and the
second-hop secrecy capacity at full relay power. When the second hop is the
stronger cut the relay dials its gain down to the point where both cuts are
equal, saving power.
"""

from __future__ import annotations

import math

from .channel import DerivedParams, PowerBudget, Strategy
from .af import SecrecyResult

__all__ = [
    "source_relay_capacity",
    "second_hop_secrecy_capacity",
    "df_optimal_gain",
    "df_secrecy_capacity",
]


def source_relay_capacity(params: DerivedParams) -> float:
    """First-hop capacity log2(mu) in bits per channel use."""
    return math.log2(params.mu)


def second_hop_secrecy_capacity(params: DerivedParams, pb: PowerBudget) -> float:
    """Second-hop secrecy capacity at full relay power, clamped at zero."""
    ratio = (1.0 + params.alpha * pb.p_r) / (1.0 + params.beta * pb.p_r)
    return max(0.0, math.log2(ratio))


def df_optimal_gain(params: DerivedParams, pb: PowerBudget) -> float:
    """Optimal squared gain: zero, full power, or the cut-balancing value.

    The balancing branch triggers only when (1+alpha*P_r)/(1+beta*P_r) > mu,
    which forces alpha - beta*mu > 0, so the division is safe.
    """
    a, b, m = params.alpha, params.beta, params.mu
    if a <= b:
        return 0.0
    if (1.0 + a * pb.p_r) / (1.0 + b * pb.p_r) <= m:
        return pb.p_r
    return (m - 1.0) / (a - b * m)


def df_secrecy_capacity(params: DerivedParams, pb: PowerBudget) -> SecrecyResult:
    """Three-branch DF secrecy capacity with gain and consumed power.

    DF consumed power equals the squared gain directly because the re-encoded
    symbol has unit power.
    """
    a, b, m = params.alpha, params.beta, params.mu
    if a <= b:
        capacity = 0.0
    else:
        ratio = (1.0 + a * pb.p_r) / (1.0 + b * pb.p_r)
        if ratio <= m:
            capacity = 0.5 * math.log2(ratio)
        else:
            capacity = 0.5 * math.log2(m)
    x_hat = df_optimal_gain(params, pb)
    return SecrecyResult(capacity, x_hat, x_hat, Strategy.DF)

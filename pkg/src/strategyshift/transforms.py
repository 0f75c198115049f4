"""Interval transforms and marginal increment transforms.

The marginal transform of one axis is E[z^a * exp(-theta * Delta)] where a is
the compound increment accrued over one observation interval Delta.  By
conditioning on Delta it reduces to the interval LST evaluated at
theta + lambda * (1 - h(z)), with h the mark PGF.  The same composition,
applied with a truncated series in place of the scalar z, yields the
coefficient expansions used by the operator calculus.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .params import IntervalDistribution, MarkDistribution
from .series import TruncatedSeries


@dataclass(frozen=True)
class TransformContext:
    """Scalar transform arguments of the joint first-exceedance functional.

    z and g weight the two exit indices; theta0/theta1 the prior and actual
    shift epochs of axis A; vartheta0/vartheta1 those of axis B.
    """

    z: float = 1.0
    g: float = 1.0
    theta0: float = 0.0
    theta1: float = 0.0
    vartheta0: float = 0.0
    vartheta1: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.z <= 1.0 and 0.0 <= self.g <= 1.0):
            raise DomainError("z and g must lie in [0, 1]")
        if min(self.theta0, self.theta1, self.vartheta0, self.vartheta1) < 0.0:
            raise DomainError("exponential transform arguments must be >= 0")

    @classmethod
    def neutral(cls) -> "TransformContext":
        return cls()


def lst(family: str, mean: float, theta: float) -> float:
    """Interval LST E[exp(-theta * Delta)] for the named family."""
    return IntervalDistribution(family, mean).lst(theta)


def gamma_marginal(
    z: float,
    theta: float,
    intensity: float,
    mark: MarkDistribution,
    interval: IntervalDistribution,
) -> float:
    """Marginal transform E[z^a * exp(-theta * Delta)] of one axis."""
    if not 0.0 <= z <= 1.0:
        raise DomainError("z must lie in [0, 1]")
    return interval.lst(theta + intensity * (1.0 - mark.pgf(z)))


def gamma_series(
    order: int,
    theta: float,
    intensity: float,
    mark: MarkDistribution,
    interval: IntervalDistribution,
) -> TruncatedSeries:
    """gamma_marginal with a formal series variable in the z slot.

    Expands the interval LST at theta + lambda * (1 - h(x)) as a truncated
    power series in x.
    """
    if theta < 0.0:
        raise DomainError("theta must be nonnegative")
    h = TruncatedSeries(mark.pgf_coefficients(order))
    inner = theta + intensity * (1.0 - h)
    if interval.family == "exponential":
        return (1.0 + interval.mean * inner).reciprocal()
    return (-interval.mean * inner).exp()

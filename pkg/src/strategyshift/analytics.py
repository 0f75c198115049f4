"""Closed-form first-exceedance analytics.

Three routes are provided and deliberately kept separate so the Monte Carlo
harness can confront each one:

  * ``phi_functional`` — the operator-calculus evaluation of the joint
    first-exceedance functional, built from truncated series and the
    two-dimensional extraction operator.
  * ``lemma_pgf_a`` / ``lemma_pgf_b`` — the memoryless-observation closed
    forms for the exit-index PGFs, evaluated term by term exactly as printed
    in the source formulas.
  * ``expected_exit_index`` / ``expected_shift_time`` — the closed-form
    means of the exit indices and shift epochs.

The printed closed forms are known to be suspect in places (duplicated
bracket sums, threshold-independent means); they are evaluated faithfully
and judged by the conformance harness, not patched here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, NoExitError, SingularConstantError
from .params import ModelParams
from .series import BivariateSeries, TruncatedSeries, d_extract_2d
from .transforms import TransformContext, gamma_series

#: Extra series orders kept beyond the extraction index.  The generating
#: functions in scope have geometric tails, so a small guard suffices; the
#: round-trip tests confirm it.
ORDER_GUARD = 8


def axis_factor(
    order: int,
    weight: float,
    theta0: float,
    theta1: float,
    intensity: float,
    mark,
    obs_initial,
    obs_interval,
) -> TruncatedSeries:
    """One univariate factor of the joint functional's series kernel.

    Built as (delta(theta1) - phi) * (w - w*G0*G + G0) / (1 - w*G) where
    phi, G, G0 are the marginal-transform series at theta1, theta0 + theta1,
    and the initial-interval analog.  Zero intensity collapses the numerator
    to zero; that case is short-circuited to avoid inverting 1 - w at w = 1.
    """
    if intensity == 0.0:
        return TruncatedSeries.constant(0.0, order)
    delta_t1 = obs_interval.lst(theta1)
    phi = gamma_series(order, theta1, intensity, mark, obs_interval)
    big = gamma_series(order, theta0 + theta1, intensity, mark, obs_interval)
    big0 = gamma_series(order, theta0 + theta1, intensity, mark, obs_initial)
    numerator = (delta_t1 - phi) * (weight - weight * big0 * big + big0)
    denominator = 1.0 - weight * big
    return numerator * denominator.reciprocal()


def phi_series(
    m: int, n: int, ctx: TransformContext, params: ModelParams, guard: int = ORDER_GUARD
) -> BivariateSeries:
    """Bivariate series kernel of the joint functional, ready for extraction."""
    fx = axis_factor(
        m + guard, ctx.z, ctx.theta0, ctx.theta1,
        params.lambda_a, params.mark_a, params.obs_initial, params.obs_interval,
    )
    fy = axis_factor(
        n + guard, ctx.g, ctx.vartheta0, ctx.vartheta1,
        params.lambda_b, params.mark_b, params.obs_initial, params.obs_interval,
    )
    return BivariateSeries.separable(fx, fy)


def phi_functional(
    m: int, n: int, ctx: TransformContext, params: ModelParams, guard: int = ORDER_GUARD
) -> float:
    """Operator-calculus value of the joint first-exceedance functional."""
    if m < 0 or n < 0:
        raise DomainError("thresholds m, n must be nonnegative integers")
    return d_extract_2d(phi_series(m, n, ctx, params, guard), (m, n))


#: Slots of the joint functional selected by each marginal quantity.
MARGINALS = {
    "index_a": "z",
    "index_b": "g",
    "shift_prev_a": "theta0",
    "shift_a": "theta1",
    "shift_prev_b": "vartheta0",
    "shift_b": "vartheta1",
}


def marginal_pgf(
    which: str, arg: float, m: int, n: int, params: ModelParams
) -> float:
    """Single-argument specialization of the joint functional.

    ``which`` selects the quantity: exit-index PGFs ("index_a", "index_b")
    take arg in [0, 1]; shift-epoch LSTs ("shift_a", "shift_prev_a", ...)
    take arg >= 0.  All other slots are held at their neutral values.
    """
    if which not in MARGINALS:
        raise DomainError(f"unknown marginal {which!r}")
    slot = MARGINALS[which]
    ctx = TransformContext(**{slot: arg})
    return phi_functional(m, n, ctx, params)


@dataclass(frozen=True)
class LemmaConstants:
    """Scalar constants of the memoryless closed-form exit-index PGFs.

    Each (alpha, beta) pair comes from one interval mean and one intensity
    and satisfies alpha + beta = 1.  kappa (a-side) and kappa1 (b-side) are
    1 / (lambda * (delta0_mean - delta_mean)) and are undefined when the two
    interval means coincide.
    """

    alpha_a: float
    beta_a: float
    alpha_a0: float
    beta_a0: float
    alpha_b: float
    beta_b: float
    alpha_b0: float
    beta_b0: float
    kappa: float
    kappa1: float
    delta0_mean: float
    delta_mean: float
    lambda_a: float
    lambda_b: float

    @classmethod
    def from_params(cls, params: ModelParams) -> "LemmaConstants":
        if not params.is_memoryless():
            raise DomainError(
                "closed-form exit-index PGFs require exponential observation "
                "intervals"
            )
        d0, d = params.delta0_mean, params.delta_mean
        la, lb = params.lambda_a, params.lambda_b
        if d0 == d:
            raise SingularConstantError(
                "kappa constants are undefined when the initial and "
                "subsequent interval means coincide"
            )
        if la <= 0.0 or lb <= 0.0:
            raise NoExitError("closed-form constants need positive intensities")

        def pair(mean, lam):
            return mean * lam / (1.0 + mean * lam), 1.0 / (1.0 + mean * lam)

        aa, ba = pair(d, la)
        aa0, ba0 = pair(d0, la)
        ab, bb = pair(d, lb)
        ab0, bb0 = pair(d0, lb)
        return cls(
            alpha_a=aa, beta_a=ba, alpha_a0=aa0, beta_a0=ba0,
            alpha_b=ab, beta_b=bb, alpha_b0=ab0, beta_b0=bb0,
            kappa=1.0 / (la * (d0 - d)),
            kappa1=1.0 / (lb * (d0 - d)),
            delta0_mean=d0, delta_mean=d, lambda_a=la, lambda_b=lb,
        )


def _lemma_pgf(z: float, level: int, d0_lam: float, kappa: float) -> float:
    # Literal term-by-term evaluation of the printed closed form; the two
    # kappa-weighted brackets are identical as printed and are kept that way.
    if not 0.0 <= z <= 1.0:
        raise DomainError("PGF argument must lie in [0, 1]")
    base = 1.0 + d0_lam
    ratio = d0_lam / base
    bracket = sum(ratio**j for j in range(level + 1))
    tail_base = base - z
    tail = sum((d0_lam / tail_base) ** k for k in range(level + 1))
    return (
        z
        + ((1.0 - kappa) / base) * bracket
        + (kappa / base) * bracket
        - ((1.0 - z) * z / tail_base) * tail
    )


def lemma_pgf_a(z: float, m: int, constants: LemmaConstants) -> float:
    """Closed-form exit-index PGF for axis A (memoryless observation)."""
    return _lemma_pgf(
        z, m, constants.delta0_mean * constants.lambda_a, constants.kappa
    )


def lemma_pgf_b(g: float, n: int, constants: LemmaConstants) -> float:
    """Closed-form exit-index PGF for axis B (memoryless observation)."""
    return _lemma_pgf(
        g, n, constants.delta0_mean * constants.lambda_b, constants.kappa1
    )


def expected_exit_index(params: ModelParams):
    """Closed-form means of the two exit indices: 1 / (delta_mean * lambda)."""
    if params.lambda_a <= 0.0 or params.lambda_b <= 0.0:
        raise NoExitError("exit-index mean needs positive intensities")
    d = params.delta_mean
    return 1.0 / (d * params.lambda_a), 1.0 / (d * params.lambda_b)


def expected_shift_time(params: ModelParams):
    """Closed-form shift-epoch means and their one-interval-earlier priors.

    Returns (E[tau_mu], E[tau_nu], E[tau_mu_prev], E[tau_nu_prev]) with
    E[tau] = delta0_mean + 1/lambda - delta_mean and prior = E[tau] -
    delta_mean.
    """
    if params.lambda_a <= 0.0 or params.lambda_b <= 0.0:
        raise NoExitError("shift-time mean needs positive intensities")
    d0, d = params.delta0_mean, params.delta_mean
    ta = d0 + 1.0 / params.lambda_a - d
    tb = d0 + 1.0 / params.lambda_b - d
    return ta, tb, ta - d, tb - d

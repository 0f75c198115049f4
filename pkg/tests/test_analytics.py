import numpy as np
import pytest

from strategyshift import (
    IntervalDistribution,
    LemmaConstants,
    ModelParams,
    TransformContext,
    d_extract,
    expected_exit_index,
    expected_shift_time,
    lemma_pgf_a,
    lemma_pgf_b,
    marginal_pgf,
    phi_functional,
)
from strategyshift.analytics import axis_factor, phi_series
from strategyshift.errors import DomainError, NoExitError, SingularConstantError
from strategyshift.series import d_extract_2d


def _exp_params(lambda_a=1.0, lambda_b=1.0, d0=1.0, d=1.0):
    return ModelParams(
        lambda_a, lambda_b,
        IntervalDistribution.exponential(d0),
        IntervalDistribution.exponential(d),
    )


class TestPhiFunctional:
    def test_zero_intensity_gives_zero(self):
        params = _exp_params(lambda_a=0.0)
        for m, n in [(0, 0), (1, 1), (2, 3)]:
            assert phi_functional(m, n, TransformContext.neutral(), params) == 0.0

    def test_separability(self, reference_params):
        ctx = TransformContext(z=0.5, g=0.7, theta1=0.2, vartheta0=0.1)
        p = reference_params
        for m in range(4):
            for n in range(4):
                joint = d_extract_2d(phi_series(m, n, ctx, p), (m, n))
                fx = axis_factor(m + 8, ctx.z, ctx.theta0, ctx.theta1,
                                 p.lambda_a, p.mark_a, p.obs_initial, p.obs_interval)
                fy = axis_factor(n + 8, ctx.g, ctx.vartheta0, ctx.vartheta1,
                                 p.lambda_b, p.mark_b, p.obs_initial, p.obs_interval)
                assert abs(joint - d_extract(fx, m) * d_extract(fy, n)) <= 1e-9

    def test_finite_on_reference_grid(self, reference_params):
        for m in (1, 2, 3):
            for n in (1, 2, 3):
                value = phi_functional(m, n, TransformContext.neutral(), reference_params)
                assert np.isfinite(value)

    def test_guard_order_is_sufficient(self, reference_params):
        # widening the guard must not change the extracted value
        ctx = TransformContext(z=0.5, g=0.5)
        v8 = phi_functional(2, 2, ctx, reference_params, guard=8)
        v40 = phi_functional(2, 2, ctx, reference_params, guard=40)
        assert v8 == pytest.approx(v40, abs=1e-12)

    def test_negative_threshold_rejected(self, reference_params):
        with pytest.raises(DomainError):
            phi_functional(-1, 0, TransformContext.neutral(), reference_params)


class TestMarginalPgf:
    def test_neutral_specialization(self, reference_params):
        neutral = phi_functional(1, 1, TransformContext.neutral(), reference_params)
        assert marginal_pgf("index_a", 1.0, 1, 1, reference_params) == pytest.approx(
            neutral, abs=1e-12
        )
        assert marginal_pgf("shift_a", 0.0, 1, 1, reference_params) == pytest.approx(
            neutral, abs=1e-12
        )

    def test_unknown_marginal(self, reference_params):
        with pytest.raises(DomainError):
            marginal_pgf("bogus", 0.5, 1, 1, reference_params)

    def test_pgf_argument_validated(self, reference_params):
        with pytest.raises(DomainError):
            marginal_pgf("index_a", 1.5, 1, 1, reference_params)


class TestLemmaConstants:
    def test_pairs_sum_to_one(self):
        c = LemmaConstants.from_params(_exp_params(d0=2.0, d=1.0))
        assert c.alpha_a + c.beta_a == pytest.approx(1.0, abs=1e-15)
        assert c.alpha_a0 + c.beta_a0 == pytest.approx(1.0, abs=1e-15)
        assert c.alpha_b + c.beta_b == pytest.approx(1.0, abs=1e-15)
        assert c.alpha_b0 + c.beta_b0 == pytest.approx(1.0, abs=1e-15)
        assert 0.0 < c.alpha_a < 1.0

    def test_kappa_values(self):
        c = LemmaConstants.from_params(_exp_params(lambda_a=2.0, d0=2.0, d=1.0))
        assert c.kappa == pytest.approx(0.5)
        assert c.kappa1 == pytest.approx(1.0)

    def test_equal_means_singular(self):
        with pytest.raises(SingularConstantError):
            LemmaConstants.from_params(_exp_params(d0=1.0, d=1.0))

    def test_requires_memoryless(self):
        params = ModelParams(
            1.0, 1.0,
            IntervalDistribution.deterministic(2.0),
            IntervalDistribution.deterministic(1.0),
        )
        with pytest.raises(DomainError):
            LemmaConstants.from_params(params)


class TestLemmaPgf:
    @pytest.fixture
    def constants(self):
        return LemmaConstants.from_params(_exp_params(d0=2.0, d=1.0))

    def test_endpoints_kill_third_term(self, constants):
        # at z in {0, 1} the (1 - z) z tail vanishes, leaving the bracket part
        base = 1.0 + constants.delta0_mean * constants.lambda_a
        ratio = constants.delta0_mean * constants.lambda_a / base
        bracket = sum(ratio**j for j in range(2))
        assert lemma_pgf_a(0.0, 1, constants) == pytest.approx(bracket / base)
        assert lemma_pgf_a(1.0, 1, constants) == pytest.approx(1.0 + bracket / base)

    def test_value_logged_case(self, constants):
        # frozen value of the literal formula at z = 0.5, m = 1
        assert lemma_pgf_a(0.5, 1, constants) == pytest.approx(0.87555555555555, abs=1e-10)

    def test_b_side_mirrors_a_side(self):
        sym = LemmaConstants.from_params(_exp_params(d0=2.0, d=1.0))
        assert lemma_pgf_b(0.3, 2, sym) == pytest.approx(lemma_pgf_a(0.3, 2, sym))

    def test_argument_domain(self, constants):
        with pytest.raises(DomainError):
            lemma_pgf_a(-0.1, 1, constants)


class TestClosedFormMeans:
    def test_exit_index_values(self):
        assert expected_exit_index(_exp_params())[0] == 1.0
        assert expected_exit_index(_exp_params(lambda_a=0.5, d=2.0))[0] == 1.0

    def test_shift_time_values(self):
        ta, _, prior_a, _ = expected_shift_time(_exp_params(lambda_a=0.5))
        assert ta == 2.0
        assert prior_a == 1.0

    def test_zero_intensity_rejected(self):
        with pytest.raises(NoExitError):
            expected_exit_index(_exp_params(lambda_a=0.0))
        with pytest.raises(NoExitError):
            expected_shift_time(_exp_params(lambda_b=0.0))

    def test_mean_consistency_identity(self):
        # shift mean minus initial mean equals interval mean times (index mean - 1)
        for la in (0.25, 0.5, 1.0, 2.0):
            for d in (0.5, 1.0, 3.0):
                params = _exp_params(lambda_a=la, lambda_b=la, d0=1.7, d=d)
                e_mu, _ = expected_exit_index(params)
                t_a, _, _, _ = expected_shift_time(params)
                assert abs((t_a - params.delta0_mean) - d * (e_mu - 1.0)) <= 1e-12

    def test_monotone_in_intensity_and_interval(self):
        las = [0.25, 0.5, 1.0, 2.0, 4.0]
        means = [expected_exit_index(_exp_params(lambda_a=la))[0] for la in las]
        assert all(a > b for a, b in zip(means, means[1:]))
        ds = [0.5, 1.0, 2.0, 4.0]
        means = [expected_exit_index(_exp_params(d=d))[0] for d in ds]
        assert all(a > b for a, b in zip(means, means[1:]))

    def test_geometric_oracle_at_unit_threshold(self, reference_params):
        # per-window exceedance is Bernoulli(1/2) at the reference config,
        # so the exit index is 'number of failures' with mean exactly 1
        p_exceed = 0.5
        e_mu = sum(j * (1 - p_exceed) ** j * p_exceed for j in range(200))
        assert expected_exit_index(reference_params)[0] == pytest.approx(e_mu, abs=1e-9)

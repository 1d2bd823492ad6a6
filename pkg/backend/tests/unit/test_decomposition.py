# -*- coding: utf-8 -*-
"""
Unit tests for the f/g decomposition of the characteristic function.
"""

import math
from unittest.mock import patch

import numpy as np
import pytest

from app.exceptions import DomainError
from app.schemas.specfun import MLParams
from app.services.decomposition import DecompositionContext, DecompositionService, g_zero
from app.services.specfun import SpecFunService

ALPHAS = [0.6, 0.7, 0.8, 0.9, 0.95]


@pytest.mark.parametrize("alpha", ALPHAS)
def test_f_at_zero_closed_form(make_context, alpha):
    """
    Validates f(0) = integral of the kernel = -(1/alpha) cos(pi/(2 alpha)).

    Assertions
    ----------
    - Agreement within 1e-8 absolute.
    """
    ctx = make_context(alpha)
    expected = -math.cos(math.pi / (2.0 * alpha)) / alpha
    assert DecompositionService.f_part(ctx, 0.0) == pytest.approx(expected, abs=1e-8)


def test_f_at_zero_for_alpha_08(make_context):
    """
    Validates the numeric value of f(0) at alpha = 0.8.

    Assertions
    ----------
    - f(0) = 0.4783542904563622.
    """
    assert DecompositionService.f_part(make_context(0.8), 0.0) == pytest.approx(0.4783542904563622, abs=1e-10)


@pytest.mark.parametrize("alpha", ALPHAS)
@pytest.mark.parametrize("lam", [0.1, 1.0, 5.0, 10.0, 20.0, 40.0])
def test_decomposition_identity(make_context, mp_ml, alpha, lam):
    """
    Validates rho E_{2alpha,2}(-lambda) = f + g against the extended-precision series.

    Assertions
    ----------
    - Residual within 1e-8 relative to |f| + |g|.
    """
    ctx = make_context(alpha)
    reference = mp_ml(2.0 * alpha, 2.0, -lam)
    residual = DecompositionService.identity_residual(ctx, lam, reference=reference)
    scale = abs(DecompositionService.f_part(ctx, lam)) + abs(DecompositionService.g_part(ctx, lam))
    assert residual <= 1e-8 * scale


@pytest.mark.parametrize("alpha", [0.6, 0.8])
def test_f_matches_reference(make_context, mp_f_part, alpha):
    """
    Validates f itself against the reference built from the extended-precision series.

    Assertions
    ----------
    - Relative agreement within 1e-9 for lambda in {2, 15, 35}.
    """
    ctx = make_context(alpha)
    for lam in (2.0, 15.0, 35.0):
        assert DecompositionService.f_part(ctx, lam) == pytest.approx(mp_f_part(alpha, lam), rel=1e-9)


def test_identity_with_double_precision_series(make_context):
    """
    Validates the identity with the default Mittag-Leffler reference where the
    series does not cancel.

    Assertions
    ----------
    - Residual below 1e-11 at lambda = 1.
    """
    for alpha in ALPHAS:
        assert DecompositionService.identity_residual(make_context(alpha), 1.0) < 1e-11


def test_f_is_positive_and_decreasing(make_context):
    """
    Validates that f is positive and strictly decreasing.

    Assertions
    ----------
    - On a grid in [0, 300] the values are positive and strictly decreasing.
    """
    ctx = make_context(0.75)
    values = DecompositionService.f_part_many(ctx, np.linspace(0.0, 300.0, 61))
    assert np.all(values > 0.0)
    assert np.all(np.diff(values) < 0.0)


def test_f_part_many_keeps_input_order(make_context):
    """
    Validates that batched evaluation returns values in input order.

    Assertions
    ----------
    - Batched values equal the one-at-a-time values within 1e-10 relative.
    """
    ctx = make_context(0.85)
    lams = [50.0, 1.0, 10.0, 0.0]
    batched = DecompositionService.f_part_many(ctx, lams)
    single = [DecompositionService.f_part(ctx, lam) for lam in lams]
    np.testing.assert_allclose(batched, single, rtol=1e-10)


def test_f_rejects_negative_lambda(make_context):
    """
    Validates the domain of f and g.

    Assertions
    ----------
    - Negative or non-finite lambda raises DomainError.
    """
    ctx = make_context(0.7)
    with pytest.raises(DomainError):
        DecompositionService.f_part(ctx, -1.0)
    with pytest.raises(DomainError):
        DecompositionService.f_part_many(ctx, [1.0, math.inf])
    with pytest.raises(DomainError):
        DecompositionService.g_part(ctx, -0.5)


def test_kernel_is_positive(make_context):
    """
    Validates the kernel sign and its domain.

    Assertions
    ----------
    - k(r) > 0 for r in (0, 50].
    - r <= 0 raises DomainError.
    """
    ctx = make_context(0.7)
    r = np.linspace(0.01, 50.0, 200)
    assert np.all(DecompositionService.kernel_k(ctx, r) > 0.0)
    assert isinstance(DecompositionService.kernel_k(ctx, 1.0), float)
    with pytest.raises(DomainError):
        DecompositionService.kernel_k(ctx, 0.0)


@pytest.mark.parametrize("alpha", [0.6, 0.75, 0.9])
def test_g_vanishes_at_its_zeros(make_context, alpha):
    """
    Validates the closed-form zeros of g.

    Assertions
    ----------
    - |g(g_zeros(k))| <= 1e-12 for k = 0..5.
    - The zeros increase with k.
    """
    ctx = make_context(alpha)
    zeros = [DecompositionService.g_zeros(ctx, k) for k in range(6)]
    for z in zeros:
        assert abs(DecompositionService.g_part(ctx, z)) <= 1e-12
    assert all(later > earlier for earlier, later in zip(zeros, zeros[1:]))


def test_g_zero_index_checks():
    """
    Validates the zero index range.

    Assertions
    ----------
    - k = -1 is accepted and positive for alpha < 1.
    - k = -2 raises DomainError.
    - At alpha = 1 the zeros are ((k + 1) pi)^2.
    """
    assert g_zero(0.8, -1) > 0.0
    with pytest.raises(DomainError):
        g_zero(0.8, -2)
    assert g_zero(1.0, 2) == pytest.approx((3.0 * math.pi) ** 2)


@pytest.mark.parametrize("alpha", [0.6, 0.75, 0.9])
def test_g_extrema(make_context, alpha):
    """
    Validates the extreme points of g and their values.

    Assertions
    ----------
    - g(z_k) equals the closed-form value.
    - g has a vanishing derivative at z_k (central difference).
    - Signs alternate, starting positive.
    """
    ctx = make_context(alpha)
    for k in range(5):
        z, value = DecompositionService.g_extremum(ctx, k)
        assert DecompositionService.g_part(ctx, z) == pytest.approx(value, rel=1e-12)
        h = 1e-6 * z
        slope = (DecompositionService.g_part(ctx, z + h) - DecompositionService.g_part(ctx, z - h)) / (2.0 * h)
        assert abs(slope) <= 1e-6 * abs(value) / h
        assert math.copysign(1.0, value) == (-1.0) ** k
    with pytest.raises(DomainError):
        DecompositionService.g_extremum(ctx, -1)


def test_classical_char_fn(make_context):
    """
    Validates the characteristic function at alpha = 1.

    Assertions
    ----------
    - E_{2,2}(-lambda) = sin(sqrt(lambda))/sqrt(lambda) within 1e-10 on [1, 400].
    - f vanishes identically.
    """
    ctx = make_context(1.0)
    assert ctx.is_classical
    for lam in np.linspace(1.0, 400.0, 81):
        root = math.sqrt(lam)
        assert DecompositionService.char_fn(ctx, lam) == pytest.approx(math.sin(root) / root, abs=1e-10)
    assert DecompositionService.f_part(ctx, 25.0) == 0.0


@pytest.mark.parametrize("alpha", [0.6, 0.75, 0.9])
@pytest.mark.parametrize("lam", [1.0, 5.0, 20.0, 60.0, 120.0, 200.0])
def test_char_fn_matches_oracle(make_context, mp_ml, alpha, lam):
    """
    Validates the characteristic function on both sides of the branch switch.

    Assertions
    ----------
    - Agreement with the extended-precision series within 1e-8 relative
      (absolute floor 1e-11 near eigenvalues).
    """
    ctx = make_context(alpha)
    value = DecompositionService.char_fn(ctx, lam)
    assert value == pytest.approx(mp_ml(2.0 * alpha, 2.0, -lam), rel=1e-8, abs=1e-11)


def test_char_fn_branches_agree_in_overlap(make_context):
    """
    Validates that the series and decomposition branches agree where both are accurate.

    Assertions
    ----------
    - Relative agreement within 1e-8 at lambda in {1, 5}.
    - The branch names reflect the switch threshold.
    """
    ctx = make_context(0.75)
    for lam in (1.0, 5.0):
        series = DecompositionService.char_fn_series(ctx, lam)
        assert DecompositionService.char_fn_decomposition(ctx, lam) == pytest.approx(series, rel=1e-8)
    assert DecompositionService.char_fn_with_branch(ctx, 1.0)[1] == "series"
    assert DecompositionService.char_fn_with_branch(ctx, 500.0)[1] == "decomposition"
    with pytest.raises(DomainError):
        DecompositionService.char_fn_decomposition(ctx, 0.0)


def test_char_fn_many_matches_scalar(make_context):
    """
    Validates the vectorized characteristic function.

    Assertions
    ----------
    - Elementwise equal to ``char_fn`` within 1e-12 (absolute) across the threshold.
    """
    ctx = make_context(0.8)
    lams = np.array([0.5, 3.0, ctx.series_threshold, 30.0, 90.0, 250.0])
    values = DecompositionService.char_fn_many(ctx, lams)
    expected = [DecompositionService.char_fn(ctx, lam) for lam in lams]
    np.testing.assert_allclose(values, expected, rtol=1e-10, atol=1e-12)


def test_context_validation(settings):
    """
    Validates the admissible orders and series parameters of a context.

    Assertions
    ----------
    - alpha <= 1/2 and alpha > 1 raise DomainError.
    - Series parameters for another delta or theta raise DomainError.
    - The series threshold is min(switch_radius, rho_max^(2 alpha)).
    """
    with pytest.raises(DomainError):
        DecompositionContext(alpha=0.5)
    with pytest.raises(DomainError):
        DecompositionContext(alpha=1.2)
    with pytest.raises(DomainError):
        DecompositionContext(alpha=0.7, ml_params=MLParams(delta=1.4, theta=1.0))
    ctx = DecompositionContext.from_settings(0.6, settings)
    assert ctx.series_threshold == pytest.approx(min(settings.ml_switch_radius, 8.0 ** 1.2))
    assert DecompositionContext(alpha=0.95).series_threshold == pytest.approx(40.0)


def test_evaluate_ml_branches(settings, mp_ml):
    """
    Validates the cross-module Mittag-Leffler dispatcher.

    Assertions
    ----------
    - Small arguments use the series.
    - theta = 2, 1 < delta <= 2 and large negative z use the decomposition
      and match the extended-precision value.
    - Other parameter sets beyond the switch radius use the asymptotic expansion.
    """
    params = settings.ml_params(1.6, 2.0)
    assert DecompositionService.evaluate_ml(params, -1.0, settings)[1] == "series"
    value, branch = DecompositionService.evaluate_ml(params, -100.0, settings)
    assert branch == "decomposition"
    assert value == pytest.approx(mp_ml(1.6, 2.0, -100.0), rel=1e-8, abs=1e-11)

    value, branch = DecompositionService.evaluate_ml(settings.ml_params(1.6, 1.0), -1000.0, settings)
    assert branch == "asymptotic"
    assert value == pytest.approx(mp_ml(1.6, 1.0, -1000.0), rel=1e-8)

    assert DecompositionService.evaluate_ml(MLParams(delta=1.6, theta=2.0), 3.0)[1] == "series"


@pytest.mark.parametrize("alpha", [0.8, 0.9])
def test_f_dominates_g_far_out(make_context, alpha):
    """
    Validates that the integral part outweighs the oscillation for large lambda.

    Assertions
    ----------
    - f > |g| on a grid of lambda from the ninth extremum of g up to twenty
      times that value.
    """
    ctx = make_context(alpha)
    start, _ = DecompositionService.g_extremum(ctx, 9)
    lams = np.geomspace(start, 20.0 * start, 40)
    f_values = DecompositionService.f_part_many(ctx, lams)
    g_values = DecompositionService.g_part(ctx, lams)
    assert np.all(f_values > np.abs(g_values))


def test_char_fn_leaves_cancelling_series(make_context, mp_ml):
    """
    Validates that a series result with a large cancellation loss is not used.

    Assertions
    ----------
    - The scalar and vectorized characteristic functions switch to the
      decomposition inside the series threshold and stay accurate.
    """
    ctx = make_context(0.9)
    with patch.object(SpecFunService, "ml_series_with_loss", return_value=(0.0, 1e-6)):
        value, branch = DecompositionService.char_fn_with_branch(ctx, 20.0)
        many = DecompositionService.char_fn_many(ctx, [20.0, 2.0])
    assert branch == "decomposition"
    assert value == pytest.approx(mp_ml(1.8, 2.0, -20.0), rel=1e-8, abs=1e-11)
    np.testing.assert_allclose(many, [value, mp_ml(1.8, 2.0, -2.0)], rtol=1e-8, atol=1e-11)

# -*- coding: utf-8 -*-
"""
Pytest fixtures for testing the fractional Sturm-Liouville toolkit.

This module provides the settings used by every test, decomposition contexts
and extended-precision reference implementations built on mpmath.
"""

import mpmath
import pytest

from app.config import Settings
from app.dependencies import set_settings_instance
from app.services.decomposition import DecompositionContext

ORACLE_DIGITS = 50


@pytest.fixture(scope="session")
def settings():
    """
    Default numerical settings in test mode.

    Returns
    -------
    Settings
        Settings built from the defaults, independent of the environment.
    """
    return Settings(execution_mode="test")


@pytest.fixture(autouse=True)
def shared_settings(settings):
    """
    Installs the test settings as the process-wide instance.

    Services called without explicit settings then never read the
    environment or a config file.
    """
    set_settings_instance(settings)
    yield settings
    set_settings_instance(settings)


@pytest.fixture(scope="session")
def quad_cfg(settings):
    """Quadrature configuration of the test settings."""
    return settings.quadrature()


@pytest.fixture(scope="session")
def make_context(settings):
    """
    Factory for decomposition contexts.

    Returns
    -------
    callable
        ``make_context(alpha) -> DecompositionContext``.
    """
    def factory(alpha: float) -> DecompositionContext:
        return DecompositionContext.from_settings(alpha, settings)

    return factory


def _mp_ml(delta, theta, z):
    with mpmath.workdps(ORACLE_DIGITS + 20):
        delta, theta, z = mpmath.mpf(delta), mpmath.mpf(theta), mpmath.mpf(z)
        peak = abs(z) ** (1 / delta) / delta if z != 0 else 0
        total = mpmath.mpf(0)
        threshold = mpmath.mpf(10) ** (-ORACLE_DIGITS - 10)
        k = 0
        while True:
            term = z ** k * mpmath.rgamma(delta * k + theta)
            total += term
            if k > peak + 5 and abs(term) < threshold * (1 + abs(total)):
                return float(total)
            k += 1


@pytest.fixture(scope="session")
def mp_ml():
    """
    Extended-precision Mittag-Leffler reference.

    Returns
    -------
    callable
        ``mp_ml(delta, theta, z) -> float`` summing the power series with
        mpmath at 70 significant digits.
    """
    return _mp_ml


@pytest.fixture(scope="session")
def mp_f_part(mp_ml):
    """
    Reference for the integral part: f = lambda^(1/(2 alpha)) E_{2alpha,2}(-lambda) - g,
    with E from the extended-precision series and g in closed form.
    """
    def reference(alpha, lam):
        with mpmath.workdps(ORACLE_DIGITS):
            a = mpmath.mpf(alpha)
            rho = mpmath.mpf(lam) ** (1 / (2 * a))
            phi = mpmath.pi / (2 * a)
            g = mpmath.exp(rho * mpmath.cos(phi)) * mpmath.cos(rho * mpmath.sin(phi) - phi) / a
            return float(rho * mpmath.mpf(mp_ml(2 * alpha, 2.0, -lam)) - g)

    return reference

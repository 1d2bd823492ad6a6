# -*- coding: utf-8 -*-
"""
Service layer for fractional operators.

Riemann-Liouville integrals and derivatives and Caputo derivatives act on
generalized power series through the power rules

    I^alpha (t - a)^p = Gamma(p + 1) / Gamma(p + 1 + alpha) (t - a)^(p + alpha)
    D^alpha (t - a)^p = Gamma(p + 1) / Gamma(p + 1 - alpha) (t - a)^(p - alpha)

(identically for right-sided operators in powers of (b - t)), which makes
operator application exact up to rounding of the Gamma ratios. A quadrature
based left Riemann-Liouville integral of arbitrary functions serves as an
independent numerical check.
"""

import logging
import math
from typing import Callable, Literal, Optional

import numpy as np
from scipy import special

from app.exceptions import AccuracyError, DomainError
from app.schemas.quadrature import QuadratureConfig
from app.schemas.series import ZERO_EXPONENT_TOL, FractionalOrder, GenPowerSeries, Side
from app.services.quadrature import QuadratureService
from app.services.specfun import SpecFunService

logger = logging.getLogger(__name__)


def gamma_ratio(numerator: float, denominator: float) -> float:
    """
    Gamma(numerator) / Gamma(denominator) for numerator > 0.

    The denominator may sit on a pole, in which case the ratio is 0.
    """
    if denominator > 0.0 and max(numerator, denominator) > 170.0:
        return math.exp(special.gammaln(numerator) - special.gammaln(denominator))
    return SpecFunService.gamma(numerator) * SpecFunService.reciprocal_gamma(denominator)


class FracOpsService:
    """
    Service class for fractional operators on generalized power series.
    """

    @staticmethod
    def _oriented(s: GenPowerSeries, side: Side, origin: Optional[float]) -> GenPowerSeries:
        """
        Returns ``s`` as a series of the requested side.

        Only constant series can switch sides; they need the new origin.
        """
        if s.side is side:
            return s
        if not s.is_constant:
            raise DomainError(
                f"A {s.side.value}-sided series can only be passed to a {side.value}-sided operator when it is constant."
            )
        if origin is None:
            raise DomainError(f"The {side.value}-sided operator needs its endpoint for a constant argument.")
        value = sum(c for c in s.coefficients)
        return GenPowerSeries.constant(value, origin=origin, side=side)

    @staticmethod
    def _power_rule(s: GenPowerSeries, shift: float) -> GenPowerSeries:
        """
        Applies (x)^p -> Gamma(p + 1)/Gamma(p + 1 + shift) x^(p + shift) termwise.
        """
        coefficients = []
        for c, p in zip(s.coefficients, s.exponents):
            if c == 0.0:
                coefficients.append(0.0)
            else:
                coefficients.append(c * gamma_ratio(p + 1.0, p + 1.0 + shift))
        return GenPowerSeries(
            base=s.base + shift, step=s.step, coefficients=tuple(coefficients),
            origin=s.origin, side=s.side,
        ).trimmed()

    @staticmethod
    def rl_integral_series(s: GenPowerSeries, alpha, side: Side = Side.LEFT,
                           origin: Optional[float] = None) -> GenPowerSeries:
        """
        Riemann-Liouville fractional integral of order alpha of a series.

        Parameters
        ----------
        s : GenPowerSeries
            The series (every nonzero term has exponent > -1).
        alpha : FractionalOrder or float
            Order in (0, 1].
        side : Side, optional
            Left (a+) or right (b-) operator.
        origin : float, optional
            Endpoint of the operator; only needed when a constant series is
            passed to an operator of the other side.

        Returns
        -------
        GenPowerSeries
            The image, with exponents shifted by +alpha.
        """
        order = FractionalOrder.of(alpha)
        s = FracOpsService._oriented(s, side, origin)
        if s.is_zero:
            return s
        return FracOpsService._power_rule(s, order.alpha)

    @staticmethod
    def rl_derivative_series(s: GenPowerSeries, alpha, side: Side = Side.LEFT,
                             origin: Optional[float] = None) -> GenPowerSeries:
        """
        Riemann-Liouville fractional derivative of order alpha of a series.

        Terms whose coefficient factor hits a pole of Gamma (exponent
        p = alpha - 1) vanish exactly.

        Returns
        -------
        GenPowerSeries
            The image, with exponents shifted by -alpha.

        Raises
        ------
        DomainError
            If a surviving term has exponent <= -1 (non-integrable result).
        """
        order = FractionalOrder.of(alpha)
        s = FracOpsService._oriented(s, side, origin)
        if s.is_zero:
            return s
        if s.base - order.alpha <= -2.0:
            raise DomainError(f"Series base {s.base} is too low for D^{order.alpha}.")
        try:
            return FracOpsService._power_rule(s, -order.alpha)
        except ValueError as e:
            raise DomainError(f"D^{order.alpha} of this series is not integrable at the origin.") from e

    @staticmethod
    def caputo_derivative_series(s: GenPowerSeries, alpha, side: Side = Side.LEFT,
                                 origin: Optional[float] = None) -> GenPowerSeries:
        """
        Caputo fractional derivative of order alpha: the classical derivative
        followed by the integral of order 1 - alpha. Constants map to 0.

        Raises
        ------
        DomainError
            If the lowest nonzero exponent is negative.
        """
        order = FractionalOrder.of(alpha)
        s = FracOpsService._oriented(s, side, origin)
        if s.is_zero or s.is_constant:
            return GenPowerSeries.zero(origin=s.origin, side=s.side)
        if s.lowest_exponent() < -ZERO_EXPONENT_TOL:
            raise DomainError("The Caputo derivative needs a series that is bounded at its origin.")
        derivative = s.derivative()
        # the right-sided operator differentiates with -d/dt
        if s.side is Side.RIGHT:
            derivative = derivative.scaled(-1.0)
        if order.alpha == 1.0:
            return derivative
        return FracOpsService._power_rule(derivative, 1.0 - order.alpha)

    @staticmethod
    def right_caputo_derivative_series(s: GenPowerSeries, alpha, b: float) -> GenPowerSeries:
        """
        Right-sided Caputo derivative ``cD^alpha_{b-}``; left-sided arguments
        must be constant.
        """
        return FracOpsService.caputo_derivative_series(s, alpha, side=Side.RIGHT, origin=b)

    @staticmethod
    def rl_integral_numeric(f: Callable, alpha, a: float, t: float, cfg: Optional[QuadratureConfig] = None,
                            f_exponent: float = 0.0) -> float:
        """
        Left Riemann-Liouville integral (1/Gamma(alpha)) integral_a^t f(s)(t - s)^(alpha - 1) ds
        by quadrature.

        The kernel singularity at s = t is removed with s = t - u^(1/alpha). When
        ``f`` itself behaves like (s - a)^f_exponent near a, the interval is split
        at its midpoint and that singularity is removed the same way.

        Parameters
        ----------
        f : callable
            Vectorized integrand.
        alpha : FractionalOrder or float
            Order.
        a, t : float
            Lower limit and evaluation point, t > a.
        cfg : QuadratureConfig, optional
            Quadrature tolerances.
        f_exponent : float, optional
            Algebraic exponent of ``f`` at a (> -1). 0 for regular integrands.

        Returns
        -------
        float
            The integral.

        Raises
        ------
        DomainError
            If t <= a.
        AccuracyError
            If the quadrature does not converge.
        """
        order = FractionalOrder.of(alpha)
        if not t > a:
            raise DomainError(f"Fractional integral needs t > a (got a={a}, t={t}).")
        kernel_exponent = order.alpha - 1.0
        scale = SpecFunService.reciprocal_gamma(order.alpha)

        if f_exponent == 0.0:
            parts = [QuadratureService.integrate_endpoint_singular(
                f, beta=kernel_exponent, a=a, b=t, endpoint="right", cfg=cfg,
            )]
        else:
            middle = 0.5 * (a + t)

            def near_origin(s):
                return f(s) * (s - a) ** (-f_exponent) * (t - s) ** kernel_exponent

            parts = [
                QuadratureService.integrate_endpoint_singular(
                    near_origin, beta=f_exponent, a=a, b=middle, endpoint="left", cfg=cfg,
                ),
                QuadratureService.integrate_endpoint_singular(
                    f, beta=kernel_exponent, a=middle, b=t, endpoint="right", cfg=cfg,
                ),
            ]
        if not all(part.converged for part in parts):
            raise AccuracyError(f"Fractional integral quadrature did not converge (alpha={order.alpha}, t={t}).")
        return scale * math.fsum(part.value for part in parts)

    @staticmethod
    def ml_solution_as_series(alpha, lam: float, which: Literal["y1", "y2"], K: int = 60,
                              origin: float = 0.0) -> GenPowerSeries:
        """
        Truncated series of a fundamental solution of the two-term eigen equation.

        ``y1 = t^(alpha-1) E_{2alpha,alpha}(-lam t^(2alpha))`` and
        ``y2 = t^alpha E_{2alpha,alpha+1}(-lam t^(2alpha))``.

        Parameters
        ----------
        alpha : FractionalOrder or float
            Order in (0, 1].
        lam : float
            Spectral parameter.
        which : {"y1", "y2"}
            Which solution.
        K : int, optional
            Number of terms.
        origin : float, optional
            Expansion point.

        Returns
        -------
        GenPowerSeries
            The series with base alpha - 1 (y1) or alpha (y2) and step 2 alpha.

        Raises
        ------
        DomainError
            If K < 1, ``which`` is unknown, or a coefficient overflows
            (lambda^k beyond double precision).
        """
        order = FractionalOrder.of(alpha)
        if K < 1:
            raise DomainError(f"Truncation K must be at least 1 (got {K}).")
        if which not in ("y1", "y2"):
            raise DomainError(f"Unknown solution '{which}'.")
        a = order.alpha
        offset = a if which == "y1" else a + 1.0
        k = np.arange(K, dtype=float)
        with np.errstate(over="ignore", invalid="ignore"):
            coefficients = (-float(lam)) ** k * np.array([SpecFunService.reciprocal_gamma(2.0 * a * j + offset) for j in k])
        if not np.all(np.isfinite(coefficients)):
            first = int(np.flatnonzero(~np.isfinite(coefficients))[0])
            raise DomainError(
                f"Series coefficients overflow from k={first} on for lambda={lam}; "
                f"|lambda|^k must stay representable for k < K={K}."
            )
        return GenPowerSeries(
            base=offset - 1.0, step=2.0 * a, coefficients=tuple(float(c) for c in coefficients), origin=origin,
        )

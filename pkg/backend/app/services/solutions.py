# -*- coding: utf-8 -*-
"""
Service layer for the closed-form solutions of the three model equations.

    D^alpha_{b-} D^alpha_{a+} y = 0     fundamental set (t-a)^(alpha-1)/Gamma(alpha), (t-a)^alpha/Gamma(alpha+1)
    D^alpha_{b-} cD^alpha_{a+} y = 0    fundamental set 1, psi(t; a, b, alpha)
    cD^alpha_{0+} D^alpha_{0+} y = -lambda y
                                        fundamental set t^(alpha-1) E_{2alpha,alpha}(-lambda t^(2alpha)),
                                                        t^alpha E_{2alpha,alpha+1}(-lambda t^(2alpha))
"""

import logging
import math
from typing import Dict, List, Optional, Tuple

import numpy as np

from app.dependencies import get_settings_instance
from app.exceptions import DomainError
from app.schemas.series import FractionalOrder
from app.schemas.solutions import Fe2Solution, Interval
from app.services.decomposition import DecompositionContext, DecompositionService
from app.services.specfun import SpecFunService

logger = logging.getLogger(__name__)

FSS_COLUMNS = {
    "fe1": ("t", "y1", "y2"),
    "fe2": ("t", "psi"),
    "fe3": ("t", "y1", "y2"),
}


def _check_point(interval: Interval, t: float, open_left: bool) -> float:
    t = float(t)
    if not math.isfinite(t):
        raise DomainError(f"Evaluation point must be finite (got {t}).")
    low_ok = t > interval.a if open_left else t >= interval.a
    if not (low_ok and t <= interval.b):
        bracket = "(" if open_left else "["
        raise DomainError(f"t={t} lies outside {bracket}{interval.a}, {interval.b}].")
    return t


class SolutionsService:
    """
    Service class for the fundamental solutions and general solutions.
    """

    @staticmethod
    def fe1_fss(alpha, interval: Interval, t: float) -> Tuple[float, float]:
        """
        Fundamental solutions of D^alpha_{b-} D^alpha_{a+} y = 0.

        Parameters
        ----------
        alpha : FractionalOrder or float
            Order in (0, 1].
        interval : Interval
            The interval [a, b].
        t : float
            Evaluation point, a < t <= b.

        Returns
        -------
        tuple of float
            ``(y1, y2) = ((t-a)^(alpha-1)/Gamma(alpha), (t-a)^alpha/Gamma(alpha+1))``.

        Raises
        ------
        DomainError
            If t is not in (a, b].
        """
        order = FractionalOrder.of(alpha)
        t = _check_point(interval, t, open_left=True)
        x = t - interval.a
        a = order.alpha
        y1 = x ** (a - 1.0) * SpecFunService.reciprocal_gamma(a)
        y2 = x ** a * SpecFunService.reciprocal_gamma(a + 1.0)
        return y1, y2

    @staticmethod
    def fe1_wronskian(alpha, interval: Interval, t: float) -> float:
        """
        Wronskian y1 y2' - y1' y2 = (1/alpha) (t-a)^(2alpha-2) / Gamma(alpha)^2.
        """
        order = FractionalOrder.of(alpha)
        t = _check_point(interval, t, open_left=True)
        a = order.alpha
        return (t - interval.a) ** (2.0 * a - 2.0) * SpecFunService.reciprocal_gamma(a) ** 2 / a

    @staticmethod
    def fe1_general_solution(alpha, interval: Interval, c1: float, c2: float, t: float) -> float:
        """c1 y1 + c2 y2 for the first model equation."""
        y1, y2 = SolutionsService.fe1_fss(alpha, interval, t)
        return c1 * y1 + c2 * y2

    @staticmethod
    def psi_limit(alpha, interval: Interval) -> float:
        """
        Value of psi at t = b: (b-a)^(2alpha-1) / ((2alpha-1) Gamma(alpha)^2), alpha > 1/2.
        """
        order = FractionalOrder.of(alpha)
        a = order.alpha
        if a <= 0.5:
            raise DomainError(f"psi diverges at t=b for alpha={a} <= 1/2.")
        return interval.length ** (2.0 * a - 1.0) / ((2.0 * a - 1.0) * SpecFunService.gamma(a) ** 2)

    @staticmethod
    def psi(alpha, interval: Interval, t: float, settings=None) -> float:
        """
        Second fundamental solution of D^alpha_{b-} cD^alpha_{a+} y = 0.

            psi(t) = (b-t)^(2alpha-1)/Gamma(alpha)^2 * integral_1^{(b-a)/(b-t)} (w-1)^(alpha-1) w^(alpha-1) dw

        Parameters
        ----------
        alpha : FractionalOrder or float
            Order in (0, 1]. Orders up to 1/2 are accepted for t < b only.
        interval : Interval
            The interval [a, b].
        t : float
            a <= t <= b.
        settings : Settings, optional
            Quadrature tolerances; the shared settings when omitted.

        Returns
        -------
        float
            psi(t). psi(a) = 0 exactly; psi(b) is the limit value.

        Raises
        ------
        DomainError
            If t is outside [a, b], or t = b with alpha <= 1/2.
        """
        order = FractionalOrder.of(alpha)
        t = _check_point(interval, t, open_left=False)
        if t == interval.a:
            return 0.0
        if t == interval.b:
            return SolutionsService.psi_limit(order, interval)
        a = order.alpha
        if a == 1.0:
            return t - interval.a
        settings = settings or get_settings_instance()
        upper = interval.length / (interval.b - t)
        integral = SpecFunService.psi_kernel_integral(order, upper, settings.quadrature())
        return (interval.b - t) ** (2.0 * a - 1.0) * integral * SpecFunService.reciprocal_gamma(a) ** 2

    @staticmethod
    def fe2_fss(alpha, interval: Interval, t: float, settings=None) -> Tuple[float, float]:
        """
        Fundamental solutions ``(1, psi(t))`` of D^alpha_{b-} cD^alpha_{a+} y = 0.
        """
        return 1.0, SolutionsService.psi(alpha, interval, t, settings)

    @staticmethod
    def fe2_independent(alpha, interval: Interval, n_points: int = 17, settings=None) -> bool:
        """
        Checks that 1 and psi are not proportional on an interior grid.

        The Wronskian of the pair is not smooth at the endpoints, so linear
        independence is checked through the variation of psi instead.
        """
        if n_points < 2:
            raise DomainError("The independence check needs at least 2 points.")
        grid = np.linspace(interval.a, interval.b, n_points + 2)[1:-1]
        values = np.array([SolutionsService.psi(alpha, interval, t, settings) for t in grid])
        spread = float(values.max() - values.min())
        return spread > 1e-12 * max(1.0, float(np.abs(values).max()))

    @staticmethod
    def fe2_general_solution(sol: Fe2Solution, t: float, settings=None) -> float:
        """
        Two-point solution with prescribed values y(a) and y(b).

            y(t) = y(a) + (y(b) - y(a)) psi(t) / psi(b)

        which expands to (2alpha-1)((b-t)/(b-a))^(2alpha-1) times the kernel
        integral. The endpoints return y(a) and y(b) exactly.
        """
        interval = sol.interval
        t = _check_point(interval, t, open_left=False)
        if t == interval.a:
            return sol.y_a
        if t == interval.b:
            return sol.y_b
        ratio = SolutionsService.psi(sol.alpha, interval, t, settings) / SolutionsService.psi_limit(sol.alpha, interval)
        return sol.y_a + (sol.y_b - sol.y_a) * ratio

    @staticmethod
    def fe3_fss(alpha, lam: float, t: float, settings=None) -> Tuple[float, float]:
        """
        Fundamental solutions of cD^alpha_{0+} D^alpha_{0+} y = -lambda y.

        Parameters
        ----------
        alpha : FractionalOrder or float
            Order in (0, 1].
        lam : float
            Spectral parameter.
        t : float
            t > 0 (t = 0 is allowed at alpha = 1).
        settings : Settings, optional
            Mittag-Leffler evaluation policy.

        Returns
        -------
        tuple of float
            ``(y1, y2)``; at alpha = 1 these are cos(sqrt(lambda) t) and
            sin(sqrt(lambda) t)/sqrt(lambda).

        Raises
        ------
        DomainError
            If t < 0, or t = 0 with alpha < 1.
        """
        order = FractionalOrder.of(alpha)
        t = float(t)
        a = order.alpha
        if t < 0.0 or (t == 0.0 and a < 1.0):
            raise DomainError(f"The first solution is singular at t=0 for alpha={a} < 1 (got t={t}).")
        y1 = t ** (a - 1.0) * SolutionsService._fe3_ml(a, a, lam, t, settings)
        y2 = SolutionsService._fe3_second(a, lam, t, settings)
        return y1, y2

    @staticmethod
    def _fe3_ml(alpha: float, theta: float, lam: float, t: float, settings) -> float:
        settings = settings or get_settings_instance()
        params = settings.ml_params(2.0 * alpha, theta)
        return SpecFunService.ml(params, -float(lam) * t ** (2.0 * alpha))

    @staticmethod
    def _fe3_second(alpha: float, lam: float, t: float, settings) -> float:
        if t == 0.0:
            return 0.0
        return t ** alpha * SolutionsService._fe3_ml(alpha, alpha + 1.0, lam, t, settings)

    @staticmethod
    def fe3_general_solution(alpha, lam: float, c1: float, c2: float, t: float, settings=None) -> float:
        """
        c1 y1 + c2 y2 for the eigen equation.

        With c1 = 0 the solution satisfies I^(1-alpha) y(0) = 0 and can be
        evaluated at t = 0.
        """
        order = FractionalOrder.of(alpha)
        if c1 == 0.0:
            t = float(t)
            if t < 0.0:
                raise DomainError(f"t must be non-negative (got {t}).")
            return c2 * SolutionsService._fe3_second(order.alpha, lam, t, settings)
        y1, y2 = SolutionsService.fe3_fss(order, lam, t, settings)
        return c1 * y1 + c2 * y2

    @staticmethod
    def bc_value(alpha, lam: float, settings=None) -> float:
        """
        Boundary value I^(1-alpha) y2 at t = 1, which equals E_{2alpha,2}(-lambda).

        Its zeros in lambda are the eigenvalues of the two-point problem.
        """
        settings = settings or get_settings_instance()
        ctx = DecompositionContext.from_settings(alpha, settings)
        return DecompositionService.char_fn(ctx, lam)

    @staticmethod
    def sample_fss(equation: str, alpha, interval: Interval, grid, lam: Optional[float] = None,
                   settings=None) -> List[Dict[str, Optional[float]]]:
        """
        Samples a fundamental solution set on a grid.

        Parameters
        ----------
        equation : {"fe1", "fe2", "fe3"}
            Which equation; fe3 needs ``lam`` and uses the origin 0.
        alpha : FractionalOrder or float
            Order.
        interval : Interval
            [a, b] for fe1 and fe2.
        grid : sequence of float
            Evaluation points.
        lam : float, optional
            Spectral parameter of fe3.
        settings : Settings, optional
            Numerical settings.

        Returns
        -------
        list of dict
            Rows ``{t, y1, y2}`` (fe1, fe3) or ``{t, psi}`` (fe2). Points
            outside the domain of a solution keep the row with None values.
        """
        order = FractionalOrder.of(alpha)
        if equation not in FSS_COLUMNS:
            raise DomainError(f"Unknown equation '{equation}' (expected one of {', '.join(FSS_COLUMNS)}).")
        if equation == "fe3" and lam is None:
            raise DomainError("The eigen equation needs a value for lambda.")

        rows = []
        for t in grid:
            t = float(t)
            try:
                if equation == "fe1":
                    y1, y2 = SolutionsService.fe1_fss(order, interval, t)
                    row = {"t": t, "y1": y1, "y2": y2}
                elif equation == "fe2":
                    row = {"t": t, "psi": SolutionsService.psi(order, interval, t, settings)}
                else:
                    y1, y2 = SolutionsService.fe3_fss(order, lam, t, settings)
                    row = {"t": t, "y1": y1, "y2": y2}
            except DomainError as e:
                logger.warning(f"{equation}: t={t} rejected: {e}")
                row = {"t": t, **{column: None for column in FSS_COLUMNS[equation][1:]}}
            rows.append(row)
        return rows

# -*- coding: utf-8 -*-
"""
Service layer for the f/g decomposition of the characteristic function.

For 1/2 < alpha < 1 and rho = lambda^(1/(2 alpha)),

    rho * E_{2alpha,2}(-lambda) = f(lambda) + g(lambda)

    f(lambda) = integral_0^inf exp(-r rho) k(r) dr
    k(r)      = (1/pi) r^(2alpha-2) (-sin 2 alpha pi) / (r^(4alpha) + 2 r^(2alpha) cos 2 alpha pi + 1)
    g(lambda) = (1/alpha) exp(rho cos phi) cos(rho sin phi - phi),   phi = pi/(2 alpha)

f is positive and decreasing, g oscillates with an exponentially decaying
amplitude. alpha = 1 is supported as the classical limit where k and f vanish
and g = sin(rho).
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from app.exceptions import AccuracyError, DomainError
from app.schemas.quadrature import QuadratureConfig
from app.schemas.series import FractionalOrder
from app.schemas.specfun import MLParams
from app.services.quadrature import QuadratureService
from app.services.specfun import SpecFunService

logger = logging.getLogger(__name__)

BATCH_SIZE = 2048


def g_zero(alpha: float, k: int) -> float:
    """
    k-th positive zero of g: ((k + 1/2 + 1/(2 alpha)) pi / sin(pi/(2 alpha)))^(2 alpha), k >= -1.
    """
    return g_zero_rho(alpha, k) ** (2.0 * alpha)


def g_zero_rho(alpha: float, k: int) -> float:
    """The zero ``g_zero(alpha, k)`` expressed in rho."""
    if k < -1:
        raise DomainError(f"Zero index must be >= -1 (got {k}).")
    if alpha == 1.0:
        return (k + 1) * math.pi
    return (k + 0.5 + 0.5 / alpha) * math.pi / math.sin(math.pi / (2.0 * alpha))


@dataclass(frozen=True)
class DecompositionContext:
    """
    Fractional order with the constants of the decomposition precomputed.

    Attributes
    ----------
    alpha : float
        Order in (1/2, 1].
    quad_cfg : QuadratureConfig
        Tolerances used for f.
    ml_params : MLParams
        Series policy for the small-lambda branch of the characteristic function
        (delta = 2 alpha, theta = 2).
    series_rho_max : float
        The series branch is used while rho <= series_rho_max (and
        lambda <= switch_radius).
    """
    alpha: float
    quad_cfg: QuadratureConfig = field(default_factory=QuadratureConfig)
    ml_params: Optional[MLParams] = None
    series_rho_max: float = 8.0
    phi: float = field(init=False)
    sin_phi: float = field(init=False)
    cos_phi: float = field(init=False)
    cot_phi: float = field(init=False)
    sin_2api: float = field(init=False)
    cos_2api: float = field(init=False)
    kernel_scale: float = field(init=False)
    series_threshold: float = field(init=False)

    def __post_init__(self):
        order = FractionalOrder.of(self.alpha).require_above_half()
        alpha = order.alpha
        object.__setattr__(self, "alpha", alpha)
        if self.ml_params is None:
            object.__setattr__(self, "ml_params", MLParams(delta=2.0 * alpha, theta=2.0))
        elif not (math.isclose(self.ml_params.delta, 2.0 * alpha) and self.ml_params.theta == 2.0):
            raise DomainError("Context series parameters must be delta = 2 alpha, theta = 2.")

        if alpha == 1.0:
            constants = dict(phi=math.pi / 2.0, sin_phi=1.0, cos_phi=0.0, cot_phi=0.0, sin_2api=0.0, cos_2api=1.0)
        else:
            phi = math.pi / (2.0 * alpha)
            constants = dict(
                phi=phi,
                sin_phi=math.sin(phi),
                cos_phi=math.cos(phi),
                cot_phi=math.cos(phi) / math.sin(phi),
                sin_2api=math.sin(2.0 * alpha * math.pi),
                cos_2api=math.cos(2.0 * alpha * math.pi),
            )
            if not (constants["sin_phi"] > 0.0 and constants["cos_phi"] < 0.0 and constants["sin_2api"] < 0.0):
                raise DomainError(f"Trigonometric sign conditions fail for alpha={alpha}.")
        for name, value in constants.items():
            object.__setattr__(self, name, value)
        object.__setattr__(self, "kernel_scale", -constants["sin_2api"] / math.pi)
        threshold = min(self.ml_params.switch_radius, self.series_rho_max ** (2.0 * alpha))
        object.__setattr__(self, "series_threshold", threshold)

    @classmethod
    def from_settings(cls, alpha, settings) -> "DecompositionContext":
        order = FractionalOrder.of(alpha).require_above_half()
        return cls(
            alpha=order.alpha,
            quad_cfg=settings.quadrature(),
            ml_params=settings.ml_params(2.0 * order.alpha, 2.0),
            series_rho_max=settings.char_series_rho_max,
        )

    @property
    def is_classical(self) -> bool:
        return self.alpha == 1.0

    def rho(self, lam):
        """lambda^(1/(2 alpha)), elementwise."""
        return np.asarray(lam, dtype=float) ** (0.5 / self.alpha)


def _as_output(values: np.ndarray, like):
    return float(values) if np.ndim(like) == 0 else values


class DecompositionService:
    """
    Service class for the f/g decomposition.
    """

    @staticmethod
    def _denominator(ctx: DecompositionContext, r):
        r2a = r ** (2.0 * ctx.alpha)
        return r2a * r2a + 2.0 * r2a * ctx.cos_2api + 1.0

    @staticmethod
    def kernel_k(ctx: DecompositionContext, r):
        """
        Kernel k_{2alpha,2}(r); strictly positive for 1/2 < alpha < 1.

        Raises
        ------
        DomainError
            If any r <= 0.
        """
        r_arr = np.asarray(r, dtype=float)
        if np.any(r_arr <= 0.0):
            raise DomainError("The kernel is defined for r > 0 only.")
        values = ctx.kernel_scale * r_arr ** (2.0 * ctx.alpha - 2.0) / DecompositionService._denominator(ctx, r_arr)
        return _as_output(values, r)

    @staticmethod
    def _f_batch(ctx: DecompositionContext, rho: np.ndarray) -> np.ndarray:
        alpha = ctx.alpha
        scale = ctx.kernel_scale
        cfg = ctx.quad_cfg

        def smooth_part(r):
            return scale * np.exp(-np.multiply.outer(rho, r)) / DecompositionService._denominator(ctx, r)

        def far_part(r):
            return smooth_part(r) * r ** (2.0 * alpha - 2.0)

        # [0, 1]: the r^(2alpha-2) singularity is removed by r = u^(1/(2alpha-1))
        near = QuadratureService.integrate_endpoint_singular(
            smooth_part, beta=2.0 * alpha - 2.0, a=0.0, b=1.0, endpoint="left", cfg=cfg,
            points=QuadratureService.layer_breakpoints(float(rho.max())),
        )
        far = QuadratureService.integrate_semi_infinite(far_part, a=1.0, cfg=cfg)
        if not (near.converged and far.converged):
            raise AccuracyError(
                f"f quadrature did not converge for alpha={alpha} (rho in [{rho.min():.6g}, {rho.max():.6g}]).",
                last_term=float(np.max(near.error_estimate) + np.max(far.error_estimate)),
            )
        return np.asarray(near.value) + np.asarray(far.value)

    @staticmethod
    def f_part_many(ctx: DecompositionContext, lams) -> np.ndarray:
        """
        Vectorized ``f_part``: batches of lambdas share one adaptive panel layout.
        """
        lams = np.atleast_1d(np.asarray(lams, dtype=float))
        if np.any(lams < 0.0) or not np.all(np.isfinite(lams)):
            raise DomainError("f is defined for finite lambda >= 0 only.")
        if ctx.is_classical:
            return np.zeros_like(lams)
        rho = ctx.rho(lams)
        order = np.argsort(rho, kind="stable")
        values = np.empty_like(rho)
        for start in range(0, rho.size, BATCH_SIZE):
            chunk = order[start:start + BATCH_SIZE]
            values[chunk] = DecompositionService._f_batch(ctx, rho[chunk])
        return values

    @staticmethod
    def f_part(ctx: DecompositionContext, lam: float) -> float:
        """
        Integral part f_{2alpha,2}(-lambda) = integral_0^inf exp(-r lambda^(1/(2alpha))) k(r) dr.

        Parameters
        ----------
        ctx : DecompositionContext
            The order and its constants.
        lam : float
            lambda >= 0.

        Returns
        -------
        float
            f(lambda) > 0, decreasing in lambda. f(0) = -(1/alpha) cos(pi/(2alpha)).
            Underflow of exp(-r rho) is taken as exact zero.

        Raises
        ------
        DomainError
            If lambda < 0.
        AccuracyError
            If the quadrature does not converge.
        """
        return float(DecompositionService.f_part_many(ctx, [lam])[0])

    @staticmethod
    def g_part(ctx: DecompositionContext, lam):
        """
        Oscillatory part (1/alpha) exp(rho cos phi) cos(rho sin phi - phi), lambda >= 0.
        """
        lam_arr = np.asarray(lam, dtype=float)
        if np.any(lam_arr < 0.0):
            raise DomainError("g is defined for lambda >= 0 only.")
        rho = ctx.rho(lam_arr)
        values = np.exp(rho * ctx.cos_phi) * np.cos(rho * ctx.sin_phi - ctx.phi) / ctx.alpha
        return _as_output(values, lam)

    @staticmethod
    def g_zeros(ctx: DecompositionContext, k: int) -> float:
        """
        k-th positive zero of g (k >= -1).
        """
        return g_zero(ctx.alpha, k)

    @staticmethod
    def g_extremum(ctx: DecompositionContext, k: int) -> Tuple[float, float]:
        """
        k-th extreme point of g and the value there.

        Returns
        -------
        tuple of float
            ``(z_k, g(z_k))`` with z_k = ((k + 1/2) pi / sin phi)^(2 alpha) and
            g(z_k) = (1/alpha) exp((k + 1/2) pi cot phi) (-1)^k sin phi.
        """
        if k < 0:
            raise DomainError(f"Extremum index must be >= 0 (got {k}).")
        rho = (k + 0.5) * math.pi / ctx.sin_phi
        z = rho ** (2.0 * ctx.alpha)
        value = math.exp((k + 0.5) * math.pi * ctx.cot_phi) * (-1.0) ** k * ctx.sin_phi / ctx.alpha
        return z, value

    @staticmethod
    def char_fn_series(ctx: DecompositionContext, lam: float) -> float:
        """E_{2alpha,2}(-lambda) through ``SpecFunService.ml``."""
        return SpecFunService.ml(ctx.ml_params, -float(lam))

    @staticmethod
    def char_fn_decomposition(ctx: DecompositionContext, lam):
        """E_{2alpha,2}(-lambda) = (f + g)/rho for lambda > 0."""
        lam_arr = np.atleast_1d(np.asarray(lam, dtype=float))
        if np.any(lam_arr <= 0.0):
            raise DomainError("The decomposition branch needs lambda > 0.")
        values = (DecompositionService.f_part_many(ctx, lam_arr) + DecompositionService.g_part(ctx, lam_arr)) / ctx.rho(lam_arr)
        return float(values[0]) if np.ndim(lam) == 0 else values

    @staticmethod
    def char_fn(ctx: DecompositionContext, lam: float) -> float:
        """
        Characteristic function E_{2alpha,2}(-lambda).

        Uses the power series for lambda <= ``ctx.series_threshold`` while its
        estimated cancellation loss stays within
        ``SpecFunService.BRANCH_TOLERANCE``, and the exact identity
        (f + g)/rho everywhere else.
        """
        value, _ = DecompositionService.char_fn_with_branch(ctx, lam)
        return value

    @staticmethod
    def _series_or_none(ctx: DecompositionContext, lam: float) -> Optional[float]:
        """
        Series value of E_{2alpha,2}(-lambda), or None when its estimated
        cancellation loss exceeds ``SpecFunService.BRANCH_TOLERANCE``.
        """
        try:
            value, loss = SpecFunService.ml_series_with_loss(ctx.ml_params, -lam)
        except AccuracyError:
            return None
        if loss <= SpecFunService.BRANCH_TOLERANCE or lam == 0.0:
            return value
        logger.debug(f"Series for char_fn(alpha={ctx.alpha}, lambda={lam}) loses {loss:.1e}; using the decomposition.")
        return None

    @staticmethod
    def char_fn_with_branch(ctx: DecompositionContext, lam: float) -> Tuple[float, str]:
        lam = float(lam)
        if lam <= ctx.series_threshold:
            value = DecompositionService._series_or_none(ctx, lam)
            if value is not None:
                return value, "series"
        logger.debug(f"char_fn(alpha={ctx.alpha}, lambda={lam}) uses the decomposition branch.")
        return DecompositionService.char_fn_decomposition(ctx, lam), "decomposition"

    @staticmethod
    def char_fn_many(ctx: DecompositionContext, lams) -> np.ndarray:
        """
        Vectorized characteristic function.
        """
        lams = np.atleast_1d(np.asarray(lams, dtype=float))
        values = np.empty_like(lams)
        pending = lams > ctx.series_threshold
        for i in np.flatnonzero(~pending):
            value = DecompositionService._series_or_none(ctx, float(lams[i]))
            if value is None:
                pending[i] = True
            else:
                values[i] = value
        if np.any(pending):
            values[pending] = DecompositionService.char_fn_decomposition(ctx, lams[pending])
        return values

    @staticmethod
    def identity_residual(ctx: DecompositionContext, lam: float, reference: Optional[float] = None) -> float:
        """
        |rho E_{2alpha,2}(-lambda) - f - g| for a reference value of E.

        ``reference`` defaults to the Mittag-Leffler evaluation.
        """
        lam = float(lam)
        e_value = DecompositionService.char_fn_series(ctx, lam) if reference is None else reference
        rho = float(ctx.rho(lam))
        return abs(rho * e_value - DecompositionService.f_part(ctx, lam) - DecompositionService.g_part(ctx, lam))

    @staticmethod
    def evaluate_ml(params: MLParams, z: float, settings=None) -> Tuple[float, str]:
        """
        E_{delta,theta}(z) with branch selection across modules.

        The decomposition is used for theta = 2, 1 < delta <= 2 and z < 0
        wherever the characteristic function would not take the series;
        otherwise ``SpecFunService.ml_with_branch`` picks the branch.

        Returns
        -------
        tuple
            ``(value, branch)`` with branch in {"series", "asymptotic", "integral", "decomposition"}.
        """
        z = float(z)
        if params.theta == 2.0 and 1.0 < params.delta <= 2.0 and z < 0.0:
            alpha = params.delta / 2.0
            if settings is not None:
                ctx = DecompositionContext(
                    alpha=alpha, quad_cfg=settings.quadrature(), ml_params=params,
                    series_rho_max=settings.char_series_rho_max,
                )
            else:
                ctx = DecompositionContext(alpha=alpha, ml_params=params)
            return DecompositionService.char_fn_with_branch(ctx, -z)
        return SpecFunService.ml_with_branch(params, z)

# -*- coding: utf-8 -*-
"""
Service layer for special functions.

Provides the Euler Gamma function, its reciprocal, the two-parameter
Mittag-Leffler function E_{delta,theta}(z) on the real axis (power series and
asymptotic expansion) and the incomplete-beta type kernel integral behind the
second fundamental solution of the composition equation.
"""

import cmath
import logging
import math
from typing import Optional, Tuple

import numpy as np
from scipy import special

from app.exceptions import AccuracyError, DomainError, RangeError
from app.schemas.quadrature import QuadratureConfig
from app.schemas.series import FractionalOrder
from app.schemas.specfun import MLParams, SectorAngle
from app.services.quadrature import QuadratureService

logger = logging.getLogger(__name__)


def _is_pole(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return (x <= SpecFunService.POLE_SNAP) & (np.abs(x - np.round(x)) <= SpecFunService.POLE_SNAP)


def reciprocal_gamma_array(x) -> np.ndarray:
    """
    Vectorized 1/Gamma with exact zeros at the poles.
    """
    x = np.asarray(x, dtype=float)
    return np.where(_is_pole(x), 0.0, special.rgamma(x))


class SpecFunService:
    """
    Service class for special functions.

    Attributes
    ----------
    GAMMA_OVERFLOW : float
        Largest argument whose Gamma value is representable.
    POLE_SNAP : float
        Arguments this close to a non-positive integer are treated as poles.
    SERIES_STOP : float
        Relative size below which a series term ends the summation.
    BRANCH_TOLERANCE : float
        Estimated relative error at which ``ml`` accepts a branch without
        trying the next one.
    ACCURACY_LIMIT : float
        Largest estimated relative error ``ml`` returns; beyond it an
        AccuracyError is raised.
    """
    GAMMA_OVERFLOW = 171.61447887182298
    POLE_SNAP = 1e-12
    SERIES_STOP = 1e-16
    BRANCH_TOLERANCE = 1e-12
    ACCURACY_LIMIT = 1e-8
    EXP_LIMIT = 709.0

    @staticmethod
    def gamma(x: float) -> float:
        """
        Euler Gamma function.

        Parameters
        ----------
        x : float
            Argument, not a pole.

        Returns
        -------
        float
            Gamma(x).

        Raises
        ------
        DomainError
            If x is 0 or a negative integer.
        RangeError
            If Gamma(x) overflows.
        """
        x = float(x)
        if not math.isfinite(x):
            raise DomainError(f"Gamma argument must be finite (got {x}).")
        if _is_pole(x):
            raise DomainError(f"Gamma has a pole at x={int(round(x))}.")
        if x > SpecFunService.GAMMA_OVERFLOW:
            raise RangeError(f"Gamma({x}) overflows double precision.")
        value = float(special.gamma(x))
        if not math.isfinite(value):
            raise RangeError(f"Gamma({x}) is not representable.")
        return value

    @staticmethod
    def reciprocal_gamma(x: float) -> float:
        """
        1/Gamma(x), an entire function that is exactly 0 at the poles of Gamma.
        """
        return float(reciprocal_gamma_array(float(x)))

    @staticmethod
    def ml_series(params: MLParams, z: float) -> float:
        """
        Mittag-Leffler function by its power series sum_k z^k / Gamma(delta*k + theta).

        Terms are formed directly, in log-magnitude where z^k would overflow,
        and summed with ``math.fsum``. Summation stops at the first term past the peak
        (``k >= |z|^(1/delta)/delta``) whose magnitude is below
        ``1e-16 * (|partial sum| + 1)``; pole terms contribute 0.

        Parameters
        ----------
        params : MLParams
            Parameters and truncation cap.
        z : float
            Argument with ``|z| <= params.switch_radius``.

        Returns
        -------
        float
            E_{delta,theta}(z).

        Raises
        ------
        DomainError
            If ``|z|`` exceeds the switch radius.
        AccuracyError
            If the cap is reached before convergence, or terms overflow for z < 0.
        RangeError
            If terms overflow for z > 0 (the value itself is not representable).
        """
        value, _ = SpecFunService.ml_series_with_loss(params, z)
        return value

    @staticmethod
    def ml_series_with_loss(params: MLParams, z: float) -> Tuple[float, float]:
        """
        ``ml_series`` together with its estimated relative rounding loss.

        The loss is ``eps * max|term| / |value|``, the cancellation between
        alternating terms for z < 0.
        """
        z = float(z)
        if abs(z) > params.switch_radius:
            raise DomainError(f"Series branch requires |z| <= {params.switch_radius} (got {z}).")
        delta, theta = params.delta, params.theta
        if z == 0.0:
            return SpecFunService.reciprocal_gamma(theta), 0.0

        k = np.arange(params.series_terms_max, dtype=float)
        args = delta * k + theta
        rgamma = reciprocal_gamma_array(args)
        positive = args > 0.0
        with np.errstate(divide="ignore", over="ignore", under="ignore", invalid="ignore"):
            direct = np.power(z, k) * rgamma
            log_rgamma = np.where(positive, -special.gammaln(np.where(positive, args, 1.0)), np.log(np.abs(rgamma)))
            log_mag = k * math.log(abs(z)) + log_rgamma
            signs = np.where(positive, 1.0, np.sign(rgamma)) * (np.sign(z) ** k)
            # log-magnitude form only where z^k overflows or 1/Gamma underflows
            exact = np.isfinite(direct) & ((rgamma != 0.0) | ~positive)
            terms = np.where(exact, direct, signs * np.exp(log_mag))

        if not np.all(np.isfinite(terms)):
            if z > 0.0:
                raise RangeError(f"E_{{{delta},{theta}}}({z}) overflows double precision.")
            raise AccuracyError(f"Series terms overflow for z={z}; use a larger-argument method.")

        partial = np.cumsum(terms)
        peak = abs(z) ** (1.0 / delta) / delta
        stop = (k >= peak) & positive & (np.abs(terms) < SpecFunService.SERIES_STOP * (np.abs(partial) + 1.0))
        hits = np.flatnonzero(stop)
        if hits.size == 0:
            raise AccuracyError(
                f"Mittag-Leffler series did not converge in {params.series_terms_max} terms at z={z}.",
                last_term=float(abs(terms[-1])),
            )
        last = int(hits[0])
        value = math.fsum(terms[: last + 1])

        largest = float(np.max(np.abs(terms[: last + 1])))
        loss = np.finfo(float).eps * largest / max(abs(value), np.finfo(float).tiny)
        return value, float(loss)

    @staticmethod
    def _asymptotic_exponential(params: MLParams, mu: Optional[SectorAngle], z: float) -> float:
        delta, theta = params.delta, params.theta
        arg = 0.0 if z > 0.0 else math.pi
        radius = abs(z) ** (1.0 / delta)
        exponential = 0.0
        m_range = int(math.ceil(delta / 2.0)) + 1
        for m in range(-m_range, m_range + 1):
            phase = arg + 2.0 * math.pi * m
            # delta = 1, z < 0: the single term t = z on the sector boundary
            boundary = math.isclose(phase, delta * math.pi)
            if abs(phase) >= delta * math.pi and not boundary:
                continue
            dominant = mu is not None and abs(phase) <= mu.mu
            if not (dominant or params.include_subdominant):
                continue
            t = cmath.rect(radius, phase / delta)
            log_term = (1.0 - theta) * cmath.log(t) + t
            if log_term.real > SpecFunService.EXP_LIMIT:
                raise RangeError(f"E_{{{delta},{theta}}}({z}) overflows double precision.")
            exponential += (cmath.exp(log_term) / delta).real
        return exponential

    @staticmethod
    def _asymptotic_algebraic(params: MLParams, z: float, n_terms: Optional[int] = None) -> Tuple[float, float]:
        """
        sum_{k=1}^{N} z^-k / Gamma(theta - delta*k) and the magnitude of the
        first omitted term.

        With ``n_terms`` None the sum is truncated optimally: it stops before
        the first nonzero term that is larger than its nonzero predecessor.
        """
        delta, theta = params.delta, params.theta
        cap = n_terms or params.series_terms_max
        k = np.arange(1, cap + 2, dtype=float)
        args = theta - delta * k
        pole = _is_pole(args)
        positive = args > 0.0
        with np.errstate(divide="ignore", over="ignore", under="ignore", invalid="ignore"):
            rgamma = reciprocal_gamma_array(args)
            direct = np.power(z, -k) * rgamma
            # 1/Gamma(x) = Gamma(1 - x) sin(pi x) / pi for x < 0
            reflected = np.where(positive, 0.5, args)
            log_rgamma = np.where(
                positive,
                -special.gammaln(np.where(positive, args, 1.0)),
                special.gammaln(1.0 - reflected) + np.log(np.abs(np.sin(np.pi * reflected))) - math.log(math.pi),
            )
            log_mag = np.where(pole, -np.inf, -k * math.log(abs(z)) + log_rgamma)
            signs = np.where(positive, 1.0, np.sign(np.sin(np.pi * reflected))) * (np.sign(z) ** k)
            exact = np.isfinite(direct) & (direct != 0.0)
            terms = np.where(pole, 0.0, np.where(exact, direct, signs * np.exp(log_mag)))

        if n_terms is not None:
            return math.fsum(terms[:cap]), float(abs(terms[cap]))

        nonzero = np.flatnonzero(~pole[:cap])
        if nonzero.size == 0:
            return 0.0, 0.0
        mags = log_mag[nonzero]
        rising = np.flatnonzero(np.diff(mags) > 0.0)
        if rising.size:
            keep = nonzero[: rising[0] + 1]
            omitted = math.exp(mags[rising[0] + 1])
        else:
            keep = nonzero
            omitted = float(abs(terms[cap]))
        return math.fsum(terms[keep]), omitted

    @staticmethod
    def ml_asymptotic(params: MLParams, mu: Optional[SectorAngle], z: float) -> float:
        """
        Mittag-Leffler function by its asymptotic expansion for large |z|.

        The value is

            (1/delta) * sum_m t_m^(1-theta) exp(t_m) - sum_{k=1}^{N} z^-k / Gamma(theta - delta*k)

        with t_m = |z|^(1/delta) exp(i(arg z + 2 pi m)/delta). Exponential
        terms with ``|arg z + 2 pi m| <= mu`` are always kept; the remaining
        ones inside ``|arg z + 2 pi m| < delta*pi`` are kept only when
        ``params.include_subdominant`` is set. Without them the expansion
        reduces to the two classical branches (z > 0: exponential minus the
        sum, z < 0: minus the sum).

        Parameters
        ----------
        params : MLParams
            Parameters; ``asymptotic_terms`` is N.
        mu : SectorAngle or None
            Sector angle; the midpoint of the admissible interval when None.
        z : float
            Nonzero argument, normally with ``|z| > params.switch_radius``.

        Returns
        -------
        float
            E_{delta,theta}(z).

        Raises
        ------
        DomainError
            If delta is outside the supported range, mu belongs to another
            delta, or z = 0.
        RangeError
            If the exponential part overflows.
        """
        value, _ = SpecFunService._asymptotic(params, mu, z, params.asymptotic_terms)
        return value

    @staticmethod
    def ml_asymptotic_with_error(params: MLParams, z: float) -> Tuple[float, float]:
        """
        Asymptotic expansion with the algebraic sum truncated optimally.

        Returns
        -------
        tuple of float
            ``(value, error)`` where ``error`` is the first omitted term
            relative to ``|value|``.
        """
        value, omitted = SpecFunService._asymptotic(params, None, z, None)
        if omitted == 0.0:
            return value, 0.0
        return value, omitted / max(abs(value), np.finfo(float).tiny)

    @staticmethod
    def _asymptotic(params: MLParams, mu: Optional[SectorAngle], z: float,
                    n_terms: Optional[int]) -> Tuple[float, float]:
        z = float(z)
        delta = params.delta
        if z == 0.0:
            raise DomainError("The asymptotic expansion is undefined at z = 0.")
        if not params.include_subdominant and delta > 1.98:
            raise DomainError(
                f"Without subdominant terms the expansion is limited to delta <= 1.98 (got {delta})."
            )
        if mu is None:
            mu = SectorAngle.midpoint(delta)
        elif not math.isclose(mu.delta, delta):
            raise DomainError(f"Sector angle was built for delta={mu.delta}, not {delta}.")

        exponential = SpecFunService._asymptotic_exponential(params, mu, z)
        algebraic, omitted = SpecFunService._asymptotic_algebraic(params, z, n_terms)
        return exponential - algebraic, omitted

    @staticmethod
    def integral_applies(params: MLParams, z: float) -> bool:
        """
        True when ``ml_integral`` covers (params, z): z < 0, delta != 1 and theta < delta + 1.
        """
        return float(z) < 0.0 and params.delta != 1.0 and params.theta < params.delta + 1.0

    @staticmethod
    def ml_integral(params: MLParams, z: float, cfg: Optional[QuadratureConfig] = None) -> float:
        """
        E_{delta,theta}(z) for z < 0 from its Laplace-inversion representation.

        With x = -z and rho = x^(1/delta),

            E_{delta,theta}(-x) = rho^(1-theta) * (g + integral_0^inf exp(-rho u) k(u) du)

            k(u) = u^(delta-theta) (u^delta sin(pi theta) - sin(pi (delta - theta)))
                   / (pi (u^(2 delta) + 2 u^delta cos(pi delta) + 1))
            g    = (2/delta) exp(rho cos(pi/delta)) cos(rho sin(pi/delta) + (1 - theta) pi/delta)

        where g, the contribution of the two poles of the Laplace transform,
        is present for 1 < delta <= 2 only. At theta = 2, delta = 2 alpha this
        is the f/g decomposition of the characteristic function. The
        integral is split at u = 1: the endpoint singularity u^(delta-theta)
        is removed on [0, 1] and [1, inf) is mapped onto a finite interval.

        Parameters
        ----------
        params : MLParams
            Parameters with delta != 1 and theta < delta + 1.
        z : float
            Negative argument.
        cfg : QuadratureConfig, optional
            Quadrature tolerances.

        Returns
        -------
        float
            E_{delta,theta}(z).

        Raises
        ------
        DomainError
            If the representation does not apply.
        AccuracyError
            If the quadrature does not converge.
        """
        z = float(z)
        delta, theta = params.delta, params.theta
        if not SpecFunService.integral_applies(params, z):
            raise DomainError(
                f"The integral representation needs z < 0, delta != 1 and theta < delta + 1 "
                f"(got delta={delta}, theta={theta}, z={z})."
            )
        rho = (-z) ** (1.0 / delta)
        poles = 0.0
        if delta > 1.0:
            angle = math.pi / delta
            poles = (2.0 / delta) * math.exp(rho * math.cos(angle)) * math.cos(rho * math.sin(angle) + (1.0 - theta) * angle)

        beta = delta - theta
        sin_theta = math.sin(math.pi * theta)
        sin_shift = math.sin(math.pi * beta)
        cos_delta = math.cos(math.pi * delta)

        def smooth_part(u):
            ud = u ** delta
            return (ud * sin_theta - sin_shift) * np.exp(-rho * u) / (math.pi * (ud * ud + 2.0 * ud * cos_delta + 1.0))

        def far_part(u):
            return u ** beta * smooth_part(u)

        near = QuadratureService.integrate_endpoint_singular(
            smooth_part, beta=beta, a=0.0, b=1.0, endpoint="left", cfg=cfg,
            points=QuadratureService.layer_breakpoints(rho),
        )
        far = QuadratureService.integrate_semi_infinite(far_part, a=1.0, cfg=cfg)
        if not (near.converged and far.converged):
            raise AccuracyError(
                f"Integral representation of E_{{{delta},{theta}}}({z}) did not converge.",
                last_term=float(near.error_estimate + far.error_estimate),
            )
        return rho ** (1.0 - theta) * (poles + near.value + far.value)

    @staticmethod
    def ml(params: MLParams, z: float) -> float:
        """
        Mittag-Leffler function E_{delta,theta}(z) for real z.

        The branch is chosen by estimated error, see ``ml_with_branch``.
        E_{delta,1} is the one-parameter function E_delta, evaluated by this
        same path.
        """
        value, _ = SpecFunService.ml_with_branch(params, z)
        return value

    @staticmethod
    def ml_with_branch(params: MLParams, z: float) -> Tuple[float, str]:
        """
        Same as ``ml`` but also returns the name of the branch that was used.

        Branches are tried in the order series (``|z| <= switch_radius``),
        asymptotic expansion with optimal truncation, integral representation
        (z < 0). The first one whose estimated relative error is within
        ``BRANCH_TOLERANCE`` is returned; the integral representation is
        accepted whenever it converges. Otherwise the best estimate is
        returned if it is within ``ACCURACY_LIMIT``.

        Returns
        -------
        tuple
            ``(value, branch)`` with branch in {"series", "asymptotic", "integral"}.

        Raises
        ------
        AccuracyError
            If no branch reaches ``ACCURACY_LIMIT``.
        """
        z = float(z)
        delta, theta = params.delta, params.theta
        candidates = []
        failure = None
        if abs(z) <= params.switch_radius:
            try:
                value, loss = SpecFunService.ml_series_with_loss(params, z)
            except AccuracyError as exc:
                failure = exc
            else:
                if loss <= SpecFunService.BRANCH_TOLERANCE:
                    return value, "series"
                candidates.append((loss, value, "series"))

        if z != 0.0:
            try:
                value, error = SpecFunService.ml_asymptotic_with_error(params, z)
            except DomainError as exc:
                if not candidates and not SpecFunService.integral_applies(params, z):
                    raise
                failure = exc
            else:
                if error <= SpecFunService.BRANCH_TOLERANCE:
                    return value, "asymptotic"
                candidates.append((error, value, "asymptotic"))

        if SpecFunService.integral_applies(params, z):
            try:
                return SpecFunService.ml_integral(params, z), "integral"
            except AccuracyError as exc:
                failure = exc

        if candidates:
            error, value, branch = min(candidates, key=lambda item: item[0])
            if error <= SpecFunService.ACCURACY_LIMIT:
                logger.debug(f"E_{{{delta},{theta}}}({z}) from the {branch} branch carries a relative error of about {error:.1e}.")
                return value, branch
            raise AccuracyError(
                f"No branch evaluates E_{{{delta},{theta}}}({z}) to {SpecFunService.ACCURACY_LIMIT:.0e} "
                f"relative accuracy (best: {branch}, about {error:.1e}).",
                last_term=error,
            )
        raise AccuracyError(f"No branch evaluates E_{{{delta},{theta}}}({z}): {failure}")

    @staticmethod
    def mittag_leffler(delta: float, z: float, params: Optional[MLParams] = None) -> float:
        """
        One-parameter Mittag-Leffler function E_delta(z) = E_{delta,1}(z).
        """
        base = params or MLParams(delta=delta, theta=1.0)
        return SpecFunService.ml(base.model_copy(update={"delta": delta, "theta": 1.0}), z)

    @staticmethod
    def psi_kernel_integral(alpha, x: float, cfg: Optional[QuadratureConfig] = None) -> float:
        """
        Computes integral_1^x (w - 1)^(alpha - 1) w^(alpha - 1) dw.

        The endpoint singularity at w = 1 is removed with w = 1 + u^(1/alpha).

        Parameters
        ----------
        alpha : FractionalOrder or float
            Order in (0, 1].
        x : float
            Upper limit, x >= 1.
        cfg : QuadratureConfig, optional
            Quadrature tolerances.

        Returns
        -------
        float
            The integral (0 at x = 1, x - 1 at alpha = 1).

        Raises
        ------
        DomainError
            If x < 1.
        AccuracyError
            If the quadrature does not converge.
        """
        order = FractionalOrder.of(alpha)
        x = float(x)
        if not x >= 1.0:
            raise DomainError(f"Kernel integral needs x >= 1 (got {x}).")
        if x == 1.0:
            return 0.0
        if order.alpha == 1.0:
            return x - 1.0
        if math.isinf(x):
            raise DomainError("Kernel integral diverges as x -> inf.")

        a = order.alpha
        result = QuadratureService.integrate_endpoint_singular(
            lambda w: w ** (a - 1.0), beta=a - 1.0, a=1.0, b=x, endpoint="left", cfg=cfg,
        )
        if not result.converged:
            raise AccuracyError(f"Kernel integral did not converge (alpha={a}, x={x}).", last_term=result.error_estimate)
        return result.value

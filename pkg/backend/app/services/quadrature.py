# -*- coding: utf-8 -*-
"""
Service layer for adaptive numerical integration.

Panels are integrated with a fixed Gauss-Legendre rule. Each panel is
compared against the sum over its two halves and the panels with the largest
discrepancy are bisected until the requested tolerance is met. Integrands are
vectorized: they receive a 1-D array of abscissae and return an array whose
last axis matches it. Leading axes form a batch that shares the panel layout
while every member is held to its own tolerance.
"""

import logging
from functools import lru_cache
from typing import Callable, Optional, Sequence

import numpy as np

from app.exceptions import DomainError
from app.schemas.quadrature import QuadratureConfig, QuadratureResult

logger = logging.getLogger(__name__)

Integrand = Callable[[np.ndarray], np.ndarray]


@lru_cache(maxsize=16)
def _gauss_legendre(order: int):
    nodes, weights = np.polynomial.legendre.leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def _panel_sums(f: Integrand, lefts: np.ndarray, rights: np.ndarray, order: int) -> np.ndarray:
    """
    Gauss-Legendre estimates on every panel in one integrand call.

    Returns an array of shape ``batch + (n_panels,)``.
    """
    nodes, weights = _gauss_legendre(order)
    mid = 0.5 * (lefts + rights)
    half = 0.5 * (rights - lefts)
    x = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    with np.errstate(over="ignore", under="ignore", invalid="ignore", divide="ignore"):
        y = np.asarray(f(x), dtype=float)
    y = y.reshape(y.shape[:-1] + (lefts.size, order))
    return (y @ weights) * half


class QuadratureService:
    """
    Service class for adaptive quadrature.

    Attributes
    ----------
    SPLIT_FRACTION : float
        Panels whose error is at least this fraction of the worst panel error
        are bisected in a refinement round.
    ROUNDING_FLOOR : float
        Multiple of machine epsilon times the integral of ``|f|`` below
        which an error estimate is treated as rounding noise.
    """
    SPLIT_FRACTION = 0.5
    ROUNDING_FLOOR = 50.0 * np.finfo(float).eps

    @staticmethod
    def integrate_finite(f: Integrand, a: float, b: float, cfg: Optional[QuadratureConfig] = None,
                         points: Optional[Sequence[float]] = None) -> QuadratureResult:
        """
        Integrates ``f`` over the finite interval [a, b].

        Parameters
        ----------
        f : callable
            Vectorized integrand.
        a, b : float
            Integration limits, a < b.
        cfg : QuadratureConfig, optional
            Tolerances and limits (defaults when omitted).
        points : sequence of float, optional
            Interior breakpoints used as initial panel boundaries.

        Returns
        -------
        QuadratureResult
            The estimate. ``converged`` is False when ``max_subdivisions`` was
            exhausted or panels could not be split any further.

        Raises
        ------
        DomainError
            If the limits are not finite or not increasing.
        """
        cfg = cfg or QuadratureConfig()
        if not (np.isfinite(a) and np.isfinite(b)) or not a < b:
            raise DomainError(f"Finite integration needs a < b (got a={a}, b={b}).")
        edges = [a, *sorted(p for p in (points or ()) if a < p < b), b]
        result, _ = QuadratureService._adaptive(f, np.asarray(edges, dtype=float), cfg)
        return result

    @staticmethod
    def integrate_semi_infinite(f: Integrand, a: float, cfg: Optional[QuadratureConfig] = None) -> QuadratureResult:
        """
        Integrates ``f`` over [a, inf).

        The interval is mapped onto (0, 1] with u = 1/(1 + r - a). After the
        adaptive pass the panel touching u = 0 is halved repeatedly and the
        nested tail estimates must shrink; a tail that does not decay yields a
        non-converged result. The last nested tail estimate is added to the
        error estimate.

        Parameters
        ----------
        f : callable
            Vectorized integrand.
        a : float
            Lower limit.
        cfg : QuadratureConfig, optional
            Tolerances, limits and tail policy.

        Returns
        -------
        QuadratureResult
            The estimate.
        """
        cfg = cfg or QuadratureConfig()
        if not np.isfinite(a):
            raise DomainError(f"Lower limit must be finite (got {a}).")

        def mapped(u):
            r = a + (1.0 - u) / u
            return f(r) / (u * u)

        result, width = QuadratureService._adaptive(mapped, np.array([0.0, 1.0]), cfg)
        policy = cfg.semi_infinite_cutoff_policy

        widths = width * 0.5 ** np.arange(1, policy.checks + 2)
        nested = _panel_sums(mapped, np.zeros_like(widths), widths, cfg.order)
        tails = np.abs(nested)
        decaying = bool(np.all(tails[..., 1:] <= policy.shrink_ratio * tails[..., :-1] + cfg.abs_tol))
        # rule error on the innermost nested panel
        innermost = _panel_sums(mapped, np.array([0.0, 0.5 * widths[-1]]), np.array([0.5 * widths[-1], widths[-1]]), cfg.order)
        tail_error = np.abs(innermost.sum(axis=-1) - nested[..., -1])
        if not decaying:
            logger.warning(f"Tail of the integral over [{a}, inf) is not decaying.")
        error = result.error_estimate + tail_error
        total = np.asarray(result.value)
        tol = np.maximum(cfg.abs_tol, cfg.rel_tol * np.abs(total))
        within = bool(np.all(error <= tol))
        if result.converged and decaying and not within:
            logger.warning(
                f"Tail of the integral over [{a}, inf) exceeds the tolerance "
                f"(error estimate {np.max(error):.3e})."
            )
        return QuadratureResult(
            value=result.value,
            error_estimate=float(error) if np.ndim(error) == 0 else error,
            evaluations=result.evaluations + (widths.size + 2) * cfg.order,
            converged=result.converged and decaying and within,
        )

    @staticmethod
    def layer_breakpoints(scale: float):
        """
        Breakpoints in [0, 1] resolving an exp(-scale r) boundary layer at r = 0.
        """
        points = []
        r = 1.0 / scale if scale > 1.0 else 1.0
        while r < 1.0:
            points.append(r)
            r *= 4.0
        return points

    @staticmethod
    def integrate_endpoint_singular(h: Integrand, beta: float, a: float, b: float,
                                    endpoint: str = "left", cfg: Optional[QuadratureConfig] = None,
                                    points: Optional[Sequence[float]] = None) -> QuadratureResult:
        """
        Integrates ``(r - a)^beta h(r)`` (endpoint ``"left"``) or
        ``(b - r)^beta h(r)`` (endpoint ``"right"``) over [a, b].

        The algebraic factor is removed with the substitution
        ``u = (r - a)^(beta + 1)`` (respectively ``(b - r)^(beta + 1)``):

            1/(beta + 1) * integral_0^{(b - a)^(beta + 1)} h(a + u^(1/(beta + 1))) du

        Parameters
        ----------
        h : callable
            Vectorized smooth factor.
        beta : float
            Exponent of the endpoint singularity, beta > -1.
        a, b : float
            Integration limits.
        endpoint : {"left", "right"}
            Endpoint carrying the singularity.
        cfg : QuadratureConfig, optional
            Tolerances and limits.
        points : sequence of float, optional
            Breakpoints in the original variable r.

        Returns
        -------
        QuadratureResult
            The estimate.

        Raises
        ------
        DomainError
            If ``beta <= -1``, the limits are invalid or ``endpoint`` is unknown.
        """
        if not beta > -1.0:
            raise DomainError(f"Endpoint exponent must exceed -1 (got {beta}).")
        if endpoint not in ("left", "right"):
            raise DomainError(f"Unknown endpoint '{endpoint}'.")
        if not a < b:
            raise DomainError(f"Integration needs a < b (got a={a}, b={b}).")
        power = beta + 1.0
        inverse = 1.0 / power
        upper = (b - a) ** power

        if endpoint == "left":
            def mapped(u):
                return h(a + u ** inverse) * inverse
            mapped_points = [(p - a) ** power for p in (points or ()) if a < p < b]
        else:
            def mapped(u):
                return h(b - u ** inverse) * inverse
            mapped_points = [(b - p) ** power for p in (points or ()) if a < p < b]

        return QuadratureService.integrate_finite(mapped, 0.0, upper, cfg, points=mapped_points)

    @staticmethod
    def _adaptive(f: Integrand, edges: np.ndarray, cfg: QuadratureConfig):
        """
        Global adaptive bisection starting from the panels delimited by ``edges``.

        Returns the result and the width of the leftmost final panel.
        """
        order = cfg.order
        lefts, rights = edges[:-1].copy(), edges[1:].copy()
        mids = 0.5 * (lefts + rights)
        coarse = _panel_sums(f, lefts, rights, order)
        halves = _panel_sums(f, np.concatenate([lefts, mids]), np.concatenate([mids, rights]), order)
        n = lefts.size
        left_half, right_half = halves[..., :n], halves[..., n:]
        evaluations = 3 * n * order

        converged = False
        while True:
            fine = left_half + right_half
            err = np.abs(fine - coarse)
            err = np.where(np.isfinite(err), err, np.inf)
            total = fine.sum(axis=-1)
            floor = QuadratureService.ROUNDING_FLOOR * np.abs(fine).sum(axis=-1)
            tol = np.maximum(np.maximum(cfg.abs_tol, cfg.rel_tol * np.abs(total)), floor)
            failing = ~(err.sum(axis=-1) <= tol)
            if not np.any(failing):
                converged = True
                break

            width_ok = (rights - lefts) > 8.0 * np.finfo(float).eps * np.maximum(np.abs(mids), np.finfo(float).tiny)
            worst = err.max(axis=-1, keepdims=True)
            select = (err >= QuadratureService.SPLIT_FRACTION * worst) & failing[..., None] & (err > 0.0)
            split = select.reshape(-1, lefts.size).any(axis=0) & width_ok
            room = cfg.max_subdivisions - lefts.size
            if room <= 0 or not np.any(split):
                break
            candidates = np.flatnonzero(split)
            if candidates.size > room:
                score = err.reshape(-1, lefts.size).max(axis=0)[candidates]
                candidates = np.sort(candidates[np.argsort(score, kind="stable")[::-1][:room]])
                split = np.zeros_like(split)
                split[candidates] = True

            keep = ~split
            # children of panel i reuse its halves as their coarse estimates
            s_l, s_m, s_r = lefts[split], mids[split], rights[split]
            new_lefts = np.concatenate([s_l, s_m])
            new_rights = np.concatenate([s_m, s_r])
            new_coarse = np.concatenate([left_half[..., split], right_half[..., split]], axis=-1)
            new_mids = 0.5 * (new_lefts + new_rights)
            k = new_lefts.size
            new_halves = _panel_sums(
                f, np.concatenate([new_lefts, new_mids]), np.concatenate([new_mids, new_rights]), order
            )
            evaluations += 2 * k * order

            lefts = np.concatenate([lefts[keep], new_lefts])
            rights = np.concatenate([rights[keep], new_rights])
            coarse = np.concatenate([coarse[..., keep], new_coarse], axis=-1)
            left_half = np.concatenate([left_half[..., keep], new_halves[..., :k]], axis=-1)
            right_half = np.concatenate([right_half[..., keep], new_halves[..., k:]], axis=-1)
            ordering = np.argsort(lefts, kind="stable")
            lefts, rights = lefts[ordering], rights[ordering]
            coarse = coarse[..., ordering]
            left_half, right_half = left_half[..., ordering], right_half[..., ordering]
            mids = 0.5 * (lefts + rights)

        fine = left_half + right_half
        value = fine.sum(axis=-1)
        error = np.abs(fine - coarse).sum(axis=-1)
        if not converged:
            logger.warning(
                f"Adaptive quadrature stopped at {lefts.size} panels without meeting the tolerance "
                f"(max error estimate {np.max(error):.3e})."
            )
        scalar = np.ndim(value) == 0
        result = QuadratureResult(
            value=float(value) if scalar else value,
            error_estimate=float(error) if scalar else error,
            evaluations=evaluations,
            converged=converged,
        )
        return result, float(rights[0] - lefts[0])

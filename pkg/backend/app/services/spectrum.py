# -*- coding: utf-8 -*-
"""
Service layer for the real spectrum of the fractional two-point problem.

The eigenvalues are the positive zeros of E_{2alpha,2}(-lambda). Real zeros
can only appear where the oscillatory part g is negative, on the intervals

    I_n = (g_zero(2n), g_zero(2n + 1)),   n = 0, 1, 2, ...

and an interval holds two of them as long as |g| exceeds f at its interior
odd extremum. N* is the first n for which this fails; the real spectrum
then consists of 2 N* eigenvalues, two per interval I_0 .. I_{N*-1}.
"""

import logging
import math
from typing import List, Optional

import numpy as np
from scipy import optimize

from app.dependencies import get_settings_instance
from app.exceptions import AccuracyError, BracketError, DomainError
from app.schemas.series import FractionalOrder
from app.schemas.spectrum import Eigenvalue, EigenvalueBracket, NStarResult, SpectrumReport
from app.services.decomposition import DecompositionContext, DecompositionService, g_zero, g_zero_rho

logger = logging.getLogger(__name__)


class SpectrumService:
    """
    Service class for counting and locating real eigenvalues.

    Attributes
    ----------
    N_STAR_CHUNK : int
        Number of odd extrema compared per batched evaluation of f.
    N_STAR_LIMIT : int
        Upper bound on the N* search.
    TIE_TOLERANCE : float
        Relative gap between |g| and f below which a comparison is a tie.
    PERSISTENCE_CHECKS : int
        Number of further odd extrema at which the inequality is re-checked.
    BRACKET_SAMPLES : int
        Grid size used to inspect a bracket before refinement.
    ORACLE_EXTRA_ZEROS : int
        The sign scan runs up to g_zero(2 N* + ORACLE_EXTRA_ZEROS).
    """
    N_STAR_CHUNK = 64
    N_STAR_LIMIT = 1_000_000
    TIE_TOLERANCE = 1e-12
    PERSISTENCE_CHECKS = 3
    BRACKET_SAMPLES = 65
    ORACLE_EXTRA_ZEROS = 4

    @staticmethod
    def _require_spectrum(ctx: DecompositionContext) -> None:
        FractionalOrder.of(ctx.alpha).require_spectrum()

    @staticmethod
    def negative_interval(ctx: DecompositionContext, n: int) -> EigenvalueBracket:
        """
        Interval I_n on which g < 0, with its image under the 2 alpha-th root.

        Parameters
        ----------
        ctx : DecompositionContext
            The order and its constants.
        n : int
            Interval index, n >= 0.

        Returns
        -------
        EigenvalueBracket
            ``lambda_lo = g_zero(2n)``, ``lambda_hi = g_zero(2n + 1)``; the rho
            endpoints are computed in closed form.
        """
        if n < 0:
            raise DomainError(f"Interval index must be >= 0 (got {n}).")
        return EigenvalueBracket(
            n=n,
            lambda_lo=g_zero(ctx.alpha, 2 * n),
            lambda_hi=g_zero(ctx.alpha, 2 * n + 1),
            rho_lo=g_zero_rho(ctx.alpha, 2 * n),
            rho_hi=g_zero_rho(ctx.alpha, 2 * n + 1),
        )

    @staticmethod
    def _odd_extrema(ctx: DecompositionContext, n_values: np.ndarray):
        """
        Odd extrema z_{2N+1} of g and |g| there, for every N in ``n_values``.
        """
        k = 2.0 * n_values + 1.0
        z = ((k + 0.5) * math.pi / ctx.sin_phi) ** (2.0 * ctx.alpha)
        amplitude = np.exp((k + 0.5) * math.pi * ctx.cot_phi) * ctx.sin_phi / ctx.alpha
        return z, amplitude

    @staticmethod
    def _compare(ctx: DecompositionContext, n_values: np.ndarray):
        z, amplitude = SpectrumService._odd_extrema(ctx, n_values)
        f_values = DecompositionService.f_part_many(ctx, z)
        tie = np.abs(amplitude - f_values) <= SpectrumService.TIE_TOLERANCE * np.maximum(amplitude, f_values)
        satisfied = (amplitude < f_values) & ~tie
        return satisfied, tie, z

    @staticmethod
    def find_n_star_detail(ctx: DecompositionContext) -> NStarResult:
        """
        Smallest N with |g(z)| < f(z) at the odd extremum z = ((2N + 3/2) pi / sin phi)^(2 alpha).

        Ties (relative gap below ``TIE_TOLERANCE``) count as not satisfied,
        which includes the interval. The inequality is then re-checked at the
        next ``PERSISTENCE_CHECKS`` odd extrema.

        Returns
        -------
        NStarResult
            N* together with the tie and persistence flags.

        Raises
        ------
        DomainError
            If alpha is outside (1/2, 1).
        AccuracyError
            If f cannot be evaluated, or no N below ``N_STAR_LIMIT`` satisfies the inequality.
        """
        SpectrumService._require_spectrum(ctx)
        warnings: List[str] = []
        tie_flagged = False
        n_star = None
        start = 0
        while n_star is None:
            if start >= SpectrumService.N_STAR_LIMIT:
                raise AccuracyError(f"N* search for alpha={ctx.alpha} exceeded {SpectrumService.N_STAR_LIMIT}.")
            n_values = np.arange(start, start + SpectrumService.N_STAR_CHUNK, dtype=float)
            satisfied, tie, _ = SpectrumService._compare(ctx, n_values)
            hits = np.flatnonzero(satisfied)
            stop = hits[0] if hits.size else n_values.size
            for index in np.flatnonzero(tie[:stop]):
                tie_flagged = True
                message = f"N={start + int(index)}: |g| and f tie at the odd extremum; the interval is counted."
                warnings.append(message)
                logger.warning(f"alpha={ctx.alpha}: {message}")
            if hits.size:
                n_star = start + int(hits[0])
            start += SpectrumService.N_STAR_CHUNK

        checks = np.arange(n_star + 1, n_star + 1 + SpectrumService.PERSISTENCE_CHECKS, dtype=float)
        satisfied, _, z = SpectrumService._compare(ctx, checks)
        persistent = bool(np.all(satisfied))
        for n, ok, z_n in zip(checks, satisfied, z):
            if not ok:
                message = f"f > |g| fails again at N={int(n)} (lambda={z_n:.6g}) after N*={n_star}."
                warnings.append(message)
                logger.warning(f"alpha={ctx.alpha}: {message}")
        logger.info(f"alpha={ctx.alpha}: N*={n_star}, {2 * n_star} real eigenvalues.")
        return NStarResult(n_star=n_star, tie_flagged=tie_flagged, persistent=persistent, warnings=warnings)

    @staticmethod
    def find_n_star(ctx: DecompositionContext) -> int:
        """
        Number of negative-g intervals that contain two eigenvalues each.
        """
        return SpectrumService.find_n_star_detail(ctx).n_star

    @staticmethod
    def brackets(ctx: DecompositionContext, n_star: Optional[int] = None) -> List[EigenvalueBracket]:
        """
        Intervals I_0 .. I_{N*-1}; empty when N* = 0.
        """
        if n_star is None:
            n_star = SpectrumService.find_n_star(ctx)
        return [SpectrumService.negative_interval(ctx, n) for n in range(n_star)]

    @staticmethod
    def _bracket_grid(ctx: DecompositionContext, bracket: EigenvalueBracket):
        rho = np.linspace(bracket.rho_lo, bracket.rho_hi, SpectrumService.BRACKET_SAMPLES)[1:-1]
        lams = rho ** (2.0 * ctx.alpha)
        return lams, DecompositionService.char_fn_many(ctx, lams)

    @staticmethod
    def _refine_bracket(ctx: DecompositionContext, bracket: EigenvalueBracket, tol: float) -> List[Eigenvalue]:
        lo, hi = bracket.lambda_lo, bracket.lambda_hi
        value_lo = DecompositionService.char_fn(ctx, lo)
        value_hi = DecompositionService.char_fn(ctx, hi)
        lams, values = SpectrumService._bracket_grid(ctx, bracket)
        samples = list(zip([lo, *lams, hi], [value_lo, *values, value_hi]))

        signs = np.sign([v for _, v in samples])
        signs = signs[signs != 0.0]
        changes = int(np.count_nonzero(signs[1:] != signs[:-1]))
        if changes > 2:
            raise BracketError(
                f"Bracket I_{bracket.n} of alpha={ctx.alpha} shows {changes} sign changes instead of 2.",
                bracket=bracket, samples=samples,
            )

        split, _ = DecompositionService.g_extremum(ctx, 2 * bracket.n + 1)
        value_split = DecompositionService.char_fn(ctx, split)
        if value_split >= 0.0:
            i = int(np.argmin(values))
            split, value_split = float(lams[i]), float(values[i])
        if not (value_lo > 0.0 and value_hi > 0.0 and value_split < 0.0):
            raise BracketError(
                f"Bracket I_{bracket.n} of alpha={ctx.alpha} does not show two sign changes.",
                bracket=bracket, samples=samples,
            )
        logger.debug(f"alpha={ctx.alpha}: I_{bracket.n} split at lambda={split:.10g} (E={value_split:.3e}).")

        roots = []
        for left, right in ((lo, split), (split, hi)):
            root = optimize.brentq(
                lambda lam: DecompositionService.char_fn(ctx, lam), left, right,
                xtol=1e-3 * tol * (1.0 + left), rtol=4.0 * np.finfo(float).eps,
            )
            residual = abs(DecompositionService.char_fn(ctx, root))
            if residual > tol:
                logger.warning(f"alpha={ctx.alpha}: eigenvalue {root:.10g} has residual {residual:.3e} > {tol:.1e}.")
            roots.append(Eigenvalue(value=root, residual=residual, bracket=bracket.n))
        return roots

    @staticmethod
    def refine_eigenvalues(ctx: DecompositionContext, brackets: List[EigenvalueBracket],
                           tol: float) -> List[Eigenvalue]:
        """
        Locates the two zeros of E_{2alpha,2}(-lambda) inside every bracket.

        Each bracket is sampled on a grid uniform in rho, split at the interior
        odd extremum of g (or at the sampled minimum when E is not negative
        there) and both halves are solved with ``scipy.optimize.brentq``.

        Parameters
        ----------
        ctx : DecompositionContext
            The order and its constants.
        brackets : list of EigenvalueBracket
            Intervals to refine.
        tol : float
            Requested accuracy: |d lambda| <= tol (1 + lambda) and |E| <= tol.

        Returns
        -------
        list of Eigenvalue
            Two eigenvalues per bracket, increasing.

        Raises
        ------
        BracketError
            If a bracket does not show exactly two sign changes.
        """
        if not tol > 0.0:
            raise DomainError(f"Refinement tolerance must be positive (got {tol}).")
        eigenvalues = []
        for bracket in brackets:
            eigenvalues.extend(SpectrumService._refine_bracket(ctx, bracket, tol))
        return eigenvalues

    @staticmethod
    def sign_scan_count(ctx: DecompositionContext, lambda_max: float, samples_per_unit_rho: int = 64) -> int:
        """
        Counts sign changes of E_{2alpha,2}(-lambda) on (0, lambda_max].

        The samples are uniform in rho = lambda^(1/(2 alpha)); exact zeros are
        skipped.
        """
        if not lambda_max > 0.0:
            raise DomainError(f"lambda_max must be positive (got {lambda_max}).")
        if samples_per_unit_rho < 1:
            raise DomainError("At least one sample per unit rho is needed.")
        rho_max = float(ctx.rho(lambda_max))
        count = max(2, int(math.ceil(rho_max * samples_per_unit_rho)))
        rho = rho_max * np.arange(1, count + 1) / count
        values = DecompositionService.char_fn_many(ctx, rho ** (2.0 * ctx.alpha))
        signs = np.sign(values)
        signs = signs[signs != 0.0]
        changes = int(np.count_nonzero(signs[1:] != signs[:-1]))
        logger.debug(f"alpha={ctx.alpha}: {changes} sign changes on {count} samples up to lambda={lambda_max:.6g}.")
        return changes

    @staticmethod
    def asymptotic_eigenvalue(alpha, n: int) -> float:
        """
        Large-n estimate (n pi / sin(pi/(2 alpha)))^(2 alpha); n^2 pi^2 at alpha = 1.
        """
        order = FractionalOrder.of(alpha).require_above_half()
        if n < 1:
            raise DomainError(f"Eigenvalue index must be >= 1 (got {n}).")
        a = order.alpha
        sin_phi = 1.0 if a == 1.0 else math.sin(math.pi / (2.0 * a))
        return (n * math.pi / sin_phi) ** (2.0 * a)

    @staticmethod
    def spectrum_report(alpha, tol: Optional[float] = None, with_refinement: bool = False,
                        settings=None, max_refined: Optional[int] = None) -> SpectrumReport:
        """
        Assembles the real-spectrum summary of one order.

        Parameters
        ----------
        alpha : FractionalOrder or float
            Order in (1/2, 1).
        tol : float, optional
            Refinement tolerance; ``settings.refine_tol`` when omitted.
        with_refinement : bool, optional
            Locate the eigenvalues, not only count and bracket them.
        settings : Settings, optional
            Numerical settings; the shared settings when omitted.
        max_refined : int, optional
            Refine only the first ``max_refined`` brackets.

        Returns
        -------
        SpectrumReport
            The report. A disagreeing sign scan sets ``oracle_agrees`` to False.
        """
        order = FractionalOrder.of(alpha).require_spectrum()
        settings = settings or get_settings_instance()
        tol = settings.refine_tol if tol is None else tol
        ctx = DecompositionContext.from_settings(order.alpha, settings)

        detail = SpectrumService.find_n_star_detail(ctx)
        n_star = detail.n_star
        warnings = list(detail.warnings)
        brackets = SpectrumService.brackets(ctx, n_star)

        eigenvalues = []
        if with_refinement:
            selected = brackets if max_refined is None else brackets[:max_refined]
            if len(selected) < len(brackets):
                warnings.append(f"Only the first {len(selected)} of {len(brackets)} brackets were refined.")
            eigenvalues = SpectrumService.refine_eigenvalues(ctx, selected, tol)

        lambda_max = g_zero(ctx.alpha, 2 * n_star + SpectrumService.ORACLE_EXTRA_ZEROS)
        oracle_count = SpectrumService.sign_scan_count(ctx, lambda_max, settings.scan_samples_per_unit_rho)
        oracle_agrees = oracle_count == 2 * n_star
        if not oracle_agrees:
            message = f"Sign scan found {oracle_count} sign changes, N* predicts {2 * n_star}."
            warnings.append(message)
            logger.warning(f"alpha={order.alpha}: {message}")

        logger.info(f"Spectrum report for alpha={order.alpha} assembled ({2 * n_star} eigenvalues).")
        return SpectrumReport(
            alpha=order.alpha,
            n_star=n_star,
            eigen_count=2 * n_star,
            brackets=brackets,
            first_bracket=brackets[0] if brackets else None,
            last_bracket=brackets[-1] if brackets else None,
            eigenvalues=eigenvalues,
            oracle_count=oracle_count,
            oracle_agrees=oracle_agrees,
            warnings=warnings,
        )

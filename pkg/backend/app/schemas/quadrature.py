# -*- coding: utf-8 -*-
"""
Schemas for adaptive quadrature configuration and results.
"""

from typing import Any

from pydantic import BaseModel, Field


class TailPolicy(BaseModel):
    """
    Tail checks applied after a semi-infinite integration.

    Attributes
    ----------
    checks : int
        Number of nested sub-panels examined next to the point at infinity.
    shrink_ratio : float
        Each nested tail estimate must not exceed ``shrink_ratio`` times the
        previous one (plus the absolute tolerance).
    """
    model_config = {"frozen": True}

    checks: int = Field(default=3, ge=1)
    shrink_ratio: float = Field(default=1.0, gt=0.0)


class QuadratureConfig(BaseModel):
    """
    Tolerances and limits of the adaptive Gauss-Legendre integrator.

    Attributes
    ----------
    abs_tol : float
        Absolute tolerance.
    rel_tol : float
        Relative tolerance.
    max_subdivisions : int
        Maximum number of panels.
    order : int
        Number of Gauss-Legendre nodes per panel.
    semi_infinite_cutoff_policy : TailPolicy
        Tail checks for integrals over ``[a, inf)``.
    """
    model_config = {"frozen": True}

    abs_tol: float = Field(default=1e-14, gt=0.0)
    rel_tol: float = Field(default=1e-12, gt=0.0)
    max_subdivisions: int = Field(default=4000, ge=1)
    order: int = Field(default=10, ge=2, le=64)
    semi_infinite_cutoff_policy: TailPolicy = TailPolicy()


class QuadratureResult(BaseModel):
    """
    Outcome of an adaptive integration.

    ``value`` and ``error_estimate`` are floats for scalar integrands and
    numpy arrays for batched integrands.

    Attributes
    ----------
    value : float or numpy.ndarray
        Integral estimate.
    error_estimate : float or numpy.ndarray
        Estimated absolute error, including the tail estimate for
        semi-infinite intervals.
    evaluations : int
        Number of integrand abscissae evaluated.
    converged : bool
        True when every batch member met its tolerance.
    """
    model_config = {"arbitrary_types_allowed": True}

    value: Any
    error_estimate: Any
    evaluations: int = Field(ge=1)
    converged: bool

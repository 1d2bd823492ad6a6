# -*- coding: utf-8 -*-
"""
Solution endpoints.

This module provides an endpoint that samples the fundamental solution sets
of the three model equations on a grid.
"""

from typing import Optional

import numpy as np
from fastapi import APIRouter, Depends, HTTPException

from app.config import Settings
from app.dependencies import get_settings_instance
from app.schemas.solutions import Interval
from app.services.solutions import SolutionsService

router = APIRouter()


@router.get("/fss", summary="Sample a fundamental solution set")
def get_fss(
    equation: str,
    alpha: float,
    start: float,
    end: float,
    count: int,
    lam: Optional[float] = None,
    a: float = 0.0,
    b: float = 1.0,
    settings: Settings = Depends(get_settings_instance),
):
    """
    Samples ``(t, y1, y2)`` (fe1, fe3) or ``(t, psi)`` (fe2) on an even grid.

    Parameters
    ----------
    equation : str
        One of fe1, fe2, fe3.
    alpha : float
        Order.
    start, end : float
        Grid limits.
    count : int
        Number of grid points, at least 2.
    lam : float, optional
        Spectral parameter (fe3 only).
    a, b : float
        Interval of fe1 and fe2.
    settings : Settings
        Numerical settings, provided by `get_settings_instance`.

    Returns
    -------
    list of dict
        One row per grid point; points outside the domain carry null values.
    """
    if count < 2:
        raise HTTPException(status_code=400, detail="The grid needs at least 2 points.")
    try:
        interval = Interval(a=a, b=b)
        grid = np.linspace(start, end, count)
        return SolutionsService.sample_fss(equation, alpha, interval, grid, lam=lam, settings=settings)
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except (ArithmeticError, RuntimeError) as e:
        raise HTTPException(status_code=500, detail=f"Error sampling the solutions: {str(e)}")

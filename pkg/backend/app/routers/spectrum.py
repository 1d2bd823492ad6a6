# -*- coding: utf-8 -*-
"""
Spectrum endpoints.

This module provides endpoints for the real-spectrum report of one order and
for the eigenvalue-count table over several orders.
"""

from typing import List, Optional

from fastapi import APIRouter, Depends, HTTPException, Query

from app.config import Settings
from app.dependencies import get_settings_instance
from app.schemas.output import TABLE1_ALPHAS, Table1Row
from app.schemas.series import FractionalOrder
from app.schemas.spectrum import SpectrumReport
from app.services.report import ReportService
from app.services.spectrum import SpectrumService

router = APIRouter()


@router.get("/report", response_model=SpectrumReport, response_model_by_alias=True,
            summary="Real spectrum of one order")
def get_report(
    alpha: float,
    tol: Optional[float] = None,
    refine: bool = False,
    max_refined: Optional[int] = None,
    settings: Settings = Depends(get_settings_instance),
):
    """
    Computes N*, the brackets, the sign-scan count and optionally the eigenvalues.

    Parameters
    ----------
    alpha : float
        Order in (1/2, 1).
    tol : float, optional
        Refinement tolerance.
    refine : bool
        Whether to locate the eigenvalues.
    max_refined : int, optional
        Refine only the first brackets.
    settings : Settings
        Numerical settings, provided by `get_settings_instance`.

    Returns
    -------
    SpectrumReport
        The report.

    Raises
    ------
    HTTPException
        400 for an invalid order, 500 when a computation fails.
    """
    try:
        return SpectrumService.spectrum_report(
            alpha, tol=tol, with_refinement=refine, settings=settings, max_refined=max_refined,
        )
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except (ArithmeticError, RuntimeError) as e:
        raise HTTPException(status_code=500, detail=f"Error computing the spectrum: {str(e)}")


@router.get("/table1", response_model=List[Table1Row], summary="Eigenvalue counts for several orders")
def get_table1(
    alpha: List[float] = Query(default=list(TABLE1_ALPHAS)),
    settings: Settings = Depends(get_settings_instance),
):
    """
    Builds one eigenvalue-count row per order.

    Parameters
    ----------
    alpha : list of float
        Orders in (1/2, 1); the published table's orders by default.
    settings : Settings
        Numerical settings, provided by `get_settings_instance`.

    Returns
    -------
    list[Table1Row]
        Rows in request order.
    """
    try:
        orders = [FractionalOrder.of(a).require_spectrum().alpha for a in alpha]
        return [
            ReportService.table1_row(SpectrumService.spectrum_report(a, settings=settings))
            for a in orders
        ]
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except (ArithmeticError, RuntimeError) as e:
        raise HTTPException(status_code=500, detail=f"Error computing the table: {str(e)}")

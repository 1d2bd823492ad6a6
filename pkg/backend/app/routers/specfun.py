# -*- coding: utf-8 -*-
"""
Special-function endpoints.

This module provides endpoints for evaluating the Gamma function and the
two-parameter Mittag-Leffler function.
"""

from fastapi import APIRouter, Depends, HTTPException

from app.config import Settings
from app.dependencies import get_settings_instance
from app.services.decomposition import DecompositionService
from app.services.specfun import SpecFunService

router = APIRouter()


@router.get("/gamma", summary="Evaluate the Gamma function")
def get_gamma(x: float):
    """
    Evaluates Gamma(x).

    Parameters
    ----------
    x : float
        Argument, not a pole.

    Returns
    -------
    dict
        The argument and the value.

    Raises
    ------
    HTTPException
        400 at a pole, 500 when the value overflows.
    """
    try:
        return {"x": x, "value": SpecFunService.gamma(x)}
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except ArithmeticError as e:
        raise HTTPException(status_code=500, detail=f"Error evaluating Gamma: {str(e)}")


@router.get("/ml", summary="Evaluate the Mittag-Leffler function")
def get_ml(delta: float, theta: float, z: float, settings: Settings = Depends(get_settings_instance)):
    """
    Evaluates E_{delta,theta}(z) and reports the branch that was used.

    Parameters
    ----------
    delta : float
        First parameter, in (0, 2].
    theta : float
        Second parameter.
    z : float
        Argument.
    settings : Settings
        Evaluation policy, provided by `get_settings_instance`.

    Returns
    -------
    dict
        The value and the branch (series, asymptotic, integral or decomposition).
    """
    try:
        value, branch = DecompositionService.evaluate_ml(settings.ml_params(delta, theta), z, settings)
        return {"delta": delta, "theta": theta, "z": z, "value": value, "branch": branch}
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except (ArithmeticError, RuntimeError) as e:
        raise HTTPException(status_code=500, detail=f"Error evaluating E: {str(e)}")

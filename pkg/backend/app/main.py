# -*- coding: utf-8 -*-
"""
Main module for the fractional Sturm-Liouville toolkit HTTP surface.

This module initializes the FastAPI application, applies the logging
configuration, loads the numerical settings and includes all API routes.
"""

import logging

from fastapi import FastAPI

from app.config import setup_logging
from app.dependencies import get_settings_instance
from app.routers import solutions, specfun, spectrum

setup_logging()
logger = logging.getLogger(__name__)


async def app_lifespan(app: FastAPI):
    """
    Handles application lifespan events.

    Parameters
    ----------
    app : FastAPI
        The FastAPI application instance.

    Yields
    ------
    None
    """
    logger.info("Starting application...")
    settings = get_settings_instance()
    logger.info(f"Settings loaded (mode={settings.execution_mode}, switch radius={settings.ml_switch_radius}).")
    yield
    logger.info("Shutting down the application.")


# FastAPI application initialization
app = FastAPI(title="Fractional Sturm-Liouville Toolkit", lifespan=app_lifespan)

# Include routers
app.include_router(specfun.router, prefix="/specfun", tags=["Special functions"])
app.include_router(spectrum.router, prefix="/spectrum", tags=["Spectrum"])
app.include_router(solutions.router, prefix="/solutions", tags=["Solutions"])


@app.get("/", summary="Root endpoint")
def root():
    """
    Root endpoint for health check.

    Returns
    -------
    dict
        A message confirming the application is running.
    """
    return {"message": "Fractional Sturm-Liouville Toolkit is running!"}

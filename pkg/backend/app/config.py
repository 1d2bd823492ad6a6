# -*- coding: utf-8 -*-
"""
Configuration module.

Settings are read with python-decouple, so every key can come from the
environment, from a ``key=value`` file (``--config`` or the ``FSLP_CONFIG``
variable) or from the usual ``.env`` / ``settings.ini`` lookup. Values are
validated by a pydantic model. This module also installs the logging
configuration stored in ``Logs/logging_config.yml``.
"""

import logging
import logging.config
from pathlib import Path
from typing import Literal, Mapping, Optional

import yaml
from decouple import Config, RepositoryEnv, config
from pydantic import BaseModel, Field, ValidationError

from app.exceptions import DomainError
from app.schemas.quadrature import QuadratureConfig, TailPolicy
from app.schemas.specfun import MLParams

LOGGING_CONFIG_PATH = Path(__file__).parent / "Logs" / "logging_config.yml"
CONFIG_PATH_VARIABLE = "FSLP_CONFIG"

logger = logging.getLogger(__name__)


class Settings(BaseModel):
    """
    Numerical settings shared by the services, the CLI and the HTTP surface.

    Each field is read from the upper-case key of the same name
    (``ml_switch_radius`` <- ``ML_SWITCH_RADIUS``).
    """
    model_config = {"frozen": True}

    execution_mode: Literal["dev", "test", "prod", "cli"] = "dev"
    ml_series_terms_max: int = Field(default=400, ge=1)
    ml_asymptotic_terms: int = Field(default=5, ge=1)
    ml_switch_radius: float = Field(default=40.0, gt=0.0)
    ml_include_subdominant: bool = True
    char_series_rho_max: float = Field(default=8.0, gt=0.0)
    quad_abs_tol: float = Field(default=1e-14, gt=0.0)
    quad_rel_tol: float = Field(default=1e-12, gt=0.0)
    quad_max_subdivisions: int = Field(default=4000, ge=1)
    quad_order: int = Field(default=10, ge=2, le=64)
    quad_tail_checks: int = Field(default=3, ge=1)
    scan_samples_per_unit_rho: int = Field(default=64, ge=1)
    refine_tol: float = Field(default=1e-10, gt=0.0)
    jobs: int = Field(default=1, ge=1)
    precision: int = Field(default=6, ge=1, le=17)

    def ml_params(self, delta: float, theta: float) -> MLParams:
        """
        Builds Mittag-Leffler parameters carrying this evaluation policy.
        """
        return MLParams(
            delta=delta,
            theta=theta,
            series_terms_max=self.ml_series_terms_max,
            asymptotic_terms=self.ml_asymptotic_terms,
            switch_radius=self.ml_switch_radius,
            include_subdominant=self.ml_include_subdominant,
        )

    def quadrature(self) -> QuadratureConfig:
        return QuadratureConfig(
            abs_tol=self.quad_abs_tol,
            rel_tol=self.quad_rel_tol,
            max_subdivisions=self.quad_max_subdivisions,
            order=self.quad_order,
            semi_infinite_cutoff_policy=TailPolicy(checks=self.quad_tail_checks),
        )


def load_settings(config_path: Optional[str] = None, overrides: Optional[Mapping] = None) -> Settings:
    """
    Reads the settings.

    Precedence is overrides > environment > config file > ``.env`` /
    ``settings.ini`` > defaults.

    Parameters
    ----------
    config_path : str, optional
        ``key=value`` file. Falls back to the ``FSLP_CONFIG`` variable, which
        is ignored with a warning when it does not name a file.
    overrides : Mapping, optional
        Values taken from command-line flags. ``None`` entries are ignored.

    Returns
    -------
    Settings
        The validated settings.

    Raises
    ------
    DomainError
        If an explicit ``config_path`` cannot be read or a value is invalid.
    """
    path = config_path
    if not path:
        path = config(CONFIG_PATH_VARIABLE, default=None)
        if path and not Path(path).is_file():
            logger.warning(f"{CONFIG_PATH_VARIABLE}={path} is not a file; it is ignored.")
            path = None
    source = config
    if path:
        try:
            source = Config(RepositoryEnv(path))
        except OSError as e:
            raise DomainError(f"Cannot read config file '{path}': {e}") from e

    values = {}
    for name, field in Settings.model_fields.items():
        values[name] = source(name.upper(), default=field.default)
    for name, value in (overrides or {}).items():
        if value is not None:
            values[name] = value

    try:
        return Settings(**values)
    except ValidationError as e:
        error = e.errors()[0]
        location = ".".join(str(part) for part in error["loc"])
        raise DomainError(f"Invalid setting {location.upper()}: {error['msg']}") from e


def setup_logging(quiet: bool = False) -> None:
    """
    Applies the YAML logging configuration.

    Parameters
    ----------
    quiet : bool, optional
        Only warnings and errors of the ``app`` logger are shown.
    """
    with open(LOGGING_CONFIG_PATH, encoding="utf-8") as stream:
        logging.config.dictConfig(yaml.safe_load(stream))
    if quiet:
        logging.getLogger("app").setLevel(logging.WARNING)

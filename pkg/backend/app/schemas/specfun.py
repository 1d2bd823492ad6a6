# -*- coding: utf-8 -*-
"""
Schemas for special-function evaluation.

Defines the Mittag-Leffler parameter set together with its evaluation policy
(series truncation, asymptotic truncation order, branch switch radius) and the
sector angle used by the asymptotic expansion.
"""

import math
from typing import Optional

from pydantic import BaseModel, Field, model_validator


class MLParams(BaseModel):
    """
    Parameters of the two-parameter Mittag-Leffler function E_{delta,theta}.

    Attributes
    ----------
    delta : float
        First parameter, restricted to the real range (0, 2].
    theta : float
        Second parameter.
    series_terms_max : int
        Hard cap on the number of power-series terms.
    asymptotic_terms : int
        Truncation order of the algebraic part in ``ml_asymptotic``; ``ml``
        truncates optimally instead.
    switch_radius : float
        Largest ``|z|`` for which the power series is tried.
    include_subdominant : bool
        Keep every exponential sector term of the asymptotic expansion, not
        only the dominant ones. Required for ``delta`` close to 2.
    """
    model_config = {"frozen": True}

    delta: float = Field(gt=0.0, le=2.0)
    theta: float
    series_terms_max: int = Field(default=400, ge=1)
    asymptotic_terms: int = Field(default=5, ge=1)
    switch_radius: float = Field(default=40.0, gt=0.0)
    include_subdominant: bool = True

    @model_validator(mode="after")
    def validate_finite(self):
        if not (math.isfinite(self.delta) and math.isfinite(self.theta)):
            raise ValueError("delta and theta must be finite.")
        return self


class SectorAngle(BaseModel):
    """
    Sector half-angle ``mu`` of the asymptotic expansion.

    Exponential terms whose argument lies within ``mu`` of the real axis are
    treated as dominant.

    Attributes
    ----------
    delta : float
        The Mittag-Leffler ``delta`` this angle belongs to.
    mu : float
        Angle in the open interval (delta*pi/2, min(pi, delta*pi)).
    """
    model_config = {"frozen": True}

    delta: float = Field(gt=0.0, lt=2.0)
    mu: float

    @model_validator(mode="after")
    def validate_sector(self):
        lower, upper = SectorAngle.bounds(self.delta)
        if not lower < self.mu < upper:
            raise ValueError(
                f"mu={self.mu} must lie in ({lower}, {upper}) for delta={self.delta}."
            )
        return self

    @staticmethod
    def bounds(delta: float) -> tuple:
        return delta * math.pi / 2.0, min(math.pi, delta * math.pi)

    @classmethod
    def midpoint(cls, delta: float) -> Optional["SectorAngle"]:
        """
        Returns the sector angle halfway through the admissible interval, or
        None when the interval is empty (delta = 2).
        """
        if delta >= 2.0:
            return None
        lower, upper = cls.bounds(delta)
        return cls(delta=delta, mu=0.5 * (lower + upper))

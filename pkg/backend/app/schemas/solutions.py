# -*- coding: utf-8 -*-
"""
Schemas for the closed-form solution evaluators.
"""

from pydantic import BaseModel, field_validator, model_validator

from app.schemas.series import FractionalOrder


class Interval(BaseModel):
    """
    Closed interval [a, b] with a < b.
    """
    model_config = {"frozen": True}

    a: float = 0.0
    b: float = 1.0

    @model_validator(mode="after")
    def validate_order(self):
        if not self.a < self.b:
            raise ValueError(f"Interval endpoints must satisfy a < b (got a={self.a}, b={self.b}).")
        return self

    @property
    def length(self) -> float:
        return self.b - self.a


class Fe2Solution(BaseModel):
    """
    Boundary data of the general solution of the Riemann-Liouville/Caputo
    composition equation.

    Attributes
    ----------
    y_a : float
        Value of the solution at a.
    y_b : float
        Value of the solution at b.
    alpha : FractionalOrder
        Order, which must exceed 1/2 so that the second fundamental solution
        stays finite at b.
    interval : Interval
        The interval [a, b].
    """
    model_config = {"frozen": True}

    y_a: float
    y_b: float
    alpha: FractionalOrder
    interval: Interval = Interval()

    @field_validator("alpha", mode="before")
    def coerce_alpha(cls, value):
        if isinstance(value, (int, float)):
            return {"alpha": value}
        return value

    @field_validator("alpha")
    def validate_above_half(cls, value):
        if value.alpha <= 0.5:
            raise ValueError("The two-point solution needs alpha > 1/2.")
        return value

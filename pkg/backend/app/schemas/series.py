# -*- coding: utf-8 -*-
"""
Schemas for fractional orders and generalized power series.

A generalized power series is the finite sum

    sum_k c_k (t - a)^(mu + k*nu)      (left-sided, origin a)
    sum_k c_k (b - t)^(mu + k*nu)      (right-sided, origin b)

Every closed-form solution handled by the toolkit has this shape, which makes
the fractional power rules exact on it.
"""

import math
from enum import Enum
from typing import Tuple, Union

import numpy as np
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from app.exceptions import DomainError

# spectrum operations need alpha strictly inside (1/2, 1)
SPECTRUM_LOWER_GUARD = 0.5 + 1e-9
SPECTRUM_UPPER_GUARD = 1.0 - 1e-12

# exponents closer than this to 0 are treated as constant terms
ZERO_EXPONENT_TOL = 1e-12


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"


class FractionalOrder(BaseModel):
    """
    Validated fractional order alpha in (0, 1].

    alpha = 1 is accepted as the classical limit. Spectrum operations narrow
    the range further with ``require_spectrum``.

    Attributes
    ----------
    alpha : float
        The order.
    """
    model_config = {"frozen": True}

    alpha: float = Field(gt=0.0, le=1.0)

    @classmethod
    def of(cls, value: Union["FractionalOrder", float]) -> "FractionalOrder":
        """
        Coerces a float (or an existing order) into a ``FractionalOrder``.

        Raises
        ------
        DomainError
            If the value is not in (0, 1].
        """
        if isinstance(value, FractionalOrder):
            return value
        try:
            return cls(alpha=float(value))
        except (ValidationError, TypeError) as e:
            raise DomainError(f"Fractional order must lie in (0, 1], got {value!r}.") from e

    def require_above_half(self, inclusive_one: bool = True) -> "FractionalOrder":
        if self.alpha <= 0.5 or (not inclusive_one and self.alpha >= 1.0):
            upper = "1]" if inclusive_one else "1)"
            raise DomainError(f"alpha={self.alpha} must lie in (1/2, {upper}.")
        return self

    def require_spectrum(self) -> "FractionalOrder":
        if not SPECTRUM_LOWER_GUARD < self.alpha < SPECTRUM_UPPER_GUARD:
            raise DomainError(
                f"Spectrum computations need 1/2 < alpha < 1 (got alpha={self.alpha})."
            )
        return self


class GenPowerSeries(BaseModel):
    """
    Truncated generalized power series.

    Attributes
    ----------
    base : float
        Lowest exponent mu.
    step : float
        Exponent increment nu > 0.
    coefficients : tuple of float
        c_0 .. c_K.
    origin : float
        Expansion point (a for left series, b for right series).
    side : Side
        Whether the series is in powers of (t - a) or (b - t).

    Notes
    -----
    Leading zero coefficients are allowed, so a power-rule result can be built
    before it is trimmed. Every nonzero term must have exponent > -1 so that it
    stays integrable at the origin.
    """
    model_config = {"frozen": True}

    base: float
    step: float = Field(gt=0.0)
    coefficients: Tuple[float, ...]
    origin: float = 0.0
    side: Side = Side.LEFT

    @field_validator("coefficients")
    def validate_coefficients(cls, value):
        if len(value) == 0:
            raise ValueError("A series needs at least one coefficient.")
        if not all(math.isfinite(c) for c in value):
            raise ValueError("Series coefficients must be finite.")
        return value

    @model_validator(mode="after")
    def validate_integrable(self):
        for k, c in enumerate(self.coefficients):
            if c != 0.0 and self.base + k * self.step <= -1.0:
                raise ValueError(
                    f"Term {k} has exponent {self.base + k * self.step} <= -1 and is not integrable."
                )
        return self

    @classmethod
    def constant(cls, value: float, origin: float = 0.0, side: Side = Side.LEFT) -> "GenPowerSeries":
        return cls(base=0.0, step=1.0, coefficients=(float(value),), origin=origin, side=side)

    @classmethod
    def zero(cls, origin: float = 0.0, side: Side = Side.LEFT) -> "GenPowerSeries":
        return cls.constant(0.0, origin=origin, side=side)

    @property
    def exponents(self) -> np.ndarray:
        return self.base + self.step * np.arange(len(self.coefficients))

    @property
    def is_zero(self) -> bool:
        return all(c == 0.0 for c in self.coefficients)

    @property
    def is_constant(self) -> bool:
        """True when the only nonzero terms have exponent 0 (or there are none)."""
        return all(c == 0.0 or abs(e) < ZERO_EXPONENT_TOL for c, e in zip(self.coefficients, self.exponents))

    def lowest_exponent(self) -> float:
        """Exponent of the first nonzero term (``base`` for the zero series)."""
        for c, e in zip(self.coefficients, self.exponents):
            if c != 0.0:
                return float(e)
        return self.base

    def trimmed(self) -> "GenPowerSeries":
        """Drops leading zero coefficients, shifting ``base`` accordingly."""
        for k, c in enumerate(self.coefficients):
            if c != 0.0:
                if k == 0:
                    return self
                return self.model_copy(update={
                    "base": self.base + k * self.step,
                    "coefficients": self.coefficients[k:],
                })
        return GenPowerSeries.zero(origin=self.origin, side=self.side)

    def truncated(self, n_terms: int) -> "GenPowerSeries":
        if n_terms < 1:
            raise DomainError("A truncated series keeps at least one term.")
        return self.model_copy(update={"coefficients": self.coefficients[:n_terms]})

    def scaled(self, factor: float) -> "GenPowerSeries":
        return self.model_copy(update={"coefficients": tuple(factor * c for c in self.coefficients)})

    def distance(self, t):
        """Returns t - a for left series and b - t for right series."""
        t = np.asarray(t, dtype=float)
        return t - self.origin if self.side is Side.LEFT else self.origin - t

    def evaluate(self, t):
        """
        Evaluates the series at ``t`` (scalar or array).

        Raises
        ------
        DomainError
            If ``t`` lies on the wrong side of the origin.
        """
        x = self.distance(t)
        if np.any(x < 0.0):
            raise DomainError(f"Series around {self.origin} ({self.side.value}) evaluated outside its domain.")
        with np.errstate(invalid="ignore", divide="ignore"):
            powers = np.power.outer(x, self.exponents) if x.ndim else x ** self.exponents
            # 0 * inf at t = origin only occurs for zero coefficients
            terms = np.where(np.asarray(self.coefficients) == 0.0, 0.0, powers * np.asarray(self.coefficients))
        value = terms.sum(axis=-1)
        return float(value) if np.ndim(value) == 0 else value

    def derivative(self) -> "GenPowerSeries":
        """
        Classical termwise derivative d/dt. Exponent-zero terms vanish.
        """
        sign = 1.0 if self.side is Side.LEFT else -1.0
        coefficients = tuple(
            0.0 if abs(e) < ZERO_EXPONENT_TOL else sign * c * float(e)
            for c, e in zip(self.coefficients, self.exponents)
        )
        result = GenPowerSeries(
            base=self.base - 1.0, step=self.step, coefficients=coefficients,
            origin=self.origin, side=self.side,
        )
        return result.trimmed()

    def tail_bound(self, t: float) -> float:
        """Magnitude of the last retained term at ``t``."""
        x = float(self.distance(t))
        exponent = self.base + (len(self.coefficients) - 1) * self.step
        return abs(self.coefficients[-1]) * x ** exponent

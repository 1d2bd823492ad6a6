# -*- coding: utf-8 -*-
"""
Schemas for eigenvalue brackets and spectrum reports.

Field names and aliases of these models are the JSON field names emitted by
the command line and the HTTP endpoints.
"""

from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class EigenvalueBracket(BaseModel):
    """
    A lambda-interval on which the oscillatory part of the characteristic
    function is negative, together with its image under the 2*alpha-th root.

    Attributes
    ----------
    n : int
        Index of the interval.
    lambda_lo, lambda_hi : float
        Endpoints in lambda.
    rho_lo, rho_hi : float
        Endpoints in rho = lambda^(1/(2 alpha)).
    """
    model_config = {"frozen": True}

    n: int = Field(ge=0)
    lambda_lo: float = Field(gt=0.0)
    lambda_hi: float = Field(gt=0.0)
    rho_lo: float = Field(gt=0.0)
    rho_hi: float = Field(gt=0.0)

    @model_validator(mode="after")
    def validate_order(self):
        if not (self.lambda_lo < self.lambda_hi and self.rho_lo < self.rho_hi):
            raise ValueError("Bracket endpoints must be increasing.")
        return self

    def contains(self, lam: float) -> bool:
        return self.lambda_lo < lam < self.lambda_hi


class Eigenvalue(BaseModel):
    """
    A refined real eigenvalue.

    Attributes
    ----------
    value : float
        The eigenvalue (serialized as ``lambda``).
    residual : float
        ``|E_{2 alpha,2}(-lambda)|`` at the returned value.
    bracket : int
        Index of the bracket that contains it.
    """
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    value: float = Field(alias="lambda")
    residual: float = Field(ge=0.0)
    bracket: int = Field(ge=0)


class NStarResult(BaseModel):
    """
    Outcome of the N* search.

    Attributes
    ----------
    n_star : int
        Number of intervals contributing two eigenvalues each.
    tie_flagged : bool
        True when the decisive comparison was a numerical tie.
    persistent : bool
        True when the inequality held again at the following odd extrema.
    warnings : list of str
        Human-readable notes on ties and persistence failures.
    """
    n_star: int = Field(ge=0)
    tie_flagged: bool = False
    persistent: bool = True
    warnings: List[str] = []


class SpectrumReport(BaseModel):
    """
    Real spectrum summary for one fractional order.

    Attributes
    ----------
    alpha : float
        The order.
    n_star : int
        Number of negative-g intervals holding eigenvalues.
    eigen_count : int
        ``2 * n_star``.
    brackets : list of EigenvalueBracket
        Intervals I_0 .. I_{N*-1}.
    first_bracket, last_bracket : EigenvalueBracket or None
        I_0 and I_{N*-1}; absent when there are no eigenvalues.
    eigenvalues : list of Eigenvalue
        Refined eigenvalues, when refinement was requested.
    oracle_count : int
        Number of sign changes found by the independent sign scan.
    oracle_agrees : bool
        ``oracle_count == eigen_count``.
    warnings : list of str
        Notes from the N* search and the refinement.
    """
    model_config = ConfigDict(populate_by_name=True)

    alpha: float
    n_star: int = Field(ge=0)
    eigen_count: int = Field(ge=0)
    brackets: List[EigenvalueBracket] = []
    first_bracket: Optional[EigenvalueBracket] = None
    last_bracket: Optional[EigenvalueBracket] = None
    eigenvalues: List[Eigenvalue] = []
    oracle_count: int = Field(ge=0)
    oracle_agrees: bool
    warnings: List[str] = []

    @model_validator(mode="after")
    def validate_count(self):
        if self.eigen_count != 2 * self.n_star:
            raise ValueError("eigen_count must equal 2 * n_star.")
        return self

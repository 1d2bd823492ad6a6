# -*- coding: utf-8 -*-
"""
Schemas for emitted documents (command line and HTTP).
"""

from enum import Enum
from typing import Optional

from pydantic import BaseModel


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"
    TABLE = "table"


class Table1Row(BaseModel):
    """
    One row of the eigenvalue-count table.

    Interval fields are None when the order has no real eigenvalues.
    """
    alpha: float
    eigen_count: int
    I0_lo: Optional[float] = None
    I0_hi: Optional[float] = None
    Ilast_lo: Optional[float] = None
    Ilast_hi: Optional[float] = None
    oracle_agrees: bool


TABLE1_COLUMNS = ("alpha", "eigen_count", "I0_lo", "I0_hi", "Ilast_lo", "Ilast_hi", "oracle_agrees")

# orders of the published eigenvalue-count table, in its row order
TABLE1_ALPHAS = (
    0.78, 0.80, 0.82, 0.84, 0.86, 0.88, 0.90, 0.92, 0.94, 0.96,
    0.98, 0.981, 0.982, 0.983, 0.984, 0.985, 0.989, 0.9898,
)

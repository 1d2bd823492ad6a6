# -*- coding: utf-8 -*-
"""
This script samples the fundamental solution sets of the three model
equations and writes them as CSV files in the current directory.
"""
import numpy as np

from app.config import load_settings, setup_logging
from app.schemas.solutions import Interval
from app.services.report import ReportService
from app.services.solutions import FSS_COLUMNS, SolutionsService

setup_logging()
settings = load_settings()
interval = Interval(a=1.0, b=3.0)
alpha = 0.8

jobs = {
    "fe1": (interval, np.linspace(1.0, 3.0, 41), None),
    "fe2": (interval, np.linspace(1.0, 3.0, 41), None),
    "fe3": (Interval(a=0.0, b=10.0), np.linspace(0.0, 10.0, 101), 20.0),
}
for equation, (domain, grid, lam) in jobs.items():
    rows = SolutionsService.sample_fss(equation, alpha, domain, grid, lam=lam, settings=settings)
    with open(f"{equation}_alpha{alpha}.csv", "w", encoding="utf-8") as stream:
        stream.write(ReportService.to_csv(rows, FSS_COLUMNS[equation], settings.precision))
    print(f"{equation}: {len(rows)} rows written.")

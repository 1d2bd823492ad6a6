# -*- coding: utf-8 -*-
"""
Functional tests for the HTTP endpoints.

The route functions are called directly with explicit settings, the way
FastAPI calls them after resolving their dependencies.
"""

import math
from unittest.mock import patch

import pytest
from fastapi import HTTPException

from app.exceptions import AccuracyError
from app.main import root
from app.routers.solutions import get_fss
from app.routers.specfun import get_gamma, get_ml
from app.routers.spectrum import get_report, get_table1
from app.services.spectrum import SpectrumService


def test_root():
    """
    Tests the health-check endpoint.
    """
    assert "running" in root()["message"]


def test_gamma_endpoint():
    """
    Tests `/specfun/gamma`.

    Assertions
    ----------
    - Gamma(5) = 24.
    - A pole gives status 400 and an overflow status 500.
    """
    assert get_gamma(5.0)["value"] == pytest.approx(24.0, rel=1e-14)
    with pytest.raises(HTTPException) as error:
        get_gamma(-2.0)
    assert error.value.status_code == 400
    with pytest.raises(HTTPException) as error:
        get_gamma(200.0)
    assert error.value.status_code == 500


def test_ml_endpoint(settings):
    """
    Tests `/specfun/ml`.

    Assertions
    ----------
    - E_{2,1}(-4) = cos(2) with the series branch.
    - delta outside (0, 2] gives status 400.
    """
    payload = get_ml(2.0, 1.0, -4.0, settings=settings)
    assert payload["value"] == pytest.approx(math.cos(2.0), abs=1e-13)
    assert payload["branch"] == "series"
    with pytest.raises(HTTPException) as error:
        get_ml(0.0, 1.0, 1.0, settings=settings)
    assert error.value.status_code == 400


def test_report_endpoint(settings):
    """
    Tests `/spectrum/report`.

    Assertions
    ----------
    - alpha = 0.86 has N* = 2 and no refined eigenvalues by default.
    - With refinement the four eigenvalues lie in their brackets.
    - alpha outside (1/2, 1) gives status 400.
    """
    report = get_report(0.86, settings=settings)
    assert report.n_star == 2 and report.eigenvalues == []

    refined = get_report(0.86, refine=True, settings=settings)
    assert len(refined.eigenvalues) == 4
    for eig in refined.eigenvalues:
        assert refined.brackets[eig.bracket].contains(eig.value)

    with pytest.raises(HTTPException) as error:
        get_report(0.5, settings=settings)
    assert error.value.status_code == 400


def test_report_endpoint_failure(settings):
    """
    Tests that a failed computation gives status 500.
    """
    with patch.object(SpectrumService, "spectrum_report", side_effect=AccuracyError("series did not converge")):
        with pytest.raises(HTTPException) as error:
            get_report(0.9, settings=settings)
    assert error.value.status_code == 500
    assert "series did not converge" in error.value.detail


def test_table1_endpoint(settings):
    """
    Tests `/spectrum/table1`.

    Assertions
    ----------
    - Rows come back in request order with the published counts.
    - An invalid order gives status 400.
    """
    rows = get_table1(alpha=[0.84, 0.78], settings=settings)
    assert [(row.alpha, row.eigen_count) for row in rows] == [(0.84, 2), (0.78, 0)]
    assert rows[1].I0_lo is None
    with pytest.raises(HTTPException) as error:
        get_table1(alpha=[0.9, 1.5], settings=settings)
    assert error.value.status_code == 400


def test_fss_endpoint(settings):
    """
    Tests `/solutions/fss`.

    Assertions
    ----------
    - fe2 rows carry psi, with psi(a) = 0.
    - fe3 at alpha = 1 matches (cos(sqrt(lambda) t), sin(sqrt(lambda) t)/sqrt(lambda)).
    - Too few points or an unknown equation give status 400.
    """
    rows = get_fss("fe2", 0.8, 0.0, 1.0, 3, settings=settings)
    assert [row["t"] for row in rows] == [0.0, 0.5, 1.0]
    assert rows[0]["psi"] == 0.0

    rows = get_fss("fe3", 1.0, 0.0, 2.0, 5, lam=4.0, settings=settings)
    for row in rows:
        assert row["y1"] == pytest.approx(math.cos(2.0 * row["t"]), abs=1e-12)
        assert row["y2"] == pytest.approx(math.sin(2.0 * row["t"]) / 2.0, abs=1e-12)

    for equation, count in (("fe2", 1), ("fe9", 3)):
        with pytest.raises(HTTPException) as error:
            get_fss(equation, 0.8, 0.0, 1.0, count, settings=settings)
        assert error.value.status_code == 400

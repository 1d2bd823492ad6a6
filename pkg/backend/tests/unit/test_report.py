# -*- coding: utf-8 -*-
"""
Unit tests for document formatting.
"""

import csv
import io
import json

import pytest

from app.schemas.output import TABLE1_COLUMNS, OutputFormat, Table1Row
from app.schemas.spectrum import Eigenvalue, EigenvalueBracket, SpectrumReport
from app.services.report import ReportService


@pytest.fixture
def report():
    """
    A small hand-built report with two refined eigenvalues.
    """
    bracket = EigenvalueBracket(n=0, lambda_lo=8.8, lambda_hi=29.8, rho_lo=3.36728, rho_hi=6.55734)
    return SpectrumReport(
        alpha=0.9,
        n_star=1,
        eigen_count=2,
        brackets=[bracket],
        first_bracket=bracket,
        last_bracket=bracket,
        eigenvalues=[
            Eigenvalue(value=10.5, residual=1e-13, bracket=0),
            Eigenvalue(value=27.25, residual=2e-13, bracket=0),
        ],
        oracle_count=2,
        oracle_agrees=True,
    )


def test_format_number():
    """
    Validates the cell formatting rules.

    Assertions
    ----------
    - None is an empty cell, booleans are lower case, integers stay exact.
    - Reals use the requested number of significant digits.
    """
    assert ReportService.format_number(None) == ""
    assert ReportService.format_number(True) == "true"
    assert ReportService.format_number(120) == "120"
    assert ReportService.format_number(3.3672812345) == "3.36728"
    assert ReportService.format_number(3.3672812345, precision=3) == "3.37"


def test_format_alpha():
    """
    Validates that orders keep at least two decimals.
    """
    assert ReportService.format_alpha(0.9) == "0.90"
    assert ReportService.format_alpha(0.981) == "0.981"
    assert ReportService.format_alpha(0.9898) == "0.9898"


def test_table1_row(report):
    """
    Validates the reduction of a report to its table row.

    Assertions
    ----------
    - The rho endpoints of the first and last brackets are carried over.
    - A report without brackets leaves the interval cells empty.
    """
    row = ReportService.table1_row(report)
    assert row.eigen_count == 2
    assert (row.I0_lo, row.I0_hi) == (3.36728, 6.55734)
    assert (row.Ilast_lo, row.Ilast_hi) == (3.36728, 6.55734)

    empty = SpectrumReport(alpha=0.78, n_star=0, eigen_count=0, oracle_count=0, oracle_agrees=True)
    text = ReportService.render_table1([empty], OutputFormat.CSV)
    lines = text.splitlines()
    assert lines[0] == ",".join(TABLE1_COLUMNS)
    assert lines[1] == "0.78,0,,,,,true"


def test_to_csv(report):
    """
    Validates the CSV document.

    Assertions
    ----------
    - Header line followed by one line per row, ``\\n`` line endings.
    """
    rows = [{"t": 0.5, "psi": 1.25}, {"t": 1.0, "psi": None}]
    text = ReportService.to_csv(rows, ("t", "psi"))
    assert text == "t,psi\n0.5,1.25\n1,\n"


def test_table1_csv_round_trip(report):
    """
    Validates that a CSV table read back into rows renders to the same bytes.

    Assertions
    ----------
    - Parsing the document with ``csv`` and rendering the typed rows again
      reproduces it exactly, including empty interval cells and booleans.
    """
    empty = SpectrumReport(alpha=0.78, n_star=0, eigen_count=0, oracle_count=0, oracle_agrees=True)
    text = ReportService.render_table1([empty, report], OutputFormat.CSV)
    parsed = [
        Table1Row(**{key: (cell if cell != "" else None) for key, cell in row.items()})
        for row in csv.DictReader(io.StringIO(text))
    ]
    assert [row.alpha for row in parsed] == [0.78, 0.9]
    assert ReportService.render(parsed, TABLE1_COLUMNS, OutputFormat.CSV) == text

    rows = [{"t": 0.0, "y1": None, "y2": -3.3e-12}, {"t": 0.25, "y1": 1.2345678912, "y2": 2.5e8}]
    text = ReportService.to_csv(rows, ("t", "y1", "y2"))
    assert ReportService.to_csv(list(csv.DictReader(io.StringIO(text))), ("t", "y1", "y2")) == text


def test_to_json_uses_aliases(report):
    """
    Validates the JSON document of a report.

    Assertions
    ----------
    - Eigenvalues are serialized under ``lambda``.
    - Every report field is present.
    """
    payload = json.loads(ReportService.render_report(report, OutputFormat.JSON))
    assert [eig["lambda"] for eig in payload["eigenvalues"]] == [10.5, 27.25]
    assert payload["n_star"] == 1
    assert payload["oracle_agrees"] is True
    assert payload["first_bracket"]["rho_lo"] == 3.36728


def test_render_report_csv(report):
    """
    Validates the CSV rendering of a report.

    Assertions
    ----------
    - A summary comment line precedes the eigenvalue rows.
    - rho = lambda^(1/(2 alpha)) is added to each row.
    """
    text = ReportService.render_report(report, OutputFormat.CSV)
    summary, body = text.split("\n", 1)
    assert summary.startswith("# alpha=0.90 n_star=1 eigen_count=2")
    rows = list(csv.DictReader(io.StringIO(body)))
    assert [row["bracket"] for row in rows] == ["0", "0"]
    assert float(rows[0]["rho"]) == pytest.approx(10.5 ** (1.0 / 1.8), rel=1e-5)


def test_render_report_lists_brackets_without_refinement(report):
    """
    Validates that an unrefined report lists its brackets.
    """
    unrefined = report.model_copy(update={"eigenvalues": []})
    text = ReportService.render_report(unrefined, OutputFormat.TABLE)
    assert "lambda_lo" in text.splitlines()[1]
    assert "3.36728" in text

# -*- coding: utf-8 -*-
"""
Functional tests for the command line.

Each test runs ``main`` in-process and checks the document written to
stdout and the exit status.
"""

import csv
import io
import json
import math
from unittest.mock import patch

import pytest

from app.cli import main, parse_grid, parse_interval
from app.exceptions import BracketError, DomainError
from app.schemas.output import TABLE1_ALPHAS, TABLE1_COLUMNS
from app.services.report import ReportService
from app.services.spectrum import SpectrumService


def _run(capsys, *argv):
    status = main(["--quiet" if arg == "QUIET" else arg for arg in argv])
    captured = capsys.readouterr()
    return status, captured.out, captured.err


def test_ml_command_json(capsys):
    """
    Tests ``ml`` with JSON output.

    Assertions
    ----------
    - Exit status 0.
    - E_{1,1}(-5) = exp(-5), computed with the series.
    """
    status, out, _ = _run(capsys, "ml", "--delta", "1", "--theta", "1", "--z", "-5", "--format", "json", "QUIET")
    assert status == 0
    (row,) = json.loads(out)
    assert row["value"] == pytest.approx(math.exp(-5.0), abs=1e-12)
    assert row["branch"] == "series"


def test_fss_command_defaults_to_csv(capsys):
    """
    Tests ``fss`` for the first model equation.

    Assertions
    ----------
    - CSV header t,y1,y2 and one line per grid point.
    - The left endpoint is outside the domain and its cells are empty.
    - y2(t) = t^alpha / Gamma(alpha + 1).
    """
    status, out, _ = _run(
        capsys, "fss", "--equation", "fe1", "--alpha", "0.8", "--interval", "0:1", "--grid", "0:1:5", "QUIET",
    )
    assert status == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 5
    assert list(rows[0]) == ["t", "y1", "y2"]
    assert rows[0]["y1"] == "" and rows[0]["y2"] == ""
    assert float(rows[1]["y2"]) == pytest.approx(0.25 ** 0.8 / math.gamma(1.8), rel=1e-5)


def test_table1_command(capsys):
    """
    Tests ``table1`` for a single order.

    Assertions
    ----------
    - The row for alpha = 0.9 has 8 eigenvalues, I_0 starting at rho = 3.36728,
      and the oracle agrees.
    """
    status, out, _ = _run(capsys, "table1", "--alpha", "0.9", "--format", "csv", "QUIET")
    assert status == 0
    (row,) = list(csv.DictReader(io.StringIO(out)))
    assert row["alpha"] == "0.90"
    assert row["eigen_count"] == "8"
    assert float(row["I0_lo"]) == pytest.approx(3.36728, rel=1e-6)
    assert row["oracle_agrees"] == "true"


def test_table1_command_defaults_to_every_order(capsys):
    """
    Tests ``table1`` without order or format options.

    Assertions
    ----------
    - An aligned table with a header, a rule and one row per published
      order, in table order, each confirmed by the oracle.
    """
    status, out, _ = _run(capsys, "table1", "QUIET")
    assert status == 0
    lines = out.splitlines()
    assert len(lines) == 2 + len(TABLE1_ALPHAS) == 20
    assert lines[0].split() == list(TABLE1_COLUMNS)
    assert [line.split()[0] for line in lines[2:]] == [ReportService.format_alpha(a) for a in TABLE1_ALPHAS]
    assert all(line.split()[-1] == "true" for line in lines[2:])


def test_eig_command_json(capsys):
    """
    Tests ``eig`` with partial refinement.

    Assertions
    ----------
    - The JSON report has N* = 4, two refined eigenvalues and a warning
      about the partial refinement.
    """
    status, out, _ = _run(capsys, "eig", "--alpha", "0.9", "--max-refined", "2", "--format", "json", "QUIET")
    assert status == 0
    report = json.loads(out)
    assert report["n_star"] == 4
    assert len(report["eigenvalues"]) == 2
    assert all("lambda" in eig for eig in report["eigenvalues"])
    assert any("Only the first 2 of 4" in warning for warning in report["warnings"])


@pytest.mark.parametrize(
    "argv",
    [
        ("eig", "--alpha", "0.4"),
        ("eig", "--alpha", "1.0"),
        ("fss", "--equation", "fe1", "--alpha", "0.8", "--grid", "0:1:1"),
        ("fss", "--equation", "fe3", "--alpha", "0.8", "--grid", "0:1:3"),
        ("ml", "--delta", "2.5", "--theta", "1", "--z", "1"),
        ("ml", "--delta", "1", "--theta", "1", "--z", "1", "--config", "/nonexistent/fslp.ini"),
    ],
)
def test_domain_errors_exit_with_status_2(capsys, argv):
    """
    Tests the exit status of invalid arguments.

    Assertions
    ----------
    - Exit status 2, nothing on stdout and a one-line diagnostic on stderr.
    """
    status, out, err = _run(capsys, *argv, "QUIET")
    assert status == 2
    assert out == ""
    assert err.startswith("error: ")


def test_usage_errors_exit_with_status_2(capsys):
    """
    Tests argparse failures (missing required option, unknown command).
    """
    assert _run(capsys, "eig")[0] == 2
    assert _run(capsys, "spectrum")[0] == 2


def test_computation_failure_exits_with_status_1(capsys):
    """
    Tests the exit status of a failed computation.

    Assertions
    ----------
    - A BracketError raised by the spectrum report gives exit status 1 and
      its message on stderr.
    """
    with patch.object(SpectrumService, "spectrum_report", side_effect=BracketError("no sign change in I_3")):
        status, out, err = _run(capsys, "eig", "--alpha", "0.9", "QUIET")
    assert status == 1
    assert out == ""
    assert "no sign change in I_3" in err


def test_parse_helpers():
    """
    Tests the interval and grid parsers.

    Assertions
    ----------
    - ``a:b`` and ``start:end:count`` are parsed.
    - Malformed text raises DomainError; reversed endpoints raise ValueError.
    """
    interval = parse_interval("1:3")
    assert (interval.a, interval.b) == (1.0, 3.0)
    grid = parse_grid("0:2:5")
    assert list(grid) == [0.0, 0.5, 1.0, 1.5, 2.0]
    with pytest.raises(DomainError):
        parse_interval("1-3")
    with pytest.raises(DomainError):
        parse_grid("0:1")
    with pytest.raises(ValueError):
        parse_interval("3:1")

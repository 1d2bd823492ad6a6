# -*- coding: utf-8 -*-
"""
Service layer for emitted documents: eigenvalue-count rows, CSV, JSON and
aligned text tables shared by the command line and the example scripts.
"""

import csv
import io
import logging
from typing import Any, Iterable, List, Mapping, Sequence

import numpy as np
from pydantic import BaseModel, TypeAdapter

from app.schemas.output import TABLE1_COLUMNS, OutputFormat, Table1Row
from app.schemas.spectrum import SpectrumReport

logger = logging.getLogger(__name__)

_json_adapter = TypeAdapter(Any)


class ReportService:
    """
    Service class for formatting results.
    """

    @staticmethod
    def format_number(value, precision: int = 6) -> str:
        """
        Significant-digit formatting; None becomes an empty cell.
        """
        if value is None:
            return ""
        if isinstance(value, bool):
            return "true" if value else "false"
        if isinstance(value, (int, np.integer)):
            return str(int(value))
        return f"{float(value):.{precision}g}"

    @staticmethod
    def format_alpha(alpha: float) -> str:
        """
        Shortest representation with at least two decimals (0.9 -> "0.90").
        """
        return np.format_float_positional(float(alpha), min_digits=2)

    @staticmethod
    def table1_row(report: SpectrumReport) -> Table1Row:
        """
        Reduces a report to its eigenvalue-count row (rho endpoints of I_0 and I_{N*-1}).
        """
        first, last = report.first_bracket, report.last_bracket
        return Table1Row(
            alpha=report.alpha,
            eigen_count=report.eigen_count,
            I0_lo=first.rho_lo if first else None,
            I0_hi=first.rho_hi if first else None,
            Ilast_lo=last.rho_lo if last else None,
            Ilast_hi=last.rho_hi if last else None,
            oracle_agrees=report.oracle_agrees,
        )

    @staticmethod
    def _cells(row: Mapping, columns: Sequence[str], precision: int) -> List[str]:
        cells = []
        for column in columns:
            value = row.get(column)
            if column == "alpha" and value is not None:
                cells.append(ReportService.format_alpha(value))
            elif isinstance(value, str):
                cells.append(value)
            else:
                cells.append(ReportService.format_number(value, precision))
        return cells

    @staticmethod
    def _as_mapping(row) -> Mapping:
        return row.model_dump(by_alias=True) if isinstance(row, BaseModel) else row

    @staticmethod
    def to_csv(rows: Iterable, columns: Sequence[str], precision: int = 6) -> str:
        """
        CSV document with a header line; ``\\n`` line endings.
        """
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow(ReportService._cells(ReportService._as_mapping(row), columns, precision))
        return buffer.getvalue()

    @staticmethod
    def to_table(rows: Iterable, columns: Sequence[str], precision: int = 6) -> str:
        """
        Right-aligned plain-text table.
        """
        body = [ReportService._cells(ReportService._as_mapping(row), columns, precision) for row in rows]
        widths = [max(len(column), *(len(cells[i]) for cells in body)) if body else len(column)
                  for i, column in enumerate(columns)]
        lines = ["  ".join(column.rjust(w) for column, w in zip(columns, widths))]
        lines.append("  ".join("-" * w for w in widths))
        lines.extend("  ".join(cell.rjust(w) for cell, w in zip(cells, widths)) for cells in body)
        return "\n".join(lines) + "\n"

    @staticmethod
    def to_json(payload) -> str:
        """
        JSON document; pydantic models are dumped with their aliases.
        """
        return _json_adapter.dump_json(payload, indent=2, by_alias=True).decode("utf-8") + "\n"

    @staticmethod
    def render(rows: Sequence, columns: Sequence[str], fmt: OutputFormat, precision: int = 6) -> str:
        """
        Renders ``rows`` in the requested format.
        """
        fmt = OutputFormat(fmt)
        if fmt is OutputFormat.CSV:
            return ReportService.to_csv(rows, columns, precision)
        if fmt is OutputFormat.JSON:
            return ReportService.to_json([ReportService._as_mapping(row) for row in rows])
        return ReportService.to_table(rows, columns, precision)

    @staticmethod
    def render_table1(reports: Sequence[SpectrumReport], fmt: OutputFormat, precision: int = 6) -> str:
        rows = [ReportService.table1_row(report) for report in reports]
        return ReportService.render(rows, TABLE1_COLUMNS, fmt, precision)

    @staticmethod
    def render_report(report: SpectrumReport, fmt: OutputFormat, precision: int = 6) -> str:
        """
        Full serialization of one spectrum report.

        JSON carries every field; CSV and table list the eigenvalues when
        they were refined and the brackets otherwise.
        """
        fmt = OutputFormat(fmt)
        if fmt is OutputFormat.JSON:
            return ReportService.to_json(report)
        if report.eigenvalues:
            rows = [eig.model_dump(by_alias=True) for eig in report.eigenvalues]
            for row in rows:
                row["rho"] = row["lambda"] ** (0.5 / report.alpha)
            columns = ("bracket", "lambda", "rho", "residual")
        else:
            rows = [bracket.model_dump() for bracket in report.brackets]
            columns = ("n", "lambda_lo", "lambda_hi", "rho_lo", "rho_hi")
        summary = (
            f"# alpha={ReportService.format_alpha(report.alpha)} n_star={report.n_star} "
            f"eigen_count={report.eigen_count} oracle_count={report.oracle_count} "
            f"oracle_agrees={ReportService.format_number(report.oracle_agrees)}\n"
        )
        return summary + ReportService.render(rows, columns, fmt, precision)

"""Writers for report tables and audit exports."""

from __future__ import annotations

import csv
import io

from ..constants import TABLE_DECIMALS
from ..models.report import QESPolyReport, RootClass, RootReport, SolveResult
from ..models.run import OutputFormat
from ..services.orthopoly import OrthoBasis
from ..services.transfer import TransferSystem
from ..services.weights import MomentTable

__all__ = [
    "ReportWriter",
    "basis_csv",
    "moments_csv",
    "quantizer_csv",
    "quantizer_json",
    "transfer_csv",
]

_CSV_HEADER = ("N", "level", "energy", "class")


class ReportWriter:
    """Renders solve results as CSV, JSON or a pretty table.

    Parameters
    ----------
    output
        Format to write.
    decimals
        Decimals shown for energies in the pretty table.
    """

    def __init__(
        self, output: OutputFormat, decimals: int = TABLE_DECIMALS
    ) -> None:
        self._output = output
        self._decimals = decimals

    def render(self, result: SolveResult) -> str:
        """Render a solve result in the configured format."""
        match self._output:
            case OutputFormat.csv:
                return self.to_csv(result.report)
            case OutputFormat.json:
                return self.to_json(result)
            case OutputFormat.pretty:
                return self.to_pretty(result.report)

    def to_csv(self, report: RootReport) -> str:
        """One row per root with full-precision energies.

        Convergence deltas are only carried by the JSON document.
        """
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(_CSV_HEADER)
        for N in report.orders():
            for entry in report.roots_at(N):
                writer.writerow(
                    (
                        entry.N,
                        entry.level,
                        entry.energy,
                        entry.classification.value,
                    )
                )
        return buffer.getvalue()

    def to_json(self, result: SolveResult) -> str:
        """Versioned JSON document."""
        return result.json(by_alias=True, indent=2) + "\n"

    def to_pretty(self, report: RootReport) -> str:
        """Table with one row per order and roots in ascending columns.

        QES-exact roots are marked with a star.
        """
        rows = []
        for N in report.orders():
            cells = []
            for entry in report.roots_at(N):
                cell = f"{entry.value:.{self._decimals}f}"
                if entry.classification == RootClass.qes_exact:
                    cell += "*"
                cells.append(cell)
            rows.append((str(N), cells))
        columns = max((len(c) for _, c in rows), default=0)
        header = ["N"] + [f"E{i}" for i in range(columns)]
        table = [header] + [
            [n, *cells, *([""] * (columns - len(cells)))] for n, cells in rows
        ]
        widths = [
            max(len(cell) for cell in column)
            for column in zip(*table, strict=True)
        ]
        lines = [
            "  ".join(c.rjust(w) for c, w in zip(row, widths, strict=True))
            for row in table
        ]
        title = (
            f"{report.representation.value} {report.mode.value}"
            f" digits={report.digits} window=[{report.window[0]},"
            f" {report.window[1]}]"
        )
        return "\n".join([title, *lines]) + "\n"


def moments_csv(table: MomentTable) -> str:
    """Moment table as ``rho,value`` rows."""
    fmt = table.precision.format
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(("rho", "value"))
    for rho, value in enumerate(table.values):
        writer.writerow((rho, fmt(value)))
    return buffer.getvalue()


def basis_csv(basis: OrthoBasis) -> str:
    """Orthonormal coefficients Ξ_i^{(j)} as ``j,i,xi`` rows."""
    fmt = basis.moments.precision.format
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(("j", "i", "xi"))
    for j, row in enumerate(basis.xi):
        for i, value in enumerate(row):
            writer.writerow((j, i, fmt(value)))
    return buffer.getvalue()


def transfer_csv(transfer: TransferSystem) -> str:
    """Transfer polynomials as ``rho,ell,degree,coefficients...`` rows.

    Coefficients are in ascending powers of E.
    """
    fmt = transfer.recursion.precision.format
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(("rho", "ell", "degree", "coefficients"))
    for rho, row in enumerate(transfer.entries):
        for ell, poly in zip(transfer.columns, row, strict=True):
            coefficients = [fmt(c) for c in poly.coefficients]
            writer.writerow((rho, ell, poly.degree, *coefficients))
    return buffer.getvalue()


def quantizer_csv(report: QESPolyReport) -> str:
    """Quantizer coefficients and roots as ``kind,index,value`` rows."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(("kind", "index", "value"))
    for k, value in enumerate(report.coefficients):
        writer.writerow(("coefficient", k, value))
    for k, value in enumerate(report.roots):
        writer.writerow(("root", k, value))
    return buffer.getvalue()


def quantizer_json(report: QESPolyReport) -> str:
    """Quantizer report as a versioned JSON document."""
    return report.json(by_alias=True, indent=2) + "\n"

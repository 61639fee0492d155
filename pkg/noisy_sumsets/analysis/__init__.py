"""Report assembly for noisy-sumsets."""

from .report import CSV_COLUMNS, ReportEnvelope, rows_to_csv, rows_to_frame, summarize_rows, write_rows

__all__ = [
    "CSV_COLUMNS",
    "ReportEnvelope",
    "rows_to_frame",
    "rows_to_csv",
    "write_rows",
    "summarize_rows",
]

"""Formatters for the verify-paper report."""

from pathlib import Path
from typing import List

import pandas as pd

from defcol.reporting.report_config import ReportConfig
from defcol.reporting.report_data import ReportData


class ReportFormatter:
    def __init__(self, config: ReportConfig):
        self.config = config

    @staticmethod
    def _status(passed: bool) -> str:
        return "PASS" if passed else "FAIL"

    def summary(self, data: ReportData) -> str:
        total = len(data.rows_df)
        failed = len(data.failed)
        return f"{total - failed} of {total} rows passed ({data.metadata.get('mode', '')} mode)"

    def format_lines(self, data: ReportData) -> List[str]:
        """Tab-separated rows for stdout, followed by a '#' summary line; timing is left out."""
        lines = []
        for row in data.rows_df.itertuples(index=False):
            lines.append("\t".join([row.claim_id, row.instance, row.expected, row.computed,
                                    self._status(row.passed)]))
        lines.append(f"# {self.summary(data)}")
        return lines

    def _display_table(self, data: ReportData) -> pd.DataFrame:
        df = data.rows_df.copy()
        df.insert(0, "Claim", [self.config.display_name(name) for name in df["claim_id"]])
        df["passed"] = df["passed"].map(self._status)
        return df.rename(columns={
            "claim_id": "Id",
            "instance": "Instance",
            "expected": "Expected",
            "computed": "Computed",
            "passed": "Status",
        })

    def write_txt(self, data: ReportData, output_path: Path) -> None:
        table = self._display_table(data)
        with open(output_path, "w") as f:
            f.write("defcol verify-paper report\n")
            for key, value in data.metadata.items():
                f.write(f"{key}: {value}\n")
            f.write("\n")
            f.write(table.to_string(index=False) if len(table) else "(no rows)")
            f.write("\n\n")
            for name in dict.fromkeys(data.rows_df["claim_id"]):
                f.write(f"{self.config.display_name(name)}: {self.config.description(name)}\n")
            f.write("\n" + self.summary(data) + "\n")

    def write_tsv(self, data: ReportData, output_path: Path) -> None:
        df = data.rows_df.copy()
        df["passed"] = df["passed"].map(self._status)
        df.to_csv(output_path, sep="\t", index=False)

from pathlib import Path
from typing import List, Optional

from defcol.reporting.report_data import ReportData
from defcol.reporting.report_formatter import ReportFormatter


def write_report(report_data: ReportData, formatter: ReportFormatter,
                 txt_destination: Optional[Path] = None, tsv_destination: Optional[Path] = None) -> List[Path]:
    """Write the human-readable and the TSV report; returns the paths written, TXT first."""
    written = []
    for destination, write in ((txt_destination, formatter.write_txt), (tsv_destination, formatter.write_tsv)):
        if destination is None:
            continue
        destination = Path(destination)
        destination.parent.mkdir(parents=True, exist_ok=True)
        write(report_data, destination)
        written.append(destination)
    return written

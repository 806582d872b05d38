"""Report builder running the registered claims."""

import time
from typing import List, Optional, Sequence

from defcol.config import Config
from defcol.logger import Logger
from defcol.reporting.claims import CLAIMS, ClaimContext, Formula
from defcol.reporting.report_config import ReportConfigManager
from defcol.reporting.report_data import ClaimRow, ReportData, create_dataframe_from_rows
from defcol.transversal import m_value
from defcol.version import dependency_versions, get_version


class ReportBuilder:
    """Runs claims in the order of the report configuration and collects their rows."""

    def __init__(self, config_manager: ReportConfigManager):
        self.report_config_manager = config_manager

    def claim_ids(self, selected: Optional[Sequence[str]] = None) -> List[str]:
        """
        Raises:
            ValueError: If a selected claim is not registered.
        """
        ordered = [name for name in self.report_config_manager.list_claims() if name in CLAIMS]
        ordered += [name for name in CLAIMS if name not in ordered]
        if not selected:
            return ordered
        unknown = [name for name in selected if name not in CLAIMS]
        if unknown:
            raise ValueError(f"unknown claim(s) {unknown}, expected some of {ordered}")
        return [name for name in ordered if name in selected]

    def build_report(
        self,
        config: Config,
        quick: bool = False,
        claims: Optional[Sequence[str]] = None,
        formula: Formula = m_value,
        log: Optional[Logger] = None,
    ) -> ReportData:
        """
        Args:
            config: Config of the run.
            quick: Restrict oracle checks to small graphs.
            claims: Claim ids to run (all by default).
            formula: Closed formula checked against the brute-force oracle.
            log: Optional logger for progress messages.

        Returns:
            ReportData with one row per checked instance.
        """
        context = ClaimContext(config=config, quick=quick, log=log, formula=formula)
        rows: List[ClaimRow] = []
        started = time.monotonic()
        for name in self.claim_ids(claims):
            if log is not None:
                log.info(f"Checking {self.report_config_manager.get_config().display_name(name)}")
            claim_started = time.monotonic()
            claim_rows = CLAIMS[name](context)
            failed = sum(not row.passed for row in claim_rows)
            if log is not None:
                log.debug(f"{name}: {len(claim_rows)} row(s), {failed} failed, "
                          f"{time.monotonic() - claim_started:.1f} s", indent=1)
            rows.extend(claim_rows)
        metadata = {
            "version": get_version(),
            "libraries": ", ".join(f"{name} {version}" for name, version in dependency_versions().items()),
            "mode": "quick" if quick else "full",
            "claims": len(self.claim_ids(claims)),
            "elapsed_seconds": round(time.monotonic() - started, 1),
        }
        return ReportData(rows_df=create_dataframe_from_rows(rows), metadata=metadata)

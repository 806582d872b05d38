from dataclasses import dataclass, field
from typing import Any, Dict, List

import pandas as pd

ROW_COLUMNS = ["claim_id", "instance", "expected", "computed", "passed"]


@dataclass
class ClaimRow:
    """
    One checked instance of a claim.

    Attributes:
        claim_id: Registry name of the claim.
        instance: Name of the graph (and coloring) the claim was checked on.
        expected: What the claim predicts, rendered as text.
        computed: What was computed, rendered as text.
        passed: Whether the computed value satisfies the prediction.
    """

    claim_id: str
    instance: str
    expected: str
    computed: str
    passed: bool

    def to_series_row(self) -> Dict[str, Any]:
        return {
            "claim_id": self.claim_id,
            "instance": self.instance,
            "expected": self.expected,
            "computed": self.computed,
            "passed": bool(self.passed),
        }


@dataclass
class ReportData:
    """
    Attributes:
        rows_df (pd.DataFrame): One row per checked claim instance, in execution order.
        metadata (dict[str, Any]): Run facts (mode, version, elapsed time).
    """

    rows_df: pd.DataFrame
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def failed(self) -> pd.DataFrame:
        return self.rows_df[~self.rows_df["passed"]]

    @property
    def all_passed(self) -> bool:
        return bool(self.rows_df["passed"].all()) if len(self.rows_df) else True


def create_dataframe_from_rows(rows: List[ClaimRow]) -> pd.DataFrame:
    if not rows:
        return pd.DataFrame(columns=ROW_COLUMNS).astype({"passed": bool})
    return pd.DataFrame([row.to_series_row() for row in rows], columns=ROW_COLUMNS)

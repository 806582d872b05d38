"""Claim display names and descriptions for the verify-paper report."""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional

import yaml

REPORT_CONFIG_PATH = Path(__file__).resolve().parent.parent / "configs" / "report_config.yaml"
REQUIRED_KEYS = ("name", "display_name")


@dataclass(frozen=True)
class ClaimConfig:
    name: str
    display_name: str
    description: str = ""


@dataclass
class ReportConfig:
    """Claims in report order, indexed by claim id."""

    claims: List[ClaimConfig] = field(default_factory=list)
    _by_name: Dict[str, ClaimConfig] = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        self._by_name = {claim.name: claim for claim in self.claims}

    def display_name(self, name: str) -> str:
        claim = self._by_name.get(name)
        return claim.display_name if claim is not None else name

    def description(self, name: str) -> str:
        claim = self._by_name.get(name)
        return claim.description if claim is not None else ""


def load_report_config(path: Optional[Path] = None) -> ReportConfig:
    """
    Raises:
        ValueError: If the file is not valid YAML, an entry misses a required key,
            or a claim id is listed twice.
    """
    path = path or REPORT_CONFIG_PATH
    with open(path, "r") as f:
        try:
            raw = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ValueError(f"{path}: invalid YAML: {e}")
    claims: List[ClaimConfig] = []
    for i, entry in enumerate(raw.get("claims", [])):
        missing = [key for key in REQUIRED_KEYS if key not in entry]
        if missing:
            raise ValueError(f"{path}: claim #{i + 1} lacks {', '.join(missing)}")
        claims.append(ClaimConfig(name=entry["name"], display_name=entry["display_name"],
                                  description=entry.get("description", "")))
    names = [claim.name for claim in claims]
    duplicates = sorted({name for name in names if names.count(name) > 1})
    if duplicates:
        raise ValueError(f"{path}: claims listed more than once: {duplicates}")
    return ReportConfig(claims=claims)


class ReportConfigManager:
    def __init__(self, path: Optional[Path] = None):
        self.config_path = path or REPORT_CONFIG_PATH
        self._config = load_report_config(self.config_path)

    def get_config(self) -> ReportConfig:
        return self._config

    def list_claims(self) -> List[str]:
        return [claim.name for claim in self._config.claims]

"""Named check results shared by validation and certificate verification."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional


@dataclass(frozen=True)
class CheckResult:
    """
    Outcome of a single named check.

    Attributes:
        name: Short machine-readable check name (e.g. "kills_all").
        passed: Whether the check succeeded.
        message: Human-readable explanation, mostly useful on failure.
        witness: Optional object demonstrating a failure (a cycle, a path, an edge).
    """

    name: str
    passed: bool
    message: str = ""
    witness: Optional[Any] = None

    def to_line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{self.name}\t{status}"
        if self.message:
            line += f"\t{self.message}"
        return line


@dataclass
class ValidationReport:
    """
    Collection of check results. Never raised, always returned.

    Attributes:
        checks: Check results in the order they were performed.
        info: Additional facts gathered while checking (e.g. the number of faces).
    """

    checks: List[CheckResult] = field(default_factory=list)
    info: Dict[str, Any] = field(default_factory=dict)

    def add(self, name: str, passed: bool, message: str = "", witness: Optional[Any] = None) -> CheckResult:
        result = CheckResult(name=name, passed=bool(passed), message=message, witness=witness)
        self.checks.append(result)
        return result

    @property
    def ok(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def get(self, name: str) -> Optional[CheckResult]:
        for check in self.checks:
            if check.name == name:
                return check
        return None

    def passed(self, name: str) -> bool:
        check = self.get(name)
        return check is not None and check.passed

    def summary(self) -> str:
        if self.ok:
            return f"all {len(self.checks)} checks passed"
        failed = ", ".join(check.name for check in self.failures)
        return f"{len(self.failures)} of {len(self.checks)} checks failed: {failed}"

"""
Verification Report
Named pass/fail checks collected by the validators
"""

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    @property
    def status(self):
        return "pass" if self.passed else "fail"


@dataclass
class VerificationReport:
    """Every executed check, passed ones included"""

    checks: list = field(default_factory=list)

    def add(self, name, passed, detail=""):
        result = CheckResult(name, bool(passed), detail)
        self.checks.append(result)
        return result

    def extend(self, other):
        """Append the checks of another report (or any iterable of CheckResult)"""
        items = other.checks if isinstance(other, VerificationReport) else other
        for check in items:
            self.checks.append(check)
        return self

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    def failures(self):
        return [check for check in self.checks if not check.passed]

    def get(self, name):
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def rows(self):
        """(name, 'pass'|'fail', detail) tuples in execution order"""
        return [(c.name, c.status, c.detail) for c in self.checks]

    def summary(self):
        failed = len(self.failures())
        total = len(self.checks)
        if failed:
            return f"{failed} of {total} checks failed"
        return f"all {total} checks passed"

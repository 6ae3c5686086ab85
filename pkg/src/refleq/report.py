"""Check results and machine-readable reports."""

import json
from dataclasses import dataclass, field, asdict

SCHEMA_VERSION = 1


@dataclass
class Check:
    suite: str
    check_id: str
    status: str  # pass | fail | skipped
    detail: str = ""
    witness: str = ""

    @property
    def ok(self):
        return self.status != "fail"


def passed(suite, check_id, detail=""):
    return Check(suite, check_id, "pass", detail)


def failed(suite, check_id, detail="", witness=""):
    return Check(suite, check_id, "fail", detail, witness[:2000])


def check(cond, suite, check_id, detail="", witness=""):
    return passed(suite, check_id, detail) if cond else failed(suite, check_id, detail, witness)


@dataclass
class Report:
    config: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)

    def extend(self, checks):
        self.checks.extend(checks)

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    def summary(self):
        n_pass = sum(1 for c in self.checks if c.status == "pass")
        n_fail = sum(1 for c in self.checks if c.status == "fail")
        n_skip = sum(1 for c in self.checks if c.status == "skipped")
        return {"pass": n_pass, "fail": n_fail, "skipped": n_skip}

    def to_json(self):
        return json.dumps({
            "schema_version": SCHEMA_VERSION,
            "config": self.config,
            "summary": self.summary(),
            "checks": [asdict(c) for c in sorted(
                self.checks, key=lambda c: (c.suite, c.check_id))],
        }, indent=2, sort_keys=True, default=str)

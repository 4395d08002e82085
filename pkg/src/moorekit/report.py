"""Shared machine-readable check records.

Every verifier and audit emits records of one shape so the CLI can
stream them as line-delimited JSON:

    { "check": name, "status": ..., "witnesses": [...], ... }

Statuses: "pass" / "fail" for artifact invariants, "hypothesis-failed"
for gated checks whose hypothesis does not hold, and "confirmed" /
"discrepant" for audits that compare a printed closed form against the
composite definition.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
HYPOTHESIS_FAILED = "hypothesis-failed"
CONFIRMED = "confirmed"
DISCREPANT = "discrepant"

_FAILING = {FAIL}
_AUDIT = {DISCREPANT}


@dataclass(frozen=True)
class CheckRecord:
    check: str
    status: str
    witnesses: tuple = ()
    detail: dict = field(default_factory=dict)

    def json_line(self) -> str:
        body = {"check": self.check, "status": self.status,
                "witnesses": list(self.witnesses)}
        if self.detail:
            body["detail"] = self.detail
        return json.dumps(body, sort_keys=True, default=str)


def worst_exit_code(records) -> int:
    """0 all pass, 1 any invariant failure, 2 audit discrepancies only."""
    statuses = {r.status for r in records}
    if statuses & _FAILING:
        return 1
    if statuses & _AUDIT:
        return 2
    return 0

"""Check records and their text / line-delimited JSON renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable

PASS = "pass"
FAIL = "fail"
TRUNCATED = "truncated"


@dataclass
class CheckRecord:
    check_id: str
    paper_anchor: str
    status: str
    witness: Any = None
    timing_ms: float | None = None

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_json(self) -> dict:
        return {"check_id": self.check_id, "paper_anchor": self.paper_anchor, "status": self.status,
                "witness": self.witness, "timing_ms": self.timing_ms}


def status_of(ok: bool) -> str:
    return PASS if ok else FAIL


@dataclass
class Report:
    records: list[CheckRecord] = field(default_factory=list)

    def add(self, check_id: str, anchor: str, ok: bool | str, witness: Any = None) -> CheckRecord:
        status = ok if isinstance(ok, str) else status_of(ok)
        rec = CheckRecord(check_id, anchor, status, witness)
        self.records.append(rec)
        return rec

    def extend(self, records: Iterable[CheckRecord]) -> None:
        self.records.extend(records)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if r.status == FAIL]

    def __iter__(self):
        return iter(self.records)


def render_json_lines(records: Iterable[CheckRecord]) -> str:
    return "".join(json.dumps(r.to_json(), sort_keys=True, separators=(",", ":")) + "\n" for r in records)


def _short(witness: Any, width: int = 70) -> str:
    if witness is None:
        return ""
    text = json.dumps(witness, sort_keys=True, separators=(",", ":"))
    return text if len(text) <= width else text[:width - 3] + "..."


def render_text(records: Iterable[CheckRecord]) -> str:
    records = list(records)
    if not records:
        return "(no checks)\n"
    w_id = max(len(r.check_id) for r in records)
    lines = [f"{'check':<{w_id}}  {'status':<9}  detail"]
    lines.append("-" * (w_id + 2 + 9 + 2 + 20))
    for r in records:
        timing = f" [{r.timing_ms:.0f} ms]" if r.timing_ms is not None else ""
        lines.append(f"{r.check_id:<{w_id}}  {r.status.upper():<9}  {_short(r.witness)}{timing}")
    n_pass = sum(r.passed for r in records)
    lines.append(f"{n_pass}/{len(records)} checks passed")
    return "\n".join(lines) + "\n"

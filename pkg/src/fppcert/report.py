"""Certification reports.

A report is a list of claims, each with a status.  The body of the JSON
serialisation is byte-deterministic; wall-clock data (generation time and
per-claim runtimes) lives in the ``header`` so it can be dropped when
comparing runs.
"""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterator, List, Optional

SCHEMA_VERSION = 1


class Status(str, Enum):
    VERIFIED = "VERIFIED"
    REFUTED = "REFUTED"
    ASSERTED = "ASSERTED"  # recorded from the literature, not machine-checked
    SKIPPED = "SKIPPED"


@dataclass
class Claim:
    claim_id: str
    description: str
    anchor: str
    status: Status
    statistics: Dict[str, Any] = field(default_factory=dict)
    elapsed_ms: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "claim_id": self.claim_id,
            "description": self.description,
            "anchor": self.anchor,
            "status": self.status.value,
            "statistics": self.statistics,
        }


@dataclass
class CertReport:
    claims: List[Claim] = field(default_factory=list)

    def add(
        self,
        claim_id: str,
        description: str,
        anchor: str,
        status: "Status | bool",
        statistics: Optional[Dict[str, Any]] = None,
        elapsed_ms: float = 0.0,
    ) -> Claim:
        if isinstance(status, bool):
            status = Status.VERIFIED if status else Status.REFUTED
        if any(c.claim_id == claim_id for c in self.claims):
            raise ValueError(f"duplicate claim id {claim_id!r}")
        claim = Claim(claim_id, description, anchor, status, dict(statistics or {}), elapsed_ms)
        self.claims.append(claim)
        return claim

    def extend(self, other: "CertReport") -> "CertReport":
        for c in other.claims:
            if any(x.claim_id == c.claim_id for x in self.claims):
                raise ValueError(f"duplicate claim id {c.claim_id!r}")
            self.claims.append(c)
        return self

    def __getitem__(self, claim_id: str) -> Claim:
        for c in self.claims:
            if c.claim_id == claim_id:
                return c
        raise KeyError(claim_id)

    def __contains__(self, claim_id: str) -> bool:
        return any(c.claim_id == claim_id for c in self.claims)

    def status(self, claim_id: str) -> Status:
        return self[claim_id].status

    @property
    def refuted(self) -> List[Claim]:
        return [c for c in self.claims if c.status is Status.REFUTED]

    @property
    def ok(self) -> bool:
        return not self.refuted

    def counts(self) -> Dict[str, int]:
        return {s.value: sum(c.status is s for c in self.claims) for s in Status}

    def body(self, command: str = "", options: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "options": options or {},
            "summary": self.counts(),
            "claims": [c.to_dict() for c in self.claims],
        }

    def to_dict(self, command: str = "", options: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        out = {
            "header": {
                "generated_at": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
                "elapsed_ms": {c.claim_id: round(c.elapsed_ms, 3) for c in self.claims},
            }
        }
        out.update(self.body(command, options))
        return out

    def to_json(self, command: str = "", options: Optional[Dict[str, Any]] = None) -> str:
        return json.dumps(self.to_dict(command, options), indent=2, sort_keys=False) + "\n"


@contextmanager
def stopwatch() -> Iterator[Dict[str, float]]:
    """Yields a dict whose ``ms`` entry is filled on exit."""
    out = {"ms": 0.0}
    start = time.perf_counter()
    try:
        yield out
    finally:
        out["ms"] = (time.perf_counter() - start) * 1000.0

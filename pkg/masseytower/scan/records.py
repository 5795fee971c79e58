"""One JSON line per scanned field."""

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from ..tower.classify import Classification

SCHEMA_VERSION = 1


class Status(Enum):
    COMPLETE = "complete"
    TIMEOUT = "timeout"
    SKIPPED = "skipped"
    ERROR = "error"


@dataclass
class ZassenhausReport:
    p: int
    D: int
    invariant_factors: Tuple[int, ...]
    p_rank: int
    status: Status
    grh_assumed: bool
    time_limit: float
    nine_divides_both: Optional[bool] = None
    zm_entries: Optional[Tuple[Tuple[int, int], Tuple[int, int]]] = None
    skip_reason: Optional[str] = None
    classification: Optional[Classification] = None
    certificates: List[Dict[str, Any]] = field(default_factory=list)
    certificates_digest: Optional[str] = None
    wall_times: Dict[str, float] = field(default_factory=dict)

    def is_terminal(self, time_limit: float) -> bool:
        """A timed-out record is redone once the limit has been raised."""
        if self.status is Status.TIMEOUT:
            return time_limit <= self.time_limit
        return True

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "p": self.p,
            "D": self.D,
            "invariant_factors": list(self.invariant_factors),
            "p_rank": self.p_rank,
            "nine_divides_both": self.nine_divides_both,
            "status": self.status.value,
            "zm_entries": None if self.zm_entries is None else [list(r) for r in self.zm_entries],
            "skip_reason": self.skip_reason,
            "classification": None if self.classification is None else self.classification.to_dict(),
            "certificates_digest": self.certificates_digest,
            "certificates": list(self.certificates),
            "wall_times": dict(self.wall_times),
            "grh_assumed": self.grh_assumed,
            "time_limit": self.time_limit,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ZassenhausReport":
        if data.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema version {data.get('schema_version')}")
        entries = data.get("zm_entries")
        classification = data.get("classification")
        return cls(
            p=data["p"],
            D=data["D"],
            invariant_factors=tuple(data["invariant_factors"]),
            p_rank=data["p_rank"],
            status=Status(data["status"]),
            grh_assumed=data["grh_assumed"],
            time_limit=data["time_limit"],
            nine_divides_both=data.get("nine_divides_both"),
            zm_entries=None if entries is None else (tuple(entries[0]), tuple(entries[1])),
            skip_reason=data.get("skip_reason"),
            classification=None if classification is None else Classification.from_dict(classification),
            certificates=list(data.get("certificates", [])),
            certificates_digest=data.get("certificates_digest"),
            wall_times=dict(data.get("wall_times", {})),
        )

    @classmethod
    def from_json(cls, line: str) -> "ZassenhausReport":
        return cls.from_dict(json.loads(line))

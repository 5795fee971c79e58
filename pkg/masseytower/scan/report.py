"""(p, D) lists grouped by verdict, in the "(p, D) = (3, -3826859), ..." layout."""

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Tuple

from ..tower.classify import FINITE_REFERENCES, INFINITE_REFERENCES, Verdict
from .records import Status, ZassenhausReport

UNCLASSIFIED = "Unclassified"


@dataclass
class ScanSummary:
    groups: Dict[str, List[Tuple[int, int]]] = field(default_factory=dict)
    rank_two_counts: Dict[int, int] = field(default_factory=dict)
    status_counts: Dict[str, int] = field(default_factory=dict)
    reference_matches: List[Tuple[int, int, str]] = field(default_factory=list)

    def lines(self) -> List[str]:
        out = []
        for p, count in sorted(self.rank_two_counts.items()):
            out.append(f"p={p}: {count} fields of p-rank 2")
        for status, count in sorted(self.status_counts.items()):
            out.append(f"  {status}: {count}")
        for verdict, pairs in self.groups.items():
            out.append(f"{verdict} ({len(pairs)}):")
            out.append("  (p,D) = " + ", ".join(f"({p}, {D})" for p, D in pairs))
        for p, D, label in self.reference_matches:
            out.append(f"reference ({p}, {D}): {label}")
        return out

    def to_dict(self) -> dict:
        return {
            "groups": {k: [list(t) for t in v] for k, v in self.groups.items()},
            "rank_two_counts": dict(self.rank_two_counts),
            "status_counts": dict(self.status_counts),
            "reference_matches": [list(t) for t in self.reference_matches],
        }


def report(records: Iterable[ZassenhausReport]) -> ScanSummary:
    summary = ScanSummary()
    ranks: Counter = Counter()
    statuses: Counter = Counter()
    for r in records:
        ranks[r.p] += 1
        statuses[r.status.value] += 1
        key = r.classification.verdict.value if r.classification is not None else UNCLASSIFIED
        summary.groups.setdefault(key, []).append((r.p, r.D))
        pair = (r.p, r.D)
        if r.status is not Status.COMPLETE or r.classification is None:
            continue
        verdict = r.classification.verdict
        if pair in INFINITE_REFERENCES:
            agrees = verdict is Verdict.INFINITE
            summary.reference_matches.append((r.p, r.D, "infinite, " + ("agrees" if agrees else f"got {verdict.value}")))
        elif pair in FINITE_REFERENCES:
            agrees = verdict is Verdict.GS_INCONCLUSIVE and r.classification.zm_rank == 1
            summary.reference_matches.append((r.p, r.D, "finite, " + ("rank ZM = 1" if agrees else f"got {verdict.value}")))
    summary.rank_two_counts = dict(ranks)
    summary.status_counts = dict(statuses)
    return summary

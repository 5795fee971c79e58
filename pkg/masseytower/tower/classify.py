"""Classification of the p-class field tower of an imaginary quadratic field.

The verdict depends on the p-rank of Cl(K) and, in rank 2, on the rank of
the Zassenhaus matrix:

    rank ZM = 2  <=>  Zassenhaus type (3, 3)
    rank ZM = 1  =>   type (3, 5), (3, 7) or an infinite tower
    rank ZM = 0  =>   infinite tower

For p = 3 the last line needs <x, x, x> and <y, y, y> to vanish, which is
checked through the Bockstein: both basis characters must lift to Z/9.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple

from ..errors import MatrixMissing
from ..linalg.matrices import fp_rank
from ..massey.engine import ZassenhausMatrix
from ..quadratic.characters import bockstein_vanishes, character_basis
from ..quadratic.classgroup import ClassGroupQF
from .golod import FINITE_TYPES, gs_positive

logger = logging.getLogger("masseytower.tower")


class Verdict(Enum):
    LENGTH_ZERO = "LengthZero"
    LENGTH_ONE = "LengthOne"
    INFINITE = "Infinite"
    GS_INCONCLUSIVE = "GSInconclusive"


class Reason(Enum):
    """The single rule each verdict rests on."""

    PRIME_TO_P = "class number prime to p"
    CYCLIC_P_PART = "cyclic p-part: H_K has class number prime to p"
    RANK_AT_LEAST_3 = "p-rank >= 3: Koch-Venkov relation count fails Golod-Shafarevich"
    ZM_RANK_2 = "rank ZM = 2: Zassenhaus type (3,3)"
    ZM_RANK_1 = "rank ZM = 1: type (3,5), (3,7) or infinite"
    ZM_ZERO = "ZM = 0: relations in depth >= 5 fail Golod-Shafarevich"
    ZM_ZERO_P3_UNCHECKED = "ZM = 0 for p = 3 but <x,x,x> or <y,y,y> may not vanish"


SUMMARY = (
    "rank ZM = 2 <=> type (3,3); "
    "rank ZM = 1 => type (3,5), (3,7) or infinite; "
    "rank ZM = 0 => infinite"
)

# Annotation only: finite towers of type (3,5) or (3,7) exist, so rank ZM < 2
# never implies an infinite tower on its own.
CONJECTURE_33 = "(3,3)-conjecture (finite tower forces type (3,3)) is false; see the finite reference pairs"

INFINITE_REFERENCES: FrozenSet[Tuple[int, int]] = frozenset({
    (3, -3826859), (3, -8187139), (3, -11394591), (3, -13014563),
    (5, -2724783), (5, -4190583), (5, -6741407), (5, -6965663),
})

# Finite towers established from external data; ZM has rank 1 there.
FINITE_REFERENCES: FrozenSet[Tuple[int, int]] = frozenset({(5, -90868), (7, -159592)})


@dataclass
class Classification:
    verdict: Verdict
    reason: Reason
    p: int
    p_rank: int
    zm_rank: Optional[int] = None
    zassenhaus_type_constraint: Optional[FrozenSet[Tuple[int, int]]] = None
    may_be_infinite: bool = False
    nine_divides_both: Optional[bool] = None
    bockstein_vanishes: Optional[Tuple[bool, ...]] = None
    annotations: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdict": self.verdict.value,
            "reason": self.reason.name,
            "p": self.p,
            "p_rank": self.p_rank,
            "zm_rank": self.zm_rank,
            "zassenhaus_type_constraint": (
                None if self.zassenhaus_type_constraint is None else sorted(list(t) for t in self.zassenhaus_type_constraint)
            ),
            "may_be_infinite": self.may_be_infinite,
            "nine_divides_both": self.nine_divides_both,
            "bockstein_vanishes": None if self.bockstein_vanishes is None else list(self.bockstein_vanishes),
            "annotations": list(self.annotations),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Classification":
        types = data.get("zassenhaus_type_constraint")
        flags = data.get("bockstein_vanishes")
        return cls(
            verdict=Verdict(data["verdict"]),
            reason=Reason[data["reason"]],
            p=data["p"],
            p_rank=data["p_rank"],
            zm_rank=data.get("zm_rank"),
            zassenhaus_type_constraint=None if types is None else frozenset(tuple(t) for t in types),
            may_be_infinite=data.get("may_be_infinite", False),
            nine_divides_both=data.get("nine_divides_both"),
            bockstein_vanishes=None if flags is None else tuple(flags),
            annotations=list(data.get("annotations", [])),
        )


def p_part(invariant_factors: Sequence[int], p: int) -> List[int]:
    return [d for d in invariant_factors if d % p == 0]


def nine_divides_both(invariant_factors: Sequence[int]) -> bool:
    factors = p_part(invariant_factors, 3)
    return len(factors) == 2 and all(d % 9 == 0 for d in factors)


def classify_invariants(
    p: int,
    invariant_factors: Sequence[int],
    zm_entries: Optional[Sequence[Sequence[int]]] = None,
    bockstein_flags: Optional[Sequence[bool]] = None,
) -> Classification:
    """Classification from the invariant factors of Cl(K) and the ZM entries.

    ``bockstein_flags`` says, per basis character, whether it lifts to Z/p^2;
    it defaults to p^2 dividing the matching invariant factor.

    Raises:
        MatrixMissing: p-rank 2 without a Zassenhaus matrix.
    """
    factors = p_part(invariant_factors, p)
    rank = len(factors)

    if rank == 0:
        return Classification(Verdict.LENGTH_ZERO, Reason.PRIME_TO_P, p, rank)
    if rank == 1:
        return Classification(Verdict.LENGTH_ONE, Reason.CYCLIC_P_PART, p, rank)
    if rank >= 3:
        # r = d relations in depth >= 3 (Koch-Venkov) with d >= 3 generators
        assert not gs_positive(rank, (3,) * rank)
        return Classification(Verdict.INFINITE, Reason.RANK_AT_LEAST_3, p, rank)

    if zm_entries is None:
        raise MatrixMissing(rank)
    zm_rank = fp_rank([list(r) for r in zm_entries], p)
    if bockstein_flags is None:
        bockstein_flags = [d % (p * p) == 0 for d in factors]
    out = Classification(Verdict.GS_INCONCLUSIVE, Reason.ZM_RANK_2, p, rank, zm_rank=zm_rank, annotations=[SUMMARY])
    if p == 3:
        out.nine_divides_both = nine_divides_both(invariant_factors)
        out.bockstein_vanishes = tuple(bool(f) for f in bockstein_flags)

    if zm_rank == 2:
        out.zassenhaus_type_constraint = frozenset({(3, 3)})
    elif zm_rank == 1:
        out.reason = Reason.ZM_RANK_1
        out.zassenhaus_type_constraint = FINITE_TYPES - {(3, 3)}
        out.may_be_infinite = True
        out.annotations.append(CONJECTURE_33)
    elif p == 3 and not all(bockstein_flags):
        out.reason = Reason.ZM_ZERO_P3_UNCHECKED
        out.annotations.append("9 does not divide both factors of the 3-class group; <x,x,x> may be nonzero")
    else:
        out.verdict = Verdict.INFINITE
        out.reason = Reason.ZM_ZERO
    logger.debug(f"p={p}, factors={list(invariant_factors)}, rank ZM={zm_rank}: {out.verdict.value}")
    return out


def classify(p: int, G: ClassGroupQF, zm: Optional[ZassenhausMatrix] = None) -> Classification:
    """Tower verdict for K = Q(sqrt D) and the prime p.

    Raises:
        MatrixMissing: p-rank 2 without a Zassenhaus matrix.
    """
    flags = [bockstein_vanishes(G, x) for x in character_basis(G, p)]
    result = classify_invariants(p, G.invariant_factors, None if zm is None else zm.entries, flags)
    if (p, G.D) in INFINITE_REFERENCES:
        result.annotations.append("reference: infinite tower")
    elif (p, G.D) in FINITE_REFERENCES:
        result.annotations.append("reference: finite tower")
    return result

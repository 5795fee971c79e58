"""Runs every cochain-level identity on one named group."""

import itertools
import logging
import random
from dataclasses import dataclass, field
from typing import Dict, List

import numpy as np

from ..errors import CupNonzero, IdentityFailed
from .cochains import Cochain, TwistedModule, coboundary, cup, half_square, scalar_cochain
from .groups import FiniteGroupTable, check_associativity, has_inverses, is_homomorphism, named_group
from .massey import (
    anticommutator_witness,
    bockstein,
    bockstein_sign,
    containment_gap,
    cup_class_is_zero,
    half_cup_check,
    left_cup_vanishes,
    massey_dwyer,
    massey_via_twist,
    preimage_identity_check,
    trivial_model,
)

logger = logging.getLogger("masseytower.oracle")


@dataclass
class OracleReport:
    group: str
    checks: Dict[str, bool] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def record(self, name: str, ok: bool):
        self.checks[name] = bool(ok)
        if not ok:
            logger.warning(f"{self.group}: {name} failed")

    def to_dict(self) -> dict:
        return {"group": self.group, "passed": self.passed, "checks": dict(self.checks), "notes": list(self.notes)}


def _random_cochain(G: FiniteGroupTable, rng: random.Random) -> Cochain:
    values = np.array([rng.randrange(G.p) for _ in range(G.order)], dtype=np.int64).reshape(-1, 1)
    return Cochain(1, values, TwistedModule(G.p))


def run_oracle_suite(name: str, trials: int = 100, seed: int = 0) -> OracleReport:
    G = named_group(name)
    rng = random.Random(seed)
    report = OracleReport(G.name)
    model = trivial_model(G)
    chars = {k: scalar_cochain(G, v) for k, v in G.characters.items()}

    report.record("associativity", check_associativity(G, rng=rng))
    report.record("inverses", has_inverses(G))
    report.record("characters", all(is_homomorphism(G, v) for v in G.characters.values()))
    report.record("d∘d = 0", all(coboundary(G, coboundary(G, _random_cochain(G, rng))).is_zero() for _ in range(trials)))
    report.record(
        "homomorphisms are cocycles", all(coboundary(G, c).is_zero() for c in chars.values())
    )
    if G.p > 2:
        report.record(
            "d t_x = -x cup x",
            all((coboundary(G, half_square(G, c)) + cup(G, c, c)).is_zero() for c in chars.values()),
        )
    for (a, ca), (b, cb) in itertools.combinations(chars.items(), 2):
        try:
            anticommutator_witness(G, ca, cb)
            report.record(f"[{a} cup {b}] = -[{b} cup {a}]", True)
        except IdentityFailed:
            report.record(f"[{a} cup {b}] = -[{b} cup {a}]", False)

    for (a, ca), (b, cb), (c, cc) in itertools.product(chars.items(), repeat=3):
        label = f"<{a},{b},{c}>"
        if not (cup_class_is_zero(G, ca, cb, model) and cup_class_is_zero(G, cb, cc, model)):
            continue
        try:
            dwyer = massey_dwyer(G, ca, cb, cc, model=model)
            enumerated = massey_dwyer(G, ca, cb, cc, all_trivializations=True, model=model)
            twisted = massey_via_twist(G, ca, cb, cc, model=model)
            preimage_identity_check(G, ca, cb, cc)
        except (CupNonzero, IdentityFailed) as e:
            report.record(label, False)
            report.notes.append(f"{label}: {e}")
            continue
        report.record(f"{label} representative + indeterminacy", dwyer == enumerated)
        gap = containment_gap(dwyer, twisted)
        report.record(f"{label} dwyer ⊆ twist", True)
        if a == b or left_cup_vanishes(G, cb, model):
            report.record(f"{label} dwyer = twist", gap == 0)
        elif gap:
            report.notes.append(f"{label}: strict containment, codimension {gap}")
        report.notes.append(f"{label}: contains zero = {dwyer.contains_zero()}")

    if G.p > 2:
        for (a, ca), (b, cb) in itertools.product(chars.items(), repeat=2):
            if not cup_class_is_zero(G, ca, cb, model):
                continue
            ok = True
            try:
                half_cup_check(G, ca, cb, model=model)
                for _ in range(trials):
                    half_cup_check(G, ca, cb, rng=rng, model=model)
            except IdentityFailed:
                ok = False
            report.record(f"half cup ({a}, {b})", ok)

    if len(G.labels[0]) == 1:
        x = chars["x"]
        beta_zero = model.is_coboundary(bockstein(G, x))
        report.notes.append(f"bockstein(x) is a coboundary: {beta_zero}")
        if G.order == G.p:
            report.record("bockstein nonzero on Z/p", not beta_zero)
            sign = bockstein_sign(G, x)
            if G.p == 3:
                report.record("<x,x,x> = ±bockstein", sign != 0)
                report.notes.append(f"<x,x,x> = {sign} * bockstein")
            else:
                report.record("0 in <x,x,x>", massey_dwyer(G, x, x, x, model=model).contains_zero())
        else:
            report.record("bockstein vanishes on a liftable x", beta_zero)

    logger.info(f"oracle suite on {G.name}: {sum(report.checks.values())}/{len(report.checks)} checks passed")
    return report

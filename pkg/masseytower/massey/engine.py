"""Triple Massey products <x, x, y> of an imaginary quadratic field and the Zassenhaus matrix.

For x, y in Hom(Cl(K), Z/p) and m = (a', J) in H^1(X, mu_p), the engine
builds L_x, lifts m to a dual cocycle (b, a, J, I), writes
I = div(u) + i(J') + (1 - sigma)I' and reads off

    <x, x, y>(m) = y([J] + [N I'])   if p = 3
                   y([N I'])         if p > 3

Every value comes with a certificate that can be replayed without searching.
The orientation of the duality pairing is fixed by this formula; the
opposite orientation negates every value and changes no rank.
"""

import hashlib
import json
import logging
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from sympy import isprime

from ..budget import check_deadline, time_budget
from ..errors import HypothesisViolated, NoPTorsion, ObstructionNonzero, SearchExhausted, WitnessEquationFailed
from ..extension.provider import ExtensionProvider
from ..extension.unramified import UnramifiedExtension, build_extension, extension_from_polynomial, verify_unramified
from ..linalg.matrices import fp_rank
from ..numberfield.classgroup import BoundPolicy
from ..numberfield.ideals import divisor_add, divisor_from_list, divisor_of_element, divisor_to_list
from ..quadratic.characters import CharacterModP, character_basis
from ..quadratic.classgroup import ClassGroupQF, class_group, p_rank
from ..quadratic.forms import is_fundamental_discriminant
from ..quadratic.mup import MuPClass, mu_p_basis
from ..relative.maps import RelativeMaps
from .cocycle import DualCocycle, is_dual_cocycle, lift_dual_cocycle, massey_value_from

logger = logging.getLogger("masseytower.massey")

DEFAULT_TIME_LIMIT = 300.0


@dataclass(frozen=True)
class HypothesisRecord:
    """The regime in which every cup product vanishes and <x, x, y> is a single value."""

    p: int
    D: int
    cup_products_vanish: bool = True
    indeterminacy_vanishes: bool = True


def hypothesis_guard(D: int, p: int) -> HypothesisRecord:
    """Checks p odd prime and K = Q(sqrt D) imaginary quadratic with units +-1.

    Raises:
        HypothesisViolated: naming the failed condition.
    """
    if p == 2 or not isprime(p):
        raise HypothesisViolated(f"p={p} is not an odd prime")
    if D >= 0:
        raise HypothesisViolated(f"D={D} is not negative")
    if not is_fundamental_discriminant(D):
        raise HypothesisViolated(f"D={D} is not a fundamental discriminant")
    if D in (-3, -4):
        raise HypothesisViolated(f"D={D} has units beyond +-1")
    return HypothesisRecord(p, D)


def _fractions(values) -> List[str]:
    return [str(Fraction(v)) for v in values]


def _parse_fractions(values) -> Tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


@dataclass
class MasseyCertificate:
    """Everything needed to recompute one value of <x, x, y> without search."""

    p: int
    D: int
    x: Tuple[int, ...]
    y: Tuple[int, ...]
    argument: Dict[str, Any]
    value: int
    extension: Dict[str, Any]
    witnesses: Dict[str, Any]
    choice_seed: int
    policy: str
    digest: str = field(init=False)

    def __post_init__(self):
        self.digest = self.calculate_hash()

    def body(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "D": self.D,
            "x": list(self.x),
            "y": list(self.y),
            "argument": self.argument,
            "value": self.value,
            "extension": self.extension,
            "witnesses": self.witnesses,
            "choice_seed": self.choice_seed,
            "policy": self.policy,
        }

    def calculate_hash(self) -> str:
        return hashlib.sha256(json.dumps(self.body(), sort_keys=True).encode()).hexdigest()

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.body(), digest=self.digest)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "MasseyCertificate":
        cert = cls(
            int(data["p"]), int(data["D"]), tuple(data["x"]), tuple(data["y"]), data["argument"],
            int(data["value"]), data["extension"], data["witnesses"], int(data["choice_seed"]), data["policy"],
        )
        if "digest" in data and data["digest"] != cert.digest:
            raise ValueError("certificate digest does not match its contents")
        return cert


def merkle_root(digests: List[str]) -> str:
    """Pairwise sha256 tree over the certificate digests."""
    if not digests:
        return hashlib.sha256(b"").hexdigest()
    level = [hashlib.sha256(d.encode()).hexdigest() for d in digests]
    while len(level) > 1:
        if len(level) % 2:
            level.append(level[-1])
        level = [hashlib.sha256((level[i] + level[i + 1]).encode()).hexdigest() for i in range(0, len(level), 2)]
    return level[0]


@dataclass
class ZassenhausMatrix:
    """entries[i][j]: column 0 is <x, x, y>, column 1 is <y, y, x>, row i is e_{i+1}."""

    p: int
    D: int
    entries: Tuple[Tuple[int, int], Tuple[int, int]]
    certificates: List[MasseyCertificate] = field(default_factory=list, repr=False)

    @property
    def rank(self) -> int:
        return fp_rank([list(row) for row in self.entries], self.p)

    def is_zero(self) -> bool:
        return self.rank == 0

    def certificates_digest(self) -> str:
        return merkle_root([c.digest for c in self.certificates])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "D": self.D,
            "entries": [list(row) for row in self.entries],
            "rank": self.rank,
            "certificates_digest": self.certificates_digest(),
        }


class MasseyEngine:
    """Evaluates <x, x, y> for one field, caching L_x and its relative maps per character.

    Args:
        G: the class group of K.
        p: an odd prime.
        provider: source of degree-p defining polynomials.
        seed: drives every random choice (Hilbert 90 resolvents, relation search).
        time_limit: seconds allowed per evaluation; None disables the check.
        grh: when True the class groups of L_x may assume GRH after the
            heuristic bound fails; otherwise the fallback is the Minkowski bound.
    """

    def __init__(
        self,
        G: ClassGroupQF,
        p: int,
        provider: ExtensionProvider,
        seed: int = 0,
        time_limit: Optional[float] = DEFAULT_TIME_LIMIT,
        grh: bool = True,
    ):
        self.hypothesis = hypothesis_guard(G.D, p)
        self.G = G
        self.p = p
        self.provider = provider
        self.seed = seed
        self.time_limit = time_limit
        self.fallback = BoundPolicy.GRH if grh else BoundPolicy.MINKOWSKI
        self._extensions: Dict[Tuple[int, ...], UnramifiedExtension] = {}
        self._maps: Dict[Tuple[Tuple[int, ...], str], RelativeMaps] = {}

    def extension(self, x: CharacterModP) -> UnramifiedExtension:
        key = x.values_on_generators
        if key not in self._extensions:
            self._extensions[key] = build_extension(self.G, self.p, x, self.provider)
            logger.info(f"built L_x for D={self.G.D}, x={list(key)}")
        return self._extensions[key]

    def maps(self, x: CharacterModP, policy: BoundPolicy = BoundPolicy.HEURISTIC) -> RelativeMaps:
        key = (x.values_on_generators, policy.value)
        if key not in self._maps:
            self._maps[key] = RelativeMaps(self.extension(x), self.G, policy=policy, seed=self.seed, fallback=self.fallback)
        return self._maps[key]

    def evaluate(self, x: CharacterModP, y: CharacterModP, m: MuPClass, seed: Optional[int] = None) -> MasseyCertificate:
        """<x, x, y> at m, with its certificate.

        Raises:
            NoProviderData, KernelMismatch: when L_x cannot be built.
            LiftObstructed, ObstructionNonzero: when a lifting step fails.
            TimeLimitExceeded: past the per-evaluation time limit.
        """
        if x.is_zero():
            raise ValueError("x must be a nonzero character")
        seed = self.seed if seed is None else seed
        # the fallback retry shares the budget of the evaluation
        with time_budget(self.time_limit):
            try:
                return self._evaluate(x, y, m, seed, BoundPolicy.HEURISTIC)
            except (ObstructionNonzero, SearchExhausted) as e:
                logger.warning(f"heuristic class group of L_x failed ({e}), retrying with {self.fallback.value}")
                return self._evaluate(x, y, m, seed, self.fallback)

    def _evaluate(self, x: CharacterModP, y: CharacterModP, m: MuPClass, seed: int, policy: BoundPolicy) -> MasseyCertificate:
        R = self.maps(x, policy)
        check_deadline()
        z = lift_dual_cocycle(R, m, random.Random(seed))
        check_deadline()
        u, J_prime, I_prime = R.decompose_ideal(z.I_divisor)
        check_deadline()
        value = massey_value_from(R, y, z.J_divisor, I_prime)
        ext = R.extension
        witnesses = dict(z.to_dict(), u=_fractions(u), J_prime=divisor_to_list(J_prime), I_prime=divisor_to_list(I_prime))
        cert = MasseyCertificate(
            self.p, self.G.D, x.values_on_generators, y.values_on_generators, m.to_dict(), value,
            {"subfield_polynomial": list(ext.subfield_polynomial), "sigma": ext.sigma_matrix},
            witnesses, seed, policy.value,
        )
        logger.debug(f"<x,x,y> = {value} for D={self.G.D}, x={list(x.values_on_generators)}, seed={seed}")
        return cert

    def zassenhaus_matrix(self) -> ZassenhausMatrix:
        """Both columns <x,x,y>, <y,y,x> on the mu_p basis e_1, e_2, for Cl(K) of p-rank 2.

        Raises:
            HypothesisViolated: when the p-rank is not 2.
        """
        if p_rank(self.G, self.p) != 2:
            raise HypothesisViolated(f"p-rank of Cl({self.G.D}) is {p_rank(self.G, self.p)}, not 2")
        x, y = character_basis(self.G, self.p)
        basis = mu_p_basis(self.G, self.p)
        certificates = []
        rows = []
        for e in basis:
            first = self.evaluate(x, y, e)
            second = self.evaluate(y, x, e)
            certificates.extend([first, second])
            rows.append((first.value, second.value))
        zm = ZassenhausMatrix(self.p, self.G.D, (rows[0], rows[1]), certificates)
        logger.info(f"Zassenhaus matrix for (p, D)=({self.p}, {self.G.D}): {[list(r) for r in zm.entries]}, rank {zm.rank}")
        return zm


def massey_xxy(
    G: ClassGroupQF,
    x: CharacterModP,
    y: CharacterModP,
    m: MuPClass,
    provider: ExtensionProvider,
    seed: int = 0,
    time_limit: Optional[float] = DEFAULT_TIME_LIMIT,
) -> Tuple[int, MasseyCertificate]:
    engine = MasseyEngine(G, x.p, provider, seed=seed, time_limit=time_limit)
    cert = engine.evaluate(x, y, m)
    return cert.value, cert


def zassenhaus_matrix(
    D: int,
    p: int,
    provider: ExtensionProvider,
    seed: int = 0,
    time_limit: Optional[float] = DEFAULT_TIME_LIMIT,
    grh: bool = True,
) -> ZassenhausMatrix:
    G = class_group(D)
    if p_rank(G, p) == 0:
        raise NoPTorsion(D, p)
    return MasseyEngine(G, p, provider, seed=seed, time_limit=time_limit, grh=grh).zassenhaus_matrix()


def replay_certificate(cert: MasseyCertificate, G: Optional[ClassGroupQF] = None) -> int:
    """Recomputes the value from the stored witnesses only.

    L_x is rebuilt from the stored polynomial with the stored sigma; the
    cocycle relations, the norm condition and the ideal decomposition are
    checked exactly before the value is read off.

    Raises:
        WitnessEquationFailed: naming the first stored relation that fails.
    """
    G = G or class_group(cert.D)
    hypothesis_guard(cert.D, cert.p)
    ext = extension_from_polynomial(cert.D, cert.p, cert.extension["subfield_polynomial"])
    ext = replace(ext, sigma_matrix=[list(r) for r in cert.extension["sigma"]], _sigma_powers=[])
    if not verify_unramified(ext).passed:
        raise WitnessEquationFailed("stored sigma")
    R = RelativeMaps(ext, G, seed=cert.choice_seed)
    K, L = R.K, R.L
    w = cert.witnesses
    m = MuPClass.from_dict(cert.argument)
    z = DualCocycle.build(
        _parse_fractions(w["b"]), _parse_fractions(w["a"]), divisor_from_list(K, w["J"]), divisor_from_list(L, w["I"])
    )
    if not is_dual_cocycle(R, z):
        raise WitnessEquationFailed("dual cocycle relations")
    if R.norm(z.a) != tuple(m.a_prime):
        raise WitnessEquationFailed("N(a) = a'")
    u = _parse_fractions(w["u"])
    J_prime = divisor_from_list(K, w["J_prime"])
    I_prime = divisor_from_list(L, w["I_prime"])
    recomposed = divisor_add(divisor_of_element(L, u), R.extend_divisor(J_prime), R.one_minus_sigma(I_prime))
    if recomposed != z.I_divisor:
        raise WitnessEquationFailed("I = div(u) + i(J') + (1 - sigma)I'")
    y = CharacterModP(cert.p, tuple(cert.y))
    return massey_value_from(R, y, z.J_divisor, I_prime)

"""Relative arithmetic of L_x / K: i_x, N_x, sigma on elements, ideals and divisors.

Sequences the literature writes additively are computed multiplicatively on
elements and additively on divisors:

    a + b        ->  a * b
    (1 - sigma)a ->  a / sigma(a)
    p a          ->  a^p
    N a          ->  prod_k sigma^k(a)
"""

import logging
import random
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ..budget import check_deadline
from ..errors import NotANorm, NotPrincipal, ObstructionNonzero, RelationSearchExhausted, ResolventDegenerate, SearchExhausted
from ..extension.unramified import UnramifiedExtension
from ..linalg.matrices import rational_inverse, rational_vecmat, solve_integer_system
from ..numberfield.classgroup import BoundPolicy, ClassGroupNF, class_group_nf, divisor_class, find_generator, is_principal
from ..numberfield.ideals import (
    Divisor,
    FractionalIdeal,
    PrimeIdeal,
    divisor_add,
    divisor_of_element,
    divisor_scale,
    divisor_sub,
    factor_ideal,
    ideal_contains,
    ideal_from_divisor,
    ideal_from_generators,
    ideal_from_rows,
    prime_decomposition,
)
from ..quadratic.bridge import form_to_ideal
from ..quadratic.classgroup import ClassGroupQF, class_group

logger = logging.getLogger("masseytower.relative")

Element = Tuple[Fraction, ...]


class RelativeMaps:
    """i_x, N_x and sigma_x for one extension, with caches for prime maps and Cl(L)."""

    def __init__(
        self,
        extension: UnramifiedExtension,
        base_group: Optional[ClassGroupQF] = None,
        policy: BoundPolicy = BoundPolicy.HEURISTIC,
        seed: int = 0,
        fallback: BoundPolicy = BoundPolicy.GRH,
    ):
        self.extension = extension
        self.p = extension.p
        self.K = extension.base
        self.L = extension.order
        self.base_group = base_group or class_group(extension.D)
        self.policy = policy
        self.seed = seed
        self.fallback = fallback
        self._class_group: Optional[ClassGroupNF] = None
        self._sigma_primes: Dict[PrimeIdeal, PrimeIdeal] = {}
        self._below: Dict[PrimeIdeal, PrimeIdeal] = {}
        self._restrict_columns = self._pick_columns()

    # elements

    def embed(self, a: Sequence) -> Element:
        return self.extension.embed(a)

    def sigma(self, x: Sequence, k: int = 1) -> Element:
        return self.extension.sigma(x, k)

    def _pick_columns(self) -> Tuple[List[int], List[List[Fraction]]]:
        M = self.extension.embed_matrix
        n = self.L.degree
        for j0 in range(n):
            for j1 in range(j0 + 1, n):
                det = M[0][j0] * M[1][j1] - M[0][j1] * M[1][j0]
                if det:
                    return [j0, j1], rational_inverse([[M[0][j0], M[0][j1]], [M[1][j0], M[1][j1]]])
        raise ValueError("embedding of K has rank below 2")

    def restrict(self, y: Sequence) -> Element:
        """The element of K whose image is y; ValueError when y is not in i_x(K)."""
        columns, inverse = self._restrict_columns
        a = tuple(rational_vecmat([y[j] for j in columns], inverse))
        if self.embed(a) != tuple(Fraction(v) for v in y):
            raise ValueError("element does not lie in K")
        return a

    def norm_in_L(self, x: Sequence) -> Element:
        result = tuple(Fraction(v) for v in x)
        for k in range(1, self.p):
            result = self.L.mul(result, self.sigma(x, k))
        return result

    def norm(self, x: Sequence) -> Element:
        """N_{L/K}(x) in K coordinates."""
        return self.restrict(self.norm_in_L(x))

    def gamma_operator(self, a: Sequence) -> Element:
        """Gamma(a) = prod_n sigma^n(a)^(-n)."""
        result = self.L.one()
        for n in range(1, self.p):
            result = self.L.mul(result, self.L.power(self.sigma(a, n), -n))
        return result

    def check_gamma_identity(self, a: Sequence) -> bool:
        """(1 - sigma) Gamma = p - N, i.e. Gamma(a)/sigma(Gamma(a)) = a^p / N(a)."""
        g = self.gamma_operator(a)
        left = self.L.divide(g, self.sigma(g))
        right = self.L.divide(self.L.power(a, self.p), self.norm_in_L(a))
        return left == right

    def hilbert90(self, c: Sequence, rng: Optional[random.Random] = None, attempts: int = 64) -> Element:
        """b with sigma(b)/b = c, for N(c) = 1.

        Uses the resolvent b = sum_k (prod_{j<k} sigma^j(c^-1)) sigma^k(theta)
        over small random integral theta.

        Raises:
            ValueError: if N(c) != 1.
            ResolventDegenerate: if every theta gave b = 0.
        """
        L = self.L
        if self.norm_in_L(c) != L.one():
            raise ValueError("Hilbert 90 needs an element of norm 1")
        rng = rng or random.Random(self.seed)
        c_inv = L.inverse(c)
        prefixes = [L.one()]
        for j in range(self.p - 1):
            prefixes.append(L.mul(prefixes[-1], self.sigma(c_inv, j)))
        for _ in range(attempts):
            check_deadline()
            theta = L.random_element(rng, bound=2)
            b = L.zero()
            for k in range(self.p):
                b = L.add(b, L.mul(prefixes[k], self.sigma(theta, k)))
            if any(b):
                if L.divide(self.sigma(b), b) != tuple(Fraction(v) for v in c):
                    raise RuntimeError("Hilbert 90 resolvent failed its own identity")
                return b
        raise ResolventDegenerate(attempts)

    # primes and divisors

    def sigma_prime(self, P: PrimeIdeal) -> PrimeIdeal:
        if P not in self._sigma_primes:
            rows = [self.sigma(row) for row in P.ideal.hnf]
            image = ideal_from_rows(self.L, rows + [[P.q * int(i == k) for i in range(self.L.degree)] for k in range(self.L.degree)], modulus=P.q)
            match = next((Q for Q in prime_decomposition(self.L, P.q) if Q.ideal == image), None)
            if match is None:
                raise RuntimeError(f"sigma({P}) is not a prime of L")
            self._sigma_primes[P] = match
        return self._sigma_primes[P]

    def below(self, P: PrimeIdeal) -> PrimeIdeal:
        """The prime of K under a prime of L."""
        if P not in self._below:
            for Q in prime_decomposition(self.K, P.q):
                if all(ideal_contains(self.L, P.ideal, self.embed(row)) for row in Q.ideal.hnf):
                    self._below[P] = Q
                    break
            else:
                raise RuntimeError(f"no prime of K under {P}")
        return self._below[P]

    def primes_above(self, Q: PrimeIdeal) -> List[PrimeIdeal]:
        return [P for P in prime_decomposition(self.L, Q.q) if self.below(P) == Q]

    def is_split(self, Q: PrimeIdeal) -> bool:
        return len(self.primes_above(Q)) == self.p

    def sigma_divisor(self, D: Divisor, k: int = 1) -> Divisor:
        out = dict(D)
        for _ in range(k % self.p):
            out = {self.sigma_prime(P): v for P, v in out.items()}
        return out

    def one_minus_sigma(self, D: Divisor) -> Divisor:
        return divisor_sub(D, self.sigma_divisor(D))

    def extend_divisor(self, D: Divisor) -> Divisor:
        """i_x on divisors; L/K is unramified so every e(P/Q) is 1."""
        out: Divisor = {}
        for Q, v in D.items():
            for P in self.primes_above(Q):
                out[P] = out.get(P, 0) + v
        return {P: v for P, v in out.items() if v}

    def norm_divisor(self, D: Divisor) -> Divisor:
        out: Divisor = {}
        for P, v in D.items():
            Q = self.below(P)
            out[Q] = out.get(Q, 0) + v * (P.f // Q.f)
        return {Q: v for Q, v in out.items() if v}

    # HNF ideals

    def extend_ideal(self, J: FractionalIdeal) -> FractionalIdeal:
        return ideal_from_generators(self.L, [self.embed(row) for row in J.rows()])

    def sigma_ideal(self, I: FractionalIdeal) -> FractionalIdeal:
        return ideal_from_rows(self.L, [self.sigma(row) for row in I.rows()])

    def norm_ideal(self, I: FractionalIdeal) -> FractionalIdeal:
        return ideal_from_divisor(self.K, self.norm_divisor(factor_ideal(self.L, I)))

    # class group of L

    def class_group(self) -> ClassGroupNF:
        if self._class_group is None:
            try:
                self._class_group = class_group_nf(self.L, self.policy, seed=self.seed)
            except RelationSearchExhausted:
                if self.policy is not BoundPolicy.HEURISTIC:
                    raise
                logger.warning(f"relation search failed under the heuristic bound, retrying with {self.fallback.value}")
                self._class_group = class_group_nf(self.L, self.fallback, seed=self.seed)
        return self._class_group

    def _base_generator_divisors(self) -> List[Divisor]:
        D = self.base_group.D
        return [factor_ideal(self.K, form_to_ideal(self.K, D, g)) for g in self.base_group.generators]

    def _class_vector(self, D: Divisor) -> List[int]:
        return list(divisor_class(self.L, self.class_group(), D))

    def generator_of(self, D: Divisor) -> Element:
        """u with div(u) = D, verified exactly."""
        ideal = ideal_from_divisor(self.L, D)
        u = find_generator(self.L, ideal)
        if u is None:
            u = is_principal(self.L, ideal, self.class_group())
        if divisor_of_element(self.L, u) != {P: v for P, v in D.items() if v}:
            raise RuntimeError("principal generator failed verification")
        return u

    # norm equations and decompositions

    def _norm_preimage(self, target: Divisor) -> Divisor:
        """A divisor of L with norm equal to the K-divisor target."""
        out: Divisor = {}
        for Q, e in target.items():
            above = self.primes_above(Q)
            if e % self.p == 0:
                for P in above:
                    out[P] = out.get(P, 0) + e // self.p
            elif len(above) == self.p:
                out[above[0]] = out.get(above[0], 0) + e
            else:
                raise NotANorm(f"valuation {e} at inert prime {Q.label()} is prime to {self.p}")
        return out

    def solve_norm_element(self, a_prime: Sequence) -> Element:
        """a in L with N(a) = a_prime, exactly.

        Raises:
            NotANorm: when an inert prime carries a valuation prime to p, or the
                divisor class obstructs.
            SearchExhausted: when the principal generator search gives up.
        """
        K, L = self.K, self.L
        a_prime = tuple(Fraction(v) for v in a_prime)
        if a_prime == K.one():
            return L.one()
        preimage = self._norm_preimage(divisor_of_element(K, a_prime))
        try:
            u = self.generator_of(preimage)
        except (NotPrincipal, SearchExhausted):
            cg = self.class_group()
            if not cg.invariant_factors:
                raise
            target = [-v for v in self._class_vector(preimage)]
            twists = [self.one_minus_sigma(cg.generator_divisor(j)) for j in range(len(cg.invariant_factors))]
            rows = [self._class_vector(T) for T in twists]
            rows += [[d * int(i == j) for i in range(len(cg.invariant_factors))] for j, d in enumerate(cg.invariant_factors)]
            z = solve_integer_system(rows, target)
            if z is None:
                raise NotANorm(f"class {target} of the norm preimage is outside (1-sigma)Cl(L)")
            for j, T in enumerate(twists):
                preimage = divisor_add(preimage, divisor_scale(T, z[j]))
            u = self.generator_of(preimage)
        N = self.norm(u)
        if N == a_prime:
            return u
        if N == K.neg(a_prime):
            return L.neg(u)
        raise NotANorm(f"generator has norm {N}, not +-{a_prime}")

    def decompose_ideal(self, I: Divisor) -> Tuple[Element, Divisor, Divisor]:
        """(u, J', I') with I = div(u) + i_x(J') + (1 - sigma)I', verified exactly.

        The class [I] is written in Cl(L) against the images of the Cl(K)
        generators and the (1 - sigma)-images of the Cl(L) generators; the
        remainder is principal.

        Raises:
            ObstructionNonzero: when [I] is outside i_x Cl(K) + (1 - sigma) Cl(L).
        """
        cg = self.class_group()
        base = self._base_generator_divisors()
        s = [0] * len(base)
        r = [0] * len(cg.invariant_factors)
        if cg.invariant_factors:
            target = self._class_vector(I)
            rows = [self._class_vector(self.extend_divisor(g)) for g in base]
            twists = [self.one_minus_sigma(cg.generator_divisor(j)) for j in range(len(r))]
            rows += [self._class_vector(T) for T in twists]
            rows += [[d * int(i == j) for i in range(len(r))] for j, d in enumerate(cg.invariant_factors)]
            z = solve_integer_system(rows, target)
            if z is None:
                raise ObstructionNonzero(target)
            s = [_symmetric(v, d) for v, d in zip(z[: len(base)], self.base_group.invariant_factors)]
            r = [_symmetric(v, d) for v, d in zip(z[len(base): len(base) + len(r)], cg.invariant_factors)]
        J_prime: Divisor = {}
        for g, e in zip(base, s):
            J_prime = divisor_add(J_prime, divisor_scale(g, e))
        I_prime: Divisor = {}
        for j, e in enumerate(r):
            I_prime = divisor_add(I_prime, divisor_scale(cg.generator_divisor(j), e))
        residual = divisor_sub(divisor_sub(I, self.extend_divisor(J_prime)), self.one_minus_sigma(I_prime))
        u = self.generator_of(residual) if residual else self.L.one()
        recomposed = divisor_add(divisor_of_element(self.L, u), self.extend_divisor(J_prime), self.one_minus_sigma(I_prime))
        if recomposed != {P: v for P, v in I.items() if v}:
            raise RuntimeError("ideal decomposition failed to recompose")
        return u, J_prime, I_prime


def _symmetric(v: int, d: int) -> int:
    v %= d
    return v - d if 2 * v > d else v

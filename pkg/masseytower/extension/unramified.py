"""The unramified cyclic degree-p extension L_x / K attached to a character x.

L_x is built as K * F inside Q[t]/(f) (x) Q[s]/(s^2 - D), where F = Q[t]/(f)
is a degree-p subfield of its dihedral closure. The generator of Gal(L_x/K)
is found numerically as a permutation of the roots of f, then checked
exactly, and finally pinned so that Frobenius at a chosen prime q0 with
x(q0) = 1 is sigma_x itself.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import mpmath
from sympy import factorint, nextprime

from ..budget import check_deadline
from ..errors import KernelMismatch
from ..linalg.matrices import int_matrix, rational_vecmat, smith_diagonal
from ..linalg.polynomials import polynomial_discriminant, roots_mod
from ..numberfield.algebra import TensorAlgebra
from ..numberfield.ideals import PrimeIdeal, ideal_contains, prime_decomposition
from ..numberfield.order import NumberFieldOrder, maximal_order, maximize, tensor_order
from ..quadratic.bridge import field_order, ideal_to_form
from ..quadratic.characters import CharacterModP
from ..quadratic.classgroup import ClassGroupQF, class_log, prime_forms
from ..quadratic.forms import prime_form
from .provider import ExtensionProvider

logger = logging.getLogger("masseytower.extension")

Matrix = List[List[int]]


@dataclass
class UnramifiedExtension:
    """L_x over K = Q(sqrt D); elements of L are rows in O_L coordinates, maps act as x @ M."""

    D: int
    p: int
    base: NumberFieldOrder
    order: NumberFieldOrder
    subfield_polynomial: Tuple[int, ...]
    sigma_matrix: Matrix
    embed_matrix: List[List[Fraction]]
    character: Optional[CharacterModP] = None
    artin_pinning: Optional[PrimeIdeal] = None
    _sigma_powers: List[Matrix] = field(default_factory=list, repr=False)

    def sigma_power(self, k: int) -> Matrix:
        k %= self.p
        if not self._sigma_powers:
            n = self.order.degree
            current = [[int(i == j) for j in range(n)] for i in range(n)]
            for _ in range(self.p):
                self._sigma_powers.append(current)
                current = _matmul(current, self.sigma_matrix)
        return self._sigma_powers[k]

    def sigma(self, x: Sequence, k: int = 1) -> Tuple[Fraction, ...]:
        return tuple(rational_vecmat(x, self.sigma_power(k)))

    def embed(self, a: Sequence) -> Tuple[Fraction, ...]:
        return tuple(rational_vecmat(a, self.embed_matrix))

    def to_dict(self) -> dict:
        return {
            "D": self.D,
            "p": self.p,
            "subfield_polynomial": list(self.subfield_polynomial),
            "discriminant": self.order.discriminant,
            "sigma": self.sigma_matrix,
            "character": self.character.to_dict() if self.character else None,
            "artin_pinning": self.artin_pinning.label() if self.artin_pinning else None,
        }


@dataclass
class UnramifiedReport:
    passed: bool
    discriminant: int
    expected: int
    ramified_primes: List[int]
    sigma_order: int
    fixed_rank: int


def _matmul(A: Matrix, B: Matrix) -> Matrix:
    n, m = len(A), len(B[0])
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(m)] for i in range(n)]


def _conjugation(roots: Sequence[mpmath.mpc]) -> List[int]:
    return [min(range(len(roots)), key=lambda j: abs(roots[j] - mpmath.conj(r))) for r in roots]


def _evaluate_polynomial(order: NumberFieldOrder, coefficients: Sequence[int], x: Sequence) -> Tuple[Fraction, ...]:
    result = order.zero()
    for c in reversed(coefficients):
        result = order.add(order.mul(result, x), order.from_rational(c))
    return result


def _sigma_of_theta(order: NumberFieldOrder, algebra: TensorAlgebra, coefficients: Sequence[int], p: int, prec: int):
    """A nontrivial K-automorphism's image of t, in O_L coordinates, or None at this precision."""
    n = order.degree
    r1, r2 = algebra.factor_roots(prec)
    conj = _conjugation(r1)
    E = order.embeddings(prec)
    theta = order.from_ambient(algebra.first_generator())
    with mpmath.workprec(prec):
        A = mpmath.matrix(n, n)
        for i in range(n):
            for k in range(n):
                A[i, k] = E[k][i]
        tolerance = mpmath.mpf(2) ** (-prec // 3)
        for tail in itertools.permutations(range(1, p)):
            check_deadline()
            cycle = (0,) + tail
            pi = {cycle[i]: cycle[(i + 1) % p] for i in range(p)}
            v = mpmath.matrix(n, 1)
            for a in range(p):
                v[2 * a, 0] = r1[pi[a]]
                v[2 * a + 1, 0] = r1[conj[pi[conj[a]]]]
            try:
                X = mpmath.lu_solve(A, v)
            except ZeroDivisionError:
                return None
            coords = []
            for k in range(n):
                z = X[k]
                rounded = int(mpmath.nint(z.real))
                if abs(z.imag) > tolerance or abs(z.real - rounded) > tolerance:
                    break
                coords.append(rounded)
            else:
                tau = order.element(coords)
                if tau != theta and not any(_evaluate_polynomial(order, coefficients, tau)):
                    return tau
    return None


def _sigma_matrix_from(order: NumberFieldOrder, algebra: TensorAlgebra, tau: Sequence) -> Matrix:
    """Rows sigma(w_k) for t -> tau, s -> s."""
    m = algebra.m
    s = order.from_ambient(algebra.second_generator())
    tau_powers = [order.one()]
    for _ in range(1, m):
        tau_powers.append(order.mul(tau_powers[-1], tau))
    images = []
    for row in order.basis:
        image = order.zero()
        for j in range(algebra.k):
            part = order.zero()
            for i in range(m):
                c = row[algebra.index(i, j)]
                if c:
                    part = order.add(part, order.scale(tau_powers[i], c))
            if j:
                part = order.mul(part, order.power(s, j))
            image = order.add(image, part)
        if not order.is_integral(image):
            raise ValueError("conjugate of t does not preserve the maximal order")
        images.append([int(v) for v in image])
    return images


def _embedding_of_base(order: NumberFieldOrder, algebra: TensorAlgebra, base: NumberFieldOrder) -> List[List[Fraction]]:
    rows = []
    for row in base.basis:
        v = [Fraction(0)] * algebra.degree
        v[algebra.index(0, 0)] = row[0]
        v[algebra.index(0, 1)] = row[1]
        rows.append(list(order.from_ambient(v)))
    return rows


def extension_from_polynomial(D: int, p: int, coefficients: Sequence[int]) -> UnramifiedExtension:
    """K * F for F = Q[t]/(f), with some generator of Gal(L/K); unpinned and unverified."""
    coefficients = tuple(int(c) for c in coefficients)
    base = field_order(D)
    subfield = maximal_order(coefficients)
    algebra = TensorAlgebra(coefficients, [-D, 0, 1])
    order = tensor_order(algebra, subfield, base, label=f"L({D},{list(coefficients)})")
    common = math.gcd(abs(subfield.discriminant), abs(D))
    order = maximize(order, sorted(factorint(common).keys()))
    tau = None
    prec = 128
    for _ in range(4):
        tau = _sigma_of_theta(order, algebra, coefficients, p, prec)
        if tau is not None:
            break
        prec *= 2
        logger.warning(f"conjugate search for {list(coefficients)} raised precision to {prec} bits")
    if tau is None:
        raise ValueError(f"no K-automorphism of order {p} found for {list(coefficients)}")
    sigma = _sigma_matrix_from(order, algebra, tau)
    embed = _embedding_of_base(order, algebra, base)
    return UnramifiedExtension(D, p, base, order, coefficients, sigma, embed)


def frobenius_exponent(L: UnramifiedExtension, Q: PrimeIdeal) -> int:
    """k with Frob_Q = sigma^k for the extension's current sigma."""
    order = L.order
    q = Q.q
    NQ = Q.norm
    above = None
    images = [L.embed(row) for row in Q.ideal.hnf]
    for P in prime_decomposition(order, q):
        if all(ideal_contains(order, P.ideal, x) for x in images):
            above = P
            break
    if above is None:
        raise RuntimeError(f"no prime of L above {Q}")
    n = order.degree
    powers = [order.power_mod([int(i == k) for i in range(n)], NQ, q) for k in range(n)]
    for k in range(L.p):
        S = L.sigma_power(k)
        if all(ideal_contains(order, above.ideal, [(S[i][j] - powers[i][j]) % q for j in range(n)]) for i in range(n)):
            return k
    raise RuntimeError(f"Frobenius at {Q} is not a power of sigma")


def frobenius_class(L: UnramifiedExtension, Q: PrimeIdeal) -> int:
    """k in Z/p with Frob_Q = sigma_x^k."""
    return frobenius_exponent(L, Q)


def character_value(G: ClassGroupQF, x: CharacterModP, Q: PrimeIdeal) -> int:
    return x.on_exponents(class_log(G, ideal_to_form(G.D, Q.ideal)))


def _test_primes(G: ClassGroupQF, count: int) -> List[PrimeIdeal]:
    base = field_order(G.D)
    out = []
    bound = 50
    while len(out) < count:
        out = []
        for q, _ in prime_forms(G.D, bound):
            out.extend(prime_decomposition(base, q))
        bound *= 2
    return out[:count]


def pin_sigma(L: UnramifiedExtension, G: ClassGroupQF, x: CharacterModP) -> UnramifiedExtension:
    """Replaces sigma by Frob_{q0} for the first small prime q0 with x(q0) = 1."""
    for Q in _test_primes(G, 200):
        if character_value(G, x, Q) != 1:
            continue
        k = frobenius_exponent(L, Q)
        if k == 0:
            raise KernelMismatch(G.D, x.values_on_generators)
        pinned = replace(L, sigma_matrix=L.sigma_power(k), character=x, artin_pinning=Q, _sigma_powers=[])
        logger.debug(f"sigma_x pinned at {Q} (power {k})")
        return pinned
    raise KernelMismatch(G.D, x.values_on_generators)


def artin_consistent(L: UnramifiedExtension, G: ClassGroupQF, x: CharacterModP, count: int = 20) -> bool:
    for Q in _test_primes(G, count):
        if frobenius_class(L, Q) != character_value(G, x, Q):
            return False
    return True


def verify_unramified(L: UnramifiedExtension) -> UnramifiedReport:
    """disc(L) = D^p, sigma of exact order p, fixed lattice of rank 2."""
    expected = L.D ** L.p
    disc = L.order.discriminant
    ramified: List[int] = []
    if disc != expected:
        quotient = Fraction(disc, expected)
        ramified = sorted(set(factorint(abs(quotient.numerator))) | set(factorint(quotient.denominator)))
        ramified = [q for q in ramified if q > 1]
    n = L.order.degree
    identity = [[int(i == j) for j in range(n)] for i in range(n)]
    sigma_order = 1
    current = L.sigma_matrix
    while current != identity and sigma_order <= L.p:
        current = _matmul(current, L.sigma_matrix)
        sigma_order += 1
    difference = [[L.sigma_matrix[i][j] - identity[i][j] for j in range(n)] for i in range(n)]
    fixed_rank = n - sum(1 for d in smith_diagonal(int_matrix(difference)) if d)
    fixes_base = all(L.sigma(row) == tuple(row) for row in L.embed_matrix)
    passed = disc == expected and sigma_order == L.p and fixed_rank == 2 and fixes_base
    return UnramifiedReport(passed, disc, expected, ramified, sigma_order, fixed_rank)


def _kernel_matches(G: ClassGroupQF, x: CharacterModP, coefficients: Sequence[int], tests: int = 30) -> bool:
    """x(q) = 0 exactly when f splits completely mod q, over split primes q."""
    disc = polynomial_discriminant(list(coefficients))
    p = len(coefficients) - 1
    checked = 0
    q = 2
    while checked < tests:
        q = nextprime(q)
        if disc % q == 0:
            continue
        g = prime_form(G.D, q)
        if g is None or G.D % q == 0:
            continue
        value = x.on_exponents(class_log(G, g))
        if (value == 0) != (len(roots_mod(list(coefficients), q)) == p):
            return False
        checked += 1
    return True


def build_extension(G: ClassGroupQF, p: int, x: CharacterModP, provider: ExtensionProvider) -> UnramifiedExtension:
    """L_x for the character x of Cl(D), with sigma_x pinned and the Artin map checked.

    Raises:
        NoProviderData: when the provider has no polynomials for (p, D).
        KernelMismatch: when no candidate has Artin kernel ker x.
    """
    if x.is_zero():
        raise ValueError("the zero character has no degree-p extension")
    for record in provider.candidates(p, G.D):
        check_deadline()
        if not _kernel_matches(G, x, record.coefficients):
            continue
        L = extension_from_polynomial(G.D, p, record.coefficients)
        report = verify_unramified(L)
        if not report.passed:
            logger.warning(f"candidate {list(record.coefficients)} rejected: ramified at {report.ramified_primes}")
            continue
        L = pin_sigma(L, G, x)
        if not artin_consistent(L, G, x):
            logger.warning(f"candidate {list(record.coefficients)} rejected: Artin map disagrees with x")
            continue
        logger.info(f"L_x for D={G.D}, p={p} built from {list(record.coefficients)}")
        return L
    raise KernelMismatch(G.D, x.values_on_generators)

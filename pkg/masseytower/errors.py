"""Exception hierarchy for the whole toolkit.

Library code raises these; only the scanner catches broadly and turns a
failure into a record field.
"""

from typing import Optional, Sequence


class MasseyToolkitError(Exception):
    """Base class for every error raised by masseytower."""


# quad-class

class FormWrongDiscriminant(MasseyToolkitError):
    def __init__(self, form, discriminant: int):
        super().__init__(f"form {form} does not have discriminant {discriminant}")
        self.form = form
        self.discriminant = discriminant


class NoPTorsion(MasseyToolkitError):
    def __init__(self, discriminant: int, p: int):
        super().__init__(f"Cl({discriminant}) has no {p}-torsion")
        self.discriminant = discriminant
        self.p = p


# nf-core

class ReduciblePolynomial(MasseyToolkitError):
    def __init__(self, coefficients: Sequence[int]):
        super().__init__(f"polynomial {list(coefficients)} is reducible over Q")
        self.coefficients = tuple(coefficients)


class RelationSearchExhausted(MasseyToolkitError):
    def __init__(self, found: int, needed: int):
        super().__init__(f"relation search gave up with {found} relations, {needed} columns")
        self.found = found
        self.needed = needed


class NotPrincipal(MasseyToolkitError):
    def __init__(self, exponents: Sequence[int]):
        super().__init__(f"ideal is not principal, class exponents {list(exponents)}")
        self.exponents = tuple(exponents)


class PrecisionRetry(MasseyToolkitError):
    """Raised internally when a lattice search needs more working precision."""

    def __init__(self, precision: int):
        super().__init__(f"lattice search failed at {precision} bits")
        self.precision = precision


# unram-ext

class NoProviderData(MasseyToolkitError):
    def __init__(self, p: int, discriminant: int):
        super().__init__(f"no provider record for p={p}, D={discriminant}")
        self.p = p
        self.discriminant = discriminant


class KernelMismatch(MasseyToolkitError):
    def __init__(self, discriminant: int, character_values: Sequence[int]):
        super().__init__(
            f"no candidate extension of D={discriminant} has Artin kernel ker x, x={list(character_values)}"
        )
        self.discriminant = discriminant
        self.character_values = tuple(character_values)


class ProviderFormatError(MasseyToolkitError):
    def __init__(self, path: str, line_number: int, reason: str):
        super().__init__(f"{path}:{line_number}: {reason}")
        self.path = path
        self.line_number = line_number
        self.reason = reason


# rel-arith

class NotANorm(MasseyToolkitError):
    def __init__(self, witness: str):
        super().__init__(f"element is not a relative norm: {witness}")
        self.witness = witness


class SearchExhausted(MasseyToolkitError):
    def __init__(self, what: str, budget: int):
        super().__init__(f"{what}: search budget {budget} exhausted")
        self.what = what
        self.budget = budget


class ResolventDegenerate(MasseyToolkitError):
    def __init__(self, attempts: int):
        super().__init__(f"Hilbert 90 resolvent vanished {attempts} times in a row")
        self.attempts = attempts


class ObstructionNonzero(MasseyToolkitError):
    def __init__(self, exponents: Sequence[int]):
        super().__init__(
            f"ideal class {list(exponents)} is outside i_x Cl(K) + (1-sigma) Cl(L)"
        )
        self.exponents = tuple(exponents)


class WitnessEquationFailed(MasseyToolkitError):
    def __init__(self, equation: str, component: Optional[int] = None):
        where = f" at component {component}" if component is not None else ""
        super().__init__(f"torsor witness equation {equation} failed{where}")
        self.equation = equation
        self.component = component


# massey-engine

class HypothesisViolated(MasseyToolkitError):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class LiftObstructed(MasseyToolkitError):
    def __init__(self, obstruction: Sequence[int]):
        super().__init__(
            f"divisor class {list(obstruction)} is not in p Cl(K); cannot make div(b) p-divisible"
        )
        self.obstruction = tuple(obstruction)


class TimeLimitExceeded(MasseyToolkitError):
    def __init__(self, limit: float):
        super().__init__(f"time limit of {limit:.0f}s exceeded")
        self.limit = limit


# gcoh-oracle

class CupNonzero(MasseyToolkitError):
    def __init__(self, which: str):
        super().__init__(f"cup product {which} is not a coboundary")
        self.which = which


# resolution-kit

class IdentityFailed(MasseyToolkitError):
    def __init__(self, cell: str):
        super().__init__(f"identity failed at {cell}")
        self.cell = cell


class ExactnessFailed(MasseyToolkitError):
    def __init__(self, node: str, deficit: int):
        super().__init__(f"not exact at {node}, rank deficit {deficit}")
        self.node = node
        self.deficit = deficit


# tower-classifier

class MatrixMissing(MasseyToolkitError):
    def __init__(self, p_rank: int):
        super().__init__(f"p-rank {p_rank} needs a Zassenhaus matrix")
        self.p_rank = p_rank


# scan-cli

class CorruptCache(MasseyToolkitError):
    def __init__(self, path: str, line_number: int):
        super().__init__(f"{path}: unreadable record at line {line_number}")
        self.path = path
        self.line_number = line_number


class ConfigError(MasseyToolkitError):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason

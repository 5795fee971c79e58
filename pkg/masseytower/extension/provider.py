"""Sources of degree-p polynomials whose fields sit inside the unramified L_x.

A record is the defining polynomial of a degree-p subfield F of the
dihedral closure; L_x is then K * F. For p = 3 the polynomials come from the
cubic field search; for p >= 5 they come from a plain text file with lines

    p D c_0 c_1 ... c_p

(ascending coefficients of a monic integer polynomial). Blank lines and
lines starting with '#' are skipped.
"""

import logging
import os
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from ..errors import NoProviderData, ProviderFormatError
from ..linalg.polynomials import is_irreducible_over_q
from .cubic import cubic_fields_of_discriminant

logger = logging.getLogger("masseytower.extension")


@dataclass(frozen=True)
class ExtensionProviderRecord:
    p: int
    D: int
    coefficients: Tuple[int, ...]

    def to_dict(self) -> dict:
        return {"p": self.p, "D": self.D, "coefficients": list(self.coefficients)}


class ExtensionProvider(ABC):
    """Hands out candidate degree-p polynomials for (p, D)."""

    @abstractmethod
    def candidates(self, p: int, D: int) -> List[ExtensionProviderRecord]:
        """Every known candidate; raises NoProviderData when there are none to offer."""
        pass

    @abstractmethod
    def describe(self) -> str:
        pass


class NativeCubicProvider(ExtensionProvider):
    """p = 3 only, from the cubic field search."""

    def __init__(self):
        self._cache: Dict[int, List[ExtensionProviderRecord]] = {}

    def candidates(self, p: int, D: int) -> List[ExtensionProviderRecord]:
        if p != 3:
            raise NoProviderData(p, D)
        if D not in self._cache:
            self._cache[D] = [ExtensionProviderRecord(3, D, tuple(f)) for f in cubic_fields_of_discriminant(D)]
        return self._cache[D]

    def describe(self) -> str:
        return "native-cubic"


class FileProvider(ExtensionProvider):
    def __init__(self, path: str):
        self.path = path
        self.records: Dict[Tuple[int, int], List[ExtensionProviderRecord]] = {}
        self._load()

    def _load(self):
        if not os.path.exists(self.path):
            raise ProviderFormatError(self.path, 0, "file not found")
        with open(self.path, "r") as f:
            for line_number, line in enumerate(f, start=1):
                text = line.strip()
                if not text or text.startswith("#"):
                    continue
                record = self._parse(text, line_number)
                self.records.setdefault((record.p, record.D), []).append(record)
        logger.info(f"Loaded {sum(len(v) for v in self.records.values())} provider records from {self.path}")

    def _parse(self, text: str, line_number: int) -> ExtensionProviderRecord:
        try:
            values = [int(tok) for tok in text.split()]
        except ValueError:
            raise ProviderFormatError(self.path, line_number, "non-integer field")
        if len(values) < 4:
            raise ProviderFormatError(self.path, line_number, "expected p D c_0 ... c_p")
        p, D, coefficients = values[0], values[1], values[2:]
        if D >= 0:
            raise ProviderFormatError(self.path, line_number, f"D={D} is not negative")
        if len(coefficients) != p + 1:
            raise ProviderFormatError(self.path, line_number, f"expected {p + 1} coefficients, got {len(coefficients)}")
        if coefficients[-1] != 1:
            raise ProviderFormatError(self.path, line_number, "polynomial is not monic")
        if not is_irreducible_over_q(coefficients):
            raise ProviderFormatError(self.path, line_number, "polynomial is reducible")
        return ExtensionProviderRecord(p, D, tuple(coefficients))

    def candidates(self, p: int, D: int) -> List[ExtensionProviderRecord]:
        found = self.records.get((p, D))
        if not found:
            raise NoProviderData(p, D)
        return found

    def describe(self) -> str:
        return f"file:{self.path}"


class ChainedProvider(ExtensionProvider):
    """Tries each provider in turn."""

    def __init__(self, providers: List[ExtensionProvider]):
        self.providers = providers

    def candidates(self, p: int, D: int) -> List[ExtensionProviderRecord]:
        for provider in self.providers:
            try:
                return provider.candidates(p, D)
            except NoProviderData:
                continue
        raise NoProviderData(p, D)

    def describe(self) -> str:
        return "+".join(provider.describe() for provider in self.providers)


def default_provider(path: Optional[str] = None) -> ExtensionProvider:
    """Native cubic search, plus the file when one is configured."""
    if path:
        return ChainedProvider([NativeCubicProvider(), FileProvider(path)])
    return NativeCubicProvider()

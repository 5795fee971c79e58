# masseytower/tower/__init__.py
from .classify import Classification, Reason, Verdict, classify, classify_invariants
from .golod import FINITE_TYPES, PresentationProfile, admissible_types, gs_positive, zassenhaus_polynomial

__all__ = [
    'Classification',
    'Reason',
    'Verdict',
    'classify',
    'classify_invariants',
    'FINITE_TYPES',
    'PresentationProfile',
    'admissible_types',
    'gs_positive',
    'zassenhaus_polynomial'
]

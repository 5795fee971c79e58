# masseytower/oracle/__init__.py
from .groups import GROUP_NAMES, FiniteGroupTable, named_group
from .massey import MasseySet, massey_dwyer, massey_via_twist
from .suite import OracleReport, run_oracle_suite

__all__ = [
    'GROUP_NAMES',
    'FiniteGroupTable',
    'named_group',
    'MasseySet',
    'massey_dwyer',
    'massey_via_twist',
    'OracleReport',
    'run_oracle_suite'
]

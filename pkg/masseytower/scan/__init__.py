# masseytower/scan/__init__.py
from .config import ScanConfig
from .records import SCHEMA_VERSION, Status, ZassenhausReport
from .report import ScanSummary, report
from .scanner import load_records, replay_record, resume, scan

__all__ = [
    'ScanConfig',
    'SCHEMA_VERSION',
    'Status',
    'ZassenhausReport',
    'ScanSummary',
    'report',
    'load_records',
    'replay_record',
    'resume',
    'scan'
]

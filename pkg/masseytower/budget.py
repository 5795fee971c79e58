"""Per-evaluation time budget, checked from inside the long search loops.

A scan worker runs one field at a time in its own process, so the active
deadline is process-wide state. Loops call ``check_deadline()`` once per
iteration; outside any ``time_budget`` block the call is a no-op.
"""

import time
from contextlib import contextmanager
from typing import Iterator, Optional, Tuple

from .errors import TimeLimitExceeded

# (deadline on the monotonic clock, the limit that set it)
_active: Optional[Tuple[float, float]] = None


@contextmanager
def time_budget(limit: Optional[float]) -> Iterator[None]:
    """Runs the block under ``limit`` seconds; None leaves any outer budget in force.

    Nested budgets never extend an outer one: the earlier deadline wins.
    """
    global _active
    saved = _active
    if limit is not None:
        candidate = (time.monotonic() + limit, limit)
        if _active is None or candidate[0] < _active[0]:
            _active = candidate
    try:
        yield
    finally:
        _active = saved


def check_deadline():
    """Raises TimeLimitExceeded once the active budget has run out."""
    if _active is not None and time.monotonic() >= _active[0]:
        raise TimeLimitExceeded(_active[1])


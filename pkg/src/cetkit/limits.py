"""Per-thread wall-clock deadlines with cooperative cancellation."""

import threading
import time
from contextlib import contextmanager

_state = threading.local()


class ComputationTimeout(RuntimeError):
    pass


def check_deadline() -> None:
    d = getattr(_state, "deadline", None)
    if d is not None and time.monotonic() > d:
        raise ComputationTimeout("wall-clock limit exceeded")


@contextmanager
def deadline(seconds: float | None):
    prev = getattr(_state, "deadline", None)
    _state.deadline = None if seconds is None else time.monotonic() + seconds
    try:
        yield
    finally:
        _state.deadline = prev

"""Check reports: a named verdict with witnesses, details and timing."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field

VERDICTS = ("holds", "fails", "degenerate", "bounded_evidence", "error")


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    to_dict = getattr(x, "to_dict", None)
    if to_dict is not None:
        return _plain(to_dict())
    return str(x)


@dataclass
class CheckReport:
    name: str
    verdict: str
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    timing_ms: float = 0.0
    seed_used: int | None = None
    evidence_degree: int | None = None

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.verdict == "fails" and not self.witnesses:
            raise ValueError("a failing report must carry a witness")
        if self.verdict == "bounded_evidence" and self.evidence_degree is None:
            raise ValueError("bounded evidence needs the degree bound")
        self.witnesses = [_plain(w) for w in self.witnesses]
        self.details = _plain(self.details)

    @property
    def label(self) -> str:
        if self.verdict == "bounded_evidence":
            return f"bounded_evidence({self.evidence_degree})"
        return self.verdict

    @property
    def passed(self) -> bool:
        return self.verdict in ("holds", "bounded_evidence")

    def to_dict(self, timings: bool = True) -> dict:
        out = {
            "name": self.name,
            "verdict": self.label,
            "witnesses": self.witnesses,
            "details": self.details,
            "seed_used": self.seed_used,
        }
        if timings:
            out["timing_ms"] = round(self.timing_ms, 3)
        return out


def verdict(ok: bool) -> str:
    return "holds" if ok else "fails"


@contextmanager
def timed():
    """Yields a one-element list that receives the elapsed milliseconds."""
    box = [0.0]
    t0 = time.perf_counter()
    try:
        yield box
    finally:
        box[0] = (time.perf_counter() - t0) * 1000.0

"""Structured verifier outcomes and their JSON form."""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field

HOLDS = "holds"
VIOLATED = "violated"
EQUALITY = "equality"


def _jsonable(x):
    if isinstance(x, complex):
        return [_jsonable(x.real), _jsonable(x.imag)]
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return _jsonable(x.to_json())
    if hasattr(x, "item"):  # numpy scalar
        return _jsonable(x.item())
    return x


def digest(obj) -> str:
    """Short stable hash of a JSON-serializable description of the inputs."""
    text = json.dumps(_jsonable(obj), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()[:16]


@dataclass
class VerificationReport:
    verifier: str
    inputs_digest: str
    slacks: list = field(default_factory=list)  # (label, point, slack)
    verdict: str = HOLDS
    witness: complex | None = None
    tolerances: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def min_slack(self) -> float:
        return min((s for _, _, s in self.slacks), default=math.inf)

    @property
    def ok(self) -> bool:
        return self.verdict != VIOLATED

    def add(self, label: str, point, slack: float):
        self.slacks.append((label, point, float(slack)))

    def to_json(self) -> dict:
        return _jsonable({
            "verifier": self.verifier,
            "inputs_digest": self.inputs_digest,
            "verdict": self.verdict,
            "min_slack": self.min_slack,
            "witness": None if self.witness is None else complex(self.witness),
            "slacks": [{"label": lab, "point": pt, "slack": s} for lab, pt, s in self.slacks],
            "tolerances": self.tolerances,
            "details": self.details,
        })

"""Check results and equation systems, with deterministic JSON forms."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .arith import Polynomial, RingContext

PASS, FAIL, INCONCLUSIVE, SKIP = "pass", "fail", "inconclusive", "skip"


@dataclass
class CheckResult:
    check: str
    status: str
    residual_terms: int = 0
    details: dict = field(default_factory=dict)
    seed: int | None = None
    duration_ms: float | None = None

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "check": self.check,
            "status": self.status,
            "residual_terms": self.residual_terms,
            "details": self.details,
            "seed": self.seed,
        }
        if timings:
            out["duration_ms"] = self.duration_ms
        return out


def result(check: str, residual: int, seed=None, **details) -> CheckResult:
    """PASS when the residual term count is zero."""
    return CheckResult(check, PASS if residual == 0 else FAIL, residual, details, seed)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


class CheckFailure(AssertionError):
    def __init__(self, name: str, witness):
        super().__init__(f"{name}: {witness}")
        self.name = name
        self.witness = witness


@dataclass(frozen=True)
class EquationSystem:
    """Labelled polynomial equations over one ring."""

    name: str
    ring: RingContext
    labels: tuple[str, ...]
    polys: tuple[Polynomial, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.polys):
            raise ValueError("labels and equations differ in number")
        for f in self.polys:
            if f.ring != self.ring:
                raise ValueError("equation outside the system ring")

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def __getitem__(self, label: str) -> Polynomial:
        return self.polys[self.labels.index(label)]

    def items(self):
        return zip(self.labels, self.polys)

    def max_degree(self) -> int:
        return max((f.degree() for f in self.polys), default=-1)

    def drop(self, labels: Iterable[str]) -> "EquationSystem":
        labels = set(labels)
        keep = [(l, f) for l, f in self.items() if l not in labels]
        return EquationSystem(self.name, self.ring, tuple(l for l, _ in keep), tuple(f for _, f in keep))

    def substitute(self, mapping: Mapping[str, object], ring: RingContext | None = None, name: str | None = None) -> "EquationSystem":
        target = ring or self.ring
        return EquationSystem(
            name or self.name,
            target,
            self.labels,
            tuple(f.substitute(mapping, target) for f in self.polys),
        )

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "variables": list(self.ring.names),
            "equations": [{"label": l, "text": str(f)} for l, f in self.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "EquationSystem":
        ring = RingContext(data["variables"])
        labels = tuple(e["label"] for e in data["equations"])
        polys = tuple(ring.parse(e["text"]) for e in data["equations"])
        return cls(data["name"], ring, labels, polys)

    def to_text(self) -> str:
        head = f"# {self.name}\n# variables: {' '.join(self.ring.names)}\n"
        return head + "".join(f"{l}: {f} = 0\n" for l, f in self.items())

    def to_macaulay2(self) -> str:
        vars_ = ",".join(self.ring.names)
        gens = ",\n  ".join(str(f) for f in self.polys)
        return f"R = QQ[{vars_}];\nI = ideal(\n  {gens}\n);\n"

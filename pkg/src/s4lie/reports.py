"""Verification report records shared by the checkers."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Report:
    condition: str
    status: str  # "pass" | "fail" | "inconclusive"
    witness: tuple | None = None
    mode: str = "full"
    seed: int | None = None

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        out = {"condition": self.condition, "status": self.status, "mode": self.mode}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        if self.seed is not None:
            out["seed"] = self.seed
        return out


def all_pass(reports) -> bool:
    return all(r.ok for r in reports)

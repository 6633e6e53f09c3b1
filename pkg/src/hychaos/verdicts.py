"""Three-valued verdicts that always carry a machine-checkable payload.

A verdict is Proved with a witness, Refuted with a counterexample, or Unknown
with a budget note.  Exactly one payload is present, matching the status.
Witness payloads are plain dicts of JSON-serialisable data (rationals as
"p/q" strings, point sets as sorted label lists) so that they survive a
serialise/parse round trip and can be re-validated without trusting the
algorithm that produced them.
"""

from __future__ import annotations

from dataclasses import dataclass

PROVED = "proved"
REFUTED = "refuted"
UNKNOWN = "unknown"

METHOD_EXHAUSTIVE = "exhaustive"
METHOD_GRAPH = "graph-reduction"
METHOD_BOUNDED = "bounded-search"


class VerdictError(ValueError):
    """A verdict violates its payload contract."""


@dataclass(frozen=True)
class Verdict:
    status: str
    method: str
    witness: dict | None = None
    counterexample: dict | None = None
    budget_note: str | None = None

    def __post_init__(self):
        if self.status not in (PROVED, REFUTED, UNKNOWN):
            raise VerdictError(f"unknown status {self.status!r}")
        payloads = [
            self.witness is not None,
            self.counterexample is not None,
            self.budget_note is not None,
        ]
        if sum(payloads) != 1:
            raise VerdictError("exactly one of witness/counterexample/budget_note")
        expected = {PROVED: 0, REFUTED: 1, UNKNOWN: 2}[self.status]
        if not payloads[expected]:
            raise VerdictError(f"payload does not match status {self.status}")

    @property
    def decided(self) -> bool:
        return self.status != UNKNOWN

    def payload(self) -> dict | str:
        if self.status == PROVED:
            return self.witness
        if self.status == REFUTED:
            return self.counterexample
        return self.budget_note

    def to_dict(self) -> dict:
        out = {"status": self.status, "method": self.method}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.budget_note is not None:
            out["budget_note"] = self.budget_note
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "Verdict":
        return cls(
            status=data["status"],
            method=data["method"],
            witness=data.get("witness"),
            counterexample=data.get("counterexample"),
            budget_note=data.get("budget_note"),
        )


def proved(method: str, witness: dict) -> Verdict:
    return Verdict(PROVED, method, witness=witness)


def refuted(method: str, counterexample: dict) -> Verdict:
    return Verdict(REFUTED, method, counterexample=counterexample)


def unknown(method: str, note: str) -> Verdict:
    return Verdict(UNKNOWN, method, budget_note=note)


def conjoin(parts: dict[str, Verdict], method: str | None = None) -> Verdict:
    """Three-valued conjunction: Refuted absorbs, then Unknown, else Proved.

    The payload embeds the component verdicts so the composite can be
    re-validated on its own.
    """
    if not parts:
        raise VerdictError("conjunction of nothing")
    chosen_method = method or next(iter(parts.values())).method
    embedded = {name: v.to_dict() for name, v in parts.items()}
    for name, v in parts.items():
        if v.status == REFUTED:
            return refuted(
                chosen_method,
                {"kind": "conjunction", "failed": name, "parts": embedded},
            )
    for name, v in parts.items():
        if v.status == UNKNOWN:
            return unknown(chosen_method, f"component {name} undecided: {v.budget_note}")
    return proved(chosen_method, {"kind": "conjunction", "parts": embedded})


def reduced_verdict(premise: Verdict, equivalence: str, method: str = METHOD_GRAPH) -> Verdict:
    """Transport a verdict across a proved equivalence of conditions.

    The payload records which equivalence was used and embeds the premise
    verdict, so re-validation can check the premise directly.
    """
    payload = {"kind": "reduced", "equivalence": equivalence, "premise": premise.to_dict()}
    if premise.status == PROVED:
        return proved(method, payload)
    if premise.status == REFUTED:
        return refuted(method, payload)
    return unknown(method, f"premise undecided via {equivalence}: {premise.budget_note}")

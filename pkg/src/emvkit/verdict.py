"""Three-valued check outcomes with replayable witnesses."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable

PASS = "pass"
BOUNDED = "pass-up-to-bound"
FAIL = "fail"
FAIL_BOUNDED = "fail-up-to-bound"
VACUOUS = "vacuous"
NOT_COMPETITOR = "not-a-competitor"

_OK = {PASS, BOUNDED}


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check.

    ``status`` is one of the module-level constants.  A failing verdict names
    the violated ``clause`` and carries a ``witness`` mapping whose values are
    elements of the algebras involved, so the counterexample can be replayed
    through the public API.  ``path`` records what decided it: ``exhaustive``,
    ``search`` (bounded search) or ``witness`` (caller-supplied functions).
    """

    check: str
    status: str
    clause: str | None = None
    witness: dict[str, Any] = field(default_factory=dict)
    bound: int | None = None
    path: str = "exhaustive"
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status in _OK

    def __bool__(self) -> bool:
        return self.ok

    def __repr__(self) -> str:
        parts = [f"{self.check}: {self.status}"]
        if self.clause:
            parts.append(f"clause={self.clause}")
        if self.witness:
            parts.append(f"witness={self.witness}")
        if self.bound is not None and self.status != PASS:
            parts.append(f"bound={self.bound}")
        if self.detail:
            parts.append(self.detail)
        return "<Verdict " + " ".join(parts) + ">"


def passed(check: str, exhaustive: bool = True, bound: int | None = None,
           path: str | None = None, detail: str = "") -> Verdict:
    status = PASS if exhaustive else BOUNDED
    if path is None:
        path = "exhaustive" if exhaustive else "search"
    return Verdict(check, status, bound=bound, path=path, detail=detail)


def failed(check: str, clause: str | None, bound: int | None = None,
           path: str = "exhaustive", detail: str = "", **witness: Any) -> Verdict:
    return Verdict(check, FAIL, clause=clause, witness=witness, bound=bound,
                   path=path, detail=detail)


def combine(check: str, verdicts: Iterable[Verdict], bound: int | None = None) -> Verdict:
    """First non-ok verdict wins; otherwise the weakest ok status."""
    verdicts = list(verdicts)
    for v in verdicts:
        if not v.ok:
            return Verdict(check, v.status, clause=v.clause or v.check,
                           witness=v.witness, bound=v.bound if v.bound is not None else bound,
                           path=v.path, detail=v.detail)
    exhaustive = all(v.status == PASS for v in verdicts)
    return passed(check, exhaustive, bound=bound)

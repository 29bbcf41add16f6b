"""Structured outcomes of stability tests.

A criterion produces witnesses, one per inequality actually checked, carrying
both sides of the comparison and whether the bounds behind them are exact.
Strict comparisons on exact values fail at equality; inexact bounds within
1e-6 of the boundary yield NumericUnknown instead of a hard verdict.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

__all__ = [
    "Verdict",
    "Claim",
    "Witness",
    "CriterionVerdict",
    "witness_state",
    "combine_branches",
    "not_applicable",
]

EXACT_EPS = 1e-12
INEXACT_EPS = 1e-6


class Verdict(enum.Enum):
    SATISFIED = "Satisfied"
    VIOLATED = "Violated"
    NOT_APPLICABLE = "NotApplicable"
    NUMERIC_UNKNOWN = "NumericUnknown"


class Claim(enum.Enum):
    EXPONENTIAL = "ExponentialStability"
    ASYMPTOTIC = "AsymptoticStability"
    TENDS_TO_ZERO = "SolutionsTendToZero"
    L2 = "L2Stability"


_CLAIM_RANK = {Claim.EXPONENTIAL: 0, Claim.ASYMPTOTIC: 1, Claim.TENDS_TO_ZERO: 2, Claim.L2: 3}
_VERDICT_RANK = {
    Verdict.SATISFIED: 0,
    Verdict.NUMERIC_UNKNOWN: 1,
    Verdict.VIOLATED: 2,
    Verdict.NOT_APPLICABLE: 3,
}


@dataclass(frozen=True)
class Witness:
    label: str
    lhs: float
    rhs: float
    op: str = "<"  # one of "<", "<=", ">", ">="
    exact: bool = True


def witness_state(w: Witness) -> int:
    """+1 holds, -1 fails, 0 numerically undecidable."""
    if w.op in ("<", "<="):
        margin = w.rhs - w.lhs
    elif w.op in (">", ">="):
        margin = w.lhs - w.rhs
    else:
        raise ValueError(f"unknown comparison {w.op!r}")
    strict = w.op in ("<", ">")
    if w.exact:
        if strict:
            return 1 if margin > EXACT_EPS else -1
        return 1 if margin >= -EXACT_EPS else -1
    if margin > INEXACT_EPS:
        return 1
    if margin < -INEXACT_EPS:
        return -1
    return 0


@dataclass(frozen=True)
class CriterionVerdict:
    criterion: str
    verdict: Verdict
    claim: Claim
    witnesses: tuple[Witness, ...] = ()
    subset: tuple[int, ...] | None = None
    omega: float | None = None
    branch: str | None = None
    reason: str | None = None

    def sort_key(self):
        return (_CLAIM_RANK[self.claim], _VERDICT_RANK[self.verdict], self.criterion)

    def to_dict(self) -> dict:
        out = {
            "criterion": self.criterion,
            "verdict": self.verdict.value,
            "claim": self.claim.value,
            "witnesses": [
                {"label": w.label, "lhs": w.lhs, "rhs": w.rhs, "op": w.op, "exact": w.exact}
                for w in self.witnesses
            ],
        }
        if self.subset is not None:
            out["subset"] = list(self.subset)
        if self.omega is not None:
            out["omega"] = self.omega
        if self.branch is not None:
            out["branch"] = self.branch
        if self.reason is not None:
            out["reason"] = self.reason
        return out


def _branch_state(witnesses) -> int:
    states = [witness_state(w) for w in witnesses]
    if any(s < 0 for s in states):
        return -1
    if any(s == 0 for s in states):
        return 0
    return 1


def combine_branches(criterion, claim, branches, **extra) -> CriterionVerdict:
    """Resolve a multi-branch criterion.

    ``branches`` is a list of (name, witnesses); Satisfied on the first branch
    whose witnesses all hold (only that branch's witnesses are reported),
    Violated when every branch fails, NumericUnknown otherwise.
    """
    states = []
    for name, witnesses in branches:
        witnesses = tuple(witnesses)
        state = _branch_state(witnesses)
        if state > 0:
            return CriterionVerdict(
                criterion, Verdict.SATISFIED, claim, witnesses, branch=name, **extra
            )
        states.append((name, witnesses, state))
    all_w = tuple(w for _, ws, _ in states for w in ws)
    if any(s == 0 for _, _, s in states):
        return CriterionVerdict(criterion, Verdict.NUMERIC_UNKNOWN, claim, all_w, **extra)
    return CriterionVerdict(criterion, Verdict.VIOLATED, claim, all_w, **extra)


def not_applicable(criterion, claim, reason) -> CriterionVerdict:
    return CriterionVerdict(criterion, Verdict.NOT_APPLICABLE, claim, reason=reason)

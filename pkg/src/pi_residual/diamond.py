"""Exhaustive check of the cofinality of residuals over small process universes."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .concurrency import check_concurrent, classify_actions
from .errors import PiError
from .residuation import apply_braiding, compute_braiding, residual
from .semantics import Transition, enumerate_transitions, serialize_proof, validate_transition
from .surface import print_named
from .syntax import Process, iter_universe


@dataclass
class DiamondReport:
    checked_pairs: int = 0
    processes: int = 0
    failures: list[dict] = field(default_factory=list)

    def as_json(self, limit: int = 20) -> dict:
        return {"checkedPairs": self.checked_pairs, "processes": self.processes,
                "failures": len(self.failures), "failureExamples": self.failures[:limit]}


def check_pair(t: Transition, u: Transition) -> str | None:
    """None if t and u are not concurrent or their square closes; otherwise the reason."""
    w = check_concurrent(t, u)
    if w is None:
        return None
    try:
        ut, tu = residual(u, t, w), residual(t, u, w)
        if not (validate_transition(ut) and validate_transition(tu)):
            return "residual is not a valid derivation"
        if (ut.action, tu.action) != classify_actions(w).residuals:
            return "residual actions disagree with the classification"
        g = compute_braiding(t, u, w)
        if apply_braiding(g, ut.target) != tu.target:
            return "braiding does not relate the residual targets"
    except PiError as e:
        return f"{type(e).__name__}: {e}"
    return ""


def check_process_pairs(ctx: int, p: Process, rep_fuel: int, report: DiamondReport):
    ts = enumerate_transitions(ctx, p, rep_fuel)
    report.processes += 1
    for i, t in enumerate(ts):
        for u in ts[i + 1:]:
            why = check_pair(t, u)
            if why is None:
                continue
            report.checked_pairs += 1
            if why:
                report.failures.append({"process": print_named(ctx, p), "t": serialize_proof(t),
                                        "u": serialize_proof(u), "reason": why})


def check_diamond(programs: Iterable[tuple[int, Process]], rep_fuel: int = 1) -> DiamondReport:
    report = DiamondReport()
    for ctx, p in programs:
        check_process_pairs(ctx, p, rep_fuel, report)
    return report


def check_universe(max_size: int, max_ctx: int, rep_fuel: int = 1) -> DiamondReport:
    """Every process of at most max_size nodes in every context up to max_ctx."""
    return check_diamond(iter_universe(max_size, max_ctx), rep_fuel)

"""Traces, causal equivalence proofs, composite braidings, and a bounded search.

Causal equivalence is generated by transposing two adjacent concurrent
steps: ``t . (t'/t) . rest`` is equivalent to ``t' . (t/t') . rest/B``
where B is the braiding relating the two residual targets and ``rest/B``
is the rest of the trace carried across it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property

from . import renaming as rn
from .concurrency import Witness, check_concurrent, validate_witness
from .errors import CompositionMismatch, DomainMismatch, EndpointMismatch, IllFormed, NotConcurrent
from .residuation import (Braiding, _oriented, apply_braiding, compute_braiding, equality,
                          residual, residual_after_braiding)
from .semantics import (Transition, enumerate_transitions, parse_proof, rename_transition,
                        rep_depth, serialize_proof)
from .syntax import Process, check_process, magnitude


@dataclass(frozen=True)
class Trace:
    ctx: int
    start: Process
    steps: tuple[Transition, ...] = ()

    def __post_init__(self):
        g, p = self.ctx, self.start
        for t in self.steps:
            if t.ctx != g or t.source != p:
                raise CompositionMismatch("consecutive steps do not compose")
            g, p = t.target_ctx, t.target

    @property
    def end_ctx(self) -> int:
        return self.steps[-1].target_ctx if self.steps else self.ctx

    @property
    def end(self) -> Process:
        return self.steps[-1].target if self.steps else self.start

    @property
    def actions(self) -> tuple:
        return tuple(t.action for t in self.steps)

    def __len__(self):
        return len(self.steps)

    def cons(self, t: Transition) -> "Trace":
        return Trace(t.ctx, t.source, (t,) + self.steps)

    def key(self) -> tuple[str, ...]:
        return tuple(serialize_proof(t) for t in self.steps)


def empty(ctx: int, p: Process) -> Trace:
    return Trace(ctx, p, ())


def trace_of(*steps: Transition) -> Trace:
    if not steps:
        raise ValueError("use empty() for the empty trace")
    return Trace(steps[0].ctx, steps[0].source, tuple(steps))


def serialize_trace(tr: Trace) -> str:
    return ";".join(tr.key())


def parse_trace(ctx: int, p: Process, text: str) -> Trace:
    """Steps separated by ';', each parsed against the target of the previous one."""
    steps = []
    g, q = ctx, p
    for part in (s for s in text.split(";") if s.strip()):
        t = parse_proof(g, q, part)
        steps.append(t)
        g, q = t.target_ctx, t.target
    return Trace(ctx, p, tuple(steps))


def enumerate_traces(ctx: int, p: Process, depth: int, rep_fuel: int = 1) -> list[Trace]:
    """All traces of length <= depth, depth-first in per-step canonical order."""
    out: list[Trace] = []

    def go(g: int, q: Process, prefix: tuple[Transition, ...]):
        out.append(Trace(ctx, p, prefix))
        if len(prefix) == depth:
            return
        for t in enumerate_transitions(g, q, rep_fuel):
            go(t.target_ctx, t.target, prefix + (t,))

    if not check_process(ctx, p):
        raise IllFormed(f"process is not well-formed in context {ctx}")
    go(ctx, p, ())
    return out


def rename_trace(r: rn.Renaming, tr: Trace) -> Trace:
    """Rename every step; after a bound step the renaming is lifted."""
    if r.domain != tr.ctx:
        raise DomainMismatch(f"renaming from {r.domain} applied to trace in context {tr.ctx}")
    ctx, start = r.codomain, rn.rename_process(r, tr.start)
    steps = []
    for t in tr.steps:
        steps.append(rename_transition(r, t))
        if magnitude(t.action):
            r = rn.lift(r)
    return Trace(ctx, start, tuple(steps))


def residual_trace_after_braiding(tr: Trace, g: Braiding) -> Trace:
    return residual_trace_pair(tr, g)[0]


def residual_braiding_after_trace(g: Braiding, tr: Trace) -> Braiding:
    return residual_trace_pair(tr, g)[1]


def residual_trace_pair(tr: Trace, g: Braiding) -> tuple[Trace, Braiding]:
    """(tr/g, g/tr); g/tr goes from end(tr) to end(tr/g)."""
    if tr.ctx != g.ctx:
        raise EndpointMismatch("trace and braiding live in different contexts")
    g = _oriented(g, tr.start)
    start = g.right
    steps = []
    for t in tr.steps:
        moved, g = residual_after_braiding(t, g)
        steps.append(moved)
    return Trace(tr.ctx, start, tuple(steps)), g


# ------------------------------------------------------ causal equivalence

class CausalEquivalence:
    """Proof that ``left`` and ``right`` are causally equivalent traces."""
    left: Trace
    right: Trace


@dataclass(frozen=True, eq=True)
class NilRefl(CausalEquivalence):
    ctx: int
    process: Process

    @property
    def left(self) -> Trace:
        return empty(self.ctx, self.process)

    @property
    def right(self) -> Trace:
        return self.left


@dataclass(frozen=True, eq=True)
class Cons(CausalEquivalence):
    step: Transition
    sub: CausalEquivalence

    def __post_init__(self):
        if self.sub.left.ctx != self.step.target_ctx or self.sub.left.start != self.step.target:
            raise CompositionMismatch("step does not lead to the sub-proof's traces")

    @cached_property
    def left(self) -> Trace:
        return self.sub.left.cons(self.step)

    @cached_property
    def right(self) -> Trace:
        return self.sub.right.cons(self.step)


@dataclass(frozen=True, eq=True)
class Transpose(CausalEquivalence):
    """t . t2/t . cont  ~  t2 . t/t2 . cont/B(t, t2)."""
    t: Transition
    t2: Transition
    witness: Witness
    cont: Trace

    def __post_init__(self):
        if not self.witness.involves(self.t, self.t2) or not validate_witness(self.witness):
            raise NotConcurrent("transposed steps are not concurrent")
        r = residual(self.t2, self.t, self.witness)
        if self.cont.ctx != r.target_ctx or self.cont.start != r.target:
            raise CompositionMismatch("continuation does not start after the residual")

    @cached_property
    def braid(self) -> Braiding:
        return compute_braiding(self.t, self.t2, self.witness)

    @cached_property
    def left(self) -> Trace:
        r = residual(self.t2, self.t, self.witness)
        return self.cont.cons(r).cons(self.t)

    @cached_property
    def right(self) -> Trace:
        r = residual(self.t, self.t2, self.witness)
        moved = residual_trace_after_braiding(self.cont, self.braid)
        return moved.cons(r).cons(self.t2)


@dataclass(frozen=True, eq=True)
class Trans(CausalEquivalence):
    """first relates A to B, second relates B to C."""
    first: CausalEquivalence
    second: CausalEquivalence

    def __post_init__(self):
        if self.first.right != self.second.left:
            raise CompositionMismatch("transitivity needs a shared middle trace")

    @cached_property
    def left(self) -> Trace:
        return self.first.left

    @cached_property
    def right(self) -> Trace:
        return self.second.right


def transpose(t: Transition, t2: Transition, w: Witness, cont: Trace) -> tuple[Trace, Trace, Transpose]:
    proof = Transpose(t, t2, w, cont)
    return proof.left, proof.right, proof


def reflexivity(tr: Trace) -> CausalEquivalence:
    proof: CausalEquivalence = NilRefl(tr.end_ctx, tr.end)
    for t in reversed(tr.steps):
        proof = Cons(t, proof)
    return proof


def symmetric(alpha: CausalEquivalence) -> CausalEquivalence:
    """A proof of right ~ left, mirroring every transposition."""
    if isinstance(alpha, NilRefl):
        return alpha
    if isinstance(alpha, Cons):
        return Cons(alpha.step, symmetric(alpha.sub))
    if isinstance(alpha, Trans):
        return Trans(symmetric(alpha.second), symmetric(alpha.first))
    moved = residual_trace_after_braiding(alpha.cont, alpha.braid)
    w = check_concurrent(alpha.t2, alpha.t)
    return Transpose(alpha.t2, alpha.t, w, moved)


def composite_braiding(alpha: CausalEquivalence) -> list[Braiding]:
    """Chain of braidings from end(left) to end(right)."""
    if isinstance(alpha, NilRefl):
        return []
    if isinstance(alpha, Cons):
        return composite_braiding(alpha.sub)
    if isinstance(alpha, Trans):
        return composite_braiding(alpha.first) + composite_braiding(alpha.second)
    return [residual_trace_pair(alpha.cont, alpha.braid)[1]]


def apply_composite_braiding(seq: list[Braiding], p: Process) -> Process:
    for g in seq:
        p = apply_braiding(g, p)
    return p


def validate_equivalence(alpha: CausalEquivalence) -> bool:
    """Recheck a proof tree built outside the constructors' checks."""
    try:
        if isinstance(alpha, NilRefl):
            return check_process(alpha.ctx, alpha.process)
        if isinstance(alpha, Cons):
            Cons(alpha.step, alpha.sub)
            return validate_equivalence(alpha.sub)
        if isinstance(alpha, Trans):
            Trans(alpha.first, alpha.second)
            return validate_equivalence(alpha.first) and validate_equivalence(alpha.second)
        Transpose(alpha.t, alpha.t2, alpha.witness, alpha.cont)
        return True
    except Exception:
        return False


# ----------------------------------------------------------------- search

def _wrap(prefix: tuple[Transition, ...], proof: CausalEquivalence) -> CausalEquivalence:
    for t in reversed(prefix):
        proof = Cons(t, proof)
    return proof


def rewrites(tr: Trace):
    """Single transpositions available in tr, positions left to right.

    Yields (new trace, proof of tr ~ new trace).
    """
    steps = tr.steps
    for i in range(len(steps) - 1):
        t, nxt = steps[i], steps[i + 1]
        fuel = rep_depth(t) + rep_depth(nxt)
        cont = Trace(nxt.target_ctx, nxt.target, steps[i + 2:])
        for t2 in enumerate_transitions(t.ctx, t.source, fuel):
            if t2 == t:
                continue
            w = check_concurrent(t, t2)
            if w is None or residual(t2, t, w) != nxt:
                continue
            proof = Transpose(t, t2, w, cont)
            right = proof.right
            yield Trace(tr.ctx, tr.start, steps[:i] + right.steps), _wrap(steps[:i], proof)


def _search(tr1: Trace, goal: Trace | None, budget: int):
    seen = {tr1.key(): None}
    order = [tr1]
    queue = deque([tr1])
    explored = 0
    while queue:
        cur = queue.popleft()
        if goal is not None and cur.key() == goal.key():
            return cur, seen, order
        explored += 1
        if explored > budget:
            return None, seen, order
        for nxt, proof in rewrites(cur):
            k = nxt.key()
            if k not in seen:
                seen[k] = (cur, proof)
                order.append(nxt)
                queue.append(nxt)
    return None, seen, order


def check_causal_equiv(tr1: Trace, tr2: Trace, budget: int = 10_000) -> CausalEquivalence | None:
    """Breadth-first search for a proof that tr1 and tr2 are causally equivalent."""
    if tr1.ctx != tr2.ctx or tr1.start != tr2.start or len(tr1) != len(tr2):
        return None
    if tr1.key() == tr2.key():
        return reflexivity(tr1)
    found, seen, _ = _search(tr1, tr2, budget)
    if found is None:
        return None
    chain = []
    k = found.key()
    while seen[k] is not None:
        prev, proof = seen[k]
        chain.append(proof)
        k = prev.key()
    chain.reverse()
    proof = chain[0]
    for step in chain[1:]:
        proof = Trans(proof, step)
    return proof


def causal_class(tr: Trace, budget: int = 10_000) -> list[Trace]:
    """Every trace reachable from tr by transpositions (breadth-first order)."""
    _, _, order = _search(tr, None, budget)
    return order

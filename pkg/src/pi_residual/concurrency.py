"""Concurrency of coinitial transitions and the shapes of concurrent actions.

Two transitions from the same source are concurrent when their redexes do
not overlap: they sit on opposite sides of a parallel composition, or the
same congruence rule applies to both and the premises are concurrent. The
relation is the symmetric closure of a rule table keyed by the pair of root
constructors; each pair has at most one rule, so a witness is determined
by the two transitions and the orientation the rule was used in.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from . import renaming as rn
from .errors import NotCoinitial
from .semantics import (ChoiceL, ChoiceR, NuExtrude, NuProp, NuSynchL, NuSynchR, ParL,
                        ParR, Rep, SynchL, SynchR, Transition)
from .syntax import Action, BoundOutput, Output, TAU, is_bound, magnitude


# premise selectors: which children of (rule-left, rule-right) must be concurrent
_SUB = lambda t: t.sub          # noqa: E731
_LEFT = lambda t: t.left        # noqa: E731
_RIGHT = lambda t: t.right      # noqa: E731

_SYNCS = (SynchL, SynchR, NuSynchL, NuSynchR)

RULES: dict[tuple[type, type], tuple[tuple, ...]] = {
    (ParR, ParL): (),
    (ChoiceL, ChoiceL): ((_SUB, _SUB),),
    (ChoiceR, ChoiceR): ((_SUB, _SUB),),
    (ParL, ParL): ((_SUB, _SUB),),
    (ParR, ParR): ((_SUB, _SUB),),
    (NuExtrude, NuExtrude): ((_SUB, _SUB),),
    (NuExtrude, NuProp): ((_SUB, _SUB),),
    (NuProp, NuProp): ((_SUB, _SUB),),
    (Rep, Rep): ((_SUB, _SUB),),
}
for _s in _SYNCS:
    RULES[(ParL, _s)] = ((_SUB, _LEFT),)
    RULES[(ParR, _s)] = ((_SUB, _RIGHT),)
for _a, _b in [(SynchL, SynchL), (SynchR, SynchR), (SynchL, SynchR),
               (SynchL, NuSynchL), (SynchR, NuSynchL), (SynchL, NuSynchR), (SynchR, NuSynchR),
               (NuSynchL, NuSynchL), (NuSynchR, NuSynchR), (NuSynchL, NuSynchR)]:
    RULES[(_a, _b)] = ((_LEFT, _LEFT), (_RIGHT, _RIGHT))


def rule_name(left: type, right: type) -> str:
    return f"{left.rule}~{right.rule}"


@dataclass(frozen=True)
class Witness:
    """A derivation of ``first ~ second``.

    ``flipped`` records that the rule was applied to ``(second, first)``;
    ``premises`` are witnesses for the rule's premise pairs, each in its own
    orientation.
    """
    first: Transition
    second: Transition
    rule: str
    flipped: bool
    premises: tuple["Witness", ...]

    @property
    def rule_left(self) -> Transition:
        return self.second if self.flipped else self.first

    @property
    def rule_right(self) -> Transition:
        return self.first if self.flipped else self.second

    def swapped(self) -> "Witness":
        """The same derivation read as a witness for ``second ~ first``."""
        return Witness(self.second, self.first, self.rule, not self.flipped, self.premises)

    def involves(self, t: Transition, u: Transition) -> bool:
        return (self.first == t and self.second == u) or (self.first == u and self.second == t)


def _derive(t: Transition, u: Transition) -> tuple[Witness, ...] | None:
    rule = RULES.get((type(t), type(u)))
    if rule is None:
        return None
    prems = []
    for fl, fr in rule:
        w = _concur(fl(t), fr(u))
        if w is None:
            return None
        prems.append(w)
    return tuple(prems)


def _concur(t: Transition, u: Transition) -> Witness | None:
    prems = _derive(t, u)
    if prems is not None:
        return Witness(t, u, rule_name(type(t), type(u)), False, prems)
    prems = _derive(u, t)
    if prems is not None:
        return Witness(t, u, rule_name(type(u), type(t)), True, prems)
    return None


def check_concurrent(t: Transition, u: Transition) -> Witness | None:
    """A witness that ``t`` and ``u`` are concurrent, or None."""
    if t.ctx != u.ctx or t.source != u.source:
        raise NotCoinitial("transitions do not share a source")
    return _concur(t, u)


def validate_witness(w: Witness) -> bool:
    if w.first.ctx != w.second.ctx or w.first.source != w.second.source:
        return False
    return _concur(w.first, w.second) == w


def frontier(t: Transition, u: Transition) -> list[str]:
    """Why two transitions are not concurrent: the innermost pairs no rule covers."""
    for a, b in ((t, u), (u, t)):
        rule = RULES.get((type(a), type(b)))
        if rule is None:
            continue
        out = []
        for fl, fr in rule:
            if _concur(fl(a), fr(b)) is None:
                out += frontier(fl(a), fr(b))
        return out
    return [f"no rule relates {t.rule} and {u.rule}"
            + (" (identical transitions)" if t == u else "")]


# ------------------------------------------------------------------ shapes

class Shape(Enum):
    NON_BOUND_PAIR = "i"
    BOUND_NON_BOUND = "ii"
    BOUND_PAIR = "iii"
    SAME_BINDER_EXTRUSION = "iv"
    NU_SYNCH_PAIR = "v"


class BraidKind(Enum):
    EQUALITY = "equality"
    FREE = "free"
    BOUND = "bound"


_BRAID_OF = {Shape.NON_BOUND_PAIR: BraidKind.EQUALITY, Shape.BOUND_NON_BOUND: BraidKind.EQUALITY,
             Shape.BOUND_PAIR: BraidKind.FREE, Shape.SAME_BINDER_EXTRUSION: BraidKind.EQUALITY,
             Shape.NU_SYNCH_PAIR: BraidKind.BOUND}

# rules whose shape is inherited from their single premise
_INHERIT = {"choiceL~choiceL", "choiceR~choiceR", "parL~parL", "parR~parR", "rep~rep", "nu~nu"}


@dataclass(frozen=True)
class ConcurrentActions:
    shape: Shape
    actions: tuple[Action, Action]
    residuals: tuple[Action, Action]   # (action of second/first, action of first/second)
    braid_kind: BraidKind


def _by_boundness(a: Action, b: Action) -> Shape:
    n = magnitude(a) + magnitude(b)
    return (Shape.NON_BOUND_PAIR, Shape.BOUND_NON_BOUND, Shape.BOUND_PAIR)[n]


def shape_of(w: Witness) -> Shape:
    a, b = w.first.action, w.second.action
    if w.rule in _INHERIT:
        return shape_of(w.premises[0])
    if w.rule == "nu^~nu^":
        return Shape.SAME_BINDER_EXTRUSION
    if w.rule.startswith("nusynch") and "~nusynch" in w.rule:
        if any(shape_of(p) is Shape.SAME_BINDER_EXTRUSION for p in w.premises):
            return Shape.NON_BOUND_PAIR
        return Shape.NU_SYNCH_PAIR
    return _by_boundness(a, b)


def _push(a: Action) -> Action:
    # push is context-independent on actions; the context only bounds the names
    names = [n for n in (getattr(a, "x", None), getattr(a, "y", None)) if n is not None]
    return rn.rename_action(rn.push(max(names, default=-1) + 1), a)


def classify_actions(w: Witness) -> ConcurrentActions:
    """Shape, residual actions and braiding kind of a concurrent pair."""
    s = shape_of(w)
    a, b = w.first.action, w.second.action
    if s is Shape.NON_BOUND_PAIR:
        res = (b, a)
    elif s is Shape.BOUND_NON_BOUND:
        res = (_push(b), a) if is_bound(a) else (b, _push(a))
    elif s is Shape.BOUND_PAIR:
        res = (_push(b), _push(a))
    elif s is Shape.SAME_BINDER_EXTRUSION:
        assert isinstance(a, BoundOutput) and isinstance(b, BoundOutput)
        res = (Output(b.x + 1, 0), Output(a.x + 1, 0))
    else:
        res = (TAU, TAU)
    return ConcurrentActions(s, (a, b), res, _BRAID_OF[s])

"""Proved transitions: the labelled transition system with derivations as data.

A transition is its derivation tree. Each node stores only what the rule
needs (premises, passive branches, and for axioms the context); source,
action and target are computed when the node is built and cached on it.
``validate_transition`` recomputes everything from the tree, so a tampered
cache is detected.

Compact proof notation, one token per rule::

    ax-in  ax-out  choiceL(t)  choiceR(t)  parL(t)  parR(t)
    synchL(t,u)  synchR(t,u)  nu^(t)  nusynchL(t,u)  nusynchR(t,u)
    nu(t)  rep(t)

``nu^`` extrudes the outermost binder, ``nu`` propagates an action through
it. Passive processes and names are implied by the source process.
"""

from __future__ import annotations

import re
from functools import lru_cache

from . import renaming as rn
from .errors import DomainMismatch, IllFormed, InvalidDerivation, PiError, PiSyntaxError
from .syntax import (TAU, Action, BoundOutput, Choice, Input, InputPrefix, Output,
                     OutputPrefix, Par, Process, Replicate, Restrict, check_process,
                     magnitude)


class Transition:
    """Base class for derivation nodes. Instances are immutable."""

    __slots__ = ("ctx", "source", "action", "target", "_hash")
    rule = ""

    def _set(self, cache):
        ctx, source, action, target = cache if cache is not None else self._compute()
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "action", action)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("transitions are immutable")

    def _compute(self) -> tuple[int, Process, Action, Process]:
        raise NotImplementedError

    def _fields(self) -> tuple:
        raise NotImplementedError

    def premises(self) -> tuple["Transition", ...]:
        return ()

    def rebuild(self, *parts, _cache=None) -> "Transition":
        return type(self)(*parts, _cache=_cache)

    def parts(self) -> tuple:
        """Constructor arguments, so ``t.rebuild(*t.parts()) == t``."""
        return self._fields()

    @property
    def target_ctx(self) -> int:
        return self.ctx + magnitude(self.action)

    def __eq__(self, other):
        if self is other:
            return True
        return type(self) is type(other) and self._fields() == other._fields()

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.rule, self._fields())))
        return self._hash

    def __repr__(self):
        return f"<{serialize_proof(self)} @{self.ctx} : {self.action}>"


def _fail(msg: str):
    raise InvalidDerivation(msg)


def _push_proc(g: int, p: Process, k: int) -> Process:
    return rn.rename_process(rn.push(g), p) if k else p


# ------------------------------------------------------------------ axioms

class InputAx(Transition):
    __slots__ = ("lctx", "x", "body")
    rule = "ax-in"

    def __init__(self, ctx: int, x: int, body: Process, _cache=None):
        object.__setattr__(self, "lctx", ctx)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "body", body)
        self._set(_cache)

    def _compute(self):
        g = self.lctx
        if not 0 <= self.x < g:
            _fail(f"input subject {self.x} outside context {g}")
        if not check_process(g + 1, self.body):
            _fail("input continuation is ill-formed")
        return g, InputPrefix(self.x, self.body), Input(self.x), self.body

    def _fields(self):
        return (self.lctx, self.x, self.body)


class OutputAx(Transition):
    __slots__ = ("lctx", "x", "y", "body")
    rule = "ax-out"

    def __init__(self, ctx: int, x: int, y: int, body: Process, _cache=None):
        object.__setattr__(self, "lctx", ctx)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "body", body)
        self._set(_cache)

    def _compute(self):
        g = self.lctx
        if not (0 <= self.x < g and 0 <= self.y < g):
            _fail(f"output names {self.x},{self.y} outside context {g}")
        if not check_process(g, self.body):
            _fail("output continuation is ill-formed")
        return g, OutputPrefix(self.x, self.y, self.body), Output(self.x, self.y), self.body

    def _fields(self):
        return (self.lctx, self.x, self.y, self.body)


# ------------------------------------------------------- one-premise rules

class _Unary(Transition):
    __slots__ = ("sub",)

    def __init__(self, sub: Transition, _cache=None):
        object.__setattr__(self, "sub", sub)
        self._set(_cache)

    def premises(self):
        return (self.sub,)

    def _fields(self):
        return (self.sub,)


class _WithPassive(Transition):
    """Congruence rule carrying one active premise and one passive branch."""
    __slots__ = ("sub", "other")
    sub_on_left = True

    def __init__(self, *args, _cache=None):
        sub, other = args if self.sub_on_left else args[::-1]
        object.__setattr__(self, "sub", sub)
        object.__setattr__(self, "other", other)
        self._set(_cache)

    def premises(self):
        return (self.sub,)

    def _fields(self):
        return (self.sub, self.other) if self.sub_on_left else (self.other, self.sub)

    def _check_other(self):
        if not check_process(self.sub.ctx, self.other):
            _fail("passive branch is ill-formed")


class ChoiceL(_WithPassive):
    """``ChoiceL(t, Q)``: P + Q moves as P does."""
    __slots__ = ()
    rule = "choiceL"

    def _compute(self):
        self._check_other()
        t = self.sub
        return t.ctx, Choice(t.source, self.other), t.action, t.target


class ChoiceR(_WithPassive):
    """``ChoiceR(P, u)``."""
    __slots__ = ()
    rule = "choiceR"
    sub_on_left = False

    def _compute(self):
        self._check_other()
        u = self.sub
        return u.ctx, Choice(self.other, u.source), u.action, u.target


class ParL(_WithPassive):
    """``ParL(t, Q)``: the passive right branch is pushed when the action is bound."""
    __slots__ = ()
    rule = "parL"

    def _compute(self):
        self._check_other()
        t = self.sub
        q = _push_proc(t.ctx, self.other, magnitude(t.action))
        return t.ctx, Par(t.source, self.other), t.action, Par(t.target, q)


class ParR(_WithPassive):
    """``ParR(P, u)``."""
    __slots__ = ()
    rule = "parR"
    sub_on_left = False

    def _compute(self):
        self._check_other()
        u = self.sub
        p = _push_proc(u.ctx, self.other, magnitude(u.action))
        return u.ctx, Par(self.other, u.source), u.action, Par(p, u.target)


class NuExtrude(_Unary):
    """Opens the scope of the outermost binder: premise must output index 0 on x+1."""
    __slots__ = ()
    rule = "nu^"

    def _compute(self):
        t = self.sub
        a = t.action
        if not (isinstance(a, Output) and a.y == 0 and a.x >= 1):
            _fail(f"extrusion needs an output of the form (x+1)<0>, got {a}")
        return t.ctx - 1, Restrict(t.source), BoundOutput(a.x - 1), t.target


class NuProp(_Unary):
    """Propagates a pushed action through the outermost binder."""
    __slots__ = ()
    rule = "nu"

    def _compute(self):
        t = self.sub
        if t.ctx < 1 or not rn.is_push_image(t.action):
            _fail(f"propagated action {t.action} is not a push image")
        g = t.ctx - 1
        a = rn.unpush_action(t.action)
        target = t.target
        if magnitude(a):
            target = rn.rename_process(rn.swap(g), target)
        return g, Restrict(t.source), a, Restrict(target)


class Rep(_Unary):
    """Unfolds !P to P | !P."""
    __slots__ = ()
    rule = "rep"

    def _compute(self):
        t = self.sub
        s = t.source
        if not (isinstance(s, Par) and isinstance(s.right, Replicate) and s.right.body == s.left):
            _fail("replication premise must start from P | !P")
        return t.ctx, s.right, t.action, t.target


# --------------------------------------------------- synchronisation rules

class _Binary(Transition):
    __slots__ = ("left", "right")

    def __init__(self, left: Transition, right: Transition, _cache=None):
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        self._set(_cache)

    def premises(self):
        return (self.left, self.right)

    def _fields(self):
        return (self.left, self.right)

    def _same_ctx(self):
        if self.left.ctx != self.right.ctx:
            _fail("synchronising premises live in different contexts")
        return self.left.ctx


def _match(inp: Action, out: Action, out_kind) -> bool:
    return isinstance(inp, Input) and isinstance(out, out_kind) and inp.x == out.x


class SynchL(_Binary):
    """Input on the left meets a free output on the right: (pop y) R | S."""
    __slots__ = ()
    rule = "synchL"

    @property
    def y(self) -> int:
        return self.right.action.y

    def _compute(self):
        g = self._same_ctx()
        t, u = self.left, self.right
        if not _match(t.action, u.action, Output):
            _fail(f"cannot synchronise {t.action} with {u.action}")
        r = rn.rename_process(rn.pop(g, u.action.y), t.target)
        return g, Par(t.source, u.source), TAU, Par(r, u.target)


class SynchR(_Binary):
    """Free output on the left meets an input on the right: R | (pop y) S."""
    __slots__ = ()
    rule = "synchR"

    @property
    def y(self) -> int:
        return self.left.action.y

    def _compute(self):
        g = self._same_ctx()
        t, u = self.left, self.right
        if not _match(u.action, t.action, Output):
            _fail(f"cannot synchronise {t.action} with {u.action}")
        s = rn.rename_process(rn.pop(g, t.action.y), u.target)
        return g, Par(t.source, u.source), TAU, Par(t.target, s)


class NuSynchL(_Binary):
    """Input on the left meets a bound output on the right: nu (R | S)."""
    __slots__ = ()
    rule = "nusynchL"

    def _compute(self):
        g = self._same_ctx()
        t, u = self.left, self.right
        if not _match(t.action, u.action, BoundOutput):
            _fail(f"cannot synchronise {t.action} with {u.action}")
        return g, Par(t.source, u.source), TAU, Restrict(Par(t.target, u.target))


class NuSynchR(_Binary):
    """Bound output on the left meets an input on the right: nu (R | S)."""
    __slots__ = ()
    rule = "nusynchR"

    def _compute(self):
        g = self._same_ctx()
        t, u = self.left, self.right
        if not _match(u.action, t.action, BoundOutput):
            _fail(f"cannot synchronise {t.action} with {u.action}")
        return g, Par(t.source, u.source), TAU, Restrict(Par(t.target, u.target))


RULE_ORDER = (InputAx, OutputAx, ChoiceL, ChoiceR, ParL, ParR, SynchL, SynchR,
              NuExtrude, NuSynchL, NuSynchR, NuProp, Rep)
SYNC_RULES = (SynchL, SynchR, NuSynchL, NuSynchR)


# ----------------------------------------------------------- validation

def validate_transition(t: Transition) -> bool:
    """Recheck every rule application and every cached action/target."""
    try:
        for sub in t.premises():
            if not validate_transition(sub):
                return False
        ctx, source, action, target = t._compute()
    except PiError:
        return False
    if (ctx, source, action, target) != (t.ctx, t.source, t.action, t.target):
        return False
    return check_process(ctx, source) and check_process(ctx + magnitude(action), target)


def with_cache(t: Transition, *, action=None, target=None) -> Transition:
    """Copy of ``t`` with overwritten cached fields (for building invalid test data)."""
    cache = (t.ctx, t.source, action if action is not None else t.action,
             target if target is not None else t.target)
    return t.rebuild(*t.parts(), _cache=cache)


def unchecked(cls, *parts, ctx: int, source: Process, action: Action, target: Process) -> Transition:
    """Build a node without running its rule check."""
    return cls(*parts, _cache=(ctx, source, action, target))


# ------------------------------------------------------------- enumeration

def enumerate_transitions(ctx: int, p: Process, rep_fuel: int = 1) -> list[Transition]:
    """Every derivable transition from ``p`` with at most ``rep_fuel`` nested replications."""
    if rep_fuel < 0:
        raise ValueError("rep_fuel must be non-negative")
    if not check_process(ctx, p):
        raise IllFormed(f"process is not well-formed in context {ctx}")
    return list(_enum(ctx, p, rep_fuel))


@lru_cache(maxsize=200_000)
def _enum(g: int, p: Process, fuel: int) -> tuple[Transition, ...]:
    if isinstance(p, InputPrefix):
        return (InputAx(g, p.x, p.body),)
    if isinstance(p, OutputPrefix):
        return (OutputAx(g, p.x, p.y, p.body),)
    if isinstance(p, Choice):
        return (tuple(ChoiceL(t, p.right) for t in _enum(g, p.left, fuel))
                + tuple(ChoiceR(p.left, u) for u in _enum(g, p.right, fuel)))
    if isinstance(p, Par):
        ts = _enum(g, p.left, fuel)
        us = _enum(g, p.right, fuel)
        out = [ParL(t, p.right) for t in ts]
        out += [ParR(p.left, u) for u in us]
        out += [SynchL(t, u) for t in ts for u in us if _match(t.action, u.action, Output)]
        out += [SynchR(t, u) for t in ts for u in us if _match(u.action, t.action, Output)]
        out += [NuSynchL(t, u) for t in ts for u in us if _match(t.action, u.action, BoundOutput)]
        out += [NuSynchR(t, u) for t in ts for u in us if _match(u.action, t.action, BoundOutput)]
        return tuple(out)
    if isinstance(p, Restrict):
        ts = _enum(g + 1, p.body, fuel)
        ext = [NuExtrude(t) for t in ts
               if isinstance(t.action, Output) and t.action.y == 0 and t.action.x >= 1]
        prop = [NuProp(t) for t in ts if rn.is_push_image(t.action)]
        return tuple(ext + prop)
    if isinstance(p, Replicate):
        if fuel == 0:
            return ()
        return tuple(Rep(t) for t in _enum(g, Par(p.body, p), fuel - 1))
    return ()


def rep_depth(t: Transition) -> int:
    """Largest number of nested replication unfoldings along a path of the proof."""
    inner = max((rep_depth(s) for s in t.premises()), default=0)
    return inner + (1 if isinstance(t, Rep) else 0)


# ---------------------------------------------------------------- renaming

def rename_transition(r: rn.Renaming, t: Transition) -> Transition:
    """The transition ``r t`` from ``r source`` with action ``r action``."""
    if r.domain != t.ctx:
        raise DomainMismatch(f"renaming from {r.domain} applied to transition in context {t.ctx}")
    if r.table == tuple(range(r.domain)) and r.codomain == r.domain:
        return t
    return _ren(r, t)


def _ren(r: rn.Renaming, t: Transition) -> Transition:
    if isinstance(t, InputAx):
        return InputAx(r.codomain, r.table[t.x], rn.rename_process(rn.lift(r), t.body))
    if isinstance(t, OutputAx):
        return OutputAx(r.codomain, r.table[t.x], r.table[t.y], rn.rename_process(r, t.body))
    if isinstance(t, (ChoiceL, ParL)):
        return type(t)(_ren(r, t.sub), rn.rename_process(r, t.other))
    if isinstance(t, (ChoiceR, ParR)):
        return type(t)(rn.rename_process(r, t.other), _ren(r, t.sub))
    if isinstance(t, _Binary):
        return type(t)(_ren(r, t.left), _ren(r, t.right))
    if isinstance(t, (NuExtrude, NuProp)):
        return type(t)(_ren(rn.lift(r), t.sub))
    if isinstance(t, Rep):
        return Rep(_ren(r, t.sub))
    raise InvalidDerivation(f"unknown proof node {t!r}")


# ----------------------------------------------------------- serialisation

_LEAF_TOKENS = {InputAx: "ax-in", OutputAx: "ax-out"}


def serialize_proof(t: Transition) -> str:
    if isinstance(t, (InputAx, OutputAx)):
        return _LEAF_TOKENS[type(t)]
    inner = ",".join(serialize_proof(s) for s in t.premises())
    return f"{t.rule}({inner})"


_TOKEN = re.compile(r"\s*(ax-in|ax-out|nusynchL|nusynchR|synchL|synchR|choiceL|choiceR|"
                    r"parL|parR|nu\^|nu|rep|\(|\)|,)")


def _tokens(text: str) -> list[tuple[str, int]]:
    out, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise PiSyntaxError(f"unexpected input {text[pos:pos + 10]!r} in proof", pos)
        out.append((m.group(1), m.start(1)))
        pos = m.end()
    return out


def parse_proof(ctx: int, p: Process, text: str) -> Transition:
    """Rebuild the transition from ``p`` that ``text`` names."""
    if not check_process(ctx, p):
        raise IllFormed(f"process is not well-formed in context {ctx}")
    toks = _tokens(text)
    if not toks:
        raise PiSyntaxError("empty proof", 0)
    t, i = _parse(ctx, p, toks, 0)
    if i != len(toks):
        raise PiSyntaxError("trailing input after proof", toks[i][1])
    return t


def _expect(toks, i, tok):
    if i >= len(toks) or toks[i][0] != tok:
        where = toks[i][1] if i < len(toks) else None
        raise PiSyntaxError(f"expected {tok!r}", where)
    return i + 1


def _wrong(rule: str, p: Process, pos: int):
    raise InvalidDerivation(f"rule {rule} (at {pos}) does not apply to a {type(p).__name__}")


def _parse(g: int, p: Process, toks, i) -> tuple[Transition, int]:
    if i >= len(toks):
        raise PiSyntaxError("proof ends early", None)
    tok, pos = toks[i]
    i += 1
    if tok == "ax-in":
        if not isinstance(p, InputPrefix):
            _wrong(tok, p, pos)
        return InputAx(g, p.x, p.body), i
    if tok == "ax-out":
        if not isinstance(p, OutputPrefix):
            _wrong(tok, p, pos)
        return OutputAx(g, p.x, p.y, p.body), i
    i = _expect(toks, i, "(")
    if tok in ("choiceL", "choiceR", "parL", "parR"):
        kind = Choice if tok.startswith("choice") else Par
        if not isinstance(p, kind):
            _wrong(tok, p, pos)
        left = tok.endswith("L")
        sub, i = _parse(g, p.left if left else p.right, toks, i)
        cls = {"choiceL": ChoiceL, "choiceR": ChoiceR, "parL": ParL, "parR": ParR}[tok]
        t = cls(sub, p.right) if left else cls(p.left, sub)
    elif tok in ("synchL", "synchR", "nusynchL", "nusynchR"):
        if not isinstance(p, Par):
            _wrong(tok, p, pos)
        a, i = _parse(g, p.left, toks, i)
        i = _expect(toks, i, ",")
        b, i = _parse(g, p.right, toks, i)
        cls = {"synchL": SynchL, "synchR": SynchR, "nusynchL": NuSynchL, "nusynchR": NuSynchR}[tok]
        t = cls(a, b)
    elif tok in ("nu^", "nu"):
        if not isinstance(p, Restrict):
            _wrong(tok, p, pos)
        sub, i = _parse(g + 1, p.body, toks, i)
        t = (NuExtrude if tok == "nu^" else NuProp)(sub)
    elif tok == "rep":
        if not isinstance(p, Replicate):
            _wrong(tok, p, pos)
        sub, i = _parse(g, Par(p.body, p), toks, i)
        t = Rep(sub)
    else:
        raise PiSyntaxError(f"unexpected {tok!r}", pos)
    return t, _expect(toks, i, ")")

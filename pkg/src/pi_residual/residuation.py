"""Residuals of concurrent transitions, braidings, and residuation against braids.

``residual(t, u, w)`` is t transported to the target of u. The defining
equations pair up root constructors; the adjustments they make (push the
passive branch, pop the received name, swap under a binder) are done with
``rename_transition``. Whether a rebuilt synchronisation is a plain or a
nu-synchronisation, and whether a rebuilt binder step is an extrusion or a
propagation, is decided by the action the inner residual actually has.

The two residual targets are related by a braiding: equality, a free braid
(the renaming swap lifted by delta), or a bound braid (a proof term that
swaps an adjacent pair of binders somewhere inside the process).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import renaming as rn
from .concurrency import BraidKind, Witness, check_concurrent, classify_actions, validate_witness
from .errors import CofinalityViolation, DomainMismatch, EndpointMismatch, IllFormed, NotCoinitial, NotConcurrent
from .semantics import (ChoiceL, ChoiceR, InputAx, NuExtrude, NuProp, NuSynchL, NuSynchR,
                        OutputAx, ParL, ParR, Rep, SynchL, SynchR, Transition, rename_transition)
from .syntax import (BoundOutput, Choice, InputPrefix, Nil, Output, OutputPrefix, Par,
                     Process, Replicate, Restrict, check_process, magnitude)


# ------------------------------------------------------ smart constructors

def _shift(t: Transition, k: int) -> Transition:
    return rename_transition(rn.push(t.ctx), t) if k else t


def _shift_proc(g: int, p: Process, k: int) -> Process:
    return rn.rename_process(rn.push(g), p) if k else p


def _pop(y: int, t: Transition) -> Transition:
    return rename_transition(rn.pop(t.ctx - 1, y), t)


def _swap_if(k: int, t: Transition) -> Transition:
    return rename_transition(rn.swap(t.ctx - 2), t) if k else t


def _restrict(t: Transition) -> Transition:
    """Put a binder around t's source: propagate a push image, or extrude index 0."""
    a = t.action
    if rn.is_push_image(a):
        return NuProp(t)
    if isinstance(a, Output) and a.y == 0 and a.x >= 1:
        return NuExtrude(t)
    raise CofinalityViolation(f"residual action {a} cannot pass the reinserted binder")


def _sync_l(t: Transition, u: Transition) -> Transition:
    return NuSynchL(t, u) if isinstance(u.action, BoundOutput) else SynchL(t, u)


def _sync_r(t: Transition, u: Transition) -> Transition:
    return NuSynchR(t, u) if isinstance(t.action, BoundOutput) else SynchR(t, u)


_MK_SYNC = {SynchL: _sync_l, NuSynchL: _sync_l, SynchR: _sync_r, NuSynchR: _sync_r}
_SYNCS = (SynchL, SynchR, NuSynchL, NuSynchR)


# ---------------------------------------------------------------- residual

def residual(t: Transition, after: Transition, w: Witness) -> Transition:
    """The residual t/after: t moved to the target of ``after``."""
    if not w.involves(t, after) or not validate_witness(w):
        raise NotConcurrent("witness does not relate these transitions")
    return _res(t, after, w)


def _res(t: Transition, u: Transition, w: Witness) -> Transition:
    T, U = type(t), type(u)
    p = w.premises
    try:
        if T is U and T in (ChoiceL, ChoiceR, Rep):
            return _res(t.sub, u.sub, p[0])
        if T is ParL:
            if U is ParR:
                return ParL(_shift(t.sub, magnitude(u.action)), u.sub.target)
            if U is ParL:
                return ParL(_res(t.sub, u.sub, p[0]), _shift_proc(t.ctx, t.other, magnitude(u.action)))
            if U is SynchL:
                return ParL(_pop(u.y, _res(t.sub, u.left, p[0])), u.right.target)
            if U is SynchR:
                return ParL(_res(t.sub, u.left, p[0]), rn.rename_process(rn.pop(u.ctx, u.y), u.right.target))
            if U in (NuSynchL, NuSynchR):
                return _restrict(ParL(_res(t.sub, u.left, p[0]), u.right.target))
        if T is ParR:
            if U is ParL:
                return ParR(u.sub.target, _shift(t.sub, magnitude(u.action)))
            if U is ParR:
                return ParR(_shift_proc(t.ctx, t.other, magnitude(u.action)), _res(t.sub, u.sub, p[0]))
            if U is SynchL:
                return ParR(rn.rename_process(rn.pop(u.ctx, u.y), u.left.target), _res(t.sub, u.right, p[0]))
            if U is SynchR:
                return ParR(u.left.target, _pop(u.y, _res(t.sub, u.right, p[0])))
            if U in (NuSynchL, NuSynchR):
                return _restrict(ParR(u.left.target, _res(t.sub, u.right, p[0])))
        if T in _SYNCS:
            mk = _MK_SYNC[T]
            if U is ParL:
                return mk(_res(t.left, u.sub, p[0]), _shift(t.right, magnitude(u.action)))
            if U is ParR:
                return mk(_shift(t.left, magnitude(u.action)), _res(t.right, u.sub, p[0]))
            if U is SynchL:
                return mk(_pop(u.y, _res(t.left, u.left, p[0])), _res(t.right, u.right, p[1]))
            if U is SynchR:
                return mk(_res(t.left, u.left, p[0]), _pop(u.y, _res(t.right, u.right, p[1])))
            if U in (NuSynchL, NuSynchR):
                return _restrict(mk(_res(t.left, u.left, p[0]), _res(t.right, u.right, p[1])))
        if T in (NuExtrude, NuProp):
            if U is NuExtrude:
                return _res(t.sub, u.sub, p[0])
            if U is NuProp:
                return _restrict(_swap_if(magnitude(u.action), _res(t.sub, u.sub, p[0])))
    except (IllFormed, DomainMismatch) as e:
        raise CofinalityViolation(f"residual of {t.rule} after {u.rule} failed: {e}") from e
    raise NotConcurrent(f"no residual equation for {t.rule} after {u.rule}")


# ------------------------------------------------------------ bound braids

class BoundBraid:
    """Proof that two processes differ by swapping adjacent binder pairs.

    Leaves carry their context explicitly; inner nodes derive it. ``source``
    and ``target`` are computed on construction.
    """
    __slots__ = ("ctx", "source", "target", "_hash")
    rule = ""

    def _set(self, ctx, source, target):
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("bound braids are immutable")

    def _fields(self) -> tuple:
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self._fields() == other._fields()

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.rule, self._fields())))
        return self._hash

    def __repr__(self):
        return serialize_braid(self)


class NuNuSwap(BoundBraid):
    """nu nu P related to nu nu (swap P)."""
    __slots__ = ("inner",)
    rule = "nunu-swap"

    def __init__(self, ctx: int, inner: Process):
        if not check_process(ctx + 2, inner):
            raise IllFormed("braided process is ill-formed")
        object.__setattr__(self, "inner", inner)
        swapped = rn.rename_process(rn.swap(ctx), inner)
        self._set(ctx, Restrict(Restrict(inner)), Restrict(Restrict(swapped)))

    def _fields(self):
        return (self.ctx, self.inner)


class ReflNil(BoundBraid):
    __slots__ = ()
    rule = "refl-nil"

    def __init__(self, ctx: int):
        self._set(ctx, Nil(), Nil())

    def _fields(self):
        return (self.ctx,)


class ReflInput(BoundBraid):
    __slots__ = ("x", "body")
    rule = "refl-in"

    def __init__(self, ctx: int, x: int, body: Process):
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "body", body)
        p = InputPrefix(x, body)
        if not check_process(ctx, p):
            raise IllFormed("prefix is ill-formed")
        self._set(ctx, p, p)

    def _fields(self):
        return (self.ctx, self.x, self.body)


class ReflOutput(BoundBraid):
    __slots__ = ("x", "y", "body")
    rule = "refl-out"

    def __init__(self, ctx: int, x: int, y: int, body: Process):
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "body", body)
        p = OutputPrefix(x, y, body)
        if not check_process(ctx, p):
            raise IllFormed("prefix is ill-formed")
        self._set(ctx, p, p)

    def _fields(self):
        return (self.ctx, self.x, self.y, self.body)


class ChoiceLB(BoundBraid):
    """Braid the left summand, keep the right one."""
    __slots__ = ("sub", "other")
    rule = "choiceL"

    def __init__(self, sub: BoundBraid, other: Process):
        if not check_process(sub.ctx, other):
            raise IllFormed("summand is ill-formed")
        object.__setattr__(self, "sub", sub)
        object.__setattr__(self, "other", other)
        self._set(sub.ctx, Choice(sub.source, other), Choice(sub.target, other))

    def _fields(self):
        return (self.sub, self.other)


class ChoiceRB(BoundBraid):
    __slots__ = ("other", "sub")
    rule = "choiceR"

    def __init__(self, other: Process, sub: BoundBraid):
        if not check_process(sub.ctx, other):
            raise IllFormed("summand is ill-formed")
        object.__setattr__(self, "other", other)
        object.__setattr__(self, "sub", sub)
        self._set(sub.ctx, Choice(other, sub.source), Choice(other, sub.target))

    def _fields(self):
        return (self.other, self.sub)


class ParB(BoundBraid):
    __slots__ = ("left", "right")
    rule = "par"

    def __init__(self, left: BoundBraid, right: BoundBraid):
        if left.ctx != right.ctx:
            raise DomainMismatch("parallel braids live in different contexts")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        self._set(left.ctx, Par(left.source, right.source), Par(left.target, right.target))

    def _fields(self):
        return (self.left, self.right)


class RestrictB(BoundBraid):
    __slots__ = ("sub",)
    rule = "nu"

    def __init__(self, sub: BoundBraid):
        if sub.ctx < 1:
            raise DomainMismatch("restricted braid needs a bound slot")
        object.__setattr__(self, "sub", sub)
        self._set(sub.ctx - 1, Restrict(sub.source), Restrict(sub.target))

    def _fields(self):
        return (self.sub,)


class ReplicateB(BoundBraid):
    __slots__ = ("sub",)
    rule = "rep"

    def __init__(self, sub: BoundBraid):
        object.__setattr__(self, "sub", sub)
        self._set(sub.ctx, Replicate(sub.source), Replicate(sub.target))

    def _fields(self):
        return (self.sub,)


def refl(ctx: int, p: Process) -> BoundBraid:
    """The canonical reflexivity braid of p."""
    if isinstance(p, Nil):
        return ReflNil(ctx)
    if isinstance(p, InputPrefix):
        return ReflInput(ctx, p.x, p.body)
    if isinstance(p, OutputPrefix):
        return ReflOutput(ctx, p.x, p.y, p.body)
    if isinstance(p, Choice):
        return ChoiceLB(refl(ctx, p.left), p.right)
    if isinstance(p, Par):
        return ParB(refl(ctx, p.left), refl(ctx, p.right))
    if isinstance(p, Restrict):
        return RestrictB(refl(ctx + 1, p.body))
    return ReplicateB(refl(ctx, p.body))


def serialize_braid(b: BoundBraid) -> str:
    if isinstance(b, NuNuSwap):
        return f"nunu-swap[{b.ctx}]"
    if isinstance(b, ReflNil):
        return "refl-nil"
    if isinstance(b, (ReflInput, ReflOutput)):
        return b.rule
    if isinstance(b, ChoiceLB):
        return f"choiceL({serialize_braid(b.sub)})"
    if isinstance(b, ChoiceRB):
        return f"choiceR({serialize_braid(b.sub)})"
    if isinstance(b, ParB):
        return f"par({serialize_braid(b.left)},{serialize_braid(b.right)})"
    return f"{b.rule}({serialize_braid(b.sub)})"


def reverse_bound(b: BoundBraid) -> BoundBraid:
    """The braid read from target to source."""
    if isinstance(b, NuNuSwap):
        return NuNuSwap(b.ctx, rn.rename_process(rn.swap(b.ctx), b.inner))
    if isinstance(b, (ReflNil, ReflInput, ReflOutput)):
        return b
    if isinstance(b, ChoiceLB):
        return ChoiceLB(reverse_bound(b.sub), b.other)
    if isinstance(b, ChoiceRB):
        return ChoiceRB(b.other, reverse_bound(b.sub))
    if isinstance(b, ParB):
        return ParB(reverse_bound(b.left), reverse_bound(b.right))
    return type(b)(reverse_bound(b.sub))


def rename_bound_braid(r: rn.Renaming, b: BoundBraid) -> BoundBraid:
    """The braid between the renamed endpoints."""
    if r.domain != b.ctx:
        raise DomainMismatch(f"renaming from {r.domain} applied to braid in context {b.ctx}")
    if isinstance(b, NuNuSwap):
        return NuNuSwap(r.codomain, rn.rename_process(rn.lift_n(r, 2), b.inner))
    if isinstance(b, ReflNil):
        return ReflNil(r.codomain)
    if isinstance(b, ReflInput):
        return ReflInput(r.codomain, r(b.x), rn.rename_process(rn.lift(r), b.body))
    if isinstance(b, ReflOutput):
        return ReflOutput(r.codomain, r(b.x), r(b.y), rn.rename_process(r, b.body))
    if isinstance(b, ChoiceLB):
        return ChoiceLB(rename_bound_braid(r, b.sub), rn.rename_process(r, b.other))
    if isinstance(b, ChoiceRB):
        return ChoiceRB(rn.rename_process(r, b.other), rename_bound_braid(r, b.sub))
    if isinstance(b, ParB):
        return ParB(rename_bound_braid(r, b.left), rename_bound_braid(r, b.right))
    if isinstance(b, RestrictB):
        return RestrictB(rename_bound_braid(rn.lift(r), b.sub))
    return ReplicateB(rename_bound_braid(r, b.sub))


def bound_braids_from(ctx: int, p: Process) -> list[BoundBraid]:
    """Every bound braid with source p (finite; used to drive exhaustive tests)."""
    if isinstance(p, Nil):
        return [ReflNil(ctx)]
    if isinstance(p, (InputPrefix, OutputPrefix)):
        return [refl(ctx, p)]
    if isinstance(p, Choice):
        return ([ChoiceLB(b, p.right) for b in bound_braids_from(ctx, p.left)]
                + [ChoiceRB(p.left, b) for b in bound_braids_from(ctx, p.right)
                   if b != refl(ctx, p.right)])
    if isinstance(p, Par):
        return [ParB(a, b) for a in bound_braids_from(ctx, p.left)
                for b in bound_braids_from(ctx, p.right)]
    if isinstance(p, Restrict):
        out = [RestrictB(b) for b in bound_braids_from(ctx + 1, p.body)]
        if isinstance(p.body, Restrict):
            out.append(NuNuSwap(ctx, p.body.body))
        return out
    return [ReplicateB(b) for b in bound_braids_from(ctx, p.body)]


# ---------------------------------------------- transitions versus bound braids

def residual_after_bound_braid(t: Transition, b: BoundBraid) -> tuple[Transition, BoundBraid]:
    """The pair (t/b, b/t): t moved across b, and b moved along t."""
    if t.ctx != b.ctx or t.source != b.source:
        raise NotCoinitial("transition and braid do not share a source")
    return _tb(t, b)


def residual_transition_after_bound_braid(t: Transition, b: BoundBraid) -> Transition:
    return residual_after_bound_braid(t, b)[0]


def residual_bound_braid_after_transition(b: BoundBraid, t: Transition) -> BoundBraid:
    return residual_after_bound_braid(t, b)[1]


def _tb(t: Transition, b: BoundBraid) -> tuple[Transition, BoundBraid]:
    if isinstance(b, NuNuSwap):
        inner = t.sub.sub
        moved = _restrict(_restrict(rename_transition(rn.swap(b.ctx), inner)))
        tgt = t.target
        if isinstance(tgt, Restrict) and isinstance(tgt.body, Restrict) and \
                isinstance(t, NuProp) and isinstance(t.sub, NuProp):
            return moved, NuNuSwap(t.target_ctx, tgt.body.body)
        return moved, refl(t.target_ctx, tgt)
    if isinstance(b, (ReflNil, ReflInput, ReflOutput)):
        return t, refl(t.target_ctx, t.target)
    if isinstance(b, ChoiceLB):
        if isinstance(t, ChoiceL):
            r, rb = _tb(t.sub, b.sub)
            return ChoiceL(r, b.other), rb
        return ChoiceR(b.sub.target, t.sub), refl(t.target_ctx, t.target)
    if isinstance(b, ChoiceRB):
        if isinstance(t, ChoiceR):
            r, rb = _tb(t.sub, b.sub)
            return ChoiceR(b.other, r), rb
        return ChoiceL(t.sub, b.sub.target), refl(t.target_ctx, t.target)
    if isinstance(b, ParB):
        k = magnitude(t.action)
        if isinstance(t, ParL):
            r, rb = _tb(t.sub, b.left)
            return ParL(r, b.right.target), ParB(rb, _shift_braid(b.right, k))
        if isinstance(t, ParR):
            r, rb = _tb(t.sub, b.right)
            return ParR(b.left.target, r), ParB(_shift_braid(b.left, k), rb)
        r1, b1 = _tb(t.left, b.left)
        r2, b2 = _tb(t.right, b.right)
        moved = type(t)(r1, r2)
        if isinstance(t, SynchL):
            return moved, ParB(rename_bound_braid(rn.pop(t.ctx, t.y), b1), b2)
        if isinstance(t, SynchR):
            return moved, ParB(b1, rename_bound_braid(rn.pop(t.ctx, t.y), b2))
        return moved, RestrictB(ParB(b1, b2))
    if isinstance(b, RestrictB):
        r, rb = _tb(t.sub, b.sub)
        if isinstance(t, NuExtrude):
            return NuExtrude(r), rb
        if magnitude(t.action):
            rb = rename_bound_braid(rn.swap(t.ctx), rb)
        return NuProp(r), RestrictB(rb)
    if isinstance(b, ReplicateB):
        unfolded = ParB(b.sub, b)
        r, rb = _tb(t.sub, unfolded)
        return Rep(r), rb
    raise NotCoinitial(f"no residual of {t.rule} against braid {b.rule}")


def _shift_braid(b: BoundBraid, k: int) -> BoundBraid:
    return rename_bound_braid(rn.push(b.ctx), b) if k else b


# ---------------------------------------------------------------- braidings

@dataclass(frozen=True)
class Braiding:
    """Witness relating two processes in a common context.

    ``free``: left = (swap+delta) right. ``bound``: left/right are the
    source/target of ``bound``. ``equality``: left == right.
    """
    kind: BraidKind
    ctx: int
    left: Process
    right: Process
    delta: int | None = None
    bound: BoundBraid | None = field(default=None)

    def __post_init__(self):
        if not braiding_holds(self):
            raise CofinalityViolation(f"{self.kind.value} braiding does not relate its endpoints")


def braiding_holds(g: Braiding) -> bool:
    if g.kind is BraidKind.EQUALITY:
        return g.left == g.right
    if g.kind is BraidKind.FREE:
        if g.delta is None or g.ctx < g.delta + 2:
            return False
        return g.left == rn.rename_process(rn.swap_plus(g.ctx - 2 - g.delta, g.delta), g.right)
    b = g.bound
    return b is not None and b.ctx == g.ctx and b.source == g.left and b.target == g.right


def equality(ctx: int, p: Process) -> Braiding:
    return Braiding(BraidKind.EQUALITY, ctx, p, p)


def free_braid(ctx: int, delta: int, left: Process) -> Braiding:
    right = rn.rename_process(rn.swap_plus(ctx - 2 - delta, delta), left)
    return Braiding(BraidKind.FREE, ctx, left, right, delta)


def bound_braiding(b: BoundBraid) -> Braiding:
    return Braiding(BraidKind.BOUND, b.ctx, b.source, b.target, bound=b)


def reverse(g: Braiding) -> Braiding:
    if g.kind is BraidKind.BOUND:
        return bound_braiding(reverse_bound(g.bound))
    return Braiding(g.kind, g.ctx, g.right, g.left, g.delta)


def apply_braiding(g: Braiding, p: Process) -> Process:
    """The other endpoint."""
    if p == g.left:
        return g.right
    if p == g.right:
        return g.left
    raise EndpointMismatch("process is not an endpoint of the braiding")


def _oriented(g: Braiding, p: Process) -> Braiding:
    if p == g.left:
        return g
    if p == g.right:
        return reverse(g)
    raise EndpointMismatch("transition does not start at an endpoint of the braiding")


def compute_braiding(t: Transition, u: Transition, w: Witness) -> Braiding:
    """The braiding from target(u/t) to target(t/u)."""
    if not w.involves(t, u) or not validate_witness(w):
        raise NotConcurrent("witness does not relate these transitions")
    ut = _res(u, t, w)
    tu = _res(t, u, w)
    if ut.target_ctx != tu.target_ctx:
        raise CofinalityViolation("residual targets live in different contexts")
    kind = classify_actions(w).braid_kind
    ctx = ut.target_ctx
    if kind is BraidKind.EQUALITY:
        if ut.target != tu.target:
            raise CofinalityViolation("residual targets differ where equality was expected")
        return equality(ctx, ut.target)
    if kind is BraidKind.FREE:
        g = free_braid(ctx, 0, ut.target)
        if g.right != tu.target:
            raise CofinalityViolation("residual targets are not related by swap")
        return g
    b = _bound(t, u, w)
    if b.source != ut.target or b.target != tu.target:
        raise CofinalityViolation("bound braid does not relate the residual targets")
    return bound_braiding(b)


def _bound(t: Transition, u: Transition, w: Witness) -> BoundBraid:
    """Locate the binder pair reordered by two concurrent nu-synchronisations."""
    T, U = type(t), type(u)
    p = w.premises
    if T in (NuSynchL, NuSynchR) and U in (NuSynchL, NuSynchR):
        left = _res(u, t, w).target
        return NuNuSwap(t.ctx, left.body.body)
    if T is U and T in (ChoiceL, ChoiceR, Rep):
        return _bound(t.sub, u.sub, p[0])
    if T is U is ParL:
        return ParB(_bound(t.sub, u.sub, p[0]), refl(t.ctx, t.other))
    if T is U is ParR:
        return ParB(refl(t.ctx, t.other), _bound(t.sub, u.sub, p[0]))
    if T is U is NuProp:
        return RestrictB(_bound(t.sub, u.sub, p[0]))
    raise CofinalityViolation(f"no bound braid for {t.rule} against {u.rule}")


def residual_after_braiding(t: Transition, g: Braiding) -> tuple[Transition, Braiding]:
    """(t/g, g/t) with g/t oriented from target(t) to target(t/g)."""
    if t.ctx != g.ctx:
        raise EndpointMismatch("transition and braiding live in different contexts")
    g = _oriented(g, t.source)
    if g.kind is BraidKind.EQUALITY:
        return t, equality(t.target_ctx, t.target)
    if g.kind is BraidKind.FREE:
        moved = rename_transition(rn.swap_plus(g.ctx - 2 - g.delta, g.delta), t)
        k = magnitude(t.action)
        out = free_braid(t.target_ctx, g.delta + k, t.target)
        if out.right != moved.target:
            raise CofinalityViolation("free braid does not commute with the transition")
        return moved, out
    moved, rb = _tb(t, g.bound)
    return moved, bound_braiding(rb)


def residual_transition_after_braiding(t: Transition, g: Braiding) -> Transition:
    return residual_after_braiding(t, g)[0]


def residual_braiding_after_transition(g: Braiding, t: Transition) -> Braiding:
    return residual_after_braiding(t, g)[1]


def concurrent_square(t: Transition, u: Transition):
    """Convenience: witness, both residuals and the braiding, or None if not concurrent."""
    w = check_concurrent(t, u)
    if w is None:
        return None
    return w, _res(u, t, w), _res(t, u, w), compute_braiding(t, u, w)

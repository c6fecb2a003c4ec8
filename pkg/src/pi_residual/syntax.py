"""Names, actions and process terms of the de Bruijn pi-calculus.

A context is just a natural number: the count of free-name slots a term
may mention. Names are naturals; a name is well-formed in context ``g``
when it is below ``g``. Input prefixes and restrictions bind index 0 in
their bodies, so bodies are checked one context higher.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Union


# ---------------------------------------------------------------- actions

@dataclass(frozen=True, slots=True)
class Input:
    x: int


@dataclass(frozen=True, slots=True)
class Output:
    x: int
    y: int


@dataclass(frozen=True, slots=True)
class BoundOutput:
    x: int


@dataclass(frozen=True, slots=True)
class Tau:
    pass


Action = Union[Input, Output, BoundOutput, Tau]
TAU = Tau()


def magnitude(a: Action) -> int:
    """How far the action shifts the context: 1 for bound actions, else 0."""
    return 1 if isinstance(a, (Input, BoundOutput)) else 0


def is_bound(a: Action) -> bool:
    return magnitude(a) == 1


def action_names(a: Action) -> tuple[int, ...]:
    if isinstance(a, Output):
        return (a.x, a.y)
    if isinstance(a, (Input, BoundOutput)):
        return (a.x,)
    return ()


def check_action(ctx: int, a: Action) -> bool:
    return ctx >= 0 and all(0 <= n < ctx for n in action_names(a))


# -------------------------------------------------------------- processes

@dataclass(frozen=True, slots=True)
class Nil:
    _hash: int = field(default=0, init=False, repr=False, compare=False)

    def __hash__(self):
        if not self._hash:
            object.__setattr__(self, "_hash", hash(('Nil',)))
        return self._hash


@dataclass(frozen=True, slots=True)
class InputPrefix:
    x: int
    body: "Process"
    _hash: int = field(default=0, init=False, repr=False, compare=False)

    def __hash__(self):
        if not self._hash:
            object.__setattr__(self, "_hash", hash(('InputPrefix', self.x, self.body)))
        return self._hash


@dataclass(frozen=True, slots=True)
class OutputPrefix:
    x: int
    y: int
    body: "Process"
    _hash: int = field(default=0, init=False, repr=False, compare=False)

    def __hash__(self):
        if not self._hash:
            object.__setattr__(self, "_hash", hash(('OutputPrefix', self.x, self.y, self.body)))
        return self._hash


@dataclass(frozen=True, slots=True)
class Choice:
    left: "Process"
    right: "Process"
    _hash: int = field(default=0, init=False, repr=False, compare=False)

    def __hash__(self):
        if not self._hash:
            object.__setattr__(self, "_hash", hash(('Choice', self.left, self.right)))
        return self._hash


@dataclass(frozen=True, slots=True)
class Par:
    left: "Process"
    right: "Process"
    _hash: int = field(default=0, init=False, repr=False, compare=False)

    def __hash__(self):
        if not self._hash:
            object.__setattr__(self, "_hash", hash(('Par', self.left, self.right)))
        return self._hash


@dataclass(frozen=True, slots=True)
class Restrict:
    body: "Process"
    _hash: int = field(default=0, init=False, repr=False, compare=False)

    def __hash__(self):
        if not self._hash:
            object.__setattr__(self, "_hash", hash(('Restrict', self.body)))
        return self._hash


@dataclass(frozen=True, slots=True)
class Replicate:
    body: "Process"
    _hash: int = field(default=0, init=False, repr=False, compare=False)

    def __hash__(self):
        if not self._hash:
            object.__setattr__(self, "_hash", hash(('Replicate', self.body)))
        return self._hash


Process = Union[Nil, InputPrefix, OutputPrefix, Choice, Par, Restrict, Replicate]
NIL = Nil()

# constructor order used for every canonical ordering in the package
CONSTRUCTOR_RANK = {Nil: 0, InputPrefix: 1, OutputPrefix: 2, Choice: 3,
                    Par: 4, Restrict: 5, Replicate: 6}


def check_process(ctx: int, p: Process) -> bool:
    """Well-formedness of ``p`` in context ``ctx``."""
    if not isinstance(p, (Nil, InputPrefix, OutputPrefix, Choice, Par, Restrict, Replicate)):
        return False
    try:
        need = _min_context(p)
    except RecursionError:
        return _check_walk(ctx, p)
    return ctx >= 0 and need is not None and need <= ctx


def _check_walk(ctx: int, p: Process) -> bool:
    """Stack-based check for terms too deep for the memoised recursion."""
    if ctx < 0:
        return False
    stack = [(ctx, p)]
    while stack:
        g, q = stack.pop()
        if isinstance(q, Nil):
            continue
        if isinstance(q, InputPrefix):
            if not 0 <= q.x < g:
                return False
            stack.append((g + 1, q.body))
        elif isinstance(q, OutputPrefix):
            if not (0 <= q.x < g and 0 <= q.y < g):
                return False
            stack.append((g, q.body))
        elif isinstance(q, (Choice, Par)):
            stack.append((g, q.left))
            stack.append((g, q.right))
        elif isinstance(q, Restrict):
            stack.append((g + 1, q.body))
        elif isinstance(q, Replicate):
            stack.append((g, q.body))
        else:
            return False
    return True


@lru_cache(maxsize=1 << 18)
def _min_context(p: Process) -> int | None:
    """The smallest context in which p is well formed; None for a non-process."""
    if isinstance(p, Nil):
        return 0
    if isinstance(p, InputPrefix):
        body = _min_context(p.body)
        return None if body is None or p.x < 0 else max(p.x + 1, body - 1)
    if isinstance(p, OutputPrefix):
        body = _min_context(p.body)
        return None if body is None or p.x < 0 or p.y < 0 else max(p.x + 1, p.y + 1, body)
    if isinstance(p, (Choice, Par)):
        left, right = _min_context(p.left), _min_context(p.right)
        return None if left is None or right is None else max(left, right)
    if isinstance(p, Restrict):
        body = _min_context(p.body)
        return None if body is None else max(0, body - 1)
    if isinstance(p, Replicate):
        return _min_context(p.body)
    return None


def size(p: Process) -> int:
    """Number of AST nodes."""
    if isinstance(p, Nil):
        return 1
    if isinstance(p, (Choice, Par)):
        return 1 + size(p.left) + size(p.right)
    return 1 + size(p.body)


def children(p: Process) -> tuple[Process, ...]:
    if isinstance(p, Nil):
        return ()
    if isinstance(p, (Choice, Par)):
        return (p.left, p.right)
    return (p.body,)


def canonical_key(p: Process) -> tuple:
    """Sort key: node count, constructor, children, then name indices."""
    names: tuple[int, ...] = ()
    if isinstance(p, InputPrefix):
        names = (p.x,)
    elif isinstance(p, OutputPrefix):
        names = (p.x, p.y)
    return (size(p), CONSTRUCTOR_RANK[type(p)],
            tuple(canonical_key(c) for c in children(p)), names)


@lru_cache(maxsize=None)
def _exact(ctx: int, n: int) -> tuple[Process, ...]:
    if n < 1:
        return ()
    if n == 1:
        return (NIL,)
    out: list[Process] = []
    for body in _exact(ctx + 1, n - 1):
        out.extend(InputPrefix(x, body) for x in range(ctx))
    for body in _exact(ctx, n - 1):
        out.extend(OutputPrefix(x, y, body) for x in range(ctx) for y in range(ctx))
    for ctor in (Choice, Par):
        for k in range(1, n - 1):
            for left in _exact(ctx, k):
                for right in _exact(ctx, n - 1 - k):
                    out.append(ctor(left, right))
    out.extend(Restrict(b) for b in _exact(ctx + 1, n - 1))
    out.extend(Replicate(b) for b in _exact(ctx, n - 1))
    out.sort(key=canonical_key)
    return tuple(out)


def enumerate_processes(ctx: int, max_nodes: int) -> list[Process]:
    """Every well-formed process with at most ``max_nodes`` nodes, in canonical order."""
    if max_nodes < 1:
        raise ValueError("max_nodes must be at least 1")
    out: list[Process] = []
    for n in range(1, max_nodes + 1):
        out.extend(_exact(ctx, n))
    return out


def iter_universe(max_size: int, max_ctx: int) -> Iterator[tuple[int, Process]]:
    """All (context, process) pairs with context <= max_ctx and size <= max_size."""
    for ctx in range(max_ctx + 1):
        for p in enumerate_processes(ctx, max_size):
            yield ctx, p

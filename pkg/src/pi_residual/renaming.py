"""Renamings as finite tables, with push, pop, swap, lifting and composition.

A renaming from context ``domain`` to context ``codomain`` is the tuple of
images of ``0 .. domain-1``. Keeping renamings as tables makes extensional
equality decidable, which is what the equational tests rely on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterator

from .errors import DomainMismatch, IllFormed, OutOfRange
from .syntax import (Action, BoundOutput, Choice, Input, InputPrefix, Nil, Output,
                     OutputPrefix, Par, Process, Replicate, Restrict, Tau,
                     check_action, check_process)


@dataclass(frozen=True, slots=True)
class Renaming:
    domain: int
    codomain: int
    table: tuple[int, ...]
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if len(self.table) != self.domain:
            raise IllFormed(f"table has {len(self.table)} entries for domain {self.domain}")
        if any(not 0 <= i < self.codomain for i in self.table):
            raise IllFormed(f"table {self.table} leaves codomain {self.codomain}")

    def __call__(self, x: int) -> int:
        return apply_to_name(self, x)

    def __repr__(self) -> str:
        tag = f" {self.label}" if self.label else ""
        return f"Renaming({self.domain}->{self.codomain}{tag}: {list(self.table)})"


def apply_to_name(r: Renaming, x: int) -> int:
    if not 0 <= x < r.domain:
        raise OutOfRange(f"name {x} outside domain {r.domain}")
    return r.table[x]


@lru_cache(maxsize=None)
def push(g: int) -> Renaming:
    return Renaming(g, g + 1, tuple(range(1, g + 1)), "push")


@lru_cache(maxsize=None)
def pop(g: int, y: int) -> Renaming:
    if not 0 <= y < g:
        raise OutOfRange(f"pop target {y} outside context {g}")
    return Renaming(g + 1, g, (y,) + tuple(range(g)), f"pop {y}")


@lru_cache(maxsize=None)
def swap(g: int) -> Renaming:
    return Renaming(g + 2, g + 2, (1, 0) + tuple(range(2, g + 2)), "swap")


@lru_cache(maxsize=None)
def identity(g: int) -> Renaming:
    return Renaming(g, g, tuple(range(g)), "id")


def lift(r: Renaming) -> Renaming:
    label = f"suc ({r.label})" if r.label else ""
    return Renaming(r.domain + 1, r.codomain + 1, (0,) + tuple(i + 1 for i in r.table), label)


def lift_n(r: Renaming, n: int) -> Renaming:
    for _ in range(n):
        r = lift(r)
    return r


def swap_plus(g: int, delta: int) -> Renaming:
    """swap lifted ``delta`` times: transposes ``delta`` and ``delta+1`` in context g+2+delta."""
    r = lift_n(swap(g), delta)
    return Renaming(r.domain, r.codomain, r.table, f"swap+{delta}")


def compose(outer: Renaming, inner: Renaming) -> Renaming:
    if inner.codomain != outer.domain:
        raise DomainMismatch(f"cannot compose {outer} after {inner}")
    return Renaming(inner.domain, outer.codomain, tuple(outer.table[i] for i in inner.table))


def renamings_equal(r1: Renaming, r2: Renaming) -> bool:
    return r1 == r2


def all_renamings(domain: int, codomain: int) -> Iterator[Renaming]:
    """Every table from ``domain`` to ``codomain`` (codomain ** domain of them)."""
    for table in product(range(codomain), repeat=domain):
        yield Renaming(domain, codomain, table)


# --------------------------------------------------------- functorial action

def rename_action(r: Renaming, a: Action) -> Action:
    if not check_action(r.domain, a):
        raise IllFormed(f"{a} is not an action in context {r.domain}")
    if isinstance(a, Input):
        return Input(r.table[a.x])
    if isinstance(a, Output):
        return Output(r.table[a.x], r.table[a.y])
    if isinstance(a, BoundOutput):
        return BoundOutput(r.table[a.x])
    return a


def _rename(table: tuple[int, ...], p: Process) -> Process:
    if isinstance(p, Nil):
        return p
    if isinstance(p, InputPrefix):
        return InputPrefix(table[p.x], _rename(_lift_table(table), p.body))
    if isinstance(p, OutputPrefix):
        return OutputPrefix(table[p.x], table[p.y], _rename(table, p.body))
    if isinstance(p, Choice):
        return Choice(_rename(table, p.left), _rename(table, p.right))
    if isinstance(p, Par):
        return Par(_rename(table, p.left), _rename(table, p.right))
    if isinstance(p, Restrict):
        return Restrict(_rename(_lift_table(table), p.body))
    return Replicate(_rename(table, p.body))


def _lift_table(table: tuple[int, ...]) -> tuple[int, ...]:
    return (0,) + tuple(i + 1 for i in table)


def rename_process(r: Renaming, p: Process) -> Process:
    if not check_process(r.domain, p):
        raise IllFormed(f"process is not well-formed in context {r.domain}")
    if r.table == tuple(range(r.domain)):
        return p
    return _rename(r.table, p)


def is_push_image(a: Action) -> bool:
    """True when ``a`` never mentions index 0, i.e. it is push applied to something."""
    if isinstance(a, Tau):
        return True
    if isinstance(a, Output):
        return a.x > 0 and a.y > 0
    return a.x > 0


def unpush_action(a: Action) -> Action:
    """Inverse of push on actions in its image."""
    if not is_push_image(a):
        raise IllFormed(f"{a} is not in the image of push")
    if isinstance(a, Input):
        return Input(a.x - 1)
    if isinstance(a, Output):
        return Output(a.x - 1, a.y - 1)
    if isinstance(a, BoundOutput):
        return BoundOutput(a.x - 1)
    return a

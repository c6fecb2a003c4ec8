"""JSON-ready dictionaries and Graphviz DOT text for the library's values."""

from __future__ import annotations

from .concurrency import Witness, classify_actions
from .residuation import Braiding, serialize_braid
from .semantics import Transition, serialize_proof
from .surface import print_action, print_de_bruijn, print_named
from .syntax import Process
from .traces import CausalEquivalence, Cons, NilRefl, Trace, Trans, Transpose

SCHEMA = "pi-residual/1"


def process_json(ctx: int, p: Process) -> dict:
    return {"context": ctx, "named": print_named(ctx, p), "deBruijn": print_de_bruijn(ctx, p)}


def transition_json(t: Transition, index: int | None = None) -> dict:
    out = {"proof": serialize_proof(t), "action": print_action(t.action),
           "source": process_json(t.ctx, t.source),
           "target": process_json(t.target_ctx, t.target)}
    if index is not None:
        out = {"index": index, **out}
    return out


def witness_json(w: Witness) -> dict:
    return {"rule": w.rule, "flipped": w.flipped,
            "first": serialize_proof(w.first), "second": serialize_proof(w.second),
            "premises": [witness_json(p) for p in w.premises]}


def classification_json(w: Witness) -> dict:
    ca = classify_actions(w)
    return {"shape": ca.shape.value, "actions": [print_action(a) for a in ca.actions],
            "residualActions": [print_action(a) for a in ca.residuals],
            "braidKind": ca.braid_kind.value}


def braiding_json(g: Braiding) -> dict:
    out = {"kind": g.kind.value}
    if g.delta is not None:
        out["delta"] = g.delta
    if g.bound is not None:
        out["braidProof"] = serialize_braid(g.bound)
    out["left"] = process_json(g.ctx, g.left)
    out["right"] = process_json(g.ctx, g.right)
    return out


def trace_json(tr: Trace) -> dict:
    return {"steps": list(tr.key()), "actions": [print_action(a) for a in tr.actions],
            "end": process_json(tr.end_ctx, tr.end)}


def equivalence_json(alpha: CausalEquivalence) -> dict:
    if isinstance(alpha, NilRefl):
        return {"rule": "nil"}
    if isinstance(alpha, Cons):
        return {"rule": "cons", "step": serialize_proof(alpha.step), "sub": equivalence_json(alpha.sub)}
    if isinstance(alpha, Trans):
        return {"rule": "trans", "first": equivalence_json(alpha.first),
                "second": equivalence_json(alpha.second)}
    assert isinstance(alpha, Transpose)
    return {"rule": "transpose", "t": serialize_proof(alpha.t), "t2": serialize_proof(alpha.t2),
            "witness": alpha.witness.rule, "continuation": list(alpha.cont.key())}


# ------------------------------------------------------------------- DOT

def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


class _Dot:
    def __init__(self, name: str):
        self.name = name
        self.nodes: dict[tuple[int, Process], str] = {}
        self.lines: list[str] = []

    def node(self, ctx: int, p: Process) -> str:
        key = (ctx, p)
        if key not in self.nodes:
            nid = f"n{len(self.nodes)}"
            self.nodes[key] = nid
            self.lines.append(f"  {nid} [label={_quote(print_de_bruijn(ctx, p))}];")
        return self.nodes[key]

    def edge(self, a: str, b: str, label: str, style: str | None = None):
        attrs = f"label={_quote(label)}"
        if style:
            attrs += f", style={style}"
        self.lines.append(f"  {a} -> {b} [{attrs}];")

    def braid(self, g: Braiding):
        a, b = self.node(g.ctx, g.left), self.node(g.ctx, g.right)
        label = g.kind.value + (f"({g.delta})" if g.delta is not None else "")
        if g.bound is not None:
            label += " " + serialize_braid(g.bound)
        self.edge(a, b, label, "dashed, dir=both")

    def text(self) -> str:
        return "\n".join([f"digraph {self.name} {{", "  node [shape=box];", *self.lines, "}"]) + "\n"


def square_dot(t: Transition, u: Transition, ut: Transition, tu: Transition, g: Braiding) -> str:
    """The residual square: P -t-> . -u/t-> . ~ . <-t/u- . <-u- P."""
    d = _Dot("residual")
    src = d.node(t.ctx, t.source)
    a, b = d.node(t.target_ctx, t.target), d.node(u.target_ctx, u.target)
    d.edge(src, a, serialize_proof(t))
    d.edge(src, b, serialize_proof(u))
    d.edge(a, d.node(ut.target_ctx, ut.target), serialize_proof(ut))
    d.edge(b, d.node(tu.target_ctx, tu.target), serialize_proof(tu))
    d.braid(g)
    return d.text()


def equivalence_dot(tr1: Trace, tr2: Trace, braids: list[Braiding]) -> str:
    """Both traces as paths from the shared start, joined by the composite braiding."""
    d = _Dot("equivalence")
    for tr in (tr1, tr2):
        prev = d.node(tr.ctx, tr.start)
        for t in tr.steps:
            nxt = d.node(t.target_ctx, t.target)
            d.edge(prev, nxt, serialize_proof(t))
            prev = nxt
    for g in braids:
        d.braid(g)
    return d.text()

"""Walk through the concurrent squares of the programs in demos/programs.

Run from the repository root:  python demos/walkthrough.py
"""

from pathlib import Path

from pi_residual import (check_causal_equiv, check_concurrent, composite_braiding, enumerate_traces,
                         enumerate_transitions, parse, print_action, print_de_bruijn, serialize_proof)
from pi_residual.residuation import concurrent_square, serialize_braid

HERE = Path(__file__).parent / "programs"


def describe_braid(br):
    if br.bound is not None:
        return f"bound braid {serialize_braid(br.bound)}"
    if br.delta is not None:
        return f"free braid, swap lifted {br.delta} times"
    return "equality"


def show_squares(name):
    g, p = parse((HERE / name).read_text())
    print(f"== {name}: {print_de_bruijn(g, p)}")
    ts = enumerate_transitions(g, p, 1)
    for i, t in enumerate(ts):
        for u in ts[i + 1:]:
            sq = concurrent_square(t, u)
            if sq is None:
                continue
            w, ut, tu, br = sq
            print(f"  t   = {serialize_proof(t)}  [{print_action(t.action)}]")
            print(f"  u   = {serialize_proof(u)}  [{print_action(u.action)}]")
            print(f"  u/t = {serialize_proof(ut)}  [{print_action(ut.action)}]")
            print(f"  t/u = {serialize_proof(tu)}  [{print_action(tu.action)}]")
            print(f"  closed by {describe_braid(br)} ({w.rule})")
            print()


def show_classes(name, depth=2):
    g, p = parse((HERE / name).read_text())
    trs = enumerate_traces(g, p, depth, 0)
    full = [tr for tr in trs if len(tr) == depth]
    print(f"== causal classes of length-{depth} traces of {name}")
    seen = set()
    for tr in full:
        if tr.key() in seen:
            continue
        mates = [o for o in full if check_causal_equiv(tr, o) is not None]
        seen |= {o.key() for o in mates}
        print("  {" + ",  ".join(" ; ".join(o.key()) for o in mates) + "}")
        if len(mates) > 1:
            kinds = [b.kind.value for b in composite_braiding(check_causal_equiv(tr, mates[-1]))]
            print(f"    composite braiding: {kinds}")
    print()


if __name__ == "__main__":
    for name in ("same_binder.pi", "different_binders.pi", "propagating.pi", "nu_synchs.pi",
                 "erasure.pi"):
        show_squares(name)
    show_classes("same_binder.pi")
    show_classes("different_binders.pi")

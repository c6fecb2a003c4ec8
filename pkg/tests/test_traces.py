import pytest
from hypothesis import HealthCheck, given, settings

from pi_residual import renaming as rn
from pi_residual.concurrency import BraidKind, Witness, check_concurrent
from pi_residual.errors import CompositionMismatch, DomainMismatch, EndpointMismatch, NotConcurrent
from pi_residual.residuation import (compute_braiding, equality, free_braid, residual,
                                    residual_after_braiding, reverse)
from pi_residual.semantics import enumerate_transitions, parse_proof, serialize_proof, validate_transition
from pi_residual.surface import parse
from pi_residual.syntax import NIL, Par, iter_universe, magnitude
from pi_residual.traces import (Cons, NilRefl, Trace, Trans, Transpose, apply_composite_braiding,
                                causal_class, check_causal_equiv, composite_braiding, empty,
                                enumerate_traces, parse_trace, reflexivity, rename_trace,
                                residual_trace_pair, serialize_trace, symmetric, trace_of,
                                transpose, validate_equivalence)
from oracles import derivations, to_tuple
from strategies import nu_sync_programs

SAME = "free x z; new y. (x<y>.0 | z<y>.0)"
FREE = "free x z; new u. new v. (x<v>.0 | z<u>.0)"


def program(src):
    return parse(src)


def test_trace_must_compose():
    g, p = program(SAME)
    t, u = enumerate_transitions(g, p, 0)
    with pytest.raises(CompositionMismatch):
        Trace(g, p, (t, u))
    with pytest.raises(ValueError):
        trace_of()


def test_enumerate_traces_basic():
    g, p = program(SAME)
    assert enumerate_traces(g, p, 0) == [empty(g, p)]
    trs = enumerate_traces(g, p, 2, 0)
    maximal = [tr for tr in trs if len(tr) == 2]
    assert [serialize_trace(tr) for tr in maximal] == [
        "nu^(parL(ax-out));parR(ax-out)", "nu^(parR(ax-out));parL(ax-out)"]
    assert len(enumerate_traces(0, NIL, 3)) == 1


def _oracle_count(p, depth, fuel):
    if depth == 0:
        return 1
    return 1 + sum(_oracle_count(r, depth - 1, fuel) for _, _, r in derivations(p, fuel))


def test_trace_count_matches_oracle():
    for g, p in iter_universe(5, 2):
        for depth in (1, 2, 3):
            assert len(enumerate_traces(g, p, depth, 0)) == _oracle_count(to_tuple(p), depth, 0)


def test_trace_invariants():
    for g, p in iter_universe(4, 2):
        for tr in enumerate_traces(g, p, 2, 1):
            assert tr.end_ctx - tr.ctx == sum(magnitude(a) for a in tr.actions)
            assert parse_trace(g, p, serialize_trace(tr)) == tr


def test_rename_trace():
    g, p = program(SAME)
    r = rn.swap(0)
    assert rename_trace(r, empty(g, p)) == empty(g, rn.rename_process(r, p))
    with pytest.raises(DomainMismatch):
        rename_trace(rn.push(0), empty(g, p))
    for g, p in iter_universe(4, 2):
        for tr in enumerate_traces(g, p, 2, 1):
            for r in (rn.push(g), *rn.all_renamings(g, 2)):
                rt = rename_trace(r, tr)
                k = tr.end_ctx - tr.ctx
                assert rt.end == rn.rename_process(rn.lift_n(r, k), tr.end)
                if tr.steps:
                    assert rt.steps[0].action == rn.rename_action(r, tr.steps[0].action)


def test_residual_trace_pair_basics():
    g, p = program(FREE)
    tr = enumerate_traces(g, p, 2, 0)[-1]
    gid = equality(g, p)
    assert residual_trace_pair(empty(g, p), gid) == (empty(g, p), gid)
    moved, out = residual_trace_pair(tr, gid)
    assert moved == tr and out == equality(tr.end_ctx, tr.end)
    t = tr.steps[0]
    swapped = free_braid(g, 0, p)
    moved, out = residual_trace_pair(trace_of(t), swapped)
    assert (moved.steps[0], out) == residual_after_braiding(t, swapped)
    with pytest.raises(EndpointMismatch):
        residual_trace_pair(tr, equality(g, NIL))


def test_transpose_same_binder():
    g, p = program(SAME)
    t, u = enumerate_transitions(g, p, 0)
    w = check_concurrent(t, u)
    r = residual(u, t, w)
    left, right, proof = transpose(t, u, w, empty(r.target_ctx, r.target))
    assert serialize_trace(left) == "nu^(parL(ax-out));parR(ax-out)"
    assert serialize_trace(right) == "nu^(parR(ax-out));parL(ax-out)"
    (b,) = composite_braiding(proof)
    assert b.kind is BraidKind.EQUALITY
    assert b.left == b.right == left.end == right.end == Par(NIL, NIL)


def test_transpose_free_braid():
    g, p = program(FREE)
    t = parse_proof(g, p, "nu(nu^(parL(ax-out)))")
    u = parse_proof(g, p, "nu^(nu(parR(ax-out)))")
    w = check_concurrent(t, u)
    r = residual(u, t, w)
    _, _, proof = transpose(t, u, w, empty(r.target_ctx, r.target))
    (b,) = composite_braiding(proof)
    assert b.kind is BraidKind.FREE and b.delta == 0


def test_transpose_requires_concurrency_and_composition():
    g, p = program("free x; x(y).0 + x(y).0")
    t, u = enumerate_transitions(g, p)
    with pytest.raises(NotConcurrent):
        Transpose(t, u, Witness(t, u, "choiceL~choiceL", False, ()), empty(2, NIL))
    g, p = program(SAME)
    t, u = enumerate_transitions(g, p, 0)
    with pytest.raises(CompositionMismatch):
        Transpose(t, u, check_concurrent(t, u), empty(g, p))


def test_transpose_with_continuation():
    g, p = program("free x z; new u. new v. (x<v>.v<u>.0 | z<u>.u<v>.0)")
    t = parse_proof(g, p, "nu(nu^(parL(ax-out)))")
    u = parse_proof(g, p, "nu^(nu(parR(ax-out)))")
    w = check_concurrent(t, u)
    r = residual(u, t, w)
    for cont in enumerate_traces(r.target_ctx, r.target, 2, 0):
        left, right, proof = transpose(t, u, w, cont)
        assert len(left) == len(right) and left.start == right.start
        assert all(validate_transition(s) for s in left.steps + right.steps)
        assert apply_composite_braiding(composite_braiding(proof), left.end) == right.end


def test_check_causal_equiv_examples():
    g, p = program(SAME)
    a, b = [tr for tr in enumerate_traces(g, p, 2, 0) if len(tr) == 2]
    proof = check_causal_equiv(a, a)
    assert isinstance(proof, Cons) and proof.left == proof.right == a
    proof = check_causal_equiv(a, b)
    assert proof is not None and (proof.left, proof.right) == (a, b)
    assert isinstance(proof, Transpose)
    g, p = program("free x; x(y).0 + x(y).0")
    l, r = [tr for tr in enumerate_traces(g, p, 1) if len(tr) == 1]
    assert check_causal_equiv(l, r) is None
    assert check_causal_equiv(a, empty(g, p)) is None


def test_symmetry_and_transitivity_proofs():
    g, p = program("free x z w; x<x>.0 | z<z>.0 | w<w>.0")
    trs = [tr for tr in enumerate_traces(g, p, 3, 0) if len(tr) == 3]
    cls = causal_class(trs[0])
    assert len(cls) == 6
    for other in cls:
        proof = check_causal_equiv(trs[0], other)
        assert validate_equivalence(proof)
        back = symmetric(proof)
        assert (back.left, back.right) == (other, trs[0]) and validate_equivalence(back)
        both = Trans(proof, back)
        assert both.left == both.right == trs[0]
        assert apply_composite_braiding(composite_braiding(both), trs[0].end) == trs[0].end
    assert composite_braiding(NilRefl(g, p)) == []
    with pytest.raises(CompositionMismatch):
        Trans(reflexivity(trs[0]), reflexivity(trs[1]))


def test_budget_limits_search():
    g, p = program("free x z w; x<x>.0 | z<z>.0 | w<w>.0")
    trs = [tr for tr in enumerate_traces(g, p, 3, 0) if len(tr) == 3]
    far = trs[-1]
    assert check_causal_equiv(trs[0], far, budget=10_000) is not None
    assert check_causal_equiv(trs[0], far, budget=0) is None


@settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(nu_sync_programs())
def test_equivalence_classes_on_synchronising_processes(prog):
    g, p = prog
    trs = [tr for tr in enumerate_traces(g, p, 2, 0) if len(tr) == 2][:30]
    for tr in trs:
        cls = causal_class(tr)
        for other in cls:
            proof = check_causal_equiv(tr, other)
            assert proof is not None and validate_equivalence(proof)
            assert apply_composite_braiding(composite_braiding(proof), tr.end) == other.end
            assert symmetric(proof).right == tr
    # traces carried across a braiding and back are unchanged
    ts = enumerate_transitions(g, p, 0)
    for t in ts:
        for u in ts:
            w = check_concurrent(t, u)
            if w is None:
                continue
            br = compute_braiding(t, u, w)
            for tr in enumerate_traces(br.ctx, br.left, 2, 0)[:20]:
                moved, _ = residual_trace_pair(tr, br)
                assert residual_trace_pair(moved, reverse(br))[0] == tr

import pytest

from pi_residual import renaming as rn
from pi_residual.errors import DomainMismatch, IllFormed, InvalidDerivation, PiSyntaxError
from pi_residual.semantics import (InputAx, NuExtrude, OutputAx, ParL, ParR, Rep,
                                   enumerate_transitions, parse_proof, rename_transition,
                                   serialize_proof, unchecked, validate_transition, with_cache)
from pi_residual.surface import parse
from pi_residual.syntax import (NIL, BoundOutput, Input, InputPrefix, Output, OutputPrefix, Par,
                                Replicate, Restrict, check_process, iter_universe, magnitude)
from oracles import action_tuple, derivations, to_tuple

SAME_BINDER = "free x z; new y. (x<y>.0 | z<y>.0)"


def test_nil_has_no_transitions():
    assert enumerate_transitions(0, NIL, 2) == []


def test_same_binder_extrusions():
    g, p = parse(SAME_BINDER)
    ts = enumerate_transitions(g, p, 0)
    assert [serialize_proof(t) for t in ts] == ["nu^(parL(ax-out))", "nu^(parR(ax-out))"]
    left, right = ts
    assert left.action == BoundOutput(0) and right.action == BoundOutput(1)
    assert (left.target_ctx, left.target) == (3, Par(NIL, OutputPrefix(2, 0, NIL)))
    assert (right.target_ctx, right.target) == (3, Par(OutputPrefix(1, 0, NIL), NIL))
    assert isinstance(left, NuExtrude) and isinstance(left.sub, ParL)


def test_replication_unfolds_and_pushes_passive_branch():
    p = Replicate(InputPrefix(0, NIL))
    ts = enumerate_transitions(1, p, 1)
    t = ts[0]
    assert isinstance(t, Rep) and isinstance(t.sub, ParL) and isinstance(t.sub.sub, InputAx)
    assert t.action == Input(0)
    assert t.target == Par(NIL, rn.rename_process(rn.push(1), p))
    assert enumerate_transitions(1, p, 0) == []


def test_bare_prefix_has_exactly_one_transition():
    assert len(enumerate_transitions(1, InputPrefix(0, NIL), 3)) == 1
    assert len(enumerate_transitions(1, OutputPrefix(0, 0, NIL), 3)) == 1


def test_enumerate_rejects_ill_formed():
    with pytest.raises(IllFormed):
        enumerate_transitions(0, InputPrefix(0, NIL))
    with pytest.raises(ValueError):
        enumerate_transitions(0, NIL, -1)


def test_validate_detects_tampering():
    g, p = parse(SAME_BINDER)
    t = enumerate_transitions(g, p, 0)[0]
    assert validate_transition(t)
    assert not validate_transition(with_cache(t, target=NIL))
    assert not validate_transition(with_cache(t, action=BoundOutput(1)))


def test_extrusion_needs_a_distinct_subject():
    # nu y. y<y>.0 would extrude y on itself: premise action Output(0,0)
    sub = OutputAx(1, 0, 0, NIL)
    with pytest.raises(InvalidDerivation):
        NuExtrude(sub)
    forged = unchecked(NuExtrude, sub, ctx=0, source=Restrict(OutputPrefix(0, 0, NIL)),
                       action=BoundOutput(0), target=NIL)
    assert not validate_transition(forged)


def test_lts_matches_oracle_small():
    for g, p in iter_universe(5, 2):
        for fuel in (0, 1):
            got = {(serialize_proof(t), action_tuple(t.action), to_tuple(t.target))
                   for t in enumerate_transitions(g, p, fuel)}
            assert got == set(derivations(to_tuple(p), fuel))


def test_enumeration_invariants_small():
    for g, p in iter_universe(5, 2):
        ts = enumerate_transitions(g, p, 1)
        assert len(set(ts)) == len(ts)
        for t in ts:
            assert t.ctx == g and t.source == p
            assert check_process(g + magnitude(t.action), t.target)
            assert validate_transition(t)


def test_rename_transition_commutes_with_endpoints():
    for g, p in iter_universe(5, 2):
        for t in enumerate_transitions(g, p, 1):
            assert rename_transition(rn.identity(g), t) is t
            for r in (rn.push(g), *(rn.all_renamings(g, 2))):
                rt = rename_transition(r, t)
                k = magnitude(t.action)
                assert validate_transition(rt)
                assert rt.source == rn.rename_process(r, t.source)
                assert rt.action == rn.rename_action(r, t.action)
                assert rt.target == rn.rename_process(rn.lift_n(r, k), t.target)
                assert type(rt) is type(t)


def test_rename_transition_domain_check():
    t = enumerate_transitions(1, OutputPrefix(0, 0, NIL))[0]
    with pytest.raises(DomainMismatch):
        rename_transition(rn.push(2), t)


def test_renamed_extrusion_keeps_its_rule():
    g, p = parse("free x y; new z. x<z>.0")
    t = enumerate_transitions(g, p)[0]
    rt = rename_transition(rn.swap(0), t)
    assert isinstance(rt, NuExtrude) and rt.action == BoundOutput(1)


def test_proof_round_trip_small():
    for g, p in iter_universe(5, 2):
        for t in enumerate_transitions(g, p, 1):
            assert parse_proof(g, p, serialize_proof(t)) == t


def test_proof_parse_errors():
    g, p = parse(SAME_BINDER)
    with pytest.raises(InvalidDerivation):
        parse_proof(g, p, "parL(ax-out)")
    with pytest.raises(InvalidDerivation):
        parse_proof(g, p, "nu(parL(ax-out))")      # the action mentions the binder
    with pytest.raises(PiSyntaxError):
        parse_proof(g, p, "nu^(parL(ax-out)")
    with pytest.raises(PiSyntaxError):
        parse_proof(g, p, "nu^(parL(ax-out))) ")
    with pytest.raises(PiSyntaxError):
        parse_proof(g, p, "")
    assert parse_proof(g, p, " nu^( parL( ax-out ) ) ").action == BoundOutput(0)


def test_sync_targets():
    g, p = parse("free x; x(y).y<y>.0 | x<x>.0")
    (t,) = [t for t in enumerate_transitions(g, p) if serialize_proof(t).startswith("synchL")]
    assert t.target == Par(OutputPrefix(0, 0, NIL), NIL)
    g, p = parse("free x; x(y).y<y>.0 | new z. x<z>.0")
    (t,) = [t for t in enumerate_transitions(g, p) if serialize_proof(t).startswith("nusynch")]
    assert serialize_proof(t) == "nusynchL(ax-in,nu^(ax-out))"
    assert t.target == Restrict(Par(OutputPrefix(0, 0, NIL), NIL))

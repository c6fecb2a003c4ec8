import pytest
from hypothesis import given, strategies as st

from pi_residual.syntax import (NIL, TAU, BoundOutput, Choice, Input, InputPrefix, Output,
                                OutputPrefix, Par, Replicate, Restrict, canonical_key,
                                check_action, check_process, enumerate_processes, magnitude, size)
from oracles import count_processes, to_tuple, well_formed


def test_check_process_examples():
    assert check_process(0, NIL)
    assert check_process(1, InputPrefix(0, OutputPrefix(1, 0, NIL)))
    assert not check_process(0, InputPrefix(0, NIL))
    assert not check_process(1, Restrict(OutputPrefix(2, 0, NIL)))


def test_check_action_examples():
    assert check_action(0, TAU)
    assert check_action(2, Output(1, 0))
    assert not check_action(1, BoundOutput(1))
    assert check_action(1, Input(0)) and not check_action(0, Input(0))


def test_magnitude():
    assert magnitude(Input(0)) == 1
    assert magnitude(TAU) == 0
    assert magnitude(BoundOutput(3)) == 1
    assert magnitude(Output(0, 0)) == 0


def test_enumerate_small():
    assert enumerate_processes(0, 1) == [NIL]
    assert enumerate_processes(0, 2) == [NIL, Restrict(NIL), Replicate(NIL)]
    with pytest.raises(ValueError):
        enumerate_processes(0, 0)


def test_enumeration_count_matches_counter():
    # 1 + 4 + 26 processes of size 1..3 in context 1 (counted by hand)
    assert len(enumerate_processes(1, 3)) == 31
    for g in range(3):
        for n in range(1, 6):
            assert len(enumerate_processes(g, n)) == sum(count_processes(g, k) for k in range(1, n + 1))


@pytest.mark.parametrize("g", [0, 1, 2])
def test_enumeration_sorted_unique_and_bounded(g):
    ps = enumerate_processes(g, 5)
    keys = [canonical_key(p) for p in ps]
    assert all(a < b for a, b in zip(keys, keys[1:]))
    assert all(size(p) <= 5 and check_process(g, p) for p in ps)


def test_checker_agrees_with_naive_oracle():
    # terms built for context 3, then checked in every smaller context too
    for p in enumerate_processes(3, 5):
        for g in range(4):
            assert check_process(g, p) == well_formed(g, to_tuple(p))


def test_checker_survives_deep_terms():
    p = NIL
    for _ in range(5000):
        p = Restrict(p)
    assert check_process(0, p)


names = st.integers(0, 3)
procs = st.recursive(
    st.just(NIL),
    lambda kids: st.one_of(
        st.builds(InputPrefix, names, kids),
        st.builds(OutputPrefix, names, names, kids),
        st.builds(Choice, kids, kids),
        st.builds(Par, kids, kids),
        st.builds(Restrict, kids),
        st.builds(Replicate, kids)),
    max_leaves=8)


@given(st.integers(0, 3), procs)
def test_checker_oracle_random(g, p):
    assert check_process(g, p) == well_formed(g, to_tuple(p))

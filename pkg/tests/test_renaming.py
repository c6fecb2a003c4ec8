import pytest

from pi_residual import renaming as rn
from pi_residual.errors import DomainMismatch, IllFormed, OutOfRange
from pi_residual.syntax import NIL, BoundOutput, InputPrefix, Output, OutputPrefix, Restrict, TAU, enumerate_processes
from oracles import pop_fn, push_fn, rename, swap_fn, to_tuple


def test_apply_to_name_examples():
    assert rn.apply_to_name(rn.push(2), 0) == 1
    assert rn.apply_to_name(rn.pop(2, 1), 0) == 1
    assert rn.apply_to_name(rn.swap(1), 2) == 2
    with pytest.raises(OutOfRange):
        rn.apply_to_name(rn.push(2), 2)


def test_primitive_tables():
    assert rn.swap(0).table == (1, 0)
    assert rn.pop(1, 0).table == (0, 0)
    assert rn.push(2).table == (1, 2)
    assert rn.identity(3).table == (0, 1, 2)
    with pytest.raises(OutOfRange):
        rn.pop(1, 1)


def test_lift_examples():
    assert rn.lift(rn.push(1)).table == (0, 2)
    r = rn.pop(2, 1)
    assert rn.lift_n(r, 0) == r
    assert rn.lift(rn.identity(2)) == rn.identity(3)
    assert rn.lift_n(rn.swap(0), 2).table == (0, 1, 3, 2)


def test_compose_examples():
    assert rn.compose(rn.pop(2, 1), rn.push(2)) == rn.identity(2)
    for g in range(4):
        assert rn.compose(rn.swap(g), rn.swap(g)) == rn.identity(g + 2)
        assert rn.compose(rn.pop(g + 1, 0), rn.lift(rn.push(g))) == rn.identity(g + 1)
    with pytest.raises(DomainMismatch):
        rn.compose(rn.push(3), rn.push(1))


def test_renamings_equal():
    assert rn.renamings_equal(rn.identity(2), rn.identity(2))
    assert not rn.renamings_equal(rn.push(1), rn.pop(1, 0))
    # labels are display-only
    assert rn.swap_plus(1, 0) == rn.swap(1)


def test_renaming_rejects_bad_tables():
    with pytest.raises(IllFormed):
        rn.Renaming(2, 2, (0,))
    with pytest.raises(IllFormed):
        rn.Renaming(1, 1, (1,))


def test_rename_process_examples():
    assert rn.rename_process(rn.push(1), OutputPrefix(0, 0, NIL)) == OutputPrefix(1, 1, NIL)
    assert rn.rename_process(rn.swap(0), Restrict(InputPrefix(1, NIL))) == Restrict(InputPrefix(2, NIL))
    assert rn.rename_action(rn.pop(1, 0), BoundOutput(1)) == BoundOutput(0)
    assert rn.rename_action(rn.swap(0), TAU) == TAU
    with pytest.raises(IllFormed):
        rn.rename_process(rn.push(0), OutputPrefix(0, 0, NIL))


def test_all_renamings_count():
    assert sum(1 for _ in rn.all_renamings(2, 3)) == 9
    assert list(rn.all_renamings(0, 0)) == [rn.identity(0)]


def test_rename_process_matches_oracle():
    for g in range(3):
        for p in enumerate_processes(g, 5):
            t = to_tuple(p)
            assert to_tuple(rn.rename_process(rn.push(g), p)) == rename(push_fn, t)
            if g >= 2:
                assert to_tuple(rn.rename_process(rn.swap(g - 2), p)) == rename(swap_fn, t)
            if g >= 1:
                for y in range(g - 1):
                    assert to_tuple(rn.rename_process(rn.pop(g - 1, y), p)) == rename(pop_fn(y), t)


def test_functoriality_on_processes():
    for p in enumerate_processes(2, 4):
        assert rn.rename_process(rn.identity(2), p) == p
        for r in rn.all_renamings(2, 2):
            for s in rn.all_renamings(2, 3):
                lhs = rn.rename_process(rn.compose(s, r), p)
                assert lhs == rn.rename_process(s, rn.rename_process(r, p))


def test_push_image_actions():
    assert rn.is_push_image(Output(1, 2)) and not rn.is_push_image(Output(1, 0))
    assert rn.unpush_action(rn.rename_action(rn.push(3), Output(2, 0))) == Output(2, 0)
    with pytest.raises(IllFormed):
        rn.unpush_action(BoundOutput(0))

import pytest
from hypothesis import given, strategies as st

from pi_residual.errors import IllFormed, PiSyntaxError, UnboundName
from pi_residual.surface import parse, print_action, print_de_bruijn, print_named
from pi_residual.syntax import (NIL, BoundOutput, Choice, Input, InputPrefix, Output, OutputPrefix,
                                Par, Replicate, Restrict, TAU, enumerate_processes)


def test_parse_examples():
    assert parse("free x z; new y. (x<y>.0 | z<y>.0)") == (
        2, Restrict(Par(OutputPrefix(1, 0, NIL), OutputPrefix(2, 0, NIL))))
    assert parse("free; 0") == (0, NIL)
    assert parse("free x; x(z).z<x>.0") == (1, InputPrefix(0, OutputPrefix(0, 1, NIL)))


def test_free_names_in_declaration_order():
    assert parse("free a b c; c<a>.0") == (3, OutputPrefix(2, 0, NIL))


def test_precedence_and_associativity():
    _, p = parse("free x; x<x>.0 | 0 + !0 | 0")
    assert p == Choice(Par(OutputPrefix(0, 0, NIL), NIL), Par(Replicate(NIL), NIL))
    _, p = parse("free; 0 | 0 | 0")
    assert p == Par(Par(NIL, NIL), NIL)
    _, p = parse("free; new y. 0 | 0")
    assert p == Par(Restrict(NIL), NIL)


def test_shadowing_resolves_to_nearest_binder():
    assert parse("free x; x(x).x<x>.0") == (1, InputPrefix(0, OutputPrefix(0, 0, NIL)))


def test_comments_and_whitespace():
    assert parse("# two names\nfree x y;\n  y<x>.0  # send\n") == (2, OutputPrefix(1, 0, NIL))


@pytest.mark.parametrize("text, pos", [
    ("free x; x<x>", 12),
    ("free x; x.0", 9),
    ("x<x>.0", 0),
    ("free x; (0", 10),
    ("free x x; 0", 7),
    ("free; 0 0", 8),
    ("free; 0 @", 8),
])
def test_syntax_errors_carry_positions(text, pos):
    with pytest.raises(PiSyntaxError) as e:
        parse(text)
    assert e.value.position == pos


def test_unbound_name():
    with pytest.raises(UnboundName):
        parse("free x; y<x>.0")


def test_print_named_examples():
    assert print_named(0, NIL) == "free; 0"
    assert print_named(1, Restrict(NIL)) == "free a0; new x0. 0"
    with pytest.raises(IllFormed):
        print_named(0, OutputPrefix(0, 0, NIL))


def test_print_named_avoids_clashing_binders():
    p = Restrict(OutputPrefix(0, 1, NIL))
    text = print_named(1, p, ["x0"])
    assert parse(text) == (1, p)


def test_print_de_bruijn():
    assert print_de_bruijn(2, Restrict(Par(OutputPrefix(1, 0, NIL), InputPrefix(2, NIL)))) == \
        "2 |- nu.(1<0>.0 | 2().0)"


def test_print_action():
    assert print_action(Output(1, 0)) == "1<0>"
    assert print_action(Input(0)) == "0(.)"
    assert print_action(BoundOutput(2)) == "2^(.)"
    assert print_action(TAU) == "tau"
    assert print_action(Output(1, 0), ["x", "z"]) == "z<x>"


def test_round_trip_and_injectivity_small():
    for g in range(3):
        seen = set()
        for p in enumerate_processes(g, 5):
            assert parse(print_named(g, p)) == (g, p)
            s = print_de_bruijn(g, p)
            assert s not in seen
            seen.add(s)


ident = st.sampled_from(["x", "y", "z", "w"])


@st.composite
def programs(draw, depth=3):
    free = draw(st.lists(ident, unique=True, max_size=3))

    def proc(scope, d):
        options = ["0", "par", "choice", "new", "bang"] + (["in", "out"] if scope else [])
        kind = draw(st.sampled_from(options if d else ["0"] + (["in", "out"] if scope else [])))
        if kind == "0":
            return "0"
        if kind == "in":
            b = draw(ident)
            return f"{draw(st.sampled_from(scope))}({b}).{proc([b] + scope, d - 1)}"
        if kind == "out":
            return f"{draw(st.sampled_from(scope))}<{draw(st.sampled_from(scope))}>.{proc(scope, d - 1)}"
        if kind == "new":
            b = draw(ident)
            return f"new {b}. {proc([b] + scope, d - 1)}"
        if kind == "bang":
            return f"!{proc(scope, d - 1)}"
        op = " | " if kind == "par" else " + "
        return f"({proc(scope, d - 1)}{op}{proc(scope, d - 1)})"

    return "free " + " ".join(free) + "; " + proc(list(free), depth)


@given(programs())
def test_print_parse_round_trip_random(text):
    g, p = parse(text)
    assert parse(print_named(g, p)) == (g, p)

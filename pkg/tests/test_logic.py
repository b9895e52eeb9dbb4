
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import AC2, PT, base_with_elements
from sclat.asc import AscBase
from sclat.errors import ArgumentError, ParseError, SemanticError
from sclat.logic.semantics import eval_term, evaluate
from sclat.logic.syntax import (
    And, At, C, Diff, Join, Meet, Not, One, Or, Quantified, Rel, Var, Zero, free_vars, parse_formula,
    parse_term, render, render_term,
)

# ---- syntax -------------------------------------------------------------------------------


def test_meet_of_unaries():
    f = parse_formula(r"C1(x) /\ C0(x) != 0")
    assert f == Rel("!=", Meet(C(1, Var("x")), C(0, Var("x"))), Zero())


def test_existential_sentence():
    f = parse_formula(r"E x . C1(x) = x /\ x != 0")
    assert isinstance(f, Quantified) and f.kind == "E" and f.vars == ("x",)
    assert isinstance(f.body, And)


def test_at_zero_rejected():
    with pytest.raises(SemanticError):
        parse_formula("At0(x)")


@pytest.mark.parametrize("text", ["x = ", "C(x) = 0", "x == y", "(x = y", "x = y)", "x # y"])
def test_syntax_errors(text):
    with pytest.raises(ParseError):
        parse_formula(text)


def test_unbound_in_sentence():
    with pytest.raises(SemanticError):
        parse_formula("E x . x = y")


def test_unicode_aliases():
    assert parse_formula("∃ x . x ≠ 0") == parse_formula("E x . x != 0")
    assert parse_formula("x ≠ 0") == parse_formula("x != 0")
    assert parse_formula("x ≤ y") == parse_formula("x <= y")


names = st.sampled_from(["x", "y", "z"])
terms = st.recursive(
    st.one_of(st.just(Zero()), st.just(One()), names.map(Var)),
    lambda sub: st.one_of(
        st.tuples(sub, sub).map(lambda p: Join(*p)),
        st.tuples(sub, sub).map(lambda p: Meet(*p)),
        st.tuples(sub, sub).map(lambda p: Diff(*p)),
        st.tuples(st.integers(0, 3), sub).map(lambda p: C(*p)),
    ),
    max_leaves=6,
)
atoms = st.one_of(
    st.tuples(st.sampled_from(["=", "<=", "!="]), terms, terms).map(lambda p: Rel(*p)),
    st.tuples(st.integers(1, 4), terms).map(lambda p: At(*p)),
)
formulas = st.recursive(
    atoms,
    lambda sub: st.one_of(
        sub.map(Not),
        st.tuples(sub, sub).map(lambda p: And(*p)),
        st.tuples(sub, sub).map(lambda p: Or(*p)),
    ),
    max_leaves=5,
)


@given(formulas)
@settings(max_examples=300, deadline=None)
def test_render_parse_round_trip(f):
    text = render(f)
    assert parse_formula(text) == f
    assert render(parse_formula(text)) == text


@given(terms)
@settings(max_examples=200, deadline=None)
def test_term_round_trip(t):
    assert parse_term(render_term(t)) == t


# ---- evaluation ---------------------------------------------------------------------------


def test_ck_term(ch2):
    p = ch2.element("p")
    assert eval_term(ch2, {"x": p}, parse_term("C0(x)")) == p


def test_c0_c1_meet_at_top(ch2):
    assert evaluate(ch2, {"x": ch2.one}, parse_formula(r"(C0(x) /\ C1(x)) = 0"))


@given(base_with_elements(k=1, max_points=4))
@settings(max_examples=50, deadline=None)
def test_self_difference(bp):
    b, (a,) = bp
    assert evaluate(b, {"x": a}, parse_formula("x - x = 0"))


def test_unbound_variable(ch2):
    with pytest.raises(ArgumentError):
        evaluate(ch2, {}, parse_formula("x = 0"))


def test_at_needs_weights(ch2):
    with pytest.raises(SemanticError):
        evaluate(ch2, {"x": ch2.one}, parse_formula("At1(x)"))


def test_at_with_weights():
    ab = AscBase(AC2(), {"a1": 1, "a2": 2})
    one = ab.base.one
    assert evaluate(ab, {"x": one}, parse_formula("At3(x)"))
    assert not evaluate(ab, {"x": one}, parse_formula("At2(x)"))


def test_quantifiers(ch2):
    assert evaluate(ch2, {}, parse_formula(r"E x . x != 0 /\ x != 1"))
    assert evaluate(ch2, {}, parse_formula("A x . x <= 1"))
    assert not evaluate(PT(1), {}, parse_formula(r"E x . x != 0 /\ x != 1"))


@given(base_with_elements(k=2, max_points=4))
@settings(max_examples=60, deadline=None)
def test_lattice_laws_by_evaluation(bp):
    b, (a, c) = bp
    env = {"x": a, "y": c}
    for law in [r"x /\ (x \/ y) = x", r"x <= y \/ (x - y)", r"(x - y) /\ y <= x", r"C0(x) \/ C1(x) \/ C2(x) = x"]:
        assert evaluate(b, env, parse_formula(law)), law
    assert free_vars(parse_formula(r"x /\ y = 0")) == {"x", "y"}

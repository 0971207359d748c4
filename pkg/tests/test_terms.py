from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from emvkit import InvalidInput, mk_chain
from emvkit.terms import (ONE, ZERO, MVTerm, Neg, Oplus, Var, Zero, depth, eval_term, parse_term, show,
                          substitute, variables, vee, wedge)


def lukasiewicz(t: MVTerm, env):
    """Oracle: direct recursion over Fractions in [0, 1]."""
    if isinstance(t, Oplus):
        return min(Fraction(1), lukasiewicz(t.left, env) + lukasiewicz(t.right, env))
    if isinstance(t, Neg):
        return 1 - lukasiewicz(t.arg, env)
    if isinstance(t, Var):
        return env[t.name]
    return Fraction(0) if isinstance(t, Zero) else Fraction(1)


def terms(names=("x", "y")):
    leaves = st.sampled_from([ZERO, ONE] + [Var(n) for n in names])
    return st.recursive(leaves, lambda sub: st.one_of(
        st.builds(Oplus, sub, sub), st.builds(Neg, sub),
        st.builds(vee, sub, sub), st.builds(wedge, sub, sub)), max_leaves=8)


@given(terms())
def test_show_parse_round_trip(t):
    u = parse_term(show(t))
    assert show(u) == show(t)
    assert depth(u) == depth(t)


@given(terms(), st.integers(2, 7), st.data())
def test_eval_matches_fraction_oracle(t, n, data):
    M = mk_chain(n)
    env = {v: data.draw(st.integers(0, n - 1)) for v in ("x", "y")}
    got = eval_term(t, env, M)
    assert Fraction(got, n - 1) == lukasiewicz(t, {k: Fraction(v, n - 1) for k, v in env.items()})


@given(st.integers(2, 9), st.data())
def test_vee_wedge_are_max_min(n, data):
    M = mk_chain(n)
    a, b = data.draw(st.integers(0, n - 1)), data.draw(st.integers(0, n - 1))
    env = {"x": a, "y": b}
    assert eval_term(vee(Var("x"), Var("y")), env, M) == max(a, b)
    assert eval_term(wedge(Var("x"), Var("y")), env, M) == min(a, b)
    assert eval_term(parse_term("x * y"), env, M) == max(0, a + b - (n - 1))


def test_operators_and_precedence():
    x, y = Var("x"), Var("y")
    assert show(x + ~y) == "(x + ~y)"
    assert show(parse_term("x + y * x")) == show(parse_term("x + (y * x)"))
    assert show(parse_term("-x")) == show(~x)
    assert show(parse_term("x | y & x")) == show(x | (y & x))


def test_variables_and_substitute():
    t = parse_term("x + ~(y | 0)")
    assert variables(t) == frozenset({"x", "y"})
    u = substitute(t, {"y": Var("x")})
    assert variables(u) == frozenset({"x"})
    assert depth(parse_term("x")) == 0 and depth(parse_term("~~x")) == 2


@pytest.mark.parametrize("text", ["", "x +", "(x", "x y", "x $ y", "2"])
def test_parse_errors(text):
    with pytest.raises(InvalidInput):
        parse_term(text)


def test_unbound_and_out_of_range():
    M = mk_chain(3)
    with pytest.raises(InvalidInput):
        eval_term(Var("z"), {"x": 0}, M)
    with pytest.raises(InvalidInput):
        eval_term(Var("x"), {"x": 3}, M)

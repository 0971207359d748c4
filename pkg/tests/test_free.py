import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from emvkit import InvalidInput, Unsupported, mk_chain, mk_product
from emvkit.emv import DirectSumEMV, TableEMV
from emvkit.free import (CHAIN_BOUND, LiftTarget, check_free_uniqueness, check_generator_lemma,
                         check_tau_injective, evaluate_in, free_lift, mk_free_mv, oracle_agreement, proof_competitor,
                         random_term, random_term_pair, sim_commutes, strict_commutes, weakly_free_lift)
from emvkit.morphism import EMVMorphism, Entry, validate_morphism
from emvkit.pools import chain
from emvkit.terms import Neg, Oplus, Var, Zero, depth, parse_term, vee, wedge, ZERO, ONE


def value(t, env):
    if isinstance(t, Oplus):
        return min(Fraction(1), value(t.left, env) + value(t.right, env))
    if isinstance(t, Neg):
        return 1 - value(t.arg, env)
    if isinstance(t, Var):
        return env[t.name]
    return Fraction(0) if isinstance(t, Zero) else Fraction(1)


def equal_on_chains(s, t, names, K=CHAIN_BOUND):
    """Oracle: Fraction evaluation at every point of L_k^X for k <= K."""
    for k in range(2, K + 1):
        for combo in itertools.product(range(k), repeat=len(names)):
            env = {n: Fraction(v, k - 1) for n, v in zip(names, combo)}
            if value(s, env) != value(t, env):
                return False
    return True


def terms(names):
    leaves = st.sampled_from([ZERO, ONE] + [Var(n) for n in names])
    return st.recursive(leaves, lambda sub: st.one_of(
        st.builds(Oplus, sub, sub), st.builds(Neg, sub), st.builds(vee, sub, sub),
        st.builds(wedge, sub, sub)), max_leaves=6)


def test_double_negation_and_doubling():
    F = mk_free_mv(("x",))
    assert F.chain_equal(parse_term("x"), parse_term("~~x"))
    assert F.grid_equal(parse_term("x"), parse_term("~~x"))
    assert not F.chain_equal(parse_term("x"), parse_term("x + x"))
    w = F.distinguishing_point(parse_term("x"), parse_term("x + x"))
    assert w == {"k": 3, "point": {"x": Fraction(1, 2)}, "values": (Fraction(1, 2), Fraction(1))}


def test_lift_into_L3_at_one_half():
    F = mk_free_mv(("x",))
    M = chain(3)
    phi = free_lift(F, LiftTarget(M, {"x": 1}), 3)
    (top,) = phi.entries(3)
    assert top.key == M.top and top.a == F.top
    assert top(F.element("x + x")) == M.top
    assert top(F.element("x * x")) == M.zero
    assert top(F.element("x")) == 1


def test_J_is_indicators_containing_zero():
    D = DirectSumEMV([mk_chain(2)])
    T = LiftTarget(D, {"x": D.unit(0)})
    for level in range(4):
        J = T.J(level)
        assert J == [a for a in D.idempotents(level) if a.get(0) == 1]
        assert all(D.is_idempotent(a) for a in J)


def test_weakly_free_lift_on_direct_sum():
    F = mk_free_mv(("x",))
    D = DirectSumEMV([mk_chain(2)])
    f = {"x": D.unit(0)}
    beta = weakly_free_lift(F, D, f, 2)
    assert validate_morphism(beta, 2).ok
    assert sim_commutes(beta, F.tau, f, 2).ok
    v = strict_commutes(beta, F.tau, f, 2)
    assert (v.status, v.witness) == ("fail", {"x": "x", "i": D.vec()})
    # beta_a(~x) = a with coordinate 0 cleared
    for e in beta.entries(2):
        assert e(F.element("~x")) == D.vec({i: v for i, v in e.key if i != 0})


def test_lift_values_on_direct_sum():
    F = mk_free_mv(("x",))
    D = DirectSumEMV([mk_chain(2)])
    phi = free_lift(F, LiftTarget(D, {"x": D.unit(0)}), 2)
    assert validate_morphism(phi, 2).ok
    for e in phi.entries(2):
        assert e(F.element("x")) == D.unit(0)
        assert e(F.element("~x")) == D.lam(e.key, D.unit(0))


def test_remapped_entry_is_not_a_competitor():
    # the entry evaluates with x -> 1 instead of x -> 1/2
    F = mk_free_mv(("x",))
    M = chain(3)
    T = LiftTarget(M, {"x": 1})
    bad = EMVMorphism(F, M, [Entry(M.top, F.top, lambda t: evaluate_in(M, t.term, {"x": 2}, M.top))])
    assert validate_morphism(bad, 2).ok
    v = check_free_uniqueness(F, T, bad, 2)
    assert (v.status, v.clause) == ("not-a-competitor", "premise")


@pytest.mark.parametrize("M", [chain(2), chain(3), chain(4),
                               TableEMV.from_mv(mk_product([mk_chain(2), mk_chain(3)]))], ids=repr)
def test_free_lift_uniqueness(M):
    F = mk_free_mv(("x",))
    for x in M.elements(0):
        T = LiftTarget(M, {"x": x})
        phi = free_lift(F, T, 2)
        assert validate_morphism(phi, 2).ok
        assert strict_commutes(phi, F.tau, T.f, 2).ok
        assert check_free_uniqueness(F, T, phi, 2).ok
        assert check_free_uniqueness(F, T, proof_competitor(F, T, 2), 2).ok


def test_generator_lemma():
    assert check_generator_lemma(chain(3), [1]).ok
    v = check_generator_lemma(chain(4), [])
    assert (v.status, v.witness) == ("fail", {"subalgebra": [0, 3]})
    assert check_generator_lemma(chain(4), [1]).ok


def test_tau_injective_and_errors():
    assert check_tau_injective(mk_free_mv(("x", "y"))).ok
    with pytest.raises(Unsupported):
        mk_free_mv(("x", "y", "z"))
    F = mk_free_mv(("x",))
    with pytest.raises(InvalidInput):
        F.element("y")
    with pytest.raises(InvalidInput):
        free_lift(F, LiftTarget(chain(3), {"y": 1}))
    with pytest.raises(InvalidInput):
        free_lift(F, LiftTarget(chain(3), {"x": 7}))


@settings(max_examples=40)
@given(terms(("x",)), terms(("x",)))
def test_chain_oracle_matches_fraction_evaluation(s, t):
    F = mk_free_mv(("x",))
    assert F.chain_equal(s, t) == equal_on_chains(s, t, ("x",))


@settings(max_examples=25)
@given(terms(("x", "y")), terms(("x", "y")))
def test_chain_oracle_two_generators(s, t):
    F = mk_free_mv(("x", "y"))
    assert F.chain_equal(s, t) == equal_on_chains(s, t, ("x", "y"))


@given(st.integers(0, 10_000))
def test_random_term_depth(seed):
    rng = random.Random(seed)
    for depth_cap in (0, 3, 6):
        assert depth(random_term(rng, ("x", "y"), depth_cap)) <= depth_cap
    s, t = random_term_pair(rng, ("x", "y"), 6)
    assert depth(s) <= 6 and depth(t) <= 6


def test_chain_equality_implies_grid_equality():
    rng = random.Random(3)
    F = mk_free_mv(("x", "y"))
    for _ in range(200):
        s, t = random_term_pair(rng, F.generators, 6)
        if F.chain_equal(s, t):
            assert F.grid_equal(s, t)


def test_oracle_agreement_small():
    v = oracle_agreement(100, 6, seed=1)
    assert v.ok and v.detail == "100 pairs, 73 equal"

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from emvkit import BoundExhausted, InvalidInput, PreconditionViolation, mk_chain
from emvkit.builtins import (adversarial_nonstandard, builtin_morphism, clause_iii_breach,
                             coordinatewise_morphism, meet_family, missing_directedness, non_full_example,
                             setminus_morphism, strong_projection)
from emvkit.emv import DirectSumEMV, FinSetBooleanEMV
from emvkit.morphism import (EMVMorphism, Entry, IncoherentFamily, check_strong_hom, compose,
                             extract_strong_hom, graph, identity_morphism, is_approx_identity,
                             is_approx_isomorphism, is_standard, morphism_eq_at, morphism_from_strong_hom,
                             pointwise_equal, restrict_morphism, similar, strong_hom_from_coherent,
                             validate_morphism)
from emvkit.pools import chain, collapse_family, finite_pool

F = FinSetBooleanEMV()
S = frozenset


def similar_oracle(f, g):
    """Every f_i has a g_j above it that agrees with it after cutting at f_i(a_i); finite families only."""
    A, T = f.source, f.target
    for ei in f.entries(0):
        below = [x for x in A.elements(0) if A.leq(x, ei.a)]
        if not any(A.leq(ei.a, ej.a) and T.leq(ei.b, ej.b)
                   and all(ei(x) == T.meet(ej(x), ei.b) for x in below) for ej in g.entries(0)):
            return False
    return True


def test_similar_matches_oracle_on_finite_pool():
    ms = [f for _, f in finite_pool().morphisms]
    seen = 0
    for f, g in itertools.product(ms[::3], repeat=2):
        if (f.source, f.target) != (g.source, g.target):
            continue
        assert similar(f, g, 0).ok == similar_oracle(f, g), (f.name, g.name)
        seen += 1
    assert seen > 50


def test_setminus_is_a_morphism():
    v = validate_morphism(setminus_morphism(), 4)
    assert v.status == "pass-up-to-bound"


# values computed by the checkers at bound 4 and frozen
def test_setminus_similar_to_identity_both_ways():
    sm, idf = setminus_morphism(F), identity_morphism(F)
    assert similar(sm, idf, 4).status == "pass-up-to-bound"
    assert similar(idf, sm, 4).status == "pass-up-to-bound"
    assert is_approx_identity(sm, 4).status == "pass-up-to-bound"


def test_setminus_approx_isomorphism():
    sm = setminus_morphism(F)
    assert is_approx_isomorphism(sm, sm, 3).status == "pass-up-to-bound"


def test_meet_family_is_not_a_morphism():
    D = DirectSumEMV([mk_chain(2)])
    v = is_approx_identity(meet_family(D, D.unit(0)), 3)
    assert (v.status, v.clause, v.detail) == ("fail-up-to-bound", "not-a-morphism", "fails clause ii")


def test_meet_family_with_top_is_identity():
    M = chain(4)
    assert is_approx_identity(meet_family(M, M.top)).status == "pass"
    with pytest.raises(InvalidInput):
        meet_family(M, 1)


def test_morphism_eq_at():
    sm = setminus_morphism(F)
    v = morphism_eq_at(sm, sm, S({1}), S({1, 2}), 4)
    assert (v.status, v.witness) == ("fail", {"i": 3, "j": 3})
    assert morphism_eq_at(sm, sm, S({1}), S({1}), 4).status == "pass-up-to-bound"
    M = chain(3)
    f = EMVMorphism(M, M, [Entry("z", 0, lambda x: 0)])
    assert morphism_eq_at(f, f, 2, 2).status == "vacuous"


@pytest.mark.parametrize("f,clause", [(non_full_example(), "i"), (clause_iii_breach(), "iii"),
                                      (missing_directedness(), "iv")], ids=["i", "iii", "iv"])
def test_constructed_violations(f, clause):
    v = validate_morphism(f)
    assert v.status == "fail"
    assert v.clause == clause


def test_adversarial_is_not_standard():
    v = is_standard(adversarial_nonstandard(), 3)
    assert (v.status, v.clause) == ("fail-up-to-bound", "no-max-found")


def test_standard_argmax():
    v = is_standard(collapse_family(chain(3)))
    assert v.status == "pass"
    assert set(v.witness["argmax"].values()) == {"top"}


def test_setminus_is_incoherent():
    with pytest.raises(IncoherentFamily) as info:
        strong_hom_from_coherent(setminus_morphism(F), 3)
    assert info.value.witness == {"i": 1, "j": 2, "x": S({1})}


def test_extract_strong_hom_of_setminus_is_identity():
    h = extract_strong_hom(setminus_morphism(F), 3)
    assert pointwise_equal(h, lambda x: x, 3).ok
    with pytest.raises(PreconditionViolation):
        extract_strong_hom(adversarial_nonstandard(), 3)


def test_compose_setminus_entries():
    c = compose(setminus_morphism(F), setminus_morphism(F), 3)
    for e in c.entries(3):
        i, j = e.key
        assert j >= i - 1
        for x in F.below(e.a):
            assert e(x) == x - {i} - {j}
    assert len(c.entries(3)) == 17


@pytest.mark.parametrize("level", [1, 2, 3])
def test_distinct_compose_keeps_the_same_graphs(level):
    sm = setminus_morphism(F)
    full = compose(sm, sm, level)
    dist = compose(sm, sm, level, distinct=True)
    g_full = {graph(full, e, level) for e in full.entries(level)}
    g_dist = {graph(dist, e, level) for e in dist.entries(level)}
    assert g_full == g_dist
    assert len(dist.entries(level)) <= len(full.entries(level))


def test_compose_type_errors():
    M = chain(3)
    with pytest.raises(InvalidInput):
        compose(identity_morphism(M), identity_morphism(F))


def test_compose_bound_exhausted():
    sm = setminus_morphism(F)
    short = EMVMorphism(F, F, [Entry(1, F.A(1), lambda x: x)], name="short")
    with pytest.raises(BoundExhausted):
        compose(short, sm, 3)


def test_identity_left_right():
    sm = setminus_morphism(F)
    idf = identity_morphism(F)
    for c in (compose(sm, idf, 3), compose(idf, sm, 3)):
        assert similar(c, sm, 3).ok and similar(sm, c, 3).ok


def test_H_of_identity_similar_to_setminus():
    from emvkit.morphism import identity_hom
    H = morphism_from_strong_hom(identity_hom(F), 3)
    sm = setminus_morphism(F)
    assert similar(H, sm, 4).ok and similar(sm, H, 4).ok


def test_restrict():
    sm = setminus_morphism(F)
    r = restrict_morphism(sm, lambda lv: [F.A(2 * k) for k in range((lv + 1) // 2 + 1)], 3)
    assert similar(r, sm, 3).ok and similar(sm, r, 3).ok
    with pytest.raises(InvalidInput):
        restrict_morphism(sm, [F.A(1)], 3)
    M = chain(3)
    g = identity_morphism(M)
    assert restrict_morphism(g, [M.top]).entries(0)[0].a == M.top


def test_restrict_precondition():
    M = chain(3)
    f = EMVMorphism(M, M, [Entry("top", M.top, lambda x: x)])
    with pytest.raises(InvalidInput):
        restrict_morphism(f, [0])


def test_coordinatewise_and_projection():
    D = DirectSumEMV([mk_chain(3)])
    cw = coordinatewise_morphism(D, D, [[0, 1, 2]])
    assert validate_morphism(cw, 2).ok
    assert is_approx_identity(cw, 2).ok
    p = strong_projection(D, {0})
    assert check_strong_hom(p, 2).status in ("fail", "fail-up-to-bound")
    with pytest.raises(InvalidInput):
        coordinatewise_morphism(D, D, [])


def test_builtin_lookup():
    assert builtin_morphism("setminus").name == "setminus"
    with pytest.raises(InvalidInput):
        builtin_morphism("nope")


@settings(max_examples=30)
@given(st.sets(st.integers(1, 5)), st.integers(1, 5))
def test_setminus_entries_are_set_difference(x, i):
    e = setminus_morphism(F).entry(i)
    x = S(x) & F.A(i)
    assert e(x) == x - {i}
    assert e.b == F.A(i - 1)

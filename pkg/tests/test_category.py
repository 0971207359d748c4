import itertools

import pytest

from emvkit import InvalidInput, mk_chain
from emvkit.builtins import b4, clause_iii_breach, missing_directedness, setminus_morphism
from emvkit.category import (MorphismClass, Pool, ProductEMV, check_product_universal, law_suite,
                             mediating_morphism, similar_both)
from emvkit.emv import DirectSumEMV, FinSetBooleanEMV, check_emv_axioms, check_lambda_identities
from emvkit.morphism import compose, identity_morphism, validate_morphism
from emvkit.pools import (chain, competitors, direct_sum_pool, finite_pool, finset_pool,
                          product_instances, strong_homs)

INSTANCES = product_instances()


@pytest.mark.parametrize("factors", [[chain(3), chain(2)], [b4(), chain(4)], [chain(3), FinSetBooleanEMV()],
                                     [DirectSumEMV([mk_chain(2)]), chain(2)]], ids=repr)
def test_product_axioms(factors):
    P = ProductEMV(factors)
    assert check_emv_axioms(P, 2).ok
    assert check_lambda_identities(P, 2).ok
    assert len(P.elements(1)) == len(factors[0].elements(1)) * len(factors[1].elements(1))


def test_product_lambda_is_componentwise():
    A, B = chain(3), chain(4)
    P = ProductEMV([A, B])
    for a, b in itertools.product(A.idempotents(0), B.idempotents(0)):
        for x in P.below((a, b)):
            assert P.lam((a, b), x) == (A.lam(a, x[0]), B.lam(b, x[1]))
    with pytest.raises(InvalidInput):
        ProductEMV([])


def test_law_suite_finite_pool():
    r = law_suite(finite_pool(), 2, max_checks=400)
    assert r.ok, r.failures()
    assert r.counts["triples"] >= 100
    names = [n for n, _ in r.results]
    assert names == ["equivalence", "identity", "compatibility", "associativity", "standard-closure",
                     "standard-invariance", "F-strong", "F-well-defined", "HF", "FH"]


def test_law_suite_infinite_pools():
    for pool, level in ((finset_pool(3), 3), (direct_sum_pool(1), 1)):
        r = law_suite(pool, level, max_checks=30)
        assert r.ok, r.failures()
        assert all(v.status != "pass" for n, v in r.results if n in ("identity", "associativity"))


def test_empty_pool_is_vacuous():
    r = law_suite(Pool(), 2)
    assert [v.status for _, v in r.results] == ["vacuous"]
    assert r.warnings == ["empty pool: nothing to check"]
    assert r.ok


def test_law_suite_catches_invalid_families():
    # families breaking morphism clauses iii and iv; failures computed and frozen
    B = b4()
    r = law_suite(Pool(morphisms=[("x", clause_iii_breach()), ("id", identity_morphism(B))]), 0)
    assert [(n, v.clause) for n, v in r.failures()] == [("equivalence", "symmetric")]
    r = law_suite(Pool(morphisms=[("x", missing_directedness()), ("id", identity_morphism(B))]), 0)
    assert [(n, v.clause) for n, v in r.failures()] == [("F-strong", "join"), ("HF", "similar")]


@pytest.mark.parametrize("name,M,fs", INSTANCES, ids=[n for n, _, _ in INSTANCES])
def test_product_instances(name, M, fs):
    level = 2
    g = mediating_morphism(M, fs, level)
    assert validate_morphism(g, level).ok
    P = g.target
    for i, f in enumerate(fs):
        assert similar_both(compose(P.projection(i), g, level, distinct=True), f, level).ok
    for cname, c in competitors(M, g, level):
        v = check_product_universal(M, fs, c, level)
        assert v.ok, (cname, v)


def test_mediating_values_oracle():
    L2, L3 = chain(2), chain(3)
    h1, h2 = strong_homs(L2, L2)[0], strong_homs(L2, L3)[0]
    from emvkit.morphism import morphism_from_strong_hom
    g = mediating_morphism(L2, [morphism_from_strong_hom(h1), morphism_from_strong_hom(h2)])
    top = g.entry(L2.top)
    for x in L2.elements(0):
        assert top(x) == (h1(x), h2(x))


def test_not_a_competitor():
    name, M, fs = INSTANCES[0]
    g = mediating_morphism(M, fs, 2)
    wrong = mediating_morphism(M, [fs[0], fs[0]], 2)
    assert check_product_universal(M, fs, wrong, 2).status == "not-a-competitor"
    assert check_product_universal(M, fs, identity_morphism(M), 2).status == "not-a-competitor"
    assert check_product_universal(M, fs, g, 2).ok


def test_mediating_errors():
    with pytest.raises(InvalidInput):
        mediating_morphism(chain(2), [])
    with pytest.raises(InvalidInput):
        mediating_morphism(chain(2), [identity_morphism(chain(3))])


def test_morphism_class_composition():
    F = FinSetBooleanEMV()
    c = MorphismClass(identity_morphism(F), [setminus_morphism(F)])
    assert c.check(2).ok
    cc = c.compose(c, 2)
    assert len(cc.members()) == 5
    assert cc.check(2).ok

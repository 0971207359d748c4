import pytest
from hypothesis import given, strategies as st

from emvkit import DomainError, InvalidInput, Unsupported, mk_boolean, mk_chain, mk_product
from emvkit.bounds import FALLBACK_BOUND, resolve
from emvkit.emv import (DirectSumEMV, FinSetBooleanEMV, High, Low, Pomonoid, TableEMV, check_alt_axioms,
                        check_emv_axioms, check_lambda_identities, interval_mv, is_full, is_full_subalgebra,
                        is_ideal, is_maximal_ideal, odot, power, unitize)
from emvkit.suite import alt_fixtures

PATTERNS = [[mk_chain(2)], [mk_chain(3), mk_chain(2)], [mk_chain(4)], [mk_boolean(1), mk_chain(3)]]


def ds_lambda_oracle(D, b, x):
    """Coordinatewise: negate inside the factor where b is on, zero elsewhere."""
    out = {}
    for i in range(D.level_of(b) + 1):
        F = D.factor(i)
        bi, xi = b.get(i), x.get(i)
        if bi == F.one:
            v = F.neg[xi]
        else:
            assert bi == F.zero
            v = F.zero
        if v != F.zero:
            out[i] = v
    return D.vec(out)


@st.composite
def ds_vectors(draw, D, width=4):
    return D.vec({i: draw(st.integers(0, D.factor(i).size - 1)) for i in range(width)})


@st.composite
def finsets(draw, top=6):
    return frozenset(draw(st.sets(st.integers(1, top), max_size=top)))


@pytest.mark.parametrize("pattern", PATTERNS, ids=repr)
@given(data=st.data())
def test_direct_sum_lambda_matches_coordinatewise(pattern, data):
    D = DirectSumEMV(pattern)
    x = data.draw(ds_vectors(D))
    extra = data.draw(ds_vectors(D, 6))
    b = D.dominating(D.join(x, D.dominating(extra)))
    assert D.is_idempotent(b) and D.leq(x, b)
    assert D.lam(b, x) == ds_lambda_oracle(D, b, x)


@given(finsets(), finsets())
def test_finset_lambda_is_set_difference(x, extra):
    F = FinSetBooleanEMV()
    b = x | extra
    assert F.lam(b, x) == b - x
    assert F.oplus(x, extra) == x | extra
    assert F.is_idempotent(x)


def test_finset_examples():
    F = FinSetBooleanEMV()
    assert F.lam(F.set([1, 2, 3]), F.set([2])) == {1, 3}
    assert F.elements(2) == [frozenset(), {1}, {1, 2}, {2}]
    assert F.A(3) == {1, 2, 3}
    assert not F.has_top
    with pytest.raises(InvalidInput):
        F.set([0])


def test_lambda_outside_interval_is_domain_error():
    F = FinSetBooleanEMV()
    with pytest.raises(DomainError):
        F.lam(F.set([1]), F.set([2]))


@pytest.mark.parametrize("pattern", PATTERNS, ids=repr)
@given(data=st.data())
def test_lambda_identities_pointwise(pattern, data):
    D = DirectSumEMV(pattern)
    x = data.draw(ds_vectors(D))
    a = D.dominating(D.join(x, D.dominating(data.draw(ds_vectors(D)))))
    b = D.join(a, D.dominating(data.draw(ds_vectors(D, 6))))
    la, lb, lba = D.lam(a, x), D.lam(b, x), D.lam(b, a)
    assert la == D.meet(lb, a)
    assert lb == D.oplus(la, lba)
    assert D.is_idempotent(lba)
    assert D.lam(a, a) == D.zero


@pytest.mark.parametrize("M", [DirectSumEMV([mk_chain(3), mk_chain(2)]), FinSetBooleanEMV(),
                               TableEMV.from_mv(mk_product([mk_chain(2), mk_chain(3)]))], ids=repr)
def test_lambda_identities_checker(M):
    assert check_lambda_identities(M, 3).ok


@pytest.mark.parametrize("pattern", PATTERNS, ids=repr)
@given(data=st.data())
def test_odot_independent_of_idempotent(pattern, data):
    D = DirectSumEMV(pattern)
    x, y = data.draw(ds_vectors(D)), data.draw(ds_vectors(D))
    base = odot(D, x, y)
    for extra in D.idempotents(5)[::7]:
        a = D.join(D.dominating(D.join(x, y)), extra)
        assert odot(D, x, y, a) == base


def test_odot_rejects_bad_idempotent():
    M = TableEMV.from_mv(mk_chain(4))
    with pytest.raises(DomainError):
        odot(M, 1, 2, 1)
    assert odot(M, 2, 2) == 1
    assert power(M, 2, 2) == 1 and power(M, 3, 0) == 3
    with pytest.raises(DomainError):
        power(FinSetBooleanEMV(), frozenset({1}), 0)


@pytest.mark.parametrize("M", [TableEMV.from_mv(mk_chain(5)), TableEMV.from_mv(mk_boolean(2)),
                               DirectSumEMV([mk_chain(3)]), FinSetBooleanEMV()], ids=repr)
def test_emv_axioms_and_intervals(M):
    v = check_emv_axioms(M, 3)
    assert v.ok
    assert v.status == ("pass" if M.is_exhaustive(3) else "pass-up-to-bound")
    for a in M.idempotents(2):
        I = interval_mv(M, a)
        assert len(I) == len(M.below(a))


def test_is_full():
    F = FinSetBooleanEMV()
    assert is_full(F, lambda lv: [F.A(i) for i in range(lv + 1)], 3).ok
    assert not is_full(F, [F.A(2)], 3).ok
    with pytest.raises(DomainError):
        is_full(TableEMV.from_mv(mk_chain(3)), [1])


def test_full_subalgebra_and_ideal():
    F = FinSetBooleanEMV()
    assert is_full_subalgebra(F, lambda x: True, 3).ok
    evens = lambda x: all(v % 2 == 0 for v in x)  # noqa: E731
    assert is_ideal(F, evens, 3).ok
    assert not is_full_subalgebra(F, evens, 3).ok
    M = TableEMV.from_mv(mk_product([mk_chain(2), mk_chain(3)]))
    first = [x for x in M.elements(0) if M.meet(x, M.top) == x and M.to_mv().labels[x].startswith("(0")]
    assert is_ideal(M, first).ok
    assert is_maximal_ideal(M, first).ok
    assert not is_maximal_ideal(M, [M.zero]).ok


def test_unitization():
    D = DirectSumEMV([mk_chain(3), mk_chain(2)])
    N, emb = unitize(D)
    for k in range(3):
        mv, elems = N.slice_mv(k)
        assert mv.size == 2 * len(D.elements(k))
    assert N.neg(Low(D.vec({0: 1}))) == High(D.vec({0: 1}))
    x, y = D.vec({0: 1, 1: 1}), D.vec({0: 2})
    assert N.oplus(emb(x), emb(y)) == emb(D.oplus(x, y))
    assert N.oplus(N.top, emb(x)) == N.top
    low = lambda u: not u.high  # noqa: E731
    assert is_maximal_ideal(N, low, 2).ok
    with pytest.raises(Unsupported):
        N.below(N.top)


@given(data=st.data())
def test_unitization_embedding_is_hom(data):
    D = DirectSumEMV([mk_chain(3), mk_chain(2)])
    N, emb = unitize(D)
    x, y = data.draw(ds_vectors(D)), data.draw(ds_vectors(D))
    assert N.join(emb(x), emb(y)) == emb(D.join(x, y))
    assert N.meet(emb(x), emb(y)) == emb(D.meet(x, y))
    assert N.neg(N.neg(emb(x))) == emb(x)
    assert N.leq(emb(x), emb(y)) == D.leq(x, y)
    fits = all(x.get(i) + y.get(i) <= D.factor(i).size - 1 for i in range(4))
    assert N.leq(emb(x), N.neg(emb(y))) == fits


# values computed by check_alt_axioms at bound 3 and frozen
ALT_FAILING = {"max-monoid": ["iii", "iv"], "L3-discrete": ["i", "ii", "iii"], "Z3-chain": ["ii"]}


@pytest.mark.parametrize("name,P,is_emv", alt_fixtures(), ids=[n for n, _, _ in alt_fixtures()])
def test_alt_axioms_agree(name, P, is_emv):
    r = check_alt_axioms(P, 3)
    assert r.agree
    assert r.emv.ok == is_emv
    assert r.failing == ALT_FAILING.get(name, [])


def test_pomonoid_from_emv_matches():
    M = TableEMV.from_mv(mk_chain(4))
    assert check_alt_axioms(Pomonoid.from_emv(M)).alt.ok


def test_bound_env(monkeypatch):
    assert resolve(None) == FALLBACK_BOUND
    assert resolve(2) == 2
    monkeypatch.setenv("EMVKIT_BOUND", "2")
    assert resolve(None) == 2
    monkeypatch.setenv("EMVKIT_BOUND", "two")
    with pytest.raises(InvalidInput):
        resolve(None)
    monkeypatch.setenv("EMVKIT_BOUND", "-1")
    with pytest.raises(InvalidInput):
        resolve(None)


def test_direct_sum_validation():
    with pytest.raises(InvalidInput):
        DirectSumEMV([])
    D = DirectSumEMV([mk_chain(3), mk_chain(2)], repeat=False)
    assert D.has_top

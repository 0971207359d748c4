import pytest
from hypothesis import given, strategies as st

from emvkit import BoundExhausted, PreconditionViolation, Unsupported, mk_chain, mk_product
from emvkit.builtins import b4, meet_family, setminus_morphism
from emvkit.congruence import (Congruence, all_pairs, diagonal, generate_congruence, is_congruence, kernel,
                               natural_projection, partition, quotient, same_relation)
from emvkit.emv import DirectSumEMV, FinSetBooleanEMV, TableEMV
from emvkit.morphism import validate_morphism
from emvkit.mv import find_isomorphism
from emvkit.pools import chain


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in set_partitions(rest):
        yield [[first]] + p
        for k in range(len(p)):
            yield p[:k] + [[first] + p[k]] + p[k + 1:]


def mv_congruences(M):
    """Oracle: every partition compatible with +, v, ^ and the negation x -> lambda_1(x)."""
    E = M.elements(0)
    out = []
    for p in set_partitions(E):
        cls = {x: n for n, b in enumerate(p) for x in b}
        ok = True
        for x in E:
            for y in E:
                if cls[x] != cls[y]:
                    continue
                if cls[M.lam(M.top, x)] != cls[M.lam(M.top, y)]:
                    ok = False
                for z in E:
                    if any(cls[op(x, z)] != cls[op(y, z)] for op in (M.join, M.meet, M.oplus)):
                        ok = False
                if not ok:
                    break
            if not ok:
                break
        if ok:
            out.append(frozenset(frozenset(b) for b in p))
    return out


def least_containing(M, seeds):
    cands = [p for p in mv_congruences(M)
             if all(any(x in b and y in b for b in p) for x, y in seeds)]
    # the least one refines every other candidate
    for p in cands:
        if all(all(any(b <= c for c in q) for b in p) for q in cands):
            return p
    raise AssertionError("no least congruence")


def as_blocks(theta, level=0):
    return frozenset(frozenset(b) for b in theta.blocks(level))


FINITE = {
    "L3": chain(3),
    "L4": chain(4),
    "L5": chain(5),
    "B4": b4(),
    "L2xL3": TableEMV.from_mv(mk_product([mk_chain(2), mk_chain(3)])),
}


@pytest.mark.parametrize("name", sorted(FINITE))
def test_generated_matches_partition_oracle(name):
    M = FINITE[name]
    E = M.elements(0)
    for x in E:
        for y in E:
            if x < y:
                got = as_blocks(generate_congruence(M, [(x, y)], 0))
                assert got == least_containing(M, [(x, y)]), (x, y)


@pytest.mark.parametrize("name", sorted(FINITE))
def test_is_congruence_matches_oracle(name):
    M = FINITE[name]
    congs = set(mv_congruences(M))
    for p in set_partitions(M.elements(0)):
        theta = partition(M, p)
        assert is_congruence(M, theta, 0).ok == (frozenset(frozenset(b) for b in p) in congs)


def test_L4_collapses():
    # L4 is simple: relating 0 and 1/3 relates everything
    M = chain(4)
    theta = generate_congruence(M, [(0, 1)], 0)
    assert theta.blocks(0) == [[0, 1, 2, 3]]
    assert len(quotient(M, theta, 0).algebra.elements(0)) == 1


def test_B4_quotient_is_two_element_chain():
    M = b4()
    q = quotient(M, generate_congruence(M, [(0, 1)], 0), 0)
    assert q.classes == [[0, 1], [2, 3]]
    assert find_isomorphism(q.algebra.to_mv(), mk_chain(2)) is not None


def test_trivial_congruences():
    M = FINITE["L2xL3"]
    assert len(quotient(M, diagonal(M)).algebra.elements(0)) == len(M.elements(0))
    assert len(quotient(M, all_pairs(M)).algebra.elements(0)) == 1


@pytest.mark.parametrize("name", sorted(FINITE))
def test_kernel_of_projection_is_theta(name):
    M = FINITE[name]
    for theta in mv_congruences(M):
        th = partition(M, theta)
        pi = natural_projection(M, th, 0)
        assert validate_morphism(pi, 0).ok
        assert same_relation(M, kernel(pi, 0), th, 0).ok


def test_kernel_on_infinite_algebras():
    F = FinSetBooleanEMV()
    assert same_relation(F, kernel(setminus_morphism(F), 3), diagonal(F), 3).ok
    D = DirectSumEMV([mk_chain(2)])
    k = kernel(meet_family(D, D.unit(0)), 2)
    for x in D.elements(2):
        for y in D.elements(2):
            assert k(x, y) == (x.get(0) == y.get(0))


def test_generated_on_finset_is_bounded_closure():
    F = FinSetBooleanEMV()
    theta = generate_congruence(F, [(frozenset(), frozenset({2}))], 2)
    # related iff they agree off 2
    for x in F.elements(2):
        for y in F.elements(2):
            assert theta(x, y) == (x - {2} == y - {2})
    assert is_congruence(F, theta, 2).ok
    with pytest.raises(BoundExhausted):
        generate_congruence(F, [(frozenset(), frozenset({5}))], 2)


def test_errors():
    F = FinSetBooleanEMV()
    with pytest.raises(Unsupported):
        quotient(F, diagonal(F), 2)
    M = chain(3)
    bad = partition(M, [[0, 1]])
    assert is_congruence(M, bad).clause in ("join", "meet", "oplus", "lambda")
    with pytest.raises(PreconditionViolation):
        quotient(M, bad)
    with pytest.raises(ValueError):
        Congruence(M)


@given(st.data())
def test_generated_is_least_property(data):
    M = FINITE["L2xL3"]
    E = M.elements(0)
    seeds = data.draw(st.lists(st.tuples(st.sampled_from(E), st.sampled_from(E)), min_size=1, max_size=3))
    theta = generate_congruence(M, seeds, 0)
    assert is_congruence(M, theta, 0).ok
    assert all(theta(x, y) for x, y in seeds)
    for p in mv_congruences(M):
        if all(any(x in b and y in b for b in p) for x, y in seeds):
            assert all(any(set(b) <= c for c in p) for b in theta.blocks(0))

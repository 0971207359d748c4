"""Fixture algebras, morphism pools and product instances shared by the suite and the tests."""
from __future__ import annotations

from functools import lru_cache

from .builtins import b4, setminus_morphism
from .category import Pool
from .emv.backends import DirectSumEMV, FinSetBooleanEMV, TableEMV
from .morphism import (EMVMorphism, Entry, StrongEMVHom, compose, identity_morphism,
                       morphism_from_strong_hom, restrict_morphism)
from .mv import enumerate_mv_homs, mk_boolean, mk_chain, mk_product


@lru_cache(maxsize=None)
def chain(n: int) -> TableEMV:
    return TableEMV.from_mv(mk_chain(n))


def finite_mv_fixtures() -> list[tuple[str, object]]:
    """Chains 2..6, Boolean algebras up to 3 atoms and products of at most two factors."""
    out = [(f"chain{n}", mk_chain(n)) for n in range(2, 7)]
    out += [(f"boolean{k}", mk_boolean(k)) for k in range(0, 4)]
    small = [(f"L{n}", mk_chain(n)) for n in (2, 3, 4)] + [("B1", mk_boolean(1))]
    for i, (na, A) in enumerate(small):
        for nb, B in small[i:]:
            out.append((f"{na}x{nb}", mk_product([A, B])))
    return out


def strong_homs(A: TableEMV, B: TableEMV) -> list[StrongEMVHom]:
    """MV-homomorphisms between table algebras with tops, as strong homomorphisms."""
    return [StrongEMVHom(A, B, (lambda x, t=h.table: t[x]), name="h" + "".join(map(str, h.table)))
            for h in enumerate_mv_homs(A.to_mv(), B.to_mv())]


def variants(h: StrongEMVHom) -> list[tuple[str, EMVMorphism]]:
    """Six pairwise similar families presenting one homomorphism between algebras with tops."""
    A, B = h.source, h.target
    H = morphism_from_strong_hom(h, check=False)
    top = EMVMorphism(A, B, [Entry("top", A.top, h)], name=f"{h.name}@1")
    two = EMVMorphism(A, B, [Entry("top", A.top, h), Entry("zero", A.zero, h)], name=f"{h.name}@1,0")
    dup = EMVMorphism(A, B, [Entry(("d", 1), A.top, h), Entry(("d", 2), A.top, h)], name=f"{h.name}@dup")
    right = compose(H, identity_morphism(A))
    right.name = f"{h.name}.id"
    left = compose(identity_morphism(B), top)
    left.name = f"id.{h.name}@1"
    H.name = f"H({h.name})"
    return [(m.name, m) for m in (H, top, two, dup, right, left)]


def collapse_family(M: TableEMV) -> EMVMorphism:
    """Identity on ``[0, 1]`` and the zero map on every smaller ``[0, a]``: similar to the identity."""
    ents = [Entry("top", M.top, lambda x: x)]
    ents += [Entry(a, a, lambda x: M.zero) for a in M.idempotents(0) if a != M.top]
    return EMVMorphism(M, M, ents, name="collapse")


def finite_pool() -> Pool:
    L2, L3, L4, B = chain(2), chain(3), chain(4), b4()
    pairs = [(L2, L2), (L2, L3), (L2, L4), (L3, L3), (L4, L4), (B, B), (L2, B)]
    pool = Pool()
    for A, C in pairs:
        for h in strong_homs(A, C):
            pool.strong.append((h.name, h))
            pool.morphisms += variants(h)
    pool.morphisms.append(("collapse(B4)", collapse_family(B)))
    return pool


def evens(level: int) -> list[frozenset]:
    """``A_0, A_2, A_4, ...`` up to ``A_{level+1}``; full when read one level up."""
    return [FinSetBooleanEMV.A(2 * k) for k in range((level + 1) // 2 + 1)]


def finset_pool(level: int = 3) -> Pool:
    F = FinSetBooleanEMV()
    idf = identity_morphism(F)
    sm = setminus_morphism(F)
    ss = compose(sm, sm, level)
    ss.name = "setminus.setminus"
    r_id = restrict_morphism(idf, evens, level)
    r_id.name = "id|evens"
    r_sm = restrict_morphism(sm, evens, level)
    r_sm.name = "setminus|evens"
    i_sm = compose(idf, sm, level)
    i_sm.name = "id.setminus"
    pool = Pool(morphisms=[(m.name, m) for m in (idf, sm, ss, r_id, r_sm, i_sm)])
    pool.strong.append(("id", StrongEMVHom(F, F, lambda x: x, name="id")))
    return pool


def swap01(D: DirectSumEMV) -> StrongEMVHom:
    """Exchange coordinates 0 and 1 (the factors there must agree)."""
    def fn(x):
        perm = {0: 1, 1: 0}
        return D.vec({perm.get(i, i): v for i, v in x})
    return StrongEMVHom(D, D, fn, name="swap01")


def direct_sum_pool(level: int = 3) -> Pool:
    from .builtins import coordinatewise_morphism
    D = DirectSumEMV([mk_chain(2)])
    ident = StrongEMVHom(D, D, lambda x: x, name="id")
    sw = swap01(D)
    H = morphism_from_strong_hom(ident, level)
    H.name = "H(id)"
    cw = coordinatewise_morphism(D, D, [[0, 1]])
    cw.name = "coordinatewise"
    Hs = morphism_from_strong_hom(sw, level)
    Hs.name = "H(swap01)"
    ss = compose(Hs, Hs, level)
    ss.name = "swap.swap"
    ch = compose(cw, H, level)
    ch.name = "coordinatewise.H(id)"
    r = restrict_morphism(H, lambda lv: [D.indicator(range(n)) for n in range(lv + 2)], level)
    r.name = "H(id)|initial"
    pool = Pool(morphisms=[(m.name, m) for m in (H, cw, Hs, ss, ch, r)])
    pool.strong += [("id", ident), ("swap01", sw)]
    return pool


def product_instances() -> list[tuple[str, object, list[EMVMorphism]]]:
    """At least ten ``(M, [f_i])`` instances for the product construction."""
    L2, L3, L4, B = chain(2), chain(3), chain(4), b4()

    def H(A, C, k=0):
        return morphism_from_strong_hom(strong_homs(A, C)[k], check=False)

    def top(A, C, k=0):
        return variants(strong_homs(A, C)[k])[1][1]

    F = FinSetBooleanEMV()
    out = [
        ("L2 -> L2 x L3", L2, [H(L2, L2), H(L2, L3)]),
        ("L2 -> L3 x L4", L2, [H(L2, L3), H(L2, L4)]),
        ("L2 -> B4", L2, [H(L2, B)]),
        ("L3 -> L3 x L3", L3, [H(L3, L3), top(L3, L3)]),
        ("L4 -> L4", L4, [top(L4, L4)]),
        ("B4 -> B4 x B4", B, [H(B, B, 0), H(B, B, 1)]),
        ("B4 -> B4 (swap)", B, [H(B, B, 1)]),
        ("L2 -> L2 x L2 x L3", L2, [H(L2, L2), top(L2, L2), H(L2, L3)]),
        ("B4 -> B4 x B4 (collapse)", B, [collapse_family(B), H(B, B, 1)]),
        ("FinSet -> FinSet x FinSet", F, [identity_morphism(F), setminus_morphism(F)]),
        ("FinSet -> FinSet", F, [setminus_morphism(F)]),
    ]
    return out


def competitors(M, g: EMVMorphism, level: int) -> list[tuple[str, EMVMorphism]]:
    """The mediating morphism itself, a restriction of it, and a composite with a similar-to-identity family."""
    if M.is_exhaustive(0):
        K = [M.top]
        perturb = collapse_family(M)
    else:
        K = evens
        perturb = setminus_morphism(M)
    r = restrict_morphism(g, K, level)
    c = compose(g, perturb, level)
    return [("mediating", g), ("restricted", r), ("perturbed", c)]

"""Named algebras and morphism families used by the CLI, tests and examples."""
from __future__ import annotations

from typing import Sequence

from .emv.backends import DirectSumEMV, FinSetBooleanEMV, TableEMV
from .errors import InvalidInput
from .morphism import EMVMorphism, Entry, StrongEMVHom, identity_morphism
from .mv import MVHom, mk_boolean, mk_chain


def setminus_morphism(F: FinSetBooleanEMV | None = None) -> EMVMorphism:
    """``f_i(X) = X - {i}`` on ``[0, A_i]`` for ``i = 1, 2, ...``.

    At bound ``L`` the keys are ``1 .. L+1``.
    """
    F = F or FinSetBooleanEMV()

    def make(i: int) -> Entry:
        if not isinstance(i, int) or i < 1:
            raise InvalidInput(f"setminus: bad key {i!r}")
        return Entry(i, F.A(i), lambda x, i=i: x - {i})

    def source_full(b):
        return max(b, default=0) + 1

    def target_full(c):
        # f_i(A_i) = A_{i-1}
        return max(c, default=0) + 1

    return EMVMorphism(F, F, keys=lambda lv: range(1, lv + 2), make=make, name="setminus",
                       source_full=source_full, target_full=target_full,
                       directed=lambda i, j: max(i, j))


def coordinatewise_morphism(src: DirectSumEMV, tgt: DirectSumEMV, homs: Sequence) -> EMVMorphism:
    """``f_I`` acting by ``homs[i]`` on coordinate ``i`` for finite index sets ``I``.

    ``homs[i]`` is an MV-homomorphism table from factor ``i`` of ``src`` to
    factor ``i`` of ``tgt``; it is reused periodically when both sums repeat.
    Keys are frozensets ``I``; ``a_I`` is the indicator of ``I``.
    """
    homs = [h.table if isinstance(h, MVHom) else tuple(h) for h in homs]
    if not homs:
        raise InvalidInput("coordinatewise: no homomorphisms given")

    def hom(i):
        return homs[i % len(homs)]

    def apply(I, x):
        return tgt.vec({i: hom(i)[v] for i, v in x if i in I})

    def make(I) -> Entry:
        I = frozenset(I)
        return Entry(I, src.indicator(sorted(I)), lambda x, I=I: apply(I, x))

    def keys(lv):
        import itertools
        cs = list(src.coords(lv))
        return [frozenset(c) for r in range(len(cs) + 1) for c in itertools.combinations(cs, r)]

    def support(x):
        return frozenset(i for i, _ in x)

    return EMVMorphism(src, tgt, keys=keys, make=make, name="coordinatewise",
                       source_full=support, target_full=support,
                       directed=lambda I, J: I | J, finite=not src.repeat)


def adversarial_nonstandard() -> EMVMorphism:
    """A valid family on the Boolean direct sum whose values at ``e_0`` strictly increase.

    ``a_n`` is the indicator of ``{0..n-1}``; ``f_n`` sends ``e_0`` to
    ``e_0 + e_2 + ... + e_2n`` and ``e_k`` to ``e_{2k-1}`` for ``0 < k < n``.
    """
    D = DirectSumEMV([mk_chain(2)])

    def image(n, k):
        if k == 0:
            return [0] + [2 * m for m in range(1, n + 1)]
        return [2 * k - 1]

    def make(n) -> Entry:
        if not isinstance(n, int) or n < 1:
            raise InvalidInput(f"adversarial: bad key {n!r}")

        def fn(x, n=n):
            out = set()
            for k, _ in x:
                out.update(image(n, k))
            return D.indicator(sorted(out))
        return Entry(n, D.indicator(range(n)), fn)

    return EMVMorphism(D, D, keys=lambda lv: range(1, lv + 1), make=make, name="adversarial",
                       directed=lambda i, j: max(i, j))


def b4() -> TableEMV:
    """The four-element Boolean algebra; labels 0, p, q, 1."""
    M = mk_boolean(2)
    T = TableEMV.from_mv(M)
    T.labels = ("0", "p", "q", "1")
    return T


def clause_iii_breach() -> EMVMorphism:
    """Identity and the swap of atoms, both on ``[0, 1]`` of B4: meet compatibility fails."""
    T = b4()
    swap = {0: 0, 1: 2, 2: 1, 3: 3}
    return EMVMorphism(T, T, [Entry("id", 3, lambda x: x), Entry("swap", 3, lambda x: swap[x])],
                       name="iii-breach")


def missing_directedness() -> EMVMorphism:
    """Two entries on B4 with no common upper bound in the family.

    ``e1`` on ``[0, 1]`` sends ``x`` to ``p`` if ``x >= q`` else 0;
    ``e2`` on ``[0, q]`` sends ``q`` to 1.
    """
    T = b4()
    p, q, one = 1, 2, 3
    return EMVMorphism(T, T, [Entry("e1", one, lambda x: p if T.leq(q, x) else 0),
                              Entry("e2", q, lambda x: one if x == q else 0)],
                       name="iv-breach")


def non_full_example() -> EMVMorphism:
    """A single entry on ``[0, 0]`` of the three-element chain: the sources are not full."""
    T = TableEMV.from_mv(mk_chain(3))
    return EMVMorphism(T, T, [Entry("zero", 0, lambda x: 0)], name="i-breach")


def meet_family(M, c) -> EMVMorphism:
    """``x -> x ^ c`` on every ``[0, a]``; a valid morphism only when ``c`` dominates all idempotents."""
    if not M.is_idempotent(c):
        raise InvalidInput("meet_family: c must be idempotent")

    def make(a) -> Entry:
        return Entry(a, a, lambda x: M.meet(x, c))

    return EMVMorphism(M, M, keys=lambda lv: M.idempotents(lv), make=make, name="meet",
                       source_full=lambda b: b, directed=lambda i, j: M.join(i, j),
                       finite=M.is_exhaustive(0))


def strong_projection(D: DirectSumEMV, keep) -> StrongEMVHom:
    """Zero out the coordinates outside ``keep``; a strong homomorphism onto the sub-sum."""
    keep = frozenset(keep)
    return StrongEMVHom(D, D, lambda x: D.vec({i: v for i, v in x if i in keep}), name="proj")


BUILTIN_MORPHISMS = {
    "setminus": setminus_morphism,
    "adversarial": adversarial_nonstandard,
    "iii-breach": clause_iii_breach,
    "iv-breach": missing_directedness,
    "i-breach": non_full_example,
}


def builtin_morphism(name: str) -> EMVMorphism:
    try:
        return BUILTIN_MORPHISMS[name]()
    except KeyError:
        raise InvalidInput(f"unknown builtin morphism {name!r}; known: {sorted(BUILTIN_MORPHISMS)}") from None


__all__ = ["setminus_morphism", "coordinatewise_morphism", "adversarial_nonstandard", "b4",
           "clause_iii_breach", "missing_directedness", "non_full_example", "meet_family",
           "builtin_morphism", "BUILTIN_MORPHISMS", "identity_morphism"]

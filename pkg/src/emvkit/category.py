"""Finite products, mediating morphisms, morphism classes and the category law suite."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .bounds import resolve
from .emv.base import EMVAlgebra
from .errors import InvalidInput
from .morphism import (EMVMorphism, Entry, StrongEMVHom, compose, extract_strong_hom, identity_morphism,
                       is_standard, morphism_from_strong_hom, pointwise_equal, restrict_morphism, similar)
from .verdict import NOT_COMPETITOR, VACUOUS, Verdict, combine, failed


class ProductEMV(EMVAlgebra):
    """Finite product with tuple elements and componentwise operations."""

    kind = "product"

    def __init__(self, factors: Sequence[EMVAlgebra]):
        super().__init__()
        self.factors = tuple(factors)
        if not self.factors:
            raise InvalidInput("product needs at least one factor")

    def __repr__(self):
        return "ProductEMV<" + " x ".join(repr(F) for F in self.factors) + ">"

    def __eq__(self, other):
        return isinstance(other, ProductEMV) and self.factors == other.factors

    def __hash__(self):
        return hash(("product", self.factors))

    def _each(self, op: str, *args):
        return tuple(getattr(F, op)(*(a[k] for a in args)) for k, F in enumerate(self.factors))

    def contains(self, x):
        return (isinstance(x, tuple) and len(x) == len(self.factors)
                and all(F.contains(v) for F, v in zip(self.factors, x)))

    def join(self, x, y):
        return self._each("join", x, y)

    def meet(self, x, y):
        return self._each("meet", x, y)

    def oplus(self, x, y):
        return self._each("oplus", x, y)

    @property
    def zero(self):
        return tuple(F.zero for F in self.factors)

    def leq(self, x, y):
        return all(F.leq(a, b) for F, a, b in zip(self.factors, x, y))

    def is_idempotent(self, x):
        return all(F.is_idempotent(v) for F, v in zip(self.factors, x))

    def dominating(self, x):
        parts = self._each("dominating", x)
        return None if any(p is None for p in parts) else parts

    def key(self, x):
        return tuple(F.key(v) for F, v in zip(self.factors, x))

    def elements(self, level):
        return self.sort(itertools.product(*(F.elements(level) for F in self.factors)))

    def idempotents(self, level):
        return self.sort(itertools.product(*(F.idempotents(level) for F in self.factors)))

    def below(self, a):
        return self.sort(itertools.product(*(F.below(v) for F, v in zip(self.factors, a))))

    def _lam(self, b, x):
        return self._each("lam", b, x)

    def level_of(self, x):
        return max(F.level_of(v) for F, v in zip(self.factors, x))

    def is_exhaustive(self, level):
        return all(F.is_exhaustive(level) for F in self.factors)

    def finite_intervals(self):
        return all(F.finite_intervals() for F in self.factors)

    @property
    def has_top(self):
        return all(F.has_top for F in self.factors)

    @property
    def top(self):
        return tuple(F.top for F in self.factors)

    def show(self, x):
        return "(" + ", ".join(F.show(v) for F, v in zip(self.factors, x)) + ")"

    def projection_hom(self, i: int) -> StrongEMVHom:
        return StrongEMVHom(self, self.factors[i], lambda x, i=i: x[i], name=f"pi{i}")

    def projection(self, i: int) -> EMVMorphism:
        f = morphism_from_strong_hom(self.projection_hom(i), check=False)
        f.target_full = lambda c, i=i: tuple(c if k == i else F.zero for k, F in enumerate(self.factors))
        f.name = f"pi{i}"
        return f


def product_emv(factors: Sequence[EMVAlgebra]) -> ProductEMV:
    return ProductEMV(factors)


def normalize(f: EMVMorphism, level: int | None = None) -> EMVMorphism:
    """``f`` restricted to all idempotents of its source; keys are the idempotents."""
    S = f.source
    if S.is_exhaustive(0):
        return restrict_morphism(f, S.idempotents(0), level)
    return restrict_morphism(f, S.idempotents, level)


def mediating_morphism(M: EMVAlgebra, fs: Sequence[EMVMorphism], level: int | None = None) -> EMVMorphism:
    """``g_a(x) = (f_{i,a}(x))_i`` into the product of the targets."""
    level = resolve(level)
    if not fs:
        raise InvalidInput("mediating morphism needs at least one component")
    if any(f.source != M for f in fs):
        raise InvalidInput("all components must start at the same algebra")
    norm = [normalize(f, level) for f in fs]
    P = ProductEMV([f.target for f in fs])

    def make(a) -> Entry:
        parts = [g.entry(a) for g in norm]
        return Entry(a, a, lambda x: tuple(p(x) for p in parts), origin=("mediating",))

    g = EMVMorphism(M, P, keys=lambda lv: M.idempotents(lv), make=make, name="mediating",
                    source_full=lambda b: b, directed=lambda i, j: M.join(i, j),
                    finite=M.is_exhaustive(0) and all(f.finite for f in norm))
    g.meta["components"] = norm
    return g


def similar_both(f: EMVMorphism, g: EMVMorphism, level: int | None = None) -> Verdict:
    level = resolve(level)
    return combine("approx", [similar(f, g, level), similar(g, f, level)], bound=level)


def check_product_universal(M: EMVAlgebra, fs: Sequence[EMVMorphism], candidate: EMVMorphism,
                            level: int | None = None) -> Verdict:
    """A competitor ``h`` with ``pi_i o h`` similar to ``f_i`` must be similar to the mediating morphism.

    Only the supplied competitor is tested; the universal quantifier over all
    competitors is out of reach.  A candidate failing the premise is reported
    as ``not-a-competitor``.
    """
    level = resolve(level)
    P = ProductEMV([f.target for f in fs])
    if candidate.source != M or candidate.target != P:
        return Verdict("product-universal", NOT_COMPETITOR, "ends", {}, level, "search",
                       "candidate has the wrong source or target")
    for i, f in enumerate(fs):
        pre = similar_both(compose(P.projection(i), candidate, level), f, level)
        if not pre.ok:
            return Verdict("product-universal", NOT_COMPETITOR, "premise", {"i": i, **pre.witness}, level,
                           "search", f"projection {i} of the candidate is not similar to f_{i}")
    v = similar_both(candidate, mediating_morphism(M, fs, level), level)
    return Verdict("product-universal", v.status, v.clause, v.witness, v.bound, v.path,
                   "only the supplied competitor was tested")


@dataclass
class MorphismClass:
    """A similarity class represented by a pool of known members."""
    representative: EMVMorphism
    pool: list = field(default_factory=list)

    def members(self) -> list[EMVMorphism]:
        return [self.representative] + [g for g in self.pool if g is not self.representative]

    def check(self, level: int | None = None) -> Verdict:
        ms = self.members()
        return combine("class", [similar(a, b, level) for a in ms for b in ms], bound=resolve(level))

    def compose(self, other: "MorphismClass", level: int | None = None) -> "MorphismClass":
        """``[self] o [other]`` with the pool of all representative composites."""
        level = resolve(level)
        rep = compose(self.representative, other.representative, level)
        pool = [compose(a, b, level) for a in self.members() for b in other.members()]
        return MorphismClass(rep, pool)


@dataclass
class Pool:
    """Algebras with named morphisms and strong homomorphisms between them."""
    morphisms: list[tuple[str, EMVMorphism]] = field(default_factory=list)
    strong: list[tuple[str, StrongEMVHom]] = field(default_factory=list)

    def algebras(self) -> list[EMVAlgebra]:
        out = []
        for _, f in self.morphisms:
            for A in (f.source, f.target):
                if A not in out:
                    out.append(A)
        for _, h in self.strong:
            for A in (h.source, h.target):
                if A not in out:
                    out.append(A)
        return out


@dataclass
class LawReport:
    results: list[tuple[str, Verdict]]
    warnings: list[str]
    counts: dict

    @property
    def ok(self) -> bool:
        return all(v.ok or v.status == VACUOUS for _, v in self.results)

    def failures(self) -> list[tuple[str, Verdict]]:
        return [(n, v) for n, v in self.results if not (v.ok or v.status == VACUOUS)]


def _spread(items: list, cap: int | None) -> list:
    """At most ``cap`` items taken at an even stride, so every region of the list is sampled."""
    if cap is None or len(items) <= cap:
        return items
    step = len(items) / cap
    return [items[int(k * step)] for k in range(cap)]


def law_suite(pool: Pool, level: int | None = None, max_checks: int | None = 400) -> LawReport:
    """Category laws on a pool, plus both functors between standard classes and strong homs.

    Checks, in order: ``equivalence`` (similarity is reflexive, symmetric and
    transitive), ``identity``, ``compatibility``, ``associativity``,
    ``standard-closure``, ``standard-invariance``, ``F-strong``,
    ``F-well-defined``, ``HF`` (H(F_f) similar to f) and ``FH`` (F of the
    restriction family of h equals h pointwise).  Compatibility and
    associativity are sampled at an even stride down to ``max_checks``
    instances each; ``None`` checks them all.
    """
    level = resolve(level)
    ms = [f for _, f in pool.morphisms]
    out: list[tuple[str, Verdict]] = []
    warnings = []
    counts = {"morphisms": len(ms), "triples": 0, "pairs": 0, "compatibility": 0}
    if not ms and not pool.strong:
        warnings.append("empty pool: nothing to check")
        return LawReport([("pool", Verdict("pool", VACUOUS, None, {}, level, detail="empty pool"))], warnings, counts)

    sim_cache: dict = {}

    def sim(f, g) -> Verdict:
        k = (id(f), id(g))
        if k not in sim_cache:
            sim_cache[k] = similar(f, g, level)
        return sim_cache[k]

    def approx(f, g) -> bool:
        return sim(f, g).ok and sim(g, f).ok

    groups: dict = {}
    for f in ms:
        groups.setdefault((f.source, f.target), []).append(f)

    # equivalence
    vs = []
    for fam in groups.values():
        for f in fam:
            vs.append(sim(f, f))
            for g in fam:
                if sim(f, g).ok and not sim(g, f).ok:
                    vs.append(failed("symmetric", "symmetric", bound=level, f=f.name, g=g.name))
                for h in fam:
                    if sim(f, g).ok and sim(g, h).ok and not sim(f, h).ok:
                        vs.append(failed("transitive", "transitive", bound=level, f=f.name, g=g.name, h=h.name))
    out.append(("equivalence", combine("equivalence", vs, bound=level)))

    # identity laws
    ids: dict = {}

    def ident(A):
        if A not in ids:
            ids[A] = identity_morphism(A)
        return ids[A]

    vs = []
    for f in ms:
        vs.append(similar_both(compose(f, ident(f.source), level, distinct=True), f, level))
        vs.append(similar_both(compose(ident(f.target), f, level, distinct=True), f, level))
    out.append(("identity", combine("identity", vs, bound=level)))

    # compatibility and associativity over composable chains
    comp_cache: dict = {}

    def comp(g, f):
        k = (id(g), id(f))
        if k not in comp_cache:
            comp_cache[k] = compose(g, f, level, distinct=True)
        return comp_cache[k]

    pairs = [(g, f) for f in ms for g in ms if f.target == g.source]
    counts["pairs"] = len(pairs)
    quads = [(g1, f1, g2, f2) for (g1, f1) in pairs for (g2, f2) in pairs
             if (f1.source, g1.target, f1.target) == (f2.source, g2.target, f2.target)]
    quads = [q for q in _spread(quads, None if max_checks is None else 4 * max_checks)
             if approx(q[1], q[3]) and approx(q[0], q[2])]
    quads = _spread(quads, max_checks)
    counts["compatibility"] = len(quads)
    vs = [similar_both(comp(g1, f1), comp(g2, f2), level) for g1, f1, g2, f2 in quads]
    out.append(("compatibility", combine("compatibility", vs, bound=level) if vs
                else Verdict("compatibility", VACUOUS, None, {}, level)))

    triples = [(h, g, f) for (g, f) in pairs for h in ms if g.target == h.source]
    triples = _spread(triples, max_checks)
    counts["triples"] = len(triples)
    vs = [similar_both(comp(comp(h, g), f), comp(h, comp(g, f)), level) for h, g, f in triples]
    out.append(("associativity", combine("associativity", vs, bound=level) if vs
                else Verdict("associativity", VACUOUS, None, {}, level)))

    # standard calculus
    std = {id(f): is_standard(f, level).ok for f in ms}
    vs = [is_standard(comp(g, f), level) for g, f in pairs if std[id(f)] and std[id(g)]]
    out.append(("standard-closure", combine("standard-closure", vs, bound=level) if vs
                else Verdict("standard-closure", VACUOUS, None, {}, level)))
    vs = []
    for fam in groups.values():
        for f in fam:
            for g in fam:
                if std[id(f)] and approx(f, g) and not std[id(g)]:
                    vs.append(failed("standard-invariance", "invariance", bound=level, f=f.name, g=g.name))
    out.append(("standard-invariance", combine("standard-invariance", vs, bound=level)))

    from .morphism import check_strong_hom
    F = {id(f): extract_strong_hom(f, level) for f in ms if std[id(f)]}
    vs = [check_strong_hom(F[id(f)], level) for f in ms if id(f) in F]
    out.append(("F-strong", combine("F-strong", vs, bound=level) if vs
                else Verdict("F-strong", VACUOUS, None, {}, level)))
    vs = []
    for fam in groups.values():
        for f in fam:
            for g in fam:
                if id(f) in F and id(g) in F and approx(f, g):
                    vs.append(pointwise_equal(F[id(f)], F[id(g)], level))
    out.append(("F-well-defined", combine("F-well-defined", vs, bound=level) if vs
                else Verdict("F-well-defined", VACUOUS, None, {}, level)))
    vs = [similar_both(morphism_from_strong_hom(F[id(f)], level, check=False), f, level)
          for f in ms if id(f) in F]
    out.append(("HF", combine("HF", vs, bound=level) if vs else Verdict("HF", VACUOUS, None, {}, level)))
    vs = [pointwise_equal(extract_strong_hom(morphism_from_strong_hom(h, level), level), h, level)
          for _, h in pool.strong]
    out.append(("FH", combine("FH", vs, bound=level) if vs else Verdict("FH", VACUOUS, None, {}, level)))
    return LawReport(out, warnings, counts)

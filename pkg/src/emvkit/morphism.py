"""EMV-morphisms: indexed families of interval MV-homomorphisms.

A family is either an explicit finite list of :class:`Entry` objects or a
bounded enumerator ``keys(level)`` together with ``make(key)``.  Every
existential condition (fullness, directedness, the ``exists j`` of
similarity) is answered by a caller-supplied witness function when one is
given and by a search one level beyond the current bound otherwise.
"""
from __future__ import annotations

import threading
from typing import Any, Callable, Hashable, Iterable, Sequence

from .bounds import SLACK, resolve
from .emv.base import EMVAlgebra, interval_mv
from .errors import BoundExhausted, DomainError, InvalidInput, PreconditionViolation
from .mv import is_mv_hom
from .verdict import (FAIL, FAIL_BOUNDED, PASS, VACUOUS, Verdict, combine, failed, passed)


class Entry:
    """One member ``f_i : [0, a] -> [0, f_i(a)]`` of a family."""

    __slots__ = ("key", "a", "_fn", "_memo", "_b", "origin", "_graph")

    def __init__(self, key: Hashable, a, fn: Callable[[Any], Any], origin=None):
        self.key = key
        self.a = a
        self._fn = fn
        self._memo = {}
        self._b = None
        self.origin = origin
        self._graph = {}

    def __call__(self, x):
        try:
            return self._memo[x]
        except KeyError:
            v = self._memo[x] = self._fn(x)
            return v

    @property
    def b(self):
        if self._b is None:
            self._b = self(self.a)
        return self._b

    def __repr__(self):
        return f"Entry({self.key!r}, a={self.a!r})"


def points_below(M: EMVAlgebra, a, level: int) -> list:
    """All of ``[0, a]`` when it is finite, else the enumerated elements below ``a``."""
    if M.finite_intervals():
        return M.below(a)
    return [x for x in M.elements(level) if M.leq(x, a)]


class EMVMorphism:
    def __init__(self, source: EMVAlgebra, target: EMVAlgebra, entries: Sequence[Entry] | None = None,
                 keys: Callable[[int], Iterable[Hashable]] | None = None,
                 make: Callable[[Hashable], Entry] | None = None, name: str = "",
                 source_full: Callable | None = None, target_full: Callable | None = None,
                 directed: Callable | None = None, finite: bool | None = None, meta: dict | None = None):
        if (entries is None) == (keys is None):
            raise InvalidInput("give either explicit entries or a key enumerator")
        self.source, self.target, self.name = source, target, name
        self.source_full, self.target_full, self.directed = source_full, target_full, directed
        self.meta = meta or {}
        self._lock = threading.Lock()
        if entries is not None:
            entries = list(entries)
            if not entries:
                raise InvalidInput("an EMV-morphism needs at least one entry")
            self._list = entries
            self._by_key = {e.key: e for e in entries}
            if len(self._by_key) != len(entries):
                raise InvalidInput("duplicate entry keys")
            self._keys = None
            self.finite = True
        else:
            if make is None:
                raise InvalidInput("a key enumerator needs a make function")
            self._list = None
            self._keys, self._make = keys, make
            self._by_key = {}
            self._key_memo: dict[int, list] = {}
            self.finite = bool(finite)

    def __repr__(self):
        return f"EMVMorphism<{self.name or 'family'}: {self.source!r} -> {self.target!r}>"

    def keys(self, level: int) -> list:
        if self._list is not None:
            return [e.key for e in self._list]
        if level not in self._key_memo:
            ks = list(self._keys(level))
            with self._lock:
                self._key_memo.setdefault(level, ks)
        return list(self._key_memo[level])

    def entry(self, key) -> Entry:
        if key in self._by_key:
            return self._by_key[key]
        if self._list is not None:
            raise InvalidInput(f"no entry with key {key!r}")
        e = self._make(key)
        with self._lock:
            return self._by_key.setdefault(key, e)

    def entries(self, level: int | None = None) -> list[Entry]:
        if self._list is not None:
            return list(self._list)
        return [self.entry(k) for k in self.keys(resolve(level))]

    def __call__(self, key, x):
        return self.entry(key)(x)


def family(source, target, pairs: Iterable[tuple[Any, Callable]], name: str = "") -> EMVMorphism:
    """Finite family from ``(a, fn)`` pairs; keys are positions."""
    return EMVMorphism(source, target, [Entry(k, a, fn) for k, (a, fn) in enumerate(pairs)], name=name)


def _exhaustive(f: EMVMorphism, level: int, *more: EMVMorphism) -> bool:
    fs = (f,) + more
    return all(g.finite and g.source.is_exhaustive(level) and g.target.is_exhaustive(level) for g in fs)


def check_entry(f: EMVMorphism, e: Entry, level: int) -> None:
    """Raise InvalidInput unless entry ``e`` is an MV-homomorphism of intervals."""
    S, T = f.source, f.target
    try:
        if not S.is_idempotent(e.a):
            raise InvalidInput(f"entry {e.key!r}: a = {S.show(e.a)} is not idempotent")
        b = e.b
        if not T.is_idempotent(b):
            raise InvalidInput(f"entry {e.key!r}: image of a is not idempotent")
        if S.finite_intervals() and T.finite_intervals():
            src, tgt = interval_mv(S, e.a), interval_mv(T, b)
            table = [tgt.to_local(e(x)) for x in src.elems]
            if not is_mv_hom(table, src.mv, tgt.mv):
                raise InvalidInput(f"entry {e.key!r} is not an MV-homomorphism")
            return
        pts = points_below(S, e.a, level)
        for x in pts:
            fx = e(x)
            if not T.leq(fx, b):
                raise InvalidInput(f"entry {e.key!r}: value leaves [0, f(a)]")
            if e(S.lam(e.a, x)) != T.lam(b, fx):
                raise InvalidInput(f"entry {e.key!r} does not preserve negation")
            for y in pts:
                if e(S.oplus(x, y)) != T.oplus(fx, e(y)):
                    raise InvalidInput(f"entry {e.key!r} does not preserve oplus")
        if e(S.zero) != T.zero:
            raise InvalidInput(f"entry {e.key!r} does not preserve zero")
    except DomainError as err:
        raise InvalidInput(f"entry {e.key!r}: {err}") from None


def validate_morphism(f: EMVMorphism, level: int | None = None) -> Verdict:
    """Check conditions (i) to (iv) of an EMV-morphism.

    Clause ids: ``i`` (sources full), ``ii`` (images full), ``iii`` (meet
    compatibility), ``iv`` (directedness).  All clauses are evaluated; the
    verdict names the first failing one and ``detail`` lists every failing
    clause.
    """
    level = resolve(level)
    S, T = f.source, f.target
    ents = f.entries(level)
    for e in ents:
        check_entry(f, e, level)
    wide = f.entries(level + SLACK)
    exhaustive = _exhaustive(f, level)
    results: list[Verdict] = []

    def fail(clause, path="search", **w):
        status = FAIL if (exhaustive or clause == "iii") else FAIL_BOUNDED
        return Verdict("morphism", status, clause, w, level, path)

    # (i)
    res = None
    for b in S.idempotents(level):
        if f.source_full is not None:
            k = f.source_full(b)
            if k is None or not S.leq(b, f.entry(k).a):
                res = fail("i", "witness", b=b)
                break
        elif not any(S.leq(b, e.a) for e in wide):
            res = fail("i", b=b)
            break
    results.append(res)
    # (ii)
    res = None
    for c in T.idempotents(level):
        if f.target_full is not None:
            k = f.target_full(c)
            if k is None or not T.leq(c, f.entry(k).b):
                res = fail("ii", "witness", c=c)
                break
        elif not any(T.leq(c, e.b) for e in wide):
            res = fail("ii", c=c)
            break
    results.append(res)
    # (iii)
    res = None
    for ei in ents:
        for ej in ents:
            if not T.leq(ei.b, ej.b):
                continue
            for x in points_below(S, S.meet(ei.a, ej.a), level):
                if ei(x) != T.meet(ej(x), ei.b):
                    res = fail("iii", "exhaustive", i=ei.key, j=ej.key, x=x)
                    break
            if res:
                break
        if res:
            break
    results.append(res)
    # (iv)
    res = None
    for ei in ents:
        for ej in ents:
            def ok(t: Entry) -> bool:
                return (S.leq(ei.a, t.a) and S.leq(ej.a, t.a)
                        and T.leq(ei.b, t.b) and T.leq(ej.b, t.b))
            if f.directed is not None:
                k = f.directed(ei.key, ej.key)
                good = k is not None and ok(f.entry(k))
                if not good:
                    res = fail("iv", "witness", i=ei.key, j=ej.key)
            elif not any(ok(t) for t in wide):
                res = fail("iv", i=ei.key, j=ej.key)
            if res:
                break
        if res:
            break
    results.append(res)
    bad = [r for r in results if r is not None]
    if bad:
        first = bad[0]
        listing = "failing clauses: " + ", ".join(r.clause for r in bad)
        return Verdict("morphism", first.status, first.clause, first.witness, level, first.path, listing)
    return passed("morphism", exhaustive, bound=None if exhaustive else level,
                  path="exhaustive" if exhaustive else "search")


def _same_ends(f: EMVMorphism, g: EMVMorphism):
    if f.source != g.source or f.target != g.target:
        raise InvalidInput("morphisms have different sources or targets")


def graph(f: EMVMorphism, e: Entry, level: int) -> tuple:
    """``(a_i, ((x, f_i(x)) for x in [0, a_i]))``: two entries with equal graphs are interchangeable."""
    # finite intervals make the graph level-independent
    lv = None if f.source.finite_intervals() else level
    g = e._graph.get(lv)
    if g is None:
        g = e._graph[lv] = (e.a, tuple((x, e(x)) for x in points_below(f.source, e.a, level)))
    return g


def _distinct(f: EMVMorphism, ents: list[Entry], level: int) -> list[tuple[Entry, dict]]:
    seen: dict = {}
    for e in ents:
        a, pairs = graph(f, e, level)
        seen.setdefault((a, pairs), (e, dict(pairs)))
    return list(seen.values())


def similar(f: EMVMorphism, g: EMVMorphism, level: int | None = None) -> Verdict:
    """``f`` is similar to ``g``: every ``f_i`` is a meet-restriction of some ``g_j``.

    Only this direction is checked; symmetry is a theorem tested separately.
    Entries with identical graphs are checked once.
    """
    _same_ends(f, g)
    level = resolve(level)
    S, T = f.source, f.target
    cands = _distinct(g, g.entries(level + SLACK), level)
    for e, gr in _distinct(f, f.entries(level), level):
        miss = None
        hit = False
        for c, cg in cands:
            if not S.leq(e.a, c.a):
                continue
            bad = next((x for x, v in gr.items() if v != T.meet(cg[x] if x in cg else c(x), e.b)), None)
            if bad is None:
                hit = True
                break
            if miss is None:
                miss = (c.key, bad)
        if not hit:
            w = {"i": e.key}
            if miss is not None:
                w.update(j=miss[0], x=miss[1])
            exhaustive = _exhaustive(f, level, g)
            status = FAIL if exhaustive else FAIL_BOUNDED
            return Verdict("similar", status, "similar", w, level, "search")
    exhaustive = _exhaustive(f, level, g)
    return passed("similar", exhaustive, bound=None if exhaustive else level,
                  path="exhaustive" if exhaustive else "search")


def compose(h: EMVMorphism, f: EMVMorphism, level: int | None = None, distinct: bool = False) -> EMVMorphism:
    """``h o f``: entries ``h_j o f_i`` over pairs with ``f_i(a_i) <= b_j``.

    With ``distinct`` only one ``j`` is kept per distinct composite graph for
    each ``i``; the family then has the same entries up to relabelling.
    """
    if f.target != h.source:
        raise InvalidInput("compose: target of f is not the source of h")
    level = resolve(level)
    M2 = f.target

    def pairs(lv: int) -> list:
        out = []
        hs = h.entries(lv + SLACK)
        for e in f.entries(lv):
            js = [c for c in hs if M2.leq(e.b, c.a)]
            if not js:
                raise BoundExhausted(f"compose: no entry of h above f_{e.key!r}(a) up to level {lv + SLACK}")
            if distinct:
                img = [e(x) for x in points_below(f.source, e.a, lv)]
                seen = {}
                for c in js:
                    seen.setdefault(tuple(c(y) for y in img), c)
                js = list(seen.values())
            out += [(e.key, c.key) for c in js]
        return out

    def make(key) -> Entry:
        i, j = key
        fi, hj = f.entry(i), h.entry(j)
        if not M2.leq(fi.b, hj.a):
            raise InvalidInput(f"compose: pair {key!r} is not composable")
        return Entry(key, fi.a, lambda x: hj(fi(x)), origin=("compose", i, j))

    name = f"{h.name or 'h'}.{f.name or 'f'}"
    if f.finite and h.finite:
        return EMVMorphism(f.source, h.target, [make(k) for k in pairs(level)], name=name)
    pairs(level)  # fail early if the bound is too small
    return EMVMorphism(f.source, h.target, keys=pairs, make=make, name=name)


def _max_of(T: EMVAlgebra, vals: list):
    vals = list(dict.fromkeys(vals))
    for v in vals:
        if all(T.leq(w, v) for w in vals):
            return v
    return None


def _argmax(f: EMVMorphism, x, lv: int):
    S, T = f.source, f.target
    ents = [e for e in f.entries(lv) if S.leq(x, e.a)]
    vals = [e(x) for e in ents]
    m = _max_of(T, vals)
    if m is None:
        return None, None
    return m, next(e.key for e, v in zip(ents, vals) if v == m)


def is_standard(f: EMVMorphism, level: int | None = None) -> Verdict:
    """Does ``{f_i(x) : x <= a_i}`` have a maximum for every probed ``x``?

    On infinite families the maximum found at ``level+1`` must survive at
    ``level+2``; otherwise the verdict is ``no-max-found``.  A passing
    verdict carries ``witness["argmax"]``: probed element -> maximizing key.
    """
    level = resolve(level)
    S = f.source
    argmax = {}
    for x in S.elements(level):
        lv = max(level, S.level_of(x)) + SLACK
        m, k = _argmax(f, x, lv)
        if m is not None and not f.finite:
            m2, _ = _argmax(f, x, lv + SLACK)
            if m2 != m:
                m = None
        if m is None:
            status = FAIL if _exhaustive(f, level) else FAIL_BOUNDED
            return Verdict("standard", status, "no-max-found", {"x": x}, level, "search")
        argmax[x] = k
    exhaustive = _exhaustive(f, level)
    return Verdict("standard", PASS if exhaustive else "pass-up-to-bound", None,
                   {"argmax": argmax}, None if exhaustive else level,
                   "exhaustive" if exhaustive else "search")


class StrongEMVHom:
    """A total map preserving v, ^, +, 0 and interval negations, with full idempotent image."""

    def __init__(self, source: EMVAlgebra, target: EMVAlgebra, fn: Callable, name: str = ""):
        self.source, self.target, self.name = source, target, name
        self._fn = fn
        self._memo = {}

    def __call__(self, x):
        return self._fn(x)

    def __repr__(self):
        return f"StrongEMVHom<{self.name or 'h'}: {self.source!r} -> {self.target!r}>"


def check_strong_hom(h: StrongEMVHom, level: int | None = None) -> Verdict:
    level = resolve(level)
    S, T = h.source, h.target
    exhaustive = S.is_exhaustive(level) and T.is_exhaustive(level)

    def bad(clause, **w):
        status = FAIL if exhaustive else FAIL_BOUNDED
        return Verdict("strong-hom", status, clause, w, level, "exhaustive")

    if h(S.zero) != T.zero:
        return bad("zero")
    E = S.elements(level)
    for x in E:
        for y in E:
            if h(S.join(x, y)) != T.join(h(x), h(y)):
                return bad("join", x=x, y=y)
            if h(S.meet(x, y)) != T.meet(h(x), h(y)):
                return bad("meet", x=x, y=y)
            if h(S.oplus(x, y)) != T.oplus(h(x), h(y)):
                return bad("oplus", x=x, y=y)
    for b in S.idempotents(level):
        hb = h(b)
        for x in points_below(S, b, level):
            try:
                ok = h(S.lam(b, x)) == T.lam(hb, h(x))
            except DomainError:
                ok = False
            if not ok:
                return bad("lambda", b=b, x=x)
    wide = S.idempotents(level + SLACK)
    for c in T.idempotents(level):
        if not any(T.leq(c, h(a)) for a in wide):
            status = FAIL if exhaustive else FAIL_BOUNDED
            return Verdict("strong-hom", status, "full", {"c": c}, level, "search")
    return passed("strong-hom", exhaustive, bound=None if exhaustive else level)


def morphism_from_strong_hom(h: StrongEMVHom, level: int | None = None, check: bool = True) -> EMVMorphism:
    """The family of restrictions ``h|[0,a]`` over all idempotents ``a``; keys are the idempotents."""
    level = resolve(level)
    if check:
        v = check_strong_hom(h, level)
        if not v.ok:
            raise InvalidInput(f"not a strong EMV-homomorphism: {v}")
    S = h.source

    def make(a) -> Entry:
        return Entry(a, a, h, origin=("strong", h.name))

    return EMVMorphism(S, h.target, keys=lambda lv: S.idempotents(lv), make=make,
                       name=h.name or "strong", source_full=lambda b: b,
                       directed=lambda i, j: S.join(i, j), finite=S.is_exhaustive(0),
                       meta={"strong": h})


def identity_hom(M: EMVAlgebra) -> StrongEMVHom:
    return StrongEMVHom(M, M, lambda x: x, name="id")


def identity_morphism(M: EMVAlgebra) -> EMVMorphism:
    f = morphism_from_strong_hom(identity_hom(M), check=False)
    f.target_full = lambda c: c
    f.name = "id"
    return f


class IncoherentFamily(InvalidInput):
    def __init__(self, msg, witness):
        super().__init__(msg)
        self.witness = witness


def strong_hom_from_coherent(f: EMVMorphism, level: int | None = None) -> StrongEMVHom:
    """The unique strong homomorphism whose restrictions are the entries of a coherent family."""
    level = resolve(level)
    S, T = f.source, f.target
    ents = f.entries(level)
    for e1 in ents:
        for e2 in ents:
            for x in points_below(S, S.meet(e1.a, e2.a), level):
                if e1(x) != e2(x):
                    raise IncoherentFamily(
                        f"entries {e1.key!r} and {e2.key!r} disagree at {S.show(x)}",
                        {"i": e1.key, "j": e2.key, "x": x})
    wide = f.entries(level + SLACK)
    for b in S.idempotents(level):
        if not any(e.a == b for e in wide):
            raise InvalidInput(f"family is not indexed by all idempotents: missing {S.show(b)}")

    def fn(x):
        lv = max(level, S.level_of(x)) + SLACK
        for e in f.entries(lv):
            if S.leq(x, e.a):
                return e(x)
        raise BoundExhausted(f"no entry above {S.show(x)}")

    return StrongEMVHom(S, T, fn, name=f"coherent({f.name})")


def extract_strong_hom(f: EMVMorphism, level: int | None = None) -> StrongEMVHom:
    """``F_f(x) = max{f_i(x) : x <= a_i}`` for a standard family."""
    level = resolve(level)
    v = is_standard(f, level)
    if not v.ok:
        raise PreconditionViolation(f"family is not standard: {v}")
    S = f.source

    def fn(x):
        lv = max(level, S.level_of(x)) + SLACK
        m, _ = _argmax(f, x, lv)
        if m is None or (not f.finite and _argmax(f, x, lv + SLACK)[0] != m):
            raise PreconditionViolation(f"no maximum of f_i({S.show(x)})")
        return m

    return StrongEMVHom(S, f.target, fn, name=f"F[{f.name}]")


def restrict_morphism(f: EMVMorphism, K, level: int | None = None) -> EMVMorphism:
    """``{f_i|[0,b] : b in K}`` choosing, for each ``b``, the entry with the largest ``f_i(b)``.

    ``K`` is a finite collection of source idempotents or an enumerator
    ``level -> iterable``.  The chosen images must satisfy the reachability
    condition ``for all t, exists b in K: a_t <= b and f_t(a_t) <= g_b(b)``,
    which is verified up to the bound.
    """
    from .emv.axioms import is_full

    level = resolve(level)
    S, T = f.source, f.target
    finite_K = not callable(K)
    K_list = list(K) if finite_K else None
    full = is_full(S, K_list if finite_K else K, level)
    if not full.ok:
        raise InvalidInput(f"restriction set is not full: {full}")

    def k_enum(lv: int) -> list:
        return K_list if finite_K else list(K(lv))

    def make(b) -> Entry:
        lv = max(level, S.level_of(b)) + SLACK
        cands = [e for e in f.entries(lv) if S.leq(b, e.a)]
        if not cands:
            raise BoundExhausted(f"restrict: no entry above {S.show(b)} up to level {lv}")
        vals = [e(b) for e in cands]
        best = next((e for e, v in zip(cands, vals) if all(T.leq(w, v) for w in vals)), None)
        if best is None:
            best = next(e for e, v in zip(cands, vals) if not any(T.leq(v, w) and v != w for w in vals))
        return Entry(b, b, best, origin=("restrict", best.key))

    g = EMVMorphism(S, T, keys=k_enum, make=make, name=f"{f.name or 'f'}|K",
                    finite=finite_K and f.finite)
    if finite_K:
        g = EMVMorphism(S, T, [make(b) for b in K_list], name=f"{f.name or 'f'}|K")
    reach = [g.entry(b) for b in k_enum(level + SLACK)]
    for t in f.entries(level):
        if not any(S.leq(t.a, e.a) and T.leq(t.b, e.b) for e in reach):
            raise PreconditionViolation(
                f"restrict: no chosen g_b dominates entry {t.key!r} up to level {level + SLACK}")
    return g


def morphism_eq_at(f: EMVMorphism, g: EMVMorphism, x, y, level: int | None = None) -> Verdict:
    """``f(x) = g(y)``: ``f_i(x) = g_j(y) ^ f_i(a_i)`` whenever the guard holds.

    When no pair meets the guard up to the bound the verdict is ``vacuous``.
    """
    _same_ends(f, g)
    level = resolve(level)
    S, T = f.source, f.target
    seen = False
    for ei in f.entries(level):
        if not S.leq(x, ei.a):
            continue
        for ej in g.entries(level):
            if not S.leq(y, ej.a) or not T.leq(ei.b, ej.b):
                continue
            seen = True
            if ei(x) != T.meet(ej(y), ei.b):
                status = FAIL
                return Verdict("eq-at", status, "eq-at", {"i": ei.key, "j": ej.key}, level, "search")
    if not seen:
        return Verdict("eq-at", VACUOUS, None, {}, level, "search", "no pair meets the guard")
    exhaustive = _exhaustive(f, level, g)
    return passed("eq-at", exhaustive, bound=None if exhaustive else level)


def is_approx_identity(f: EMVMorphism, level: int | None = None) -> Verdict:
    """``f`` similar to the identity, by the two-clause characterization.

    Clause ``i``: ``f_i(x) <= x`` on ``[0, a_i]``; clause ``ii``:
    ``f_i(x) = x`` for ``x <= f_i(a_i)``.  The characterization presumes a
    genuine EMV-morphism, so an invalid family fails as ``not-a-morphism``.
    The result is cross-checked against ``similar(f, Id)``; disagreement is
    reported as clause ``oracle-disagreement``.
    """
    if f.source != f.target:
        raise InvalidInput("is_approx_identity needs an endomorphism")
    level = resolve(level)
    M = f.source
    valid = validate_morphism(f, level)
    if not valid.ok:
        return Verdict("approx-identity", valid.status, "not-a-morphism", valid.witness, level,
                       valid.path, f"fails clause {valid.clause}")
    verdict = None
    for e in f.entries(level):
        for x in points_below(M, e.a, level):
            if not M.leq(e(x), x):
                verdict = failed("approx-identity", "i", bound=level, i=e.key, x=x)
                break
        if verdict:
            break
        for x in points_below(M, e.b, level):
            if e(x) != x:
                verdict = failed("approx-identity", "ii", bound=level, i=e.key, x=x)
                break
        if verdict:
            break
    sim = similar(f, identity_morphism(M), level)
    clauses_ok = verdict is None
    if clauses_ok != sim.ok:
        return Verdict("approx-identity", FAIL, "oracle-disagreement", sim.witness, level, "search",
                       f"clauses say {clauses_ok}, similar() says {sim.status}")
    if verdict is not None:
        return verdict
    exhaustive = _exhaustive(f, level)
    return passed("approx-identity", exhaustive, bound=None if exhaustive else level)


def is_approx_isomorphism(f: EMVMorphism, g: EMVMorphism, level: int | None = None) -> Verdict:
    """``g o f`` and ``f o g`` are both similar to identities."""
    level = resolve(level)
    gf = compose(g, f, level)
    fg = compose(f, g, level)
    return combine("approx-isomorphism", [is_approx_identity(gf, level), is_approx_identity(fg, level)],
                   bound=level)


def pointwise_equal(h1: StrongEMVHom, h2, level: int | None = None) -> Verdict:
    """``h1(x) = h2(x)`` on all enumerated elements (``h2`` any callable)."""
    level = resolve(level)
    S = h1.source
    for x in S.elements(level):
        if h1(x) != h2(x):
            return failed("pointwise", "pointwise", bound=level, x=x)
    return passed("pointwise", S.is_exhaustive(level), bound=level)

"""Congruences, generated congruences, kernels, quotients and natural projections."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .bounds import SLACK, resolve
from .emv.backends import TableEMV
from .emv.base import EMVAlgebra
from .errors import BoundExhausted, PreconditionViolation, Unsupported
from .morphism import EMVMorphism, StrongEMVHom, check_strong_hom, morphism_from_strong_hom
from .verdict import FAIL, FAIL_BOUNDED, Verdict, passed


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self.parent[ry] = rx
        return True


class Congruence:
    """A binary relation on an EMV-algebra, either as an explicit partition or a pair tester."""

    def __init__(self, M: EMVAlgebra, related: Callable | None = None, blocks: Iterable[Iterable] | None = None,
                 name: str = ""):
        self.algebra, self.name = M, name
        if blocks is not None:
            self._class = {}
            for n, block in enumerate(blocks):
                for x in block:
                    self._class[x] = n
            self._related = lambda x, y: self._class.get(x, ("x", x)) == self._class.get(y, ("y", y))
        elif related is not None:
            self._class = None
            self._related = related
        else:
            raise ValueError("congruence needs a relation or a partition")

    def __call__(self, x, y) -> bool:
        return x == y or bool(self._related(x, y))

    def __repr__(self):
        return f"Congruence<{self.name or 'theta'} on {self.algebra!r}>"

    def blocks(self, level: int | None = None) -> list[list]:
        """Classes of the enumerated elements, each sorted, ordered by least member."""
        M = self.algebra
        out: list[list] = []
        for x in M.elements(resolve(level)):
            for b in out:
                if self(b[0], x):
                    b.append(x)
                    break
            else:
                out.append([x])
        return out

    def pairs(self, level: int | None = None) -> set:
        E = self.algebra.elements(resolve(level))
        return {(x, y) for x in E for y in E if self(x, y)}


def diagonal(M: EMVAlgebra) -> Congruence:
    return Congruence(M, lambda x, y: x == y, name="diagonal")


def all_pairs(M: EMVAlgebra) -> Congruence:
    return Congruence(M, lambda x, y: True, name="all")


def partition(M: EMVAlgebra, blocks) -> Congruence:
    """The equivalence with the given blocks; unlisted elements are singletons."""
    return Congruence(M, blocks=[list(b) for b in blocks], name="partition")


def generate_congruence(M: EMVAlgebra, seeds: Iterable[tuple], level: int | None = None) -> Congruence:
    """Least congruence containing ``seeds`` on the enumerated carrier.

    Worklist closure under equivalence, translation by v, ^, + and the local
    negations ``lambda_b`` for every idempotent ``b`` above a related pair.
    Exact on finite algebras; on infinite ones it is the closure inside the
    bounded carrier.
    """
    level = resolve(level)
    E = M.elements(level)
    Eset = set(E)
    idem = M.idempotents(level)
    uf = _UnionFind(E)
    members = {x: [x] for x in E}
    work: list[tuple] = []

    def merge(u, v):
        ru, rv = uf.find(u), uf.find(v)
        if ru == rv:
            return
        uf.union(ru, rv)
        members[ru] = members.pop(ru) + members.pop(rv)
        work.append((u, v))

    for x, y in seeds:
        if x not in Eset or y not in Eset:
            raise BoundExhausted(f"seed pair outside the carrier at level {level}")
        merge(x, y)
    while work:
        x, y = work.pop()
        for z in E:
            for op in (M.join, M.meet, M.oplus):
                u, v = op(x, z), op(y, z)
                if u in Eset and v in Eset:
                    merge(u, v)
        for b in idem:
            if M.leq(x, b) and M.leq(y, b):
                merge(M.lam(b, x), M.lam(b, y))
    blocks = sorted((sorted(b, key=M.key) for b in members.values()), key=lambda b: M.key(b[0]))
    return Congruence(M, blocks=blocks, name="generated")


def is_congruence(M: EMVAlgebra, theta: Congruence, level: int | None = None) -> Verdict:
    """Equivalence, compatibility with v, ^, + and the lambda clause, on the enumerated carrier.

    The lambda clause asks, for each related pair, for some idempotent ``b``
    above both with ``lambda_b(x)`` related to ``lambda_b(y)``.
    """
    level = resolve(level)
    E = M.elements(level)
    exhaustive = M.is_exhaustive(level)

    def bad(clause, **w):
        return Verdict("congruence", FAIL if exhaustive else FAIL_BOUNDED, clause, w, level, "exhaustive")

    for x in E:
        if not theta(x, x):
            return bad("reflexive", x=x)
    rel = [(x, y) for x in E for y in E if theta(x, y)]
    for x, y in rel:
        if not theta(y, x):
            return bad("symmetric", x=x, y=y)
    for x, y in rel:
        for z in E:
            if theta(y, z) and not theta(x, z):
                return bad("transitive", x=x, y=y, z=z)
    for name, op in (("join", M.join), ("meet", M.meet), ("oplus", M.oplus)):
        for x, y in rel:
            for z in E:
                if not theta(op(x, z), op(y, z)):
                    return bad(name, x=x, y=y, z=z)
    idem = M.idempotents(level + SLACK)
    for x, y in rel:
        ups = [b for b in idem if M.leq(x, b) and M.leq(y, b)]
        if not any(theta(M.lam(b, x), M.lam(b, y)) for b in ups):
            return bad("lambda", x=x, y=y)
    return passed("congruence", exhaustive, bound=None if exhaustive else level)


def kernel(f: EMVMorphism, level: int | None = None) -> Congruence:
    """``x ~ y`` iff ``f_i(x) = f_i(y)`` for every enumerated entry with ``x, y <= a_i``."""
    level = resolve(level)
    S = f.source

    def related(x, y):
        lv = max(level, S.level_of(x), S.level_of(y)) + SLACK
        ents = [e for e in f.entries(lv) if S.leq(x, e.a) and S.leq(y, e.a)]
        if not ents:
            raise BoundExhausted(f"kernel: no entry above {S.show(x)} and {S.show(y)} up to level {lv}")
        return all(e(x) == e(y) for e in ents)

    return Congruence(S, related, name=f"ker({f.name})")


@dataclass
class Quotient:
    algebra: TableEMV
    classes: list[list]
    class_of: Callable
    theta: Congruence


def quotient(M: EMVAlgebra, theta: Congruence, level: int | None = None, check: bool = True) -> Quotient:
    """``M / theta`` as a table algebra; class ``n`` is the block with the ``n``-th least member."""
    level = resolve(level)
    if not M.is_exhaustive(level):
        raise Unsupported(f"quotient needs a finite algebra; {M!r} is infinite")
    if check:
        v = is_congruence(M, theta, level)
        if not v.ok:
            raise PreconditionViolation(f"not a congruence: {v}")
    blocks = theta.blocks(level)
    index = {x: n for n, b in enumerate(blocks) for x in b}
    reps = [b[0] for b in blocks]

    def table(op):
        return [[index[op(x, y)] for y in reps] for x in reps]

    labels = ["[" + M.show(r) + "]" for r in reps]
    Q = TableEMV(table(M.join), table(M.meet), table(M.oplus), index[M.zero], labels, ("quotient", theta.name))
    return Quotient(Q, blocks, index.__getitem__, theta)


def natural_projection(M: EMVAlgebra, theta: Congruence, level: int | None = None) -> EMVMorphism:
    """``{pi_a : x -> x/theta}`` over all idempotents ``a``."""
    level = resolve(level)
    q = quotient(M, theta, level)
    h = StrongEMVHom(M, q.algebra, q.class_of, name="pi")
    v = check_strong_hom(h, level)
    if not v.ok:
        raise PreconditionViolation(f"class map is not a strong homomorphism: {v}")
    f = morphism_from_strong_hom(h, level, check=False)
    f.name = "pi"
    f.meta["quotient"] = q
    return f


def same_relation(M: EMVAlgebra, r1: Congruence, r2: Congruence, level: int | None = None) -> Verdict:
    level = resolve(level)
    E = M.elements(level)
    for x in E:
        for y in E:
            if r1(x, y) != r2(x, y):
                return Verdict("same-relation", FAIL, "differ", {"x": x, "y": y}, level)
    return passed("same-relation", M.is_exhaustive(level), bound=level)

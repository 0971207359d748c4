"""Finite MV-algebras given by explicit tables, and their homomorphisms.

Elements are dense integer indices ``0..n-1``; ``labels`` are for display
only.  Every interval ``[0, a]`` of an EMV-algebra is eventually turned into
one of these, so the checks here are the local ground truth for everything
else in the package.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Mapping, Sequence

from .errors import InvalidInput, InvalidSize
from .verdict import Verdict, failed, passed


def _tuplize(table):
    return tuple(tuple(int(v) for v in row) for row in table)


@dataclass(frozen=True)
class FiniteMVAlgebra:
    oplus: tuple[tuple[int, ...], ...]
    neg: tuple[int, ...]
    zero: int
    one: int
    labels: tuple[str, ...] | None = field(default=None, compare=False)
    # how the algebra was built, e.g. ("chain", 4); used by document encoding
    origin: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "oplus", _tuplize(self.oplus))
        object.__setattr__(self, "neg", tuple(int(v) for v in self.neg))
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def size(self) -> int:
        return len(self.neg)

    @property
    def elements(self) -> range:
        return range(self.size)

    def __len__(self) -> int:
        return self.size

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    def index(self, label: str) -> int:
        if self.labels is None:
            return int(label)
        try:
            return self.labels.index(label)
        except ValueError:
            raise InvalidInput(f"no element labelled {label!r}") from None

    def __repr__(self) -> str:
        if self.origin:
            return f"FiniteMVAlgebra<{self.origin[0]} {self.origin[1:]}, n={self.size}>"
        return f"FiniteMVAlgebra<n={self.size}>"

    # derived operations
    def add(self, x: int, y: int) -> int:
        return self.oplus[x][y]

    def join(self, x: int, y: int) -> int:
        return self.join_table[x][y]

    def meet(self, x: int, y: int) -> int:
        return self.meet_table[x][y]

    def odot(self, x: int, y: int) -> int:
        n = self.neg
        return n[self.oplus[n[x]][n[y]]]

    def leq(self, x: int, y: int) -> bool:
        return self.oplus[self.neg[x]][y] == self.one

    @cached_property
    def join_table(self) -> tuple[tuple[int, ...], ...]:
        # x v y = (x' + y)' + y
        o, n = self.oplus, self.neg
        return tuple(tuple(o[n[o[n[x]][y]]][y] for y in self.elements) for x in self.elements)

    @cached_property
    def meet_table(self) -> tuple[tuple[int, ...], ...]:
        n, j = self.neg, self.join_table
        return tuple(tuple(n[j[n[x]][n[y]]] for y in self.elements) for x in self.elements)

    @cached_property
    def idempotents(self) -> tuple[int, ...]:
        return tuple(x for x in self.elements if self.oplus[x][x] == x)

    @cached_property
    def cover_table(self) -> tuple[int, ...]:
        """Least idempotent above each element (Boolean elements form a sublattice)."""
        out = []
        for x in self.elements:
            ups = [b for b in self.idempotents if self.leq(x, b)]
            least = [b for b in ups if all(self.leq(b, c) for c in ups)]
            out.append(least[0] if least else self.one)
        return tuple(out)

    def cover(self, x: int) -> int:
        return self.cover_table[x]


def mk_chain(n: int) -> FiniteMVAlgebra:
    """The Lukasiewicz chain {0, 1/(n-1), ..., 1} with truncated addition."""
    if n < 2:
        raise InvalidSize(f"chain needs n >= 2, got {n}")
    top = n - 1
    oplus = [[min(i + j, top) for j in range(n)] for i in range(n)]
    neg = [top - i for i in range(n)]
    labels = tuple(str(Fraction(i, top)) for i in range(n))
    return FiniteMVAlgebra(oplus, neg, 0, top, labels, ("chain", n))


def mk_boolean(atoms: int) -> FiniteMVAlgebra:
    """Powerset of ``range(atoms)``; elements are bitmasks."""
    if atoms < 0:
        raise InvalidSize("atoms must be >= 0")
    size = 1 << atoms
    mask = size - 1
    oplus = [[x | y for y in range(size)] for x in range(size)]
    neg = [mask & ~x for x in range(size)]
    labels = tuple("{" + ",".join(str(i) for i in range(atoms) if x >> i & 1) + "}"
                   for x in range(size))
    return FiniteMVAlgebra(oplus, neg, 0, mask, labels, ("boolean", atoms))


def product_index(factors: Sequence[FiniteMVAlgebra], parts: Sequence[int]) -> int:
    idx = 0
    for f, p in zip(factors, parts):
        idx = idx * f.size + p
    return idx


def product_parts(factors: Sequence[FiniteMVAlgebra], idx: int) -> tuple[int, ...]:
    parts = []
    for f in reversed(factors):
        idx, p = divmod(idx, f.size)
        parts.append(p)
    return tuple(reversed(parts))


def mk_product(factors: Sequence[FiniteMVAlgebra]) -> FiniteMVAlgebra:
    """Direct product with componentwise operations; first factor is most significant."""
    factors = list(factors)
    if not factors:
        raise InvalidInput("product of an empty list")
    tuples = list(itertools.product(*(f.elements for f in factors)))
    index = {t: i for i, t in enumerate(tuples)}
    oplus = [[index[tuple(f.oplus[a][b] for f, a, b in zip(factors, s, t))] for t in tuples]
             for s in tuples]
    neg = [index[tuple(f.neg[a] for f, a in zip(factors, s))] for s in tuples]
    zero = index[tuple(f.zero for f in factors)]
    one = index[tuple(f.one for f in factors)]
    labels = tuple("(" + ",".join(f.label(a) for f, a in zip(factors, t)) + ")" for t in tuples)
    return FiniteMVAlgebra(oplus, neg, zero, one, labels, ("product", tuple(factors)))


def _check_shape(M: FiniteMVAlgebra) -> None:
    n = len(M.neg)
    if n == 0:
        raise InvalidInput("empty carrier")
    if len(M.oplus) != n or any(len(row) != n for row in M.oplus):
        raise InvalidInput(f"oplus table is not {n}x{n}")
    for v in itertools.chain(M.neg, *M.oplus, (M.zero, M.one)):
        if not 0 <= v < n:
            raise InvalidInput(f"table entry {v} out of range 0..{n - 1}")


def check_mv_axioms(M: FiniteMVAlgebra) -> Verdict:
    """Exhaustively check the MV axioms; the first violated clause is reported.

    Clause ids: ``monoid-comm``, ``monoid-unit``, ``monoid-assoc``,
    ``involution``, ``absorb-one``, ``iii`` (the Lukasiewicz identity) and
    ``lattice`` (the induced order is a distributive lattice from zero to one).
    """
    _check_shape(M)
    check = "mv-axioms"
    o, n, E = M.oplus, M.neg, M.elements
    for x in E:
        for y in E:
            if o[x][y] != o[y][x]:
                return failed(check, "monoid-comm", x=x, y=y)
    for x in E:
        if o[x][M.zero] != x:
            return failed(check, "monoid-unit", x=x)
    for x in E:
        for y in E:
            xy = o[x][y]
            for z in E:
                if o[xy][z] != o[x][o[y][z]]:
                    return failed(check, "monoid-assoc", x=x, y=y, z=z)
    for x in E:
        if n[n[x]] != x:
            return failed(check, "involution", x=x)
    for x in E:
        if o[x][M.one] != M.one:
            return failed(check, "absorb-one", x=x)
    for x in E:
        for y in E:
            if o[x][n[o[x][n[y]]]] != o[y][n[o[y][n[x]]]]:
                return failed(check, "iii", x=x, y=y)
    bad = _lattice_violation(M)
    if bad is not None:
        detail, witness = bad
        return failed(check, "lattice", detail=detail, **witness)
    return passed(check)


def _lattice_violation(M: FiniteMVAlgebra):
    E = M.elements
    le = [[M.leq(x, y) for y in E] for x in E]
    for x in E:
        if not le[x][x]:
            return "not reflexive", {"x": x}
        if not le[M.zero][x]:
            return "zero not bottom", {"x": x}
        if not le[x][M.one]:
            return "one not top", {"x": x}
    for x in E:
        for y in E:
            if x != y and le[x][y] and le[y][x]:
                return "not antisymmetric", {"x": x, "y": y}
            if le[x][y]:
                for z in E:
                    if le[y][z] and not le[x][z]:
                        return "not transitive", {"x": x, "y": y, "z": z}
    join = [[None] * len(E) for _ in E]
    meet = [[None] * len(E) for _ in E]
    for x in E:
        for y in E:
            ups = [u for u in E if le[x][u] and le[y][u]]
            lub = [u for u in ups if all(le[u][v] for v in ups)]
            downs = [d for d in E if le[d][x] and le[d][y]]
            glb = [d for d in downs if all(le[v][d] for v in downs)]
            if not lub or not glb:
                return "missing join or meet", {"x": x, "y": y}
            join[x][y], meet[x][y] = lub[0], glb[0]
    for x in E:
        for y in E:
            for z in E:
                if meet[x][join[y][z]] != join[meet[x][y]][meet[x][z]]:
                    return "not distributive", {"x": x, "y": y, "z": z}
    return None


def natural_order(M: FiniteMVAlgebra, x: int, y: int) -> bool:
    """x <= y iff x' + y = 1."""
    return M.leq(x, y)


@dataclass(frozen=True)
class MVHom:
    source: FiniteMVAlgebra
    target: FiniteMVAlgebra
    table: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.table[x]

    def compose(self, inner: "MVHom") -> "MVHom":
        """``self`` after ``inner``."""
        return MVHom(inner.source, self.target, tuple(self.table[v] for v in inner.table))


def _as_table(h, A: FiniteMVAlgebra, B: FiniteMVAlgebra) -> tuple[int, ...]:
    if isinstance(h, MVHom):
        h = h.table
    if isinstance(h, Mapping):
        missing = [x for x in A.elements if x not in h]
        if missing:
            raise InvalidInput(f"map is partial: no image for {missing[0]}")
        table = tuple(h[x] for x in A.elements)
    else:
        table = tuple(h)
        if len(table) != A.size:
            raise InvalidInput(f"map has {len(table)} entries, source has {A.size}")
    if any(not 0 <= v < B.size for v in table):
        raise InvalidInput("map value outside target carrier")
    return table


def is_mv_hom(h, A: FiniteMVAlgebra, B: FiniteMVAlgebra) -> bool:
    """True iff ``h`` preserves 0, 1, oplus and negation."""
    t = _as_table(h, A, B)
    if t[A.zero] != B.zero or t[A.one] != B.one:
        return False
    for x in A.elements:
        if t[A.neg[x]] != B.neg[t[x]]:
            return False
        row, tx = A.oplus[x], t[x]
        for y in A.elements:
            if t[row[y]] != B.oplus[tx][t[y]]:
                return False
    return True


def enumerate_mv_homs(A: FiniteMVAlgebra, B: FiniteMVAlgebra) -> list[MVHom]:
    """All MV-homomorphisms A -> B, sorted by their tables.

    Plain backtracking: zero and one are fixed first, then the remaining
    elements in index order, pruning on every relation among assigned points.
    """
    order = [A.zero] + ([A.one] if A.one != A.zero else [])
    order += [x for x in A.elements if x not in order]
    h: dict[int, int] = {}
    found: list[tuple[int, ...]] = []

    def consistent(x: int) -> bool:
        hx = h[x]
        nx = A.neg[x]
        if nx in h and h[nx] != B.neg[hx]:
            return False
        for y, hy in h.items():
            s = A.oplus[x][y]
            if s in h and h[s] != B.oplus[hx][hy]:
                return False
        for y in h:
            for z in h:
                if A.oplus[y][z] == x and hx != B.oplus[h[y]][h[z]]:
                    return False
        return True

    def extend(k: int) -> None:
        if k == len(order):
            found.append(tuple(h[x] for x in A.elements))
            return
        x = order[k]
        if x == A.zero:
            choices = [B.zero]
        elif x == A.one:
            choices = [B.one]
        else:
            choices = list(B.elements)
        for v in choices:
            h[x] = v
            if consistent(x):
                extend(k + 1)
            del h[x]

    extend(0)
    return [MVHom(A, B, t) for t in sorted(found)]


def find_isomorphism(A: FiniteMVAlgebra, B: FiniteMVAlgebra) -> MVHom | None:
    if A.size != B.size:
        return None
    for h in enumerate_mv_homs(A, B):
        if len(set(h.table)) == A.size:
            return h
    return None


def mutations(M: FiniteMVAlgebra) -> Iterator[tuple[str, tuple, FiniteMVAlgebra]]:
    """Every single-entry change of the oplus and negation tables."""
    n = M.size
    for x in range(n):
        for v in range(n):
            if v != M.neg[x]:
                neg = list(M.neg)
                neg[x] = v
                yield "neg", (x, v), FiniteMVAlgebra(M.oplus, neg, M.zero, M.one, M.labels)
    for x in range(n):
        for y in range(n):
            for v in range(n):
                if v != M.oplus[x][y]:
                    table = [list(r) for r in M.oplus]
                    table[x][y] = v
                    yield "oplus", (x, y, v), FiniteMVAlgebra(table, M.neg, M.zero, M.one, M.labels)
